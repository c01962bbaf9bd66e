from .catBuilders import build_free_linearization, build_module_category, build_quiver_category
from .engineConfig import DEFAULT_CONFIG, EngineConstants
from .errors import (
    EnumerationCapExceeded,
    IdealHomologyError,
    InputError,
    InvariantViolation,
)
from .exactLinalg import GroupHom, OrderVector, ResidueRing, SubgroupBasis, Subquotient
from .homology import ChainComplex, ChainMap, make_complex
from .ideals import Ideal, ModuleFamily, Side
from .linCat import FiniteLinearCategory, Morphism
from .printColors import Pcolors

__all__ = [
    "abelianBridge",
    "axioms",
    "catBuilders",
    "cli",
    "documents",
    "engineConfig",
    "errors",
    "exactLinalg",
    "homology",
    "ideals",
    "kTheory",
    "linCat",
    "printColors",
    "reports",
    "utils",
]
