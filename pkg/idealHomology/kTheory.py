"""
Tools for ideal-theoretic homology in finite additive categories. Categories of chain
complexes, mapping cones and the homotopy category.
    Copyright (C) 2024 Chris Liatas - cris@liatas.com

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU General Public License for more details.

    You should have received a copy of the GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product as cartesian
from timeit import default_timer as timer

import pandas as pd

from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import (
    BuilderError,
    CategoryMismatch,
    InvariantViolation,
    MissingDirectSum,
    NotAModuleModel,
)
from idealHomology.exactLinalg import (
    GroupHom,
    OrderVector,
    Subquotient,
    howell_form,
    image,
    kernel,
    zero_subgroup,
)
from idealHomology.homology import (
    ChainComplex,
    ChainMap,
    HomBlock,
    are_homotopic,
    check_homotopy,
    flatten_chain_map,
    hom_layout,
    homotopy_operator,
    shift,
    unflatten,
)
from idealHomology.ideals import (
    Ideal,
    Side,
    is_free_left,
    cokernel_exists,
    cokernel_of,
    is_principal,
    is_saturated,
    principal_left,
    project_from_parent,
    quotient_category,
)
from idealHomology.linCat import FiniteLinearCategory, HomGroup, Morphism
from idealHomology.utils import elapsed

lgr = logging.getLogger(__name__)


class ComplexesCategory:
    """Full subcategory of Comp(model) on finitely many bounded complexes. Hom(C, D)
    is the group of chain maps, presented as a kernel inside the product of the
    degreewise Hom groups."""

    def __init__(
        self, model: FiniteLinearCategory, complexes: Sequence[ChainComplex], name: str = ""
    ) -> None:
        start = timer()
        self.model = model
        self.complexes = list(complexes)
        labels = [C.name for C in self.complexes]
        if len(set(labels)) != len(labels) or not all(labels):
            raise BuilderError(f"complexes need distinct names, got {labels}")
        for C in self.complexes:
            if C.cat is not model:
                raise CategoryMismatch(f"complex {C.name} lives over another category")
        n = len(self.complexes)
        self.layouts: dict[tuple[int, int], list[HomBlock]] = {}
        self.spaces: dict[tuple[int, int], Subquotient] = {}
        homs = {}
        for a, b in cartesian(range(n), repeat=2):
            C, D = self.complexes[a], self.complexes[b]
            ambient, blocks = hom_layout(
                model, [(k, C.objects[k], D.objects[k]) for k in C.degrees if D.obj(k) is not None]
            )
            commutation = self._commutation(C, D, ambient, blocks)
            space = Subquotient(ambient, kernel(commutation), zero_subgroup(ambient))
            self.layouts[(a, b)] = blocks
            self.spaces[(a, b)] = space
            homs[(a, b)] = HomGroup(
                a,
                b,
                space.orders,
                tuple(f"{C.name}->{D.name}#{i}" for i in range(len(space.orders))),
            )
        structure = {}
        for a, b, c in cartesian(range(n), repeat=3):
            lifts_ab = [self._lift(a, b, g) for g in self.spaces[(a, b)].generators()]
            lifts_bc = [self._lift(b, c, g) for g in self.spaces[(b, c)].generators()]
            structure[(a, b, c)] = tuple(
                tuple(self._project(a, c, g.compose(f)) for f in lifts_ab) for g in lifts_bc
            )
        identities = {
            a: self._project(a, a, ChainMap.identity(self.complexes[a])) for a in range(n)
        }
        self.category = FiniteLinearCategory(
            model.ring, labels, homs, structure, identities, name=name or f"Comp({model.name})"
        ).seal()
        lgr.info(
            f"{self.cls_name} - {n} complexes over {model.name} took: {elapsed(start)}"
        )

    @property
    def cls_name(self) -> str:
        return self.__class__.__name__

    def _commutation(
        self, C: ChainComplex, D: ChainComplex, ambient: OrderVector, blocks: list[HomBlock]
    ) -> GroupHom:
        """(f_n) -> (d_n f_n - f_{n-1} d_n)_n."""
        cat = self.model
        eqs = [
            (k, C.objects[k], D.objects[k - 1])
            for k in C.degrees
            if D.obj(k - 1) is not None
        ]
        eq_orders, eq_blocks = hom_layout(cat, eqs)
        where = {blk.degree: blk for blk in eq_blocks}
        columns = []
        for blk in blocks:
            k = blk.degree
            for e in cat.basis(blk.source, blk.target):
                col = [0] * len(eq_orders)
                d_D = D.d(k)
                if k in where and d_D is not None:
                    tgt = where[k]
                    col[tgt.offset : tgt.offset + tgt.rank] = cat.compose(d_D, e).coords
                d_C = C.d(k + 1)
                if k + 1 in where and d_C is not None:
                    tgt = where[k + 1]
                    piece = cat.compose(e, d_C).coords
                    col[tgt.offset : tgt.offset + tgt.rank] = [
                        u - v for u, v in zip(col[tgt.offset : tgt.offset + tgt.rank], piece)
                    ]
                columns.append(col)
        return GroupHom.from_columns(ambient, eq_orders, columns)

    def _lift(self, a: int, b: int, vec) -> ChainMap:
        comps = unflatten(self.model, vec, self.layouts[(a, b)])
        return ChainMap(self.complexes[a], self.complexes[b], comps)

    def _project(self, a: int, b: int, f: ChainMap) -> tuple[int, ...]:
        return self.spaces[(a, b)].project(flatten_chain_map(f, self.layouts[(a, b)]))

    def index(self, C: ChainComplex) -> int:
        for i, D in enumerate(self.complexes):
            if D is C:
                return i
        raise CategoryMismatch(f"complex {C.name} is not an object of {self.category.name}")

    def to_chain_map(self, f: Morphism) -> ChainMap:
        return self._lift(f.source, f.target, self.spaces[(f.source, f.target)].lift(f.coords))

    def from_chain_map(self, f: ChainMap) -> Morphism:
        a, b = self.index(f.source), self.index(f.target)
        return Morphism(a, b, self._project(a, b, f))


def complexes_category(
    model: FiniteLinearCategory, complexes: Sequence[ChainComplex], name: str = ""
) -> ComplexesCategory:
    return ComplexesCategory(model, complexes, name)


def null_homotopic_ideal(
    cc: ComplexesCategory, config: EngineConstants = DEFAULT_CONFIG
) -> Ideal:
    """Two-sided ideal of chain maps of the form d s + s d."""
    comps = {}
    cat = cc.category
    for a, b in cartesian(range(cat.n_objects), repeat=2):
        C, D = cc.complexes[a], cc.complexes[b]
        H, _, e_blocks = homotopy_operator(C, D)
        shape = [(k.degree, k.rank) for k in cc.layouts[(a, b)]]
        if [(k.degree, k.rank) for k in e_blocks] != shape:
            raise InvariantViolation("homotopy and chain map layouts disagree")
        space = cc.spaces[(a, b)]
        comps[(a, b)] = howell_form(
            (space.project(r) for r in image(H).rows), cat.hom(a, b).orders
        )
    ideal = Ideal(cat, Side.TWO_SIDED, comps, range(cat.n_objects), label="N")
    if config.CHECK_INVARIANTS and not is_saturated(ideal):
        raise InvariantViolation("null-homotopic chain maps do not form a two-sided ideal")
    return ideal


def homotopy_category(
    cc: ComplexesCategory, config: EngineConstants = DEFAULT_CONFIG
) -> FiniteLinearCategory:
    start = timer()
    K = quotient_category(cc.category, null_homotopic_ideal(cc, config))
    K.name = f"K({cc.model.name})"
    lgr.info(f"homotopy_category - {K.name} took: {elapsed(start)}")
    return K


def _direct_sum_object(model: FiniteLinearCategory, parts: Sequence[int | None]) -> int:
    decomposition = tuple(c for p in parts if p is not None for c in model.decompositions[p])
    obj = model.object_with_decomposition(decomposition)
    if obj is None:
        raise MissingDirectSum(
            f"no object of {model.name} with decomposition {decomposition}"
        )
    return obj


def _block_matrix(
    blocks: list[list[list[list[int]] | None]], rows: list[int], cols: list[int]
) -> list[list[int]]:
    """Assemble integer matrices; None blocks are zero. `rows`/`cols` are block sizes."""
    mat = [[0] * sum(cols) for _ in range(sum(rows))]
    r0 = 0
    for bi, height in enumerate(rows):
        c0 = 0
        for bj, width in enumerate(cols):
            block = blocks[bi][bj]
            if block is not None:
                for i in range(height):
                    for j in range(width):
                        mat[r0 + i][c0 + j] = block[i][j]
            c0 += width
        r0 += height
    return mat


def _size(model: FiniteLinearCategory, obj: int | None) -> int:
    return 0 if obj is None else len(model.decompositions[obj])


def _matrix(
    model: FiniteLinearCategory, f: Morphism | None, sign: int = 1
) -> list[list[int]] | None:
    if f is None:
        return None
    return [[sign * v for v in row] for row in model.module_matrix(f)]


def _identity_matrix(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def cone(u: ChainMap, name: str = "") -> ChainComplex:
    """Cone(u)_n = X_{n-1} + Y_n with d(x, y) = (-d x, u x + d y)."""
    model = u.cat
    if not model.is_module_model:
        raise NotAModuleModel("mapping cones need direct sums from a module model")
    X, Y = u.source, u.target
    degrees = sorted({k + 1 for k in X.degrees} | set(Y.degrees))
    objects = {k: _direct_sum_object(model, [X.obj(k - 1), Y.obj(k)]) for k in degrees}
    diffs = {}
    for k in degrees:
        if k - 1 not in objects:
            continue
        rows = [_size(model, X.obj(k - 2)), _size(model, Y.obj(k - 1))]
        cols = [_size(model, X.obj(k - 1)), _size(model, Y.obj(k))]
        blocks = [
            [_matrix(model, X.d(k - 1), -1), None],
            [_matrix(model, u.component(k - 1)), _matrix(model, Y.d(k))],
        ]
        diffs[k] = model.morphism_from_matrix(
            objects[k], objects[k - 1], _block_matrix(blocks, rows, cols)
        )
    return ChainComplex(model, objects, diffs, name or f"Cone({X.name}->{Y.name})")


def cone_maps(u: ChainMap, C: ChainComplex, shifted: ChainComplex) -> tuple[ChainMap, ChainMap]:
    """Inclusion Y -> Cone(u) and projection Cone(u) -> X[1]."""
    model = u.cat
    X, Y = u.source, u.target
    incl, proj = {}, {}
    for k in C.degrees:
        rows = [_size(model, X.obj(k - 1)), _size(model, Y.obj(k))]
        if Y.obj(k) is not None:
            mat = _block_matrix([[None], [_identity_matrix(rows[1])]], rows, [rows[1]])
            incl[k] = model.morphism_from_matrix(Y.objects[k], C.objects[k], mat)
        if X.obj(k - 1) is not None and shifted.obj(k) is not None:
            mat = _block_matrix([[_identity_matrix(rows[0]), None]], [rows[0]], rows)
            proj[k] = model.morphism_from_matrix(C.objects[k], shifted.objects[k], mat)
    return ChainMap(Y, C, incl), ChainMap(C, shifted, proj)


def concentrated(
    model: FiniteLinearCategory, obj: int, degree: int = 0, name: str = ""
) -> ChainComplex:
    return ChainComplex(model, {degree: obj}, {}, name or model.label(obj))


@dataclass
class CounterexampleReport:
    modulus: int
    u: str
    objects: list[str]
    null_homotopy: str | None
    cokernel: pd.DataFrame
    generator: str | None
    cone_map_generates: bool
    cone_map_free: bool
    non_cancelling: str | None
    homotopy_cokernel: str | None
    base_cokernel: str | None

    @property
    def counterexample(self) -> bool:
        """Coker([u]) is principal on [q] without being free, so no classical
        cokernel exists in K while the base model has one."""
        return (
            self.null_homotopy is not None
            and self.cone_map_generates
            and not self.cone_map_free
            and self.homotopy_cokernel is None
            and self.base_cokernel is not None
        )

    def to_dict(self):
        return {
            "modulus": self.modulus,
            "u": self.u,
            "objects": self.objects,
            "q o u null-homotopy": self.null_homotopy,
            "cokernel": self.cokernel.to_dict(orient="records"),
            "generator": self.generator,
            "cone map generates": self.cone_map_generates,
            "cone map free": self.cone_map_free,
            "non-cancelling witness": self.non_cancelling,
            "cokernel in K": self.homotopy_cokernel,
            "cokernel in model": self.base_cokernel,
            "counterexample": self.counterexample,
        }


def bo_counterexample(
    model: FiniteLinearCategory, u: Morphism, config: EngineConstants = DEFAULT_CONFIG
) -> CounterexampleReport:
    """Cokernel ideal of [u] in the homotopy category on X, Y, Cone(u), X[1], Y[1]
    for u: X -> Y between complexes concentrated in degree 0."""
    X = concentrated(model, u.source, 0, "X")
    Y = concentrated(model, u.target, 0, "Y")
    u_map = ChainMap(X, Y, {0: u})
    C = cone(u_map, "Cone(u)")
    X1, Y1 = shift(X, 1, "X[1]"), shift(Y, 1, "Y[1]")
    cc = complexes_category(model, [X, Y, C, X1, Y1])
    K = homotopy_category(cc, config)
    q_map, _ = cone_maps(u_map, C, X1)
    qu = q_map.compose(u_map)
    s = are_homotopic(qu, ChainMap.zero(X, C))
    if s is not None and not check_homotopy(qu, ChainMap.zero(X, C), s):
        raise InvariantViolation("q o u homotopy witness fails the homotopy equation")
    null_homotopy = None
    if s is not None:
        null_homotopy = "; ".join(f"s_{k}={model.describe(v)}" for k, v in sorted(s.items()))
    u_K = project_from_parent(K, cc.from_chain_map(u_map))
    q_K = project_from_parent(K, cc.from_chain_map(q_map))
    coker = cokernel_of(K, u_K)
    generator = is_principal(coker, config)
    generates = principal_left(K, q_K).components == coker.components
    free = is_free_left(K, q_K)
    witness = None
    if not free:
        for w in range(K.n_objects):
            rows = kernel(K.precompose_hom(q_K, w)).rows
            if rows:
                witness = K.describe(Morphism(q_K.target, w, rows[0]))
                break
    k_coker = cokernel_exists(K, u_K, config)
    base = cokernel_exists(model, u, config)
    report = CounterexampleReport(
        model.ring.modulus,
        model.describe(u),
        list(K.labels),
        null_homotopy,
        coker.to_frame(),
        K.describe(generator) if generator is not None else None,
        generates,
        free,
        witness,
        K.describe(k_coker) if k_coker is not None else None,
        model.describe(base) if base is not None else None,
    )
    lgr.info(f"bo_counterexample - Z/{model.ring.modulus}: counterexample={report.counterexample}")
    return report
