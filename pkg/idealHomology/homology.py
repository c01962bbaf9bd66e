"""
Tools for ideal-theoretic homology in finite additive categories. Chain complexes,
chain maps and their right and left ideal homology.
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


Complexes use descending indexing, d_n: C_n -> C_{n-1}. Degrees without an object are
zero, and a differential whose ends both exist but is not given is zero.

    right homology  H_n(C)(X) = Ker(d_n)(X, C_n) / Im(d_{n+1})(X, C_n)
    left homology   H^n(C)(X) = Coker(d_{n+1})(C_n, X) / Coim(d_n)(C_n, X)

At the ends Ker(d_n) is the total sieve on C_n and Im(d_{n+1}) is zero (dually the
total cosieve and the zero left ideal).
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import pandas as pd

from idealHomology.errors import (
    CategoryMismatch,
    ComposabilityError,
    DegreeOutOfRange,
    NotAComplex,
    NotShortExact,
)
from idealHomology.exactLinalg import (
    ElementVector,
    GroupHom,
    OrderVector,
    SubgroupBasis,
    SubquotientMap,
    full_subgroup,
    image,
    kernel,
    solve,
    zero_subgroup,
)
from idealHomology.ideals import (
    Ideal,
    ModuleFamily,
    Side,
    cokernel_of,
    coimage_of,
    image_of,
    ker_ideal,
    im_ideal,
    kernel_of,
    principal_left,
    principal_right,
    product,
    quotient_ideals,
    saturate,
    total_cosieve,
    total_sieve,
    zero_ideal,
)
from idealHomology.linCat import FiniteLinearCategory, Morphism

lgr = logging.getLogger(__name__)


@dataclass
class ChainComplex:
    cat: FiniteLinearCategory
    objects: dict[int, int]
    differentials: dict[int, Morphism] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.objects = {int(n): self.cat.object_index(o) for n, o in self.objects.items()}
        for n, d in self.differentials.items():
            if n not in self.objects or n - 1 not in self.objects:
                raise DegreeOutOfRange(f"{self.name}: d_{n} has no object at both ends")
            if (d.source, d.target) != (self.objects[n], self.objects[n - 1]):
                raise ComposabilityError(
                    f"{self.name}: d_{n} must go {self.cat.label(self.objects[n])} -> "
                    f"{self.cat.label(self.objects[n - 1])}"
                )

    @property
    def cls_name(self) -> str:
        return self.__class__.__name__

    @property
    def degrees(self) -> list[int]:
        return sorted(self.objects)

    @property
    def lo(self) -> int:
        return min(self.objects)

    @property
    def hi(self) -> int:
        return max(self.objects)

    def obj(self, n: int) -> int | None:
        return self.objects.get(n)

    def d(self, n: int) -> Morphism | None:
        """d_n, or None when C_n or C_{n-1} is zero."""
        if n not in self.objects or n - 1 not in self.objects:
            return None
        return self.differentials.get(n) or self.cat.zero(self.objects[n], self.objects[n - 1])

    def __repr__(self):
        parts = [f"{n}:{self.cat.label(self.objects[n])}" for n in reversed(self.degrees)]
        return f"{self.cls_name}({self.name}: {' -> '.join(parts)})"

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for n in reversed(self.degrees):
            d = self.d(n)
            rows.append(
                {
                    "degree": n,
                    "object": self.cat.label(self.objects[n]),
                    "differential": self.cat.describe(d) if d is not None else "",
                }
            )
        return pd.DataFrame(rows, columns=["degree", "object", "differential"])


def validate_complex(C: ChainComplex) -> list[str]:
    problems = []
    for n in C.degrees:
        d_n, d_lower = C.d(n), C.d(n - 1)
        if d_n is not None and d_lower is not None:
            dd = C.cat.compose(d_lower, d_n)
            if not dd.is_zero():
                problems.append(f"d_{n - 1} o d_{n} = {C.cat.describe(dd)}")
    return problems


def make_complex(
    cat: FiniteLinearCategory,
    objects: Mapping[int, int | str],
    differentials: Mapping[int, Sequence[int]] | None = None,
    name: str = "",
) -> ChainComplex:
    """Complex from objects per degree and differential coordinates per degree."""
    objs = {int(n): cat.object_index(o) for n, o in objects.items()}
    diffs = {}
    for n, coords in (differentials or {}).items():
        if n not in objs or n - 1 not in objs:
            raise DegreeOutOfRange(f"{name}: d_{n} has no object at both ends")
        diffs[int(n)] = cat.morphism(objs[n], objs[n - 1], coords)
    C = ChainComplex(cat, objs, diffs, name)
    problems = validate_complex(C)
    if problems:
        raise NotAComplex(f"{name}: {problems[0]}")
    return C


def shift(C: ChainComplex, k: int, name: str = "") -> ChainComplex:
    """C[k]_n = C_{n-k} with differential (-1)^k d_{n-k}."""
    sign = -1 if k % 2 else 1
    diffs = {
        n + k: C.cat.scale(sign, d) for n, d in ((n, C.d(n)) for n in C.degrees) if d is not None
    }
    objects = {n + k: o for n, o in C.objects.items()}
    return ChainComplex(C.cat, objects, diffs, name or f"{C.name}[{k}]")


def reversed_complex(C: ChainComplex, op: FiniteLinearCategory | None = None) -> ChainComplex:
    """The same data read in the opposite category, reindexed by n -> -n so that
    d'_k = d_{1-k} again lowers degree."""
    op = op or C.cat.opposite()
    objects = {-n: o for n, o in C.objects.items()}
    diffs = {}
    for n in C.degrees:
        d = C.d(n)
        if d is not None:
            diffs[1 - n] = Morphism(d.target, d.source, d.coords)
    return ChainComplex(op, objects, diffs, f"{C.name}^rev")


@dataclass
class ComplexConditions:
    composite_zero: bool
    image_in_kernel: bool
    cokernel_contains_coimage: bool

    @property
    def agree(self) -> bool:
        return self.composite_zero == self.image_in_kernel == self.cokernel_contains_coimage

    def to_dict(self):
        return {
            "g o f = 0": self.composite_zero,
            "Im(f) <= Ker(g)": self.image_in_kernel,
            "Coim(g) <= Coker(f)": self.cokernel_contains_coimage,
        }


def complex_conditions(cat: FiniteLinearCategory, g: Morphism, f: Morphism) -> ComplexConditions:
    """The three equivalent ways of saying that A -f-> B -g-> C is a complex."""
    if f.target != g.source:
        raise ComposabilityError(f"{cat.describe(g)} and {cat.describe(f)} do not compose")
    return ComplexConditions(
        cat.compose(g, f).is_zero(),
        image_of(cat, f).is_subideal(kernel_of(cat, g)),
        coimage_of(cat, g).is_subideal(cokernel_of(cat, f)),
    )


def cycles_ideal(C: ChainComplex, n: int) -> Ideal:
    d = C.d(n)
    return total_sieve(C.cat, C.objects[n]) if d is None else kernel_of(C.cat, d)


def boundaries_ideal(C: ChainComplex, n: int) -> Ideal:
    d = C.d(n + 1)
    if d is None:
        return zero_ideal(C.cat, Side.RIGHT, [C.objects[n]])
    return image_of(C.cat, d)


def cocycles_ideal(C: ChainComplex, n: int) -> Ideal:
    d = C.d(n + 1)
    return total_cosieve(C.cat, C.objects[n]) if d is None else cokernel_of(C.cat, d)


def coboundaries_ideal(C: ChainComplex, n: int) -> Ideal:
    d = C.d(n)
    if d is None:
        return zero_ideal(C.cat, Side.LEFT, [C.objects[n]])
    return coimage_of(C.cat, d)


@dataclass
class HomologyFamily:
    degree: int
    variant: str
    family: ModuleFamily

    def invariants(self, x: int) -> tuple[int, ...]:
        return self.family.invariants(x)

    def is_trivial(self) -> bool:
        return self.family.is_trivial()

    def to_frame(self) -> pd.DataFrame:
        frame = self.family.to_frame()
        frame.insert(0, "degree", self.degree)
        return frame


def _check_degree(C: ChainComplex, n: int) -> None:
    if n not in C.objects:
        raise DegreeOutOfRange(f"{C.name} has no object in degree {n} (range {C.degrees})")


def right_homology(C: ChainComplex, n: int) -> HomologyFamily:
    _check_degree(C, n)
    family = quotient_ideals(cycles_ideal(C, n), boundaries_ideal(C, n), f"H_{n}({C.name})")
    return HomologyFamily(n, "right", family)


def left_homology(C: ChainComplex, n: int) -> HomologyFamily:
    _check_degree(C, n)
    family = quotient_ideals(
        cocycles_ideal(C, n), coboundaries_ideal(C, n), f"H^{n}({C.name})"
    )
    return HomologyFamily(n, "left", family)


def homology(C: ChainComplex, n: int, variant: str = "right") -> HomologyFamily:
    return left_homology(C, n) if variant == "left" else right_homology(C, n)


def is_exact_at(C: ChainComplex, n: int, variant: str = "right") -> bool:
    return homology(C, n, variant).is_trivial()


def is_exact(C: ChainComplex, variant: str = "right") -> bool:
    return all(is_exact_at(C, n, variant) for n in C.degrees)


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: dict[int, Morphism] = field(default_factory=dict)

    def __post_init__(self):
        if self.source.cat is not self.target.cat:
            raise CategoryMismatch("chain map between complexes over different categories")
        for n, f in self.components.items():
            ends = (self.source.obj(n), self.target.obj(n))
            if None in ends or (f.source, f.target) != ends:
                raise ComposabilityError(f"component f_{n} does not go C_{n} -> D_{n}")

    @property
    def cat(self) -> FiniteLinearCategory:
        return self.source.cat

    def component(self, n: int) -> Morphism | None:
        a, b = self.source.obj(n), self.target.obj(n)
        if a is None or b is None:
            return None
        return self.components.get(n) or self.cat.zero(a, b)

    def degrees(self) -> list[int]:
        return [n for n in self.source.degrees if self.target.obj(n) is not None]

    def problems(self) -> list[int]:
        """Degrees n where d_n f_n != f_{n-1} d_n."""
        cat = self.cat
        bad = []
        for n in self.source.degrees:
            a, b = self.source.obj(n), self.target.obj(n - 1)
            if b is None:
                continue
            left = cat.zero(a, b)
            f_n, d_D = self.component(n), self.target.d(n)
            if f_n is not None and d_D is not None:
                left = cat.compose(d_D, f_n)
            right = cat.zero(a, b)
            f_lower, d_C = self.component(n - 1), self.source.d(n)
            if f_lower is not None and d_C is not None:
                right = cat.compose(f_lower, d_C)
            if left != right:
                bad.append(n)
        return bad

    def is_chain_map(self) -> bool:
        return not self.problems()

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self o inner."""
        cat = self.cat
        comps = {}
        for n in inner.degrees():
            f, g = inner.component(n), self.component(n)
            if g is not None and f is not None:
                comps[n] = cat.compose(g, f)
        return ChainMap(inner.source, self.target, comps)

    def _combine(self, other: "ChainMap", sign: int) -> "ChainMap":
        cat = self.cat
        comps = {
            n: cat.add(self.component(n), cat.scale(sign, other.component(n)))
            for n in self.degrees()
        }
        return ChainMap(self.source, self.target, comps)

    def add(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, 1)

    def sub(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, -1)

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, {n: C.cat.identity(o) for n, o in C.objects.items()})

    @classmethod
    def zero(cls, C: ChainComplex, D: ChainComplex) -> "ChainMap":
        return cls(C, D, {})


@dataclass
class HomologyMap:
    degree: int
    variant: str
    maps: dict[int, SubquotientMap]

    def same_as(self, other: "HomologyMap") -> bool:
        return all(m.same_as(other.maps[x]) for x, m in self.maps.items())

    def is_identity(self) -> bool:
        return all(m.is_identity() for m in self.maps.values())

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def compose(self, inner: "HomologyMap") -> "HomologyMap":
        """self o inner, objectwise."""
        return HomologyMap(
            self.degree,
            self.variant,
            {x: m.compose(inner.maps[x]) for x, m in self.maps.items()},
        )


def induced_map(f: ChainMap, n: int, variant: str = "right") -> HomologyMap:
    """Right homology is covariant in the complex, through post-composition with f_n.
    Left homology is contravariant, through pre-composition: H^n(D) -> H^n(C)."""
    cat = f.cat
    f_n = f.component(n)
    if f_n is None:
        raise DegreeOutOfRange(f"chain map has no component in degree {n}")
    maps = {}
    if variant == "left":
        src, tgt = left_homology(f.target, n).family, left_homology(f.source, n).family
        for x in range(cat.n_objects):
            maps[x] = SubquotientMap.from_ambient_hom(
                cat.precompose_hom(f_n, x), src.group(x), tgt.group(x)
            )
    else:
        src, tgt = right_homology(f.source, n).family, right_homology(f.target, n).family
        for x in range(cat.n_objects):
            maps[x] = SubquotientMap.from_ambient_hom(
                cat.postcompose_hom(f_n, x), src.group(x), tgt.group(x)
            )
    return HomologyMap(n, variant, maps)


@dataclass(frozen=True)
class HomBlock:
    degree: int
    source: int
    target: int
    offset: int
    rank: int


def hom_layout(
    cat: FiniteLinearCategory, pairs: Sequence[tuple[int, int, int]]
) -> tuple[OrderVector, list[HomBlock]]:
    blocks, orders, offset = [], [], 0
    for n, a, b in pairs:
        h = cat.hom(a, b).orders
        blocks.append(HomBlock(n, a, b, offset, len(h)))
        orders.extend(h)
        offset += len(h)
    return OrderVector(tuple(orders)), blocks


def flatten_chain_map(f: ChainMap, blocks: Sequence[HomBlock]) -> ElementVector:
    vec: list[int] = []
    for blk in blocks:
        vec.extend(f.component(blk.degree).coords)
    return tuple(vec)


def unflatten(
    cat: FiniteLinearCategory, vec: Sequence[int], blocks: Sequence[HomBlock]
) -> dict[int, Morphism]:
    return {
        blk.degree: cat.morphism(blk.source, blk.target, vec[blk.offset : blk.offset + blk.rank])
        for blk in blocks
    }


def homotopy_operator(
    C: ChainComplex, D: ChainComplex
) -> tuple[GroupHom, list[HomBlock], list[HomBlock]]:
    """s -> d s + s d from families s_n: C_n -> D_{n+1} to families C_n -> D_n."""
    cat = C.cat
    s_pairs = [
        (n, C.objects[n], D.objects[n + 1]) for n in C.degrees if D.obj(n + 1) is not None
    ]
    e_pairs = [(n, C.objects[n], D.objects[n]) for n in C.degrees if D.obj(n) is not None]
    s_orders, s_blocks = hom_layout(cat, s_pairs)
    e_orders, e_blocks = hom_layout(cat, e_pairs)
    where = {blk.degree: blk for blk in e_blocks}
    columns = []
    for blk in s_blocks:
        n = blk.degree
        for e in cat.basis(blk.source, blk.target):
            col = [0] * len(e_orders)
            d_D = D.d(n + 1)
            if n in where and d_D is not None:
                tgt = where[n]
                col[tgt.offset : tgt.offset + tgt.rank] = cat.compose(d_D, e).coords
            d_C = C.d(n + 1)
            if n + 1 in where and d_C is not None:
                tgt = where[n + 1]
                piece = cat.compose(e, d_C).coords
                col[tgt.offset : tgt.offset + tgt.rank] = [
                    u + v for u, v in zip(col[tgt.offset : tgt.offset + tgt.rank], piece)
                ]
            columns.append(col)
    return GroupHom.from_columns(s_orders, e_orders, columns), s_blocks, e_blocks


def are_homotopic(f: ChainMap, g: ChainMap) -> dict[int, Morphism] | None:
    """A homotopy s with f - g = d s + s d, or None."""
    if f.source is not g.source or f.target is not g.target:
        raise CategoryMismatch("homotopy between maps with different ends")
    H, s_blocks, e_blocks = homotopy_operator(f.source, f.target)
    x = solve(H, flatten_chain_map(f.sub(g), e_blocks))
    if x is None:
        return None
    return unflatten(f.cat, x, s_blocks)


def check_homotopy(f: ChainMap, g: ChainMap, s: Mapping[int, Morphism]) -> bool:
    cat = f.cat
    C, D = f.source, f.target
    for n in f.degrees():
        total = cat.zero(C.objects[n], D.objects[n])
        if n in s and D.d(n + 1) is not None:
            total = cat.add(total, cat.compose(D.d(n + 1), s[n]))
        if n - 1 in s and C.d(n) is not None:
            total = cat.add(total, cat.compose(s[n - 1], C.d(n)))
        if total != cat.sub(f.component(n), g.component(n)):
            return False
    return True


@dataclass
class HomSequenceRow:
    obj: str
    covariant_injective: bool
    covariant_exact: bool
    contravariant_injective: bool
    contravariant_exact: bool

    def to_dict(self):
        return {
            "X": self.obj,
            "Hom(X,-) mono": self.covariant_injective,
            "Hom(X,-) exact": self.covariant_exact,
            "Hom(-,X) mono": self.contravariant_injective,
            "Hom(-,X) exact": self.contravariant_exact,
        }


def _short_exact_maps(ses: ChainComplex) -> tuple[Morphism, Morphism | None]:
    """(f, g) of 0 -> A -f-> B -g-> C -> 0 read off a two or three term complex, g None
    when C = 0."""
    degrees = ses.degrees
    if len(degrees) not in (2, 3) or degrees != list(range(ses.lo, ses.hi + 1)):
        raise NotShortExact(f"{ses.name} must have two or three consecutive terms")
    if not is_exact(ses):
        raise NotShortExact(f"{ses.name} is not exact")
    return ses.d(ses.hi), ses.d(ses.lo + 1) if len(degrees) == 3 else None


def hom_left_sequences(ses: ChainComplex, x: int | str) -> HomSequenceRow:
    """For an exact 0 -> A -f-> B -g-> C -> 0, injectivity of Hom(X,f) and Hom(g,X), and
    exactness of Hom(X,A) -> Hom(X,B) -> Hom(X,C) and Hom(C,X) -> Hom(B,X) -> Hom(A,X)
    at the middle."""
    f, g = _short_exact_maps(ses)
    cat = ses.cat
    x = cat.object_index(x)
    f_star = cat.postcompose_hom(f, x)
    f_upper = cat.precompose_hom(f, x)
    if g is None:
        g_star_kernel = full_subgroup(f_star.target)
        g_upper_image = zero_subgroup(f_upper.source)
        g_upper_injective = True
    else:
        g_star_kernel = kernel(cat.postcompose_hom(g, x))
        g_upper = cat.precompose_hom(g, x)
        g_upper_image = image(g_upper)
        g_upper_injective = kernel(g_upper).is_zero()
    return HomSequenceRow(
        cat.label(x),
        kernel(f_star).is_zero(),
        image(f_star) == g_star_kernel,
        g_upper_injective,
        g_upper_image == kernel(f_upper),
    )


def im_vs_pointwise_image(
    cat: FiniteLinearCategory, f: Morphism, x: int
) -> tuple[SubgroupBasis, SubgroupBasis]:
    """(Im(f)(X, cod f), {f o phi : phi in Hom(X, dom f)})."""
    return image_of(cat, f).components[(x, f.target)], image(cat.postcompose_hom(f, x))


def global_ideals(C: ChainComplex) -> tuple[Ideal, Ideal]:
    """I(C), J(C): the right and left ideals generated by the differentials and the
    identities of the objects of C."""
    cat = C.cat
    gens = [d for d in (C.d(n) for n in C.degrees) if d is not None]
    gens += [cat.identity(o) for o in C.objects.values()]
    return (
        saturate(cat, Side.RIGHT, gens, label=f"I({C.name})"),
        saturate(cat, Side.LEFT, gens, label=f"J({C.name})"),
    )


def global_right_homology(C: ChainComplex, n: int) -> ModuleFamily:
    """Degree n homology recovered from I(C) and J(C):
    Ker(J . <d_n|) / Im(|d_{n+1}> . I)."""
    _check_degree(C, n)
    cat = C.cat
    I, J = global_ideals(C)
    c_n = C.objects[n]
    d_n, d_up = C.d(n), C.d(n + 1)
    left = principal_left(cat, d_n) if d_n is not None else zero_ideal(cat, Side.LEFT, [c_n])
    right = principal_right(cat, d_up) if d_up is not None else zero_ideal(cat, Side.RIGHT, [c_n])
    top = ker_ideal(product(J, left))
    bottom = im_ideal(product(right, I))
    return quotient_ideals(top, bottom, f"H_{n}({C.name}) via I, J")


def homology_frame(C: ChainComplex, variant: str = "right") -> pd.DataFrame:
    frames = [homology(C, n, variant).to_frame() for n in reversed(C.degrees)]
    return pd.concat(frames, ignore_index=True)