"""
Tools for ideal-theoretic homology in finite additive categories. One and two sided
ideals, annihilators, kernel/cokernel ideals and ideal quotients.
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


Conventions. A LEFT ideal is closed under post-composition (a cosieve at each object
of its anchor, the anchor being the set of sources it is taken at), a RIGHT ideal is
closed under pre-composition (a sieve at each anchor object, the anchor being the set
of targets). For f: A -> B, <f| is the left ideal generated by f (anchor {A}) and |f>
the right ideal generated by f (anchor {B}).

    R(S) = {phi : cod phi in anchor(S), a o phi = 0 for all a in S out of cod phi}
    L(S) = {psi : dom psi in anchor(S), psi o a = 0 for all a in S into dom psi}

    Ker(f) = R(<f|), Coker(f) = L(|f>), Im(I) = R(L(I)), Coim(I) = L(R(I)).
"""

import logging
import threading
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import product as cartesian

import pandas as pd

from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import (
    CategoryMismatch,
    CategoryValidationError,
    ContainmentViolation,
    EmptyClassError,
    EnumerationCapExceeded,
    InvariantViolation,
    SideMismatch,
    WellDefinednessViolation,
)
from idealHomology.exactLinalg import (
    GroupHom,
    OrderVector,
    Subquotient,
    SubquotientMap,
    SubgroupBasis,
    block_diagonal,
    full_subgroup,
    howell_form,
    image,
    intersect,
    is_subgroup,
    kernel,
    subgroup_sum,
    zero_subgroup,
)
from idealHomology.linCat import FiniteLinearCategory, HomGroup, Morphism, Pair

lgr = logging.getLogger(__name__)


class Side(StrEnum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


def _require_sealed(cat: FiniteLinearCategory) -> None:
    if not cat.sealed:
        raise CategoryValidationError(f"category {cat.name} has not been validated")


class Ideal:
    """Ideal of a finite linear category, stored as one Howell subgroup of Hom(a,b)
    per pair of objects."""

    def __init__(
        self,
        cat: FiniteLinearCategory,
        side: Side,
        components: dict[Pair, SubgroupBasis],
        anchor: Iterable[int],
        generators: Sequence[Morphism] = (),
        label: str = "",
    ) -> None:
        _require_sealed(cat)
        self.cat = cat
        self.side = Side(side)
        n = cat.n_objects
        self.components = {
            (a, b): components.get((a, b)) or zero_subgroup(cat.hom(a, b).orders)
            for a, b in cartesian(range(n), repeat=2)
        }
        self.anchor = frozenset(anchor)
        self.generators = tuple(generators)
        self.label = label

    @property
    def cls_name(self) -> str:
        return self.__class__.__name__

    def component(self, a: int, b: int) -> SubgroupBasis:
        return self.components[(a, b)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return (
            self.cat is other.cat
            and self.side == other.side
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.side, tuple(sorted(self.components.items()))))

    def __repr__(self):
        support = {
            f"{self.cat.label(a)}->{self.cat.label(b)}": sub.order
            for (a, b), sub in self.components.items()
            if sub.rows
        }
        anchor = [self.cat.label(a) for a in sorted(self.anchor)]
        return f"Ideal({self.label or self.side}, anchor={anchor}, orders={support})"

    def contains(self, f: Morphism) -> bool:
        sub = self.components[(f.source, f.target)]
        return sub.coefficients(f.coords) is not None

    def is_zero(self) -> bool:
        return all(not sub.rows for sub in self.components.values())

    def is_subideal(self, other: "Ideal") -> bool:
        _same_category(self, other)
        return all(
            is_subgroup(sub, other.components[key]) for key, sub in self.components.items()
        )

    def nonzero_pairs(self) -> list[Pair]:
        return [key for key, sub in self.components.items() if sub.rows]

    def elements(self, a: int, b: int) -> Iterator[Morphism]:
        for coords in self.components[(a, b)].elements():
            yield Morphism(a, b, coords)

    def generating_morphisms(self) -> list[Morphism]:
        return [
            Morphism(a, b, row)
            for (a, b), sub in self.components.items()
            for row in sub.rows
        ]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "source": self.cat.label(a),
                "target": self.cat.label(b),
                "order": sub.order,
                "basis": "; ".join(
                    self.cat.describe(Morphism(a, b, r)).split(":")[0] for r in sub.rows
                ),
            }
            for (a, b), sub in sorted(self.components.items())
            if sub.rows
        ]
        return pd.DataFrame(rows, columns=["source", "target", "order", "basis"])

    def to_dict(self) -> dict:
        return {
            "side": str(self.side),
            "anchor": [self.cat.label(a) for a in sorted(self.anchor)],
            "components": self.to_frame().to_dict(orient="records"),
        }


def _same_category(i: Ideal, j: Ideal) -> None:
    if i.cat is not j.cat:
        raise CategoryMismatch("ideals live in different categories")


def _default_anchor(
    cat: FiniteLinearCategory, side: Side, gens: Sequence[Morphism]
) -> frozenset[int]:
    if side == Side.LEFT:
        return frozenset(g.source for g in gens)
    if side == Side.RIGHT:
        return frozenset(g.target for g in gens)
    return frozenset(range(cat.n_objects))


def _closure(
    cat: FiniteLinearCategory, side: Side, components: dict[Pair, SubgroupBasis]
) -> dict[Pair, SubgroupBasis]:
    """Worklist fixpoint of the components under the compositions allowed by `side`."""
    n = cat.n_objects
    comps = {
        (a, b): components.get((a, b)) or zero_subgroup(cat.hom(a, b).orders)
        for a, b in cartesian(range(n), repeat=2)
    }
    queue = deque(key for key, sub in comps.items() if sub.rows)
    queued = set(queue)

    def absorb(key: Pair, new: list[Morphism]) -> None:
        old = comps[key]
        merged = subgroup_sum(old, howell_form((f.coords for f in new), old.ambient))
        if merged != old:
            comps[key] = merged
            if key not in queued:
                queue.append(key)
                queued.add(key)

    while queue:
        a, b = key = queue.popleft()
        queued.discard(key)
        rows = [Morphism(a, b, r) for r in comps[key].rows]
        if side in (Side.LEFT, Side.TWO_SIDED):
            for y in range(n):
                absorb((a, y), [cat.compose(e, r) for e in cat.basis(b, y) for r in rows])
        if side in (Side.RIGHT, Side.TWO_SIDED):
            for x in range(n):
                absorb((x, b), [cat.compose(r, e) for e in cat.basis(x, a) for r in rows])
    return comps


def _components_of(
    cat: FiniteLinearCategory, gens: Iterable[Morphism]
) -> dict[Pair, SubgroupBasis]:
    grouped: dict[Pair, list] = {}
    for g in gens:
        grouped.setdefault((g.source, g.target), []).append(g.coords)
    return {
        key: howell_form(coords, cat.hom(*key).orders) for key, coords in grouped.items()
    }


def saturate(
    cat: FiniteLinearCategory,
    side: Side,
    generators: Sequence[Morphism],
    anchor: Iterable[int] | None = None,
    label: str = "",
) -> Ideal:
    """Smallest ideal of the given side containing `generators`."""
    side = Side(side)
    _require_sealed(cat)
    comps = _closure(cat, side, _components_of(cat, generators))
    anchor = frozenset(anchor) if anchor is not None else _default_anchor(cat, side, generators)
    return Ideal(cat, side, comps, anchor, generators, label)


def zero_ideal(
    cat: FiniteLinearCategory, side: Side, anchor: Iterable[int] | None = None
) -> Ideal:
    anchor = range(cat.n_objects) if anchor is None else anchor
    return Ideal(cat, side, {}, anchor, label="0")


def total_ideal(
    cat: FiniteLinearCategory, side: Side, anchor: Iterable[int] | None = None
) -> Ideal:
    """All morphisms out of (LEFT) or into (RIGHT) the anchor objects."""
    side = Side(side)
    anchor = frozenset(range(cat.n_objects) if anchor is None else anchor)
    n = cat.n_objects
    comps = {}
    for a, b in cartesian(range(n), repeat=2):
        inside = (
            side == Side.TWO_SIDED
            or (side == Side.LEFT and a in anchor)
            or (side == Side.RIGHT and b in anchor)
        )
        if inside:
            comps[(a, b)] = full_subgroup(cat.hom(a, b).orders)
    return Ideal(cat, side, comps, anchor, label="total")


def total_sieve(cat: FiniteLinearCategory, b: int) -> Ideal:
    return total_ideal(cat, Side.RIGHT, [b])


def total_cosieve(cat: FiniteLinearCategory, a: int) -> Ideal:
    return total_ideal(cat, Side.LEFT, [a])


def principal_left(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    """<f| = {psi o f}: components image of psi -> psi o f on Hom(cod f, Y)."""
    _require_sealed(cat)
    comps = {
        (f.source, y): image(cat.precompose_hom(f, y)) for y in range(cat.n_objects)
    }
    return Ideal(cat, Side.LEFT, comps, [f.source], [f], f"<{cat.describe(f)}|")


def principal_right(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    """|f> = {f o phi}: components image of phi -> f o phi on Hom(X, dom f)."""
    _require_sealed(cat)
    comps = {
        (x, f.target): image(cat.postcompose_hom(f, x)) for x in range(cat.n_objects)
    }
    return Ideal(cat, Side.RIGHT, comps, [f.target], [f], f"|{cat.describe(f)}>")


def principal_two_sided(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    return saturate(cat, Side.TWO_SIDED, [f], label=f"<{cat.describe(f)}>")


def is_saturated(ideal: Ideal) -> bool:
    return _closure(ideal.cat, ideal.side, ideal.components) == ideal.components


def _annihilator_sources(
    cat: FiniteLinearCategory, S: "Ideal | Sequence[Morphism]", side: Side
) -> tuple[frozenset[int], list[Morphism]]:
    if isinstance(S, Ideal):
        return S.anchor, S.generating_morphisms()
    gens = list(S)
    if not gens:
        raise EmptyClassError("annihilator of an empty family of morphisms")
    return _default_anchor(cat, Side.LEFT if side == Side.RIGHT else Side.RIGHT, gens), gens


def right_annihilator(
    cat: FiniteLinearCategory,
    S: "Ideal | Sequence[Morphism]",
    config: EngineConstants = DEFAULT_CONFIG,
) -> Ideal:
    """R(S): morphisms phi into the anchor of S with a o phi = 0 for every a in S
    leaving cod phi. A right ideal."""
    anchor, gens = _annihilator_sources(cat, S, Side.RIGHT)
    if not anchor:
        raise EmptyClassError("right annihilator over an empty anchor")
    comps = {}
    for y in anchor:
        out_of_y = [g for g in gens if g.source == y]
        for x in range(cat.n_objects):
            if out_of_y:
                comps[(x, y)] = kernel(cat.stacked_postcompose(out_of_y, x, y))
            else:
                comps[(x, y)] = full_subgroup(cat.hom(x, y).orders)
    result = Ideal(cat, Side.RIGHT, comps, anchor, label="R")
    _check_saturated(result, config, "right_annihilator")
    return result


def left_annihilator(
    cat: FiniteLinearCategory,
    S: "Ideal | Sequence[Morphism]",
    config: EngineConstants = DEFAULT_CONFIG,
) -> Ideal:
    """L(S): morphisms psi out of the anchor of S with psi o a = 0 for every a in S
    entering dom psi. A left ideal."""
    anchor, gens = _annihilator_sources(cat, S, Side.LEFT)
    if not anchor:
        raise EmptyClassError("left annihilator over an empty anchor")
    comps = {}
    for y in anchor:
        into_y = [g for g in gens if g.target == y]
        for z in range(cat.n_objects):
            if into_y:
                comps[(y, z)] = kernel(cat.stacked_precompose(into_y, z, y))
            else:
                comps[(y, z)] = full_subgroup(cat.hom(y, z).orders)
    result = Ideal(cat, Side.LEFT, comps, anchor, label="L")
    _check_saturated(result, config, "left_annihilator")
    return result


def _check_saturated(ideal: Ideal, config: EngineConstants, where: str) -> None:
    if config.CHECK_INVARIANTS and not is_saturated(ideal):
        raise InvariantViolation(f"{where} produced a non-saturated {ideal.side} ideal")


def ker_ideal(I: Ideal) -> Ideal:
    """Ker(I) = R(I)."""
    result = right_annihilator(I.cat, I)
    result.label = f"Ker({I.label})"
    return result


def coker_ideal(I: Ideal) -> Ideal:
    """Coker(I) = L(I)."""
    result = left_annihilator(I.cat, I)
    result.label = f"Coker({I.label})"
    return result


def im_ideal(I: Ideal) -> Ideal:
    """Im(I) = R(L(I)), the kernel of the cokernel."""
    result = right_annihilator(I.cat, left_annihilator(I.cat, I))
    result.label = f"Im({I.label})"
    return result


def coim_ideal(I: Ideal) -> Ideal:
    """Coim(I) = L(R(I)), the cokernel of the kernel."""
    result = left_annihilator(I.cat, right_annihilator(I.cat, I))
    result.label = f"Coim({I.label})"
    return result


def kernel_of(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    result = ker_ideal(principal_left(cat, f))
    result.label = f"Ker({cat.describe(f)})"
    return result


def cokernel_of(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    result = coker_ideal(principal_right(cat, f))
    result.label = f"Coker({cat.describe(f)})"
    return result


def image_of(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    result = im_ideal(principal_right(cat, f))
    result.label = f"Im({cat.describe(f)})"
    return result


def coimage_of(cat: FiniteLinearCategory, f: Morphism) -> Ideal:
    result = coim_ideal(principal_left(cat, f))
    result.label = f"Coim({cat.describe(f)})"
    return result


def is_closed(I: Ideal) -> bool:
    """Right ideals: Im(I) == I. Left ideals: Coim(I) == I."""
    if I.side == Side.RIGHT:
        return im_ideal(I) == I
    if I.side == Side.LEFT:
        return coim_ideal(I) == I
    raise SideMismatch("closedness is defined for one-sided ideals only")


def support(I: Ideal) -> frozenset[int]:
    """Objects the components of I are taken at: sources for left ideals, targets for
    right ideals, every object touched for two-sided ones."""
    pairs = I.nonzero_pairs()
    if I.side == Side.LEFT:
        return frozenset(a for a, _ in pairs)
    if I.side == Side.RIGHT:
        return frozenset(b for _, b in pairs)
    return frozenset(o for pair in pairs for o in pair)


def is_proper(I: Ideal) -> bool:
    """I differs from 0 and from Hom restricted to its support. For a one-sided ideal
    the restriction is every morphism out of (LEFT) or into (RIGHT) a support object,
    for a two-sided one every morphism between support objects."""
    on = support(I)
    if not on:
        return False
    cat = I.cat
    for (a, b), sub in I.components.items():
        if I.side == Side.LEFT:
            inside = a in on
        elif I.side == Side.RIGHT:
            inside = b in on
        else:
            inside = a in on and b in on
        if inside and sub.order < cat.hom_order(a, b):
            return True
    return False


def product(I: Ideal, J: Ideal) -> Ideal:
    """Saturation of {a o b : a in I, b in J}. Left.left stays left (anchor of J),
    right.right stays right (anchor of I), mixed products are two-sided."""
    _same_category(I, J)
    cat = I.cat
    composites = [
        cat.compose(a, b)
        for a in I.generating_morphisms()
        for b in J.generating_morphisms()
        if b.target == a.source
    ]
    if I.side == J.side == Side.LEFT:
        side, anchor = Side.LEFT, J.anchor
    elif I.side == J.side == Side.RIGHT:
        side, anchor = Side.RIGHT, I.anchor
    else:
        side, anchor = Side.TWO_SIDED, frozenset(range(cat.n_objects))
    comps = _closure(cat, side, _components_of(cat, composites))
    return Ideal(cat, side, comps, anchor, composites, f"({I.label})({J.label})")


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    _same_category(I, J)
    if I.side != J.side:
        raise SideMismatch(f"cannot intersect a {I.side} ideal with a {J.side} one")
    comps = {key: intersect(sub, J.components[key]) for key, sub in I.components.items()}
    return Ideal(I.cat, I.side, comps, I.anchor & J.anchor, label=f"{I.label}&{J.label}")


def sum_ideals(I: Ideal, J: Ideal) -> Ideal:
    _same_category(I, J)
    if I.side != J.side:
        raise SideMismatch(f"cannot add a {I.side} ideal to a {J.side} one")
    comps = {key: subgroup_sum(sub, J.components[key]) for key, sub in I.components.items()}
    return Ideal(I.cat, I.side, comps, I.anchor | J.anchor, label=f"{I.label}+{J.label}")


def _candidates(I: Ideal, config: EngineConstants) -> Iterator[Morphism]:
    """Elements of the components at the anchor, pairs in object order."""
    at = 0 if I.side == Side.LEFT else 1
    keys = [key for key in sorted(I.components) if key[at] in I.anchor]
    for key in keys:
        sub = I.components[key]
        if sub.order > config.ENUM_CAP:
            raise EnumerationCapExceeded(sub.order, config.ENUM_CAP, f"ideal component {key}")
    for key in keys:
        yield from I.elements(*key)


def is_free_right(cat: FiniteLinearCategory, k: Morphism) -> bool:
    """phi -> k o phi is injective on every Hom(Y, dom k)."""
    return all(
        kernel(cat.postcompose_hom(k, y)).is_zero() for y in range(cat.n_objects)
    )


def is_free_left(cat: FiniteLinearCategory, c: Morphism) -> bool:
    """psi -> psi o c is injective on every Hom(cod c, Z)."""
    return all(
        kernel(cat.precompose_hom(c, z)).is_zero() for z in range(cat.n_objects)
    )


def _same_components(I: Ideal, J: Ideal) -> bool:
    return I.components == J.components


def is_principal(
    I: Ideal, config: EngineConstants = DEFAULT_CONFIG
) -> Morphism | None:
    """A generator g with I = <g| (left) or I = |g> (right), searched in object order."""
    cat = I.cat
    if I.side == Side.TWO_SIDED:
        raise SideMismatch("principality is searched for one-sided ideals only")
    if I.is_zero():
        anchor = sorted(I.anchor) or [0]
        return cat.zero(anchor[0], anchor[0])
    principal = principal_left if I.side == Side.LEFT else principal_right
    for g in _candidates(I, config):
        if not g.is_zero() and _same_components(principal(cat, g), I):
            return g
    return None


def kernel_exists(
    cat: FiniteLinearCategory, f: Morphism, config: EngineConstants = DEFAULT_CONFIG
) -> Morphism | None:
    """A classical kernel of f: k with Ker(f) = |k> and k free (left cancellable)."""
    K = kernel_of(cat, f)
    for k in _candidates(K, config):
        if _same_components(principal_right(cat, k), K) and is_free_right(cat, k):
            lgr.debug(f"kernel_exists - kernel of {cat.describe(f)} is {cat.describe(k)}")
            return k
    return None


def cokernel_exists(
    cat: FiniteLinearCategory, f: Morphism, config: EngineConstants = DEFAULT_CONFIG
) -> Morphism | None:
    """A classical cokernel of f: c with Coker(f) = <c| and c right cancellable."""
    C = cokernel_of(cat, f)
    for c in _candidates(C, config):
        if _same_components(principal_left(cat, c), C) and is_free_left(cat, c):
            lgr.debug(f"cokernel_exists - cokernel of {cat.describe(f)} is {cat.describe(c)}")
            return c
    return None


def is_mono(cat: FiniteLinearCategory, f: Morphism) -> bool:
    return kernel_of(cat, f).is_zero()


def is_epi(cat: FiniteLinearCategory, f: Morphism) -> bool:
    return cokernel_of(cat, f).is_zero()


def quotient_category(cat: FiniteLinearCategory, I: Ideal) -> FiniteLinearCategory:
    """cat / I for a two-sided ideal I: Hom groups Hom(a,b)/I(a,b) with the induced
    composition. The result remembers `cat` as its parent."""
    if I.side != Side.TWO_SIDED:
        raise SideMismatch("quotient categories need a two-sided ideal")
    if I.cat is not cat:
        raise CategoryMismatch("ideal belongs to another category")
    n = cat.n_objects
    quotients = {
        (a, b): Subquotient.quotient(cat.hom(a, b).orders, I.components[(a, b)])
        for a, b in cartesian(range(n), repeat=2)
    }
    homs = {}
    for (a, b), sq in quotients.items():
        labels = tuple(
            f"[{cat.describe(Morphism(a, b, g)).split(':')[0]}]" for g in sq.generators()
        )
        homs[(a, b)] = HomGroup(a, b, sq.orders, labels)
    structure = {}
    try:
        for a, b, c in cartesian(range(n), repeat=3):
            lifts_ab = [Morphism(a, b, g) for g in quotients[(a, b)].generators()]
            lifts_bc = [Morphism(b, c, g) for g in quotients[(b, c)].generators()]
            structure[(a, b, c)] = tuple(
                tuple(quotients[(a, c)].project(cat.compose(g, f).coords) for f in lifts_ab)
                for g in lifts_bc
            )
        identities = {a: quotients[(a, a)].project(cat.identities[a]) for a in range(n)}
    except ContainmentViolation as exc:
        raise WellDefinednessViolation(f"quotient composition undefined: {exc}") from exc
    qcat = FiniteLinearCategory(
        cat.ring, cat.labels, homs, structure, identities, name=f"{cat.name}/{I.label or 'I'}"
    )
    qcat.parent = cat
    qcat.quotients = quotients
    qcat.seal()
    return qcat


def project_from_parent(qcat: FiniteLinearCategory, f: Morphism) -> Morphism:
    sq = qcat.quotients[(f.source, f.target)]
    return Morphism(f.source, f.target, sq.project(f.coords))


def lift_to_parent(qcat: FiniteLinearCategory, g: Morphism) -> Morphism:
    sq = qcat.quotients[(g.source, g.target)]
    return Morphism(g.source, g.target, sq.lift(g.coords))


class ModuleFamily:
    """Functor X -> I(X)/J(X) attached to nested ideals J <= I of the same side.

    For right ideals the value at X is the subquotient of the direct sum over the
    anchor objects A of Hom(X, A), and a morphism phi: Y -> X acts contravariantly by
    pre-composition. For left ideals the value at X sits in the sum of Hom(A, X) and
    phi: X -> Y acts covariantly by post-composition.
    """

    def __init__(self, top: Ideal, bottom: Ideal, label: str = "") -> None:
        _same_category(top, bottom)
        if top.side != bottom.side:
            raise SideMismatch(f"quotient of a {top.side} ideal by a {bottom.side} one")
        if not bottom.is_subideal(top):
            raise ContainmentViolation(f"{bottom!r} is not contained in {top!r}")
        self.top = top
        self.bottom = bottom
        self.cat = top.cat
        self.side = top.side
        self.label = label or f"{top.label}/{bottom.label}"
        self.anchor = tuple(sorted(top.anchor))
        self.covariant = self.side == Side.LEFT
        self._groups: dict[int, Subquotient] = {}
        self._lock = threading.Lock()

    @property
    def cls_name(self) -> str:
        return self.__class__.__name__

    def __repr__(self):
        return f"{self.cls_name}({self.label})"

    def _pairs(self, x: int) -> list[Pair]:
        return [(a, x) for a in self.anchor] if self.covariant else [(x, a) for a in self.anchor]

    def ambient(self, x: int) -> OrderVector:
        return OrderVector(
            tuple(d for key in self._pairs(x) for d in self.cat.hom(*key).orders)
        )

    def _stack(self, ideal: Ideal, x: int) -> SubgroupBasis:
        ambient = self.ambient(x)
        rows = []
        offset = 0
        for key in self._pairs(x):
            width = self.cat.hom(*key).rank
            for r in ideal.components[key].rows:
                row = [0] * len(ambient)
                row[offset : offset + width] = r
                rows.append(row)
            offset += width
        return howell_form(rows, ambient)

    def group(self, x: int) -> Subquotient:
        with self._lock:
            if x not in self._groups:
                ambient = self.ambient(x)
                self._groups[x] = Subquotient(
                    ambient, self._stack(self.top, x), self._stack(self.bottom, x)
                )
            return self._groups[x]

    def invariants(self, x: int) -> tuple[int, ...]:
        return self.group(x).invariants

    def order(self, x: int) -> int:
        return self.group(x).order

    def is_trivial(self) -> bool:
        return all(self.group(x).is_trivial() for x in range(self.cat.n_objects))

    def _ambient_action(self, phi: Morphism) -> GroupHom:
        if self.covariant:
            blocks = [self.cat.postcompose_hom(phi, a) for a in self.anchor]
        else:
            blocks = [self.cat.precompose_hom(phi, a) for a in self.anchor]
        return block_diagonal(blocks)

    def action(self, phi: Morphism) -> SubquotientMap:
        """Induced map: group(dom phi) -> group(cod phi) for left families,
        group(cod phi) -> group(dom phi) for right families."""
        src, tgt = (phi.source, phi.target) if self.covariant else (phi.target, phi.source)
        return SubquotientMap.from_ambient_hom(
            self._ambient_action(phi), self.group(src), self.group(tgt)
        )

    def check_functoriality(self) -> list[str]:
        """Identity and composition laws of the action on basis morphisms."""
        cat = self.cat
        problems = []
        n = cat.n_objects
        for x in range(n):
            if not self.action(cat.identity(x)).is_identity():
                problems.append(f"identity of {cat.label(x)} acts non-trivially")
        for a, b, c in cartesian(range(n), repeat=3):
            for f, g in cartesian(cat.basis(a, b), cat.basis(b, c)):
                gf = self.action(cat.compose(g, f))
                if self.covariant:
                    other = self.action(g).compose(self.action(f))
                else:
                    other = self.action(f).compose(self.action(g))
                if not gf.same_as(other):
                    problems.append(
                        f"action of {cat.describe(g)} o {cat.describe(f)} is not composite"
                    )
        return problems

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "object": self.cat.label(x),
                "invariants": " ".join(str(d) for d in self.invariants(x)) or "0",
                "order": self.order(x),
            }
            for x in range(self.cat.n_objects)
        ]
        return pd.DataFrame(rows, columns=["object", "invariants", "order"])


def quotient_ideals(I: Ideal, J: Ideal, label: str = "") -> ModuleFamily:
    """(I/J)(X) = I(X)/J(X) for nested ideals J <= I of the same side."""
    return ModuleFamily(I, J, label)


@dataclass
class CompositeIdealReport:
    """<g|f> for A -f-> B -g-> C computed three ways on every pair of objects: the
    product <g|.|f>, the span of the composites psi o g o f o phi over basis morphisms,
    and the two-sided ideal generated by g o f.

    `meet_agrees` records whether <g| and |f> meet in <g o f> at (B, B), the one pair
    where both are taken."""

    f: Morphism
    g: Morphism
    product: Ideal
    pointwise: dict[Pair, SubgroupBasis]
    bilateral: Ideal
    meet_agrees: bool
    witnesses: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.witnesses

    def to_dict(self):
        return {
            "product": sum(sub.order for sub in self.product.components.values()),
            "bilateral": sum(sub.order for sub in self.bilateral.components.values()),
            "meet agrees": self.meet_agrees,
            "holds": self.holds,
            "witnesses": list(self.witnesses),
        }


def _composite_span(
    cat: FiniteLinearCategory, h: Morphism, a: int, b: int
) -> SubgroupBasis:
    composites = [
        cat.compose_all(psi, h, phi).coords
        for psi in cat.basis(h.target, b)
        for phi in cat.basis(a, h.source)
    ]
    return howell_form(composites, cat.hom(a, b).orders)


def composite_ideal_check(
    cat: FiniteLinearCategory, f: Morphism, g: Morphism
) -> CompositeIdealReport:
    if f.target != g.source:
        raise CategoryMismatch(f"{cat.describe(g)} and {cat.describe(f)} do not compose")
    gf = cat.compose(g, f)
    prod = product(principal_left(cat, g), principal_right(cat, f))
    bilateral = principal_two_sided(cat, gf)
    pointwise = {
        key: _composite_span(cat, gf, *key)
        for key in cartesian(range(cat.n_objects), repeat=2)
    }
    shared = (f.target, f.target)
    meet = intersect(
        principal_left(cat, g).components[shared], principal_right(cat, f).components[shared]
    )
    report = CompositeIdealReport(
        f, g, prod, pointwise, bilateral, meet == bilateral.components[shared]
    )
    for key, expected in bilateral.components.items():
        where = f"{cat.label(key[0])}->{cat.label(key[1])}"
        if prod.components[key] != expected:
            report.witnesses.append(f"<g|.|f> differs from <g o f> at {where}")
        if pointwise[key] != expected:
            report.witnesses.append(f"span of psi o g o f o phi differs from <g o f> at {where}")
    return report
