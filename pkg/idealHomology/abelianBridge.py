"""
Tools for ideal-theoretic homology in finite additive categories. Bridge to classical
homology of complexes of Z/m-modules.
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


For a projective P the right ideal homology evaluated at P is Hom(P, H_n) of the
classical homology. The long exact sequence check applies Hom(P, -) degreewise and
computes the snake map there, so its connecting map is the classical one transported
along that identification.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import gcd

import pandas as pd
from sympy import factorint

from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import (
    GeneratorMissing,
    NotAModuleModel,
    NotProjective,
    NotShortExact,
)
from idealHomology.exactLinalg import (
    GroupHom,
    OrderVector,
    Subquotient,
    SubquotientMap,
    exact_at,
    full_subgroup,
    image,
    kernel,
    quotient_invariants,
    solve,
    zero_subgroup,
)
from idealHomology.homology import ChainComplex, ChainMap, right_homology
from idealHomology.linCat import FiniteLinearCategory

lgr = logging.getLogger(__name__)

TRANSPORTED = "classical, transported"


def _require_model(cat: FiniteLinearCategory) -> None:
    if not cat.is_module_model:
        raise NotAModuleModel(f"{cat.name} is not a module model category")


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_projective(cat: FiniteLinearCategory, obj: int) -> bool:
    """Z/c is projective over Z/m iff c keeps the full power of every prime of m
    dividing it."""
    _require_model(cat)
    m = cat.ring.modulus
    return all(
        _valuation(c, p) == _valuation(m, p)
        for c in cat.decompositions[obj]
        for p in factorint(c)
    )


def is_generator(cat: FiniteLinearCategory, obj: int) -> bool:
    """Projective with annihilator zero."""
    _require_model(cat)
    module = cat.module_group(obj)
    return is_projective(cat, obj) and module.exponent == cat.ring.modulus


def projective_by_lifting(
    cat: FiniteLinearCategory, obj: int, config: EngineConstants = DEFAULT_CONFIG
) -> bool:
    """Brute-force lifting property inside the category: every map into the target
    of a surjection between declared objects lifts along it."""
    _require_model(cat)
    n = cat.n_objects
    for b in range(n):
        for c in range(n):
            targets = full_subgroup(cat.module_group(c))
            for g in cat.morphisms(b, c, config.ENUM_CAP):
                if image(cat.module_hom(g)) != targets:
                    continue
                lifts = image(cat.postcompose_hom(g, obj))
                if not lifts.is_full():
                    lgr.debug(
                        f"projective_by_lifting - {cat.label(obj)} fails to lift "
                        f"along {cat.describe(g)}"
                    )
                    return False
    return True


def classical_cycles(C: ChainComplex, n: int):
    cat = C.cat
    d = C.d(n)
    ambient = cat.module_group(C.objects[n])
    return full_subgroup(ambient) if d is None else kernel(cat.module_hom(d))


def classical_boundaries(C: ChainComplex, n: int):
    cat = C.cat
    d = C.d(n + 1)
    ambient = cat.module_group(C.objects[n])
    return zero_subgroup(ambient) if d is None else image(cat.module_hom(d))


def classical_homology(C: ChainComplex, n: int) -> Subquotient:
    """H_n of the underlying complex of abelian groups."""
    _require_model(C.cat)
    ambient = C.cat.module_group(C.objects[n])
    return Subquotient(ambient, classical_cycles(C, n), classical_boundaries(C, n))


def hom_into_invariants(projective: Sequence[int], invariants: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of Hom(sum Z/p_k, sum Z/h_l) = sum Z/gcd(p_k, h_l)."""
    orders = OrderVector(tuple(gcd(p, h) for p in projective for h in invariants))
    return quotient_invariants(orders, zero_subgroup(orders))


@dataclass
class RepresentabilityRow:
    degree: int
    obj: str
    ideal: tuple[int, ...]
    classical: tuple[int, ...]

    @property
    def match(self) -> bool:
        return self.ideal == self.classical

    def to_dict(self):
        return {
            "degree": self.degree,
            "P": self.obj,
            "ideal H(P)": " ".join(map(str, self.ideal)) or "0",
            "Hom(P, H)": " ".join(map(str, self.classical)) or "0",
            "match": self.match,
        }


def _representability_rows(C: ChainComplex, objs: Sequence[int]) -> list[RepresentabilityRow]:
    cat = C.cat
    rows = []
    for n in reversed(C.degrees):
        family = right_homology(C, n)
        invariants = classical_homology(C, n).invariants
        for obj in objs:
            classical = hom_into_invariants(cat.decompositions[obj], invariants)
            rows.append(RepresentabilityRow(n, cat.label(obj), family.invariants(obj), classical))
    return rows


def representability_check(C: ChainComplex, P: int) -> list[RepresentabilityRow]:
    """Ideal homology at a projective P against Hom(P, H_n) degree by degree."""
    _require_model(C.cat)
    if not is_projective(C.cat, P):
        raise NotProjective(f"{C.cat.label(P)} is not projective")
    return _representability_rows(C, [P])


def representability_table(C: ChainComplex) -> list[RepresentabilityRow]:
    """representability_check for every projective object, degree-major."""
    cat = C.cat
    _require_model(cat)
    projectives = [P for P in range(cat.n_objects) if is_projective(cat, P)]
    return _representability_rows(C, projectives)


def nonprojective_counterexample_search(
    C: ChainComplex, Q: int
) -> RepresentabilityRow | None:
    """First degree where ideal homology at Q differs from Hom(Q, H_n)."""
    _require_model(C.cat)
    for row in _representability_rows(C, [Q]):
        if not row.match:
            return row
    return None


@dataclass
class GeneratorRow:
    degree: int
    ideal_trivial: bool
    classical_trivial: bool

    def to_dict(self):
        return {
            "degree": self.degree,
            "ideal exact": self.ideal_trivial,
            "classical exact": self.classical_trivial,
        }


def generator_corollary_check(C: ChainComplex) -> list[GeneratorRow]:
    """With a projective generator among the objects, ideal exactness and classical
    exactness coincide in every degree."""
    cat = C.cat
    _require_model(cat)
    if not any(is_generator(cat, a) for a in range(cat.n_objects)):
        raise GeneratorMissing(f"{cat.name} contains no projective generator")
    return [
        GeneratorRow(
            n, right_homology(C, n).is_trivial(), classical_homology(C, n).is_trivial()
        )
        for n in reversed(C.degrees)
    ]


@dataclass
class ShortExactSequence:
    """0 -> A -i-> B -q-> C -> 0 of complexes, exact in every degree."""

    i: ChainMap
    q: ChainMap

    def __post_init__(self):
        if self.i.target is not self.q.source:
            raise NotShortExact("the two chain maps do not meet")
        cat = self.i.cat
        _require_model(cat)
        for f in (self.i, self.q):
            bad = f.problems()
            if bad:
                raise NotShortExact(f"not a chain map in degrees {bad}")
        for n in self.degrees:
            a, b, c = (X.obj(n) for X in (self.A, self.B, self.C))
            i_group = self._module_map(self.i, n)
            q_group = self._module_map(self.q, n)
            if not kernel(i_group).is_zero():
                raise NotShortExact(f"i_{n} is not injective")
            if image(i_group) != kernel(q_group):
                raise NotShortExact(f"image of i_{n} differs from kernel of q_{n}")
            if not image(q_group).is_full():
                raise NotShortExact(f"q_{n} is not surjective")
            lgr.debug(f"ShortExactSequence - degree {n} objects {a}, {b}, {c} exact")

    @property
    def A(self) -> ChainComplex:
        return self.i.source

    @property
    def B(self) -> ChainComplex:
        return self.i.target

    @property
    def C(self) -> ChainComplex:
        return self.q.target

    @property
    def degrees(self) -> list[int]:
        return sorted(set(self.A.degrees) | set(self.B.degrees) | set(self.C.degrees))

    def _module_map(self, f: ChainMap, n: int) -> GroupHom:
        cat = f.cat
        src = cat.module_group(f.source.obj(n)) if f.source.obj(n) is not None else OrderVector(())
        tgt = cat.module_group(f.target.obj(n)) if f.target.obj(n) is not None else OrderVector(())
        comp = f.component(n)
        return GroupHom.zero(src, tgt) if comp is None else cat.module_hom(comp)


class _HomComplex:
    """Hom(P, K) as a complex of finite abelian groups."""

    def __init__(self, K: ChainComplex, P: int) -> None:
        self.K = K
        self.P = P
        self.cat = K.cat

    def group(self, n: int) -> OrderVector:
        o = self.K.obj(n)
        return OrderVector(()) if o is None else self.cat.hom(self.P, o).orders

    def differential(self, n: int) -> GroupHom:
        d = self.K.d(n)
        if d is None:
            return GroupHom.zero(self.group(n), self.group(n - 1))
        return self.cat.postcompose_hom(d, self.P)

    def homology(self, n: int) -> Subquotient:
        ambient = self.group(n)
        return Subquotient(ambient, kernel(self.differential(n)), image(self.differential(n + 1)))


def _hom_chain_map(f: ChainMap, P: int, src: _HomComplex, tgt: _HomComplex, n: int) -> GroupHom:
    comp = f.component(n)
    if comp is None:
        return GroupHom.zero(src.group(n), tgt.group(n))
    return f.cat.postcompose_hom(comp, P)


def _induced(f: ChainMap, P: int, src: _HomComplex, tgt: _HomComplex, n: int) -> SubquotientMap:
    return SubquotientMap.from_ambient_hom(
        _hom_chain_map(f, P, src, tgt, n), src.homology(n), tgt.homology(n)
    )


def _connecting(
    ses: ShortExactSequence, P: int, hA: _HomComplex, hB: _HomComplex, hC: _HomComplex, n: int
) -> SubquotientMap:
    """Snake map H_n(Hom(P, C)) -> H_{n-1}(Hom(P, A))."""
    source, target = hC.homology(n), hA.homology(n - 1)
    q_n = _hom_chain_map(ses.q, P, hB, hC, n)
    i_lower = _hom_chain_map(ses.i, P, hA, hB, n - 1)
    d_B = hB.differential(n)
    images = []
    for z in source.top.rows:
        b = solve(q_n, z)
        if b is None:
            raise NotProjective(f"Hom({ses.B.cat.label(P)}, q_{n}) is not surjective")
        a = solve(i_lower, d_B.apply(b))
        if a is None:
            raise NotShortExact(f"d(b) does not come from A in degree {n - 1}")
        images.append(a)
    return SubquotientMap(source, target, tuple(images))


def connecting_map(ses: ShortExactSequence, P: int, n: int) -> SubquotientMap:
    cat = ses.i.cat
    hA, hB, hC = (_HomComplex(X, P) for X in (ses.A, ses.B, ses.C))
    if not is_projective(cat, P):
        raise NotProjective(f"{cat.label(P)} is not projective")
    return _connecting(ses, P, hA, hB, hC, n)


@dataclass
class ConnectingReport:
    obj: str
    rows: list[dict] = field(default_factory=list)
    delta_kind: str = TRANSPORTED

    @property
    def exact(self) -> bool:
        return all(r["exact"] for r in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["joint", "exact"])

    def to_dict(self):
        return {"P": self.obj, "delta": self.delta_kind, "exact": self.exact, "joints": self.rows}


def connecting_sequence_check(ses: ShortExactSequence, P: int) -> ConnectingReport:
    """Exactness of ... -> H_n(A)(P) -> H_n(B)(P) -> H_n(C)(P) -> H_{n-1}(A)(P) -> ...
    at every joint."""
    cat = ses.i.cat
    if not is_projective(cat, P):
        raise NotProjective(f"{cat.label(P)} is not projective")
    hA, hB, hC = (_HomComplex(X, P) for X in (ses.A, ses.B, ses.C))
    degrees = ses.degrees
    lo, hi = degrees[0], degrees[-1]
    report = ConnectingReport(cat.label(P))
    alpha = {n: _induced(ses.i, P, hA, hB, n) for n in degrees}
    beta = {n: _induced(ses.q, P, hB, hC, n) for n in degrees}
    delta = {n: _connecting(ses, P, hA, hB, hC, n) for n in degrees if n > lo}
    top = alpha[hi]
    report.rows.append(
        {"joint": f"H_{hi}(A)", "exact": top.kernel_subgroup() == top.source.bottom}
    )
    for n in reversed(degrees):
        report.rows.append({"joint": f"H_{n}(B)", "exact": exact_at(alpha[n], beta[n])})
        if n > lo:
            report.rows.append({"joint": f"H_{n}(C)", "exact": exact_at(beta[n], delta[n])})
            report.rows.append(
                {"joint": f"H_{n - 1}(A)", "exact": exact_at(delta[n], alpha[n - 1])}
            )
    bottom = beta[lo]
    report.rows.append(
        {"joint": f"H_{lo}(C)", "exact": bottom.image_subgroup() == bottom.target.top}
    )
    lgr.info(
        f"connecting_sequence_check - P={cat.label(P)}: "
        f"{sum(r['exact'] for r in report.rows)}/{len(report.rows)} joints exact"
    )
    return report


def delta_naturality_check(
    first: ShortExactSequence,
    second: ShortExactSequence,
    maps: tuple[ChainMap, ChainMap, ChainMap],
    P: int,
    n: int,
) -> bool:
    """delta_2 o H_n(f_C) == H_{n-1}(f_A) o delta_1 for a morphism (f_A, f_B, f_C) of
    short exact sequences."""
    f_A, _, f_C = maps
    h1 = [_HomComplex(X, P) for X in (first.A, first.B, first.C)]
    h2 = [_HomComplex(X, P) for X in (second.A, second.B, second.C)]
    delta_1 = _connecting(first, P, *h1, n)
    delta_2 = _connecting(second, P, *h2, n)
    left = delta_2.compose(_induced(f_C, P, h1[2], h2[2], n))
    right = _induced(f_A, P, h1[0], h2[0], n - 1).compose(delta_1)
    return left.same_as(right)
