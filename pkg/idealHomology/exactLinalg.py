"""
Tools for ideal-theoretic homology in finite additive categories. Exact linear algebra
over residue rings and finite abelian groups.
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


Every finite abelian group handled here is a product of cyclic groups
Z/d_1 x ... x Z/d_n (an `OrderVector`). Subgroups are kept in Howell form, computed
after embedding the product into (Z/N)^n with N = lcm(d_i) through x_i -> (N/d_i) x_i.
The Howell form is canonical, so two subgroups are equal iff their bases are equal.
Quotients of subgroups are presented through the Smith normal form with transforms.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from math import gcd, lcm, prod

from sympy.core.numbers import igcdex
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

from idealHomology.errors import (
    AmbientMismatch,
    ContainmentViolation,
    EnumerationCapExceeded,
    LinalgInputError,
    ModulusTooLarge,
    WellDefinednessViolation,
)

lgr = logging.getLogger(__name__)

MAX_MODULUS = 2**31

ElementVector = tuple[int, ...]


@dataclass(frozen=True)
class ResidueRing:
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise LinalgInputError(f"modulus must be >= 2, got {self.modulus}")
        if self.modulus > MAX_MODULUS:
            raise ModulusTooLarge(f"modulus {self.modulus} exceeds {MAX_MODULUS}")

    def __repr__(self):
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class OrderVector:
    """Orders (d_1, ..., d_n) of a product of cyclic groups."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        for d in orders:
            if d < 1:
                raise LinalgInputError(f"cyclic order must be >= 1, got {d}")
            if d > MAX_MODULUS:
                raise ModulusTooLarge(f"cyclic order {d} exceeds {MAX_MODULUS}")
        object.__setattr__(self, "orders", orders)

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self) -> Iterator[int]:
        return iter(self.orders)

    def __getitem__(self, i: int) -> int:
        return self.orders[i]

    def __repr__(self):
        return "(" + " x ".join(f"Z/{d}" for d in self.orders) + ")" if self else "0"

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    def reduce(self, x: Sequence[int]) -> ElementVector:
        if len(x) != len(self.orders):
            raise AmbientMismatch(
                f"element of length {len(x)} in ambient of rank {len(self.orders)}"
            )
        return tuple(int(v) % d for v, d in zip(x, self.orders))

    def zero(self) -> ElementVector:
        return (0,) * len(self.orders)

    def basis_vector(self, i: int) -> ElementVector:
        return tuple(1 % d if j == i else 0 for j, d in enumerate(self.orders))

    def elements(self) -> Iterator[ElementVector]:
        return cartesian(*(range(d) for d in self.orders))

    def direct_sum(self, other: "OrderVector") -> "OrderVector":
        return OrderVector(self.orders + other.orders)

    def element_order(self, x: Sequence[int]) -> int:
        x = self.reduce(x)
        return lcm(*(d // gcd(v, d) for v, d in zip(x, self.orders))) if x else 1


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between products of cyclic groups.

    `matrix` has one row per target factor and one column per source factor; column i
    is the image of the i-th generator and must be killed by its order.
    """

    source: OrderVector
    target: OrderVector
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.target):
            raise AmbientMismatch(
                f"matrix has {len(self.matrix)} rows, target rank {len(self.target)}"
            )
        rows = []
        for row, d in zip(self.matrix, self.target):
            if len(row) != len(self.source):
                raise AmbientMismatch(
                    f"matrix row of length {len(row)}, source rank {len(self.source)}"
                )
            rows.append(tuple(int(v) % d for v in row))
        object.__setattr__(self, "matrix", tuple(rows))
        for i, d in enumerate(self.source):
            col = [d * r[i] % t for r, t in zip(rows, self.target)]
            if any(col):
                raise LinalgInputError(
                    f"column {i} is not killed by its order {d}: not a homomorphism"
                )

    @classmethod
    def from_columns(
        cls,
        source: OrderVector,
        target: OrderVector,
        columns: Sequence[Sequence[int]],
    ) -> "GroupHom":
        if len(columns) != len(source):
            raise AmbientMismatch(f"{len(columns)} columns for rank {len(source)}")
        matrix = tuple(
            tuple(columns[i][t] for i in range(len(source))) for t in range(len(target))
        )
        return cls(source, target, matrix)

    @classmethod
    def zero(cls, source: OrderVector, target: OrderVector) -> "GroupHom":
        return cls(source, target, tuple((0,) * len(source) for _ in target))

    @classmethod
    def identity(cls, ambient: OrderVector) -> "GroupHom":
        n = len(ambient)
        return cls(
            ambient, ambient, tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        )

    def column(self, i: int) -> ElementVector:
        return tuple(row[i] for row in self.matrix)

    def apply(self, x: Sequence[int]) -> ElementVector:
        x = self.source.reduce(x)
        return tuple(
            sum(a * b for a, b in zip(row, x)) % d for row, d in zip(self.matrix, self.target)
        )

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target != self.source:
            raise AmbientMismatch(f"cannot compose {self.source} after {inner.target}")
        return GroupHom.from_columns(
            inner.source,
            self.target,
            [self.apply(inner.column(i)) for i in range(len(inner.source))],
        )

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)


def stack_homs(source: OrderVector, homs: Sequence[GroupHom]) -> GroupHom:
    """x -> (h_1(x), ..., h_k(x)) for homomorphisms sharing `source`."""
    target = OrderVector(tuple(d for h in homs for d in h.target))
    for h in homs:
        if h.source != source:
            raise AmbientMismatch(f"stacked map with source {h.source}, expected {source}")
    return GroupHom(source, target, tuple(r for h in homs for r in h.matrix))


def block_diagonal(homs: Sequence[GroupHom]) -> GroupHom:
    source = OrderVector(tuple(d for h in homs for d in h.source))
    target = OrderVector(tuple(d for h in homs for d in h.target))
    columns = []
    offset = 0
    for h in homs:
        for i in range(len(h.source)):
            col = [0] * len(target)
            col[offset : offset + len(h.target)] = h.column(i)
            columns.append(col)
        offset += len(h.target)
    return GroupHom.from_columns(source, target, columns)


# Howell form over Z/N


def _combine(r1: list[int], r2: list[int], col: int, N: int) -> tuple[list[int], list[int]]:
    a, b = r1[col], r2[col]
    s, t, g = igcdex(a, b)
    s, t, g = int(s), int(t), int(g)
    top = [(s * u + t * v) % N for u, v in zip(r1, r2)]
    low = [(-(b // g) * u + (a // g) * v) % N for u, v in zip(r1, r2)]
    return top, low


def _normalize(row: list[int], col: int, N: int) -> list[int]:
    a = row[col]
    g = gcd(a, N)
    if a == g:
        return row
    step = N // g
    u = pow(a // g, -1, step)
    while gcd(u, N) != 1:
        u += step
    return [(u * v) % N for v in row]


def _howell_rows(rows: Iterable[Sequence[int]], ncols: int, N: int) -> list[tuple[int, list[int]]]:
    """(pivot column, row) pairs of the Howell form of the row span over Z/N."""
    if N == 1:
        return []
    work = [r for r in ([int(v) % N for v in row] for row in rows) if any(r)]
    result: list[tuple[int, list[int]]] = []
    for col in range(ncols):
        pivot = None
        rest = []
        for r in work:
            if r[col] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                pivot, low = _combine(pivot, r, col, N)
                if any(low):
                    rest.append(low)
        if pivot is not None:
            pivot = _normalize(pivot, col, N)
            ann = [((N // pivot[col]) * v) % N for v in pivot]
            if any(ann):
                rest.append(ann)
            result.append((col, pivot))
        work = rest
    for idx, (col, row) in enumerate(result):
        p = row[col]
        for j in range(idx):
            c2, r2 = result[j]
            q = r2[col] // p
            if q:
                result[j] = (c2, [(u - q * v) % N for u, v in zip(r2, row)])
    return result


def _reduce(
    howell: Sequence[tuple[int, list[int]]], x: Sequence[int], N: int
) -> tuple[list[int], list[int]]:
    """Greedy reduction of `x` by Howell rows: (remainder, coefficients)."""
    x = list(x)
    coeffs = []
    for col, row in howell:
        q = x[col] // row[col]
        coeffs.append(q)
        if q:
            x = [(u - q * v) % N for u, v in zip(x, row)]
    return x, coeffs


def _scales(ambient: OrderVector, N: int) -> list[int]:
    return [N // d for d in ambient]


def _embed(x: Sequence[int], scales: Sequence[int], N: int) -> list[int]:
    return [(int(v) * s) % N for v, s in zip(x, scales)]


@dataclass(frozen=True)
class SubgroupBasis:
    """Subgroup of `ambient` given by its (canonical) Howell basis rows."""

    ambient: OrderVector
    rows: tuple[ElementVector, ...]

    def __repr__(self):
        return f"<{', '.join(map(str, self.rows))}> in {self.ambient}"

    @cached_property
    def _embedded(self) -> list[tuple[int, list[int]]]:
        N = self.ambient.exponent
        scales = _scales(self.ambient, N)
        result = []
        for r in self.rows:
            e = _embed(r, scales, N)
            result.append((next(i for i, v in enumerate(e) if v), e))
        return result

    @cached_property
    def generator_orders(self) -> tuple[int, ...]:
        """Coefficient ranges: every element is uniquely sum c_i rows_i, 0 <= c_i < o_i."""
        N = self.ambient.exponent
        return tuple(N // row[col] for col, row in self._embedded)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        """Orders of the basis rows as elements; each is a multiple of the coefficient range."""
        return tuple(self.ambient.element_order(r) for r in self.rows)

    @cached_property
    def order(self) -> int:
        return prod(self.generator_orders)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return self.order == self.ambient.order

    def coefficients(self, x: Sequence[int]) -> list[int] | None:
        """Coefficients of `x` over the basis rows, None when x is not a member."""
        N = self.ambient.exponent
        start = _embed(self.ambient.reduce(x), _scales(self.ambient, N), N)
        rem, coeffs = _reduce(self._embedded, start, N)
        return None if any(rem) else coeffs

    def combine(self, coeffs: Sequence[int]) -> ElementVector:
        acc = [0] * len(self.ambient)
        for c, r in zip(coeffs, self.rows):
            acc = [u + c * v for u, v in zip(acc, r)]
        return self.ambient.reduce(acc)

    def elements(self) -> Iterator[ElementVector]:
        for coeffs in cartesian(*(range(o) for o in self.generator_orders)):
            yield self.combine(coeffs)


def howell_form(generators: Iterable[Sequence[int]], ambient: OrderVector) -> SubgroupBasis:
    """Canonical basis of the subgroup spanned by `generators`."""
    N = ambient.exponent
    scales = _scales(ambient, N)
    embedded = [_embed(ambient.reduce(g), scales, N) for g in generators]
    rows = _howell_rows(embedded, len(ambient), N)
    return SubgroupBasis(
        ambient, tuple(tuple(v // s for v, s in zip(row, scales)) for _, row in rows)
    )


def zero_subgroup(ambient: OrderVector) -> SubgroupBasis:
    return SubgroupBasis(ambient, ())


def full_subgroup(ambient: OrderVector) -> SubgroupBasis:
    return howell_form((ambient.basis_vector(i) for i in range(len(ambient))), ambient)


def contains(sub: SubgroupBasis, x: Sequence[int]) -> bool:
    return sub.coefficients(x) is not None


def is_subgroup(a: SubgroupBasis, b: SubgroupBasis) -> bool:
    """a is contained in b."""
    _same_ambient(a, b)
    return all(contains(b, r) for r in a.rows)


def _same_ambient(a: SubgroupBasis, b: SubgroupBasis) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"subgroups of {a.ambient} and {b.ambient}")


def subgroup_sum(a: SubgroupBasis, b: SubgroupBasis) -> SubgroupBasis:
    _same_ambient(a, b)
    return howell_form(a.rows + b.rows, a.ambient)


def intersect(a: SubgroupBasis, b: SubgroupBasis) -> SubgroupBasis:
    _same_ambient(a, b)
    ambient = a.ambient
    n = len(ambient)
    N = ambient.exponent
    scales = _scales(ambient, N)
    rows = [_embed(r, scales, N) * 2 for r in a.rows]
    rows += [_embed(r, scales, N) + [0] * n for r in b.rows]
    meet = [row[n:] for col, row in _howell_rows(rows, 2 * n, N) if col >= n]
    return howell_form(
        (tuple(v // s for v, s in zip(row, scales)) for row in meet), ambient
    )


def _graph_rows(h: GroupHom, N: int) -> list[list[int]]:
    """Rows (h(e_i) | e_i), target block first, embedded in (Z/N)^(k+n)."""
    t_scales = _scales(h.target, N)
    s_scales = _scales(h.source, N)
    n = len(h.source)
    rows = []
    for i in range(n):
        row = _embed(h.column(i), t_scales, N)
        row += [s_scales[i] if j == i else 0 for j in range(n)]
        rows.append(row)
    return rows


def kernel(h: GroupHom) -> SubgroupBasis:
    k, n = len(h.target), len(h.source)
    N = lcm(h.source.exponent, h.target.exponent)
    scales = _scales(h.source, N)
    found = []
    for col, row in _howell_rows(_graph_rows(h, N), k + n, N):
        if col >= k:
            found.append(tuple(v // s for v, s in zip(row[k:], scales)))
    return howell_form(found, h.source)


def image(h: GroupHom) -> SubgroupBasis:
    return howell_form((h.column(i) for i in range(len(h.source))), h.target)


def solve(h: GroupHom, y: Sequence[int]) -> ElementVector | None:
    """Some x with h(x) = y, or None when y is not in the image."""
    k, n = len(h.target), len(h.source)
    N = lcm(h.source.exponent, h.target.exponent)
    howell = [
        (col, row) for col, row in _howell_rows(_graph_rows(h, N), k + n, N) if col < k
    ]
    start = _embed(h.target.reduce(y), _scales(h.target, N), N) + [0] * n
    rem, _ = _reduce(howell, start, N)
    if any(rem[:k]):
        return None
    scales = _scales(h.source, N)
    x = tuple(((-v) % N) // s for v, s in zip(rem[k:], scales))
    return h.source.reduce(x)


def _domain_matrix(rows: Sequence[Sequence[int]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (len(rows), ncols), ZZ)


def quotient_invariants(ambient: OrderVector, sub: SubgroupBasis) -> tuple[int, ...]:
    """Invariant factors (all > 1, divisibility chain) of ambient / sub."""
    if sub.ambient != ambient:
        raise AmbientMismatch(f"subgroup of {sub.ambient} in {ambient}")
    n = len(ambient)
    if n == 0:
        return ()
    rows = [list(r) for r in sub.rows]
    rows += [[d if j == i else 0 for j in range(n)] for i, d in enumerate(ambient)]
    factors = invariant_factors(_domain_matrix(rows, n))
    return tuple(f for f in (abs(int(v)) for v in factors) if f > 1)


def enumerate_subgroup(sub: SubgroupBasis, cap: int, what: str = "") -> list[ElementVector]:
    if sub.order > cap:
        raise EnumerationCapExceeded(sub.order, cap, what)
    return list(sub.elements())


# Subquotients


@dataclass(frozen=True)
class _Presentation:
    orders: OrderVector
    kept: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]
    relations: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Subquotient:
    """top / bottom inside `ambient`, presented as a product of cyclic groups."""

    ambient: OrderVector
    top: SubgroupBasis
    bottom: SubgroupBasis

    def __post_init__(self):
        if self.top.ambient != self.ambient or self.bottom.ambient != self.ambient:
            raise AmbientMismatch("subquotient parts live in different ambients")
        if not is_subgroup(self.bottom, self.top):
            raise ContainmentViolation(f"{self.bottom} is not inside {self.top}")

    @classmethod
    def quotient(cls, ambient: OrderVector, bottom: SubgroupBasis) -> "Subquotient":
        return cls(ambient, full_subgroup(ambient), bottom)

    @cached_property
    def _presentation(self) -> _Presentation:
        k = len(self.top.rows)
        if k == 0:
            return _Presentation(OrderVector(()), (), (), (), ())
        # carries such as (N/p) row_i = row_j come back through the kernel
        gen_orders = self.top.element_orders
        bot_orders = tuple(self.ambient.element_order(r) for r in self.bottom.rows)
        columns = list(self.top.rows) + [
            tuple(-v for v in r) for r in self.bottom.rows
        ]
        rel_map = GroupHom.from_columns(
            OrderVector(gen_orders + bot_orders), self.ambient, columns
        )
        relations = [tuple(r[:k]) for r in kernel(rel_map).rows]
        rows = [list(r) for r in relations]
        rows += [[o if j == i else 0 for j in range(k)] for i, o in enumerate(gen_orders)]
        smf, _, t = smith_normal_decomp(_domain_matrix(rows, k))
        diag = [abs(int(v)) for v in (smf.to_Matrix()[i, i] for i in range(k))]
        t_mat = t.to_Matrix()
        t_inv = t_mat.inv()
        kept = tuple(i for i, d in enumerate(diag) if d != 1)
        return _Presentation(
            OrderVector(tuple(diag[i] for i in kept)),
            kept,
            tuple(tuple(int(t_mat[i, j]) for j in range(k)) for i in range(k)),
            tuple(tuple(int(t_inv[i, j]) for j in range(k)) for i in range(k)),
            tuple(relations),
        )

    @property
    def orders(self) -> OrderVector:
        return self._presentation.orders

    @property
    def invariants(self) -> tuple[int, ...]:
        return self._presentation.orders.orders

    @property
    def order(self) -> int:
        return self.orders.order

    def is_trivial(self) -> bool:
        return not self.invariants

    def project_coefficients(self, coeffs: Sequence[int]) -> ElementVector:
        pres = self._presentation
        k = len(coeffs)
        y = [sum(coeffs[i] * pres.transform[i][j] for i in range(k)) for j in range(k)]
        return pres.orders.reduce([y[j] for j in pres.kept])

    def project(self, x: Sequence[int]) -> ElementVector:
        """Class of x (which must lie in top) in the presented quotient."""
        coeffs = self.top.coefficients(x)
        if coeffs is None:
            raise ContainmentViolation(f"{tuple(x)} is not in {self.top}")
        return self.project_coefficients(coeffs)

    def lift_coefficients(self, y: Sequence[int]) -> list[int]:
        pres = self._presentation
        k = len(pres.transform)
        full = [0] * k
        for j, v in zip(pres.kept, pres.orders.reduce(y)):
            full[j] = v
        return [sum(full[j] * pres.inverse[j][i] for j in range(k)) for i in range(k)]

    def lift(self, y: Sequence[int]) -> ElementVector:
        """A representative in top of the class with coordinates y."""
        return self.top.combine(self.lift_coefficients(y))

    def generators(self) -> list[ElementVector]:
        return [self.lift(self.orders.basis_vector(i)) for i in range(len(self.orders))]

    def relations(self) -> tuple[tuple[int, ...], ...]:
        """Coefficient vectors over the top rows whose combination lies in bottom."""
        return self._presentation.relations

    def is_zero_class(self, x: Sequence[int]) -> bool:
        return contains(self.bottom, x)


@dataclass(frozen=True)
class SubquotientMap:
    """Map between subquotients given by the images of the source top rows."""

    source: Subquotient
    target: Subquotient
    images: tuple[ElementVector, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.top.rows):
            raise AmbientMismatch(
                f"{len(self.images)} images for {len(self.source.top.rows)} generators"
            )
        images = tuple(self.target.ambient.reduce(x) for x in self.images)
        object.__setattr__(self, "images", images)
        for x in images:
            if not contains(self.target.top, x):
                raise WellDefinednessViolation(f"image {x} leaves {self.target.top}")
        for o, x in zip(self.source.top.element_orders, images):
            if not contains(self.target.bottom, tuple(o * v for v in x)):
                raise WellDefinednessViolation(f"{o} * {x} is not in {self.target.bottom}")
        for rel in self.source.relations():
            if not contains(self.target.bottom, self._combine(rel)):
                raise WellDefinednessViolation(
                    f"relation {rel} is not sent into {self.target.bottom}"
                )

    def _combine(self, coeffs: Sequence[int]) -> ElementVector:
        acc = [0] * len(self.target.ambient)
        for c, x in zip(coeffs, self.images):
            acc = [u + c * v for u, v in zip(acc, x)]
        return self.target.ambient.reduce(acc)

    @classmethod
    def from_ambient_hom(
        cls, h: GroupHom, source: Subquotient, target: Subquotient
    ) -> "SubquotientMap":
        if h.source != source.ambient or h.target != target.ambient:
            raise AmbientMismatch("ambient map does not match the subquotients")
        return cls(source, target, tuple(h.apply(r) for r in source.top.rows))

    def apply(self, x: Sequence[int]) -> ElementVector:
        """Image (representative in the target ambient) of x in source top."""
        coeffs = self.source.top.coefficients(x)
        if coeffs is None:
            raise ContainmentViolation(f"{tuple(x)} is not in {self.source.top}")
        return self._combine(coeffs)

    def apply_class(self, y: Sequence[int]) -> ElementVector:
        return self.target.project(self._combine(self.source.lift_coefficients(y)))

    def as_group_hom(self) -> GroupHom:
        columns = [
            self.apply_class(self.source.orders.basis_vector(i))
            for i in range(len(self.source.orders))
        ]
        return GroupHom.from_columns(self.source.orders, self.target.orders, columns)

    def compose(self, inner: "SubquotientMap") -> "SubquotientMap":
        """self o inner."""
        if inner.target != self.source:
            raise AmbientMismatch("composing maps between different subquotients")
        return SubquotientMap(inner.source, self.target, tuple(self.apply(x) for x in inner.images))

    def same_as(self, other: "SubquotientMap") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        return all(
            contains(self.target.bottom, tuple(a - b for a, b in zip(x, y)))
            for x, y in zip(self.images, other.images)
        )

    def is_zero(self) -> bool:
        return all(contains(self.target.bottom, x) for x in self.images)

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        return all(
            contains(self.target.bottom, tuple(a - b for a, b in zip(x, r)))
            for x, r in zip(self.images, self.source.top.rows)
        )

    def kernel_subgroup(self) -> SubgroupBasis:
        """Elements of the source top sent into the target bottom."""
        L = lcm(self.source.ambient.exponent, self.target.ambient.exponent)
        k = len(self.images)
        coeff_orders = OrderVector((L,) * (k + len(self.target.bottom.rows)))
        columns = list(self.images) + [
            tuple(-v for v in r) for r in self.target.bottom.rows
        ]
        h = GroupHom.from_columns(coeff_orders, self.target.ambient, columns)
        found = [self.source.top.combine(r[:k]) for r in kernel(h).rows]
        return subgroup_sum(howell_form(found, self.source.ambient), self.source.bottom)

    def image_subgroup(self) -> SubgroupBasis:
        return subgroup_sum(
            howell_form(self.images, self.target.ambient), self.target.bottom
        )


def exact_at(inner: SubquotientMap, outer: SubquotientMap) -> bool:
    """Image of `inner` equals kernel of `outer` in their common subquotient."""
    if inner.target != outer.source:
        raise AmbientMismatch("maps do not meet in a common subquotient")
    return inner.image_subgroup() == outer.kernel_subgroup()


def induced_on_quotient(
    h: GroupHom, sub_source: SubgroupBasis, sub_target: SubgroupBasis
) -> GroupHom:
    """Map source/sub_source -> target/sub_target induced by h."""
    for r in sub_source.rows:
        if not contains(sub_target, h.apply(r)):
            raise WellDefinednessViolation(
                f"h sends {r} outside {sub_target}: no induced map"
            )
    source = Subquotient.quotient(h.source, sub_source)
    target = Subquotient.quotient(h.target, sub_target)
    return SubquotientMap.from_ambient_hom(h, source, target).as_group_hom()
