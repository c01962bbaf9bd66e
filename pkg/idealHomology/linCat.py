"""
Tools for ideal-theoretic homology in finite additive categories. Finite linear
categories over Z/m given by structure constants.
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
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import gcd
from typing import Self

import pandas as pd

from idealHomology.errors import (
    AmbientMismatch,
    CategoryValidationError,
    ComposabilityError,
    EnumerationCapExceeded,
    NotAModuleModel,
    UnknownObject,
)
from idealHomology.exactLinalg import (
    ElementVector,
    GroupHom,
    OrderVector,
    ResidueRing,
    stack_homs,
)
from idealHomology.printColors import Pcolors as ppc

lgr = logging.getLogger(__name__)

Pair = tuple[int, int]
Triple = tuple[int, int, int]
# structure[(a, b, c)][j][i] = coordinates of e_j o e_i, e_i in Hom(a,b), e_j in Hom(b,c)
StructureConstants = dict[Triple, tuple[tuple[ElementVector, ...], ...]]


@dataclass(frozen=True)
class ObjectId:
    index: int
    label: str

    def __repr__(self):
        return self.label


@dataclass(frozen=True)
class HomGroup:
    source: int
    target: int
    orders: OrderVector
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return self.orders.order


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    coords: ElementVector

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"Morphism({self.source}->{self.target}: {self.coords})"


@dataclass
class Violation:
    kind: str
    witness: tuple[str, ...]
    detail: str = ""

    def to_dict(self):
        return {"kind": self.kind, "witness": " ".join(self.witness), "detail": self.detail}

    def __repr__(self):
        return f"{ppc.CRED}{self.kind}{ppc.CEND} at {self.witness}: {self.detail}"


@dataclass
class ValidationReport:
    category: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "category": self.category,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [v.to_dict() for v in self.violations],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [v.to_dict() for v in self.violations], columns=["kind", "witness", "detail"]
        )


class FiniteLinearCategory:
    """Finitely many objects, Hom(a,b) a product of cyclic groups with a chosen basis,
    composition bilinear and given on basis pairs."""

    def __init__(
        self,
        ring: ResidueRing,
        labels: Sequence[str],
        homs: Mapping[Pair, HomGroup],
        structure: StructureConstants,
        identities: Mapping[int, ElementVector],
        name: str = "",
        decompositions: Mapping[int, tuple[int, ...]] | None = None,
        module_basis: Mapping[Pair, tuple[Pair, ...]] | None = None,
    ) -> None:
        self.ring = ring
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise CategoryValidationError(f"duplicate object labels in {self.labels}")
        self.name = name
        n = len(self.labels)
        for a, b in cartesian(range(n), repeat=2):
            if (a, b) not in homs:
                raise CategoryValidationError(f"missing Hom({self.labels[a]}, {self.labels[b]})")
        self.homs = dict(homs)
        self.structure = dict(structure)
        self.identities = {a: self.homs[(a, a)].orders.reduce(identities[a]) for a in range(n)}
        self.decompositions = dict(decompositions) if decompositions is not None else None
        self.module_basis = dict(module_basis) if module_basis is not None else None
        self.sealed = False
        self.parent: FiniteLinearCategory | None = None
        self.quotients: dict[Pair, object] = {}
        self._check_shapes()

    @property
    def cls_name(self) -> str:
        return self.__class__.__name__

    def __repr__(self):
        return f"{self.cls_name}({self.name or '?'}, objects={list(self.labels)}, {self.ring})"

    def _check_shapes(self) -> None:
        n = self.n_objects
        for a, b, c in cartesian(range(n), repeat=3):
            table = self.structure.get((a, b, c))
            r_ab, r_bc = self.homs[(a, b)].rank, self.homs[(b, c)].rank
            if table is None:
                if r_ab and r_bc:
                    raise CategoryValidationError(
                        f"missing composition table for {self._names(a, b, c)}"
                    )
                table = tuple(() for _ in range(r_bc))
            if len(table) != r_bc or any(len(row) != r_ab for row in table):
                raise CategoryValidationError(
                    f"composition table for {self._names(a, b, c)} has the wrong shape"
                )
            orders = self.homs[(a, c)].orders
            self.structure[(a, b, c)] = tuple(
                tuple(orders.reduce(entry) for entry in row) for row in table
            )

    def _names(self, *objs: int) -> str:
        return ",".join(self.labels[o] for o in objs)

    @property
    def n_objects(self) -> int:
        return len(self.labels)

    @property
    def objects(self) -> list[ObjectId]:
        return [ObjectId(i, lab) for i, lab in enumerate(self.labels)]

    def object_index(self, obj: int | str) -> int:
        if isinstance(obj, int):
            if 0 <= obj < self.n_objects:
                return obj
            raise UnknownObject(f"no object with index {obj} in {self.name}")
        try:
            return self.labels.index(obj)
        except ValueError:
            raise UnknownObject(f"no object {obj!r} in {self.name}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def hom(self, a: int, b: int) -> HomGroup:
        try:
            return self.homs[(a, b)]
        except KeyError:
            raise UnknownObject(f"no Hom({a}, {b}) in {self.name}") from None

    def hom_order(self, a: int, b: int) -> int:
        return self.hom(a, b).order

    def morphism(self, a: int | str, b: int | str, coords: Sequence[int]) -> Morphism:
        a, b = self.object_index(a), self.object_index(b)
        return Morphism(a, b, self.hom(a, b).orders.reduce(coords))

    def zero(self, a: int, b: int) -> Morphism:
        return Morphism(a, b, self.hom(a, b).orders.zero())

    def identity(self, a: int) -> Morphism:
        return Morphism(a, a, self.identities[a])

    def basis(self, a: int, b: int) -> list[Morphism]:
        orders = self.hom(a, b).orders
        return [Morphism(a, b, orders.basis_vector(i)) for i in range(len(orders))]

    def morphisms(self, a: int, b: int, cap: int | None = None) -> Iterator[Morphism]:
        h = self.hom(a, b)
        if cap is not None and h.order > cap:
            raise EnumerationCapExceeded(h.order, cap, f"Hom({self._names(a, b)})")
        for coords in h.orders.elements():
            yield Morphism(a, b, coords)

    def _check_parallel(self, f: Morphism, g: Morphism) -> None:
        if (f.source, f.target) != (g.source, g.target):
            raise ComposabilityError(f"{f} and {g} are not parallel")

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        self._check_parallel(f, g)
        return self.morphism(f.source, f.target, [u + v for u, v in zip(f.coords, g.coords)])

    def sub(self, f: Morphism, g: Morphism) -> Morphism:
        self._check_parallel(f, g)
        return self.morphism(f.source, f.target, [u - v for u, v in zip(f.coords, g.coords)])

    def scale(self, k: int, f: Morphism) -> Morphism:
        return self.morphism(f.source, f.target, [k * u for u in f.coords])

    def neg(self, f: Morphism) -> Morphism:
        return self.scale(-1, f)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g o f."""
        if f.target != g.source:
            raise ComposabilityError(
                f"cannot compose {self.describe(g)} after {self.describe(f)}"
            )
        a, b, c = f.source, f.target, g.target
        table = self.structure[(a, b, c)]
        acc = [0] * self.homs[(a, c)].rank
        for j, gj in enumerate(g.coords):
            if not gj:
                continue
            row = table[j]
            for i, fi in enumerate(f.coords):
                if fi:
                    acc = [u + gj * fi * v for u, v in zip(acc, row[i])]
        return Morphism(a, c, self.homs[(a, c)].orders.reduce(acc))

    def compose_all(self, *chain: Morphism) -> Morphism:
        """chain[0] o chain[1] o ... o chain[-1]."""
        result = chain[-1]
        for g in reversed(chain[:-1]):
            result = self.compose(g, result)
        return result

    def postcompose_hom(self, a: Morphism, x: int) -> GroupHom:
        """phi -> a o phi, from Hom(x, dom a) to Hom(x, cod a)."""
        src = self.hom(x, a.source).orders
        tgt = self.hom(x, a.target).orders
        return GroupHom.from_columns(
            src, tgt, [self.compose(a, e).coords for e in self.basis(x, a.source)]
        )

    def precompose_hom(self, a: Morphism, z: int) -> GroupHom:
        """psi -> psi o a, from Hom(cod a, z) to Hom(dom a, z)."""
        src = self.hom(a.target, z).orders
        tgt = self.hom(a.source, z).orders
        return GroupHom.from_columns(
            src, tgt, [self.compose(e, a).coords for e in self.basis(a.target, z)]
        )

    def stacked_postcompose(self, maps: Sequence[Morphism], x: int, mid: int) -> GroupHom:
        """phi -> (a o phi)_a on Hom(x, mid) for maps out of `mid`."""
        src = self.hom(x, mid).orders
        return stack_homs(src, [self.postcompose_hom(a, x) for a in maps])

    def stacked_precompose(self, maps: Sequence[Morphism], z: int, mid: int) -> GroupHom:
        src = self.hom(mid, z).orders
        return stack_homs(src, [self.precompose_hom(a, z) for a in maps])

    def describe(self, f: Morphism) -> str:
        h = self.hom(f.source, f.target)
        terms = [
            lab if c == 1 else f"{c}*{lab}" for c, lab in zip(f.coords, h.labels) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"{body}: {self.labels[f.source]}->{self.labels[f.target]}"

    def zero_objects(self) -> list[int]:
        return [a for a in range(self.n_objects) if self.hom(a, a).order == 1]

    def validate(self) -> ValidationReport:
        report = ValidationReport(self.name)
        n = self.n_objects
        for a, b, c in cartesian(range(n), repeat=3):
            o_ab, o_bc = self.homs[(a, b)].orders, self.homs[(b, c)].orders
            for j, i in cartesian(range(len(o_bc)), range(len(o_ab))):
                entry = self.structure[(a, b, c)][j][i]
                killer = gcd(o_ab[i], o_bc[j])
                if any(killer * v % d for v, d in zip(entry, self.homs[(a, c)].orders)):
                    report.violations.append(
                        Violation(
                            "bilinearity",
                            (self.homs[(b, c)].labels[j], self.homs[(a, b)].labels[i]),
                            f"composite not killed by {killer}",
                        )
                    )
                report.checked += 1
        for a, b in cartesian(range(n), repeat=2):
            for f, label in zip(self.basis(a, b), self.homs[(a, b)].labels):
                if self.compose(self.identity(b), f) != f:
                    report.violations.append(
                        Violation("left identity", (self.labels[b], label))
                    )
                if self.compose(f, self.identity(a)) != f:
                    report.violations.append(
                        Violation("right identity", (label, self.labels[a]))
                    )
                report.checked += 2
        for a, b, c, d in cartesian(range(n), repeat=4):
            for f, g, h in cartesian(self.basis(a, b), self.basis(b, c), self.basis(c, d)):
                left = self.compose(self.compose(h, g), f)
                right = self.compose(h, self.compose(g, f))
                report.checked += 1
                if left != right:
                    report.violations.append(
                        Violation(
                            "associativity",
                            (self.describe(h), self.describe(g), self.describe(f)),
                            f"{left.coords} != {right.coords}",
                        )
                    )
        if report.violations:
            lgr.warning(
                f"{self.cls_name}.validate - {self.name}: "
                f"{len(report.violations)} violations"
            )
        return report

    def seal(self) -> Self:
        report = self.validate()
        if not report.ok:
            raise CategoryValidationError(
                f"category {self.name} fails validation: {report.violations[0]!r}",
                report.violations,
            )
        self.sealed = True
        lgr.debug(f"{self.cls_name}.seal - {self.name} sealed after {report.checked} checks")
        return self

    def opposite(self) -> "FiniteLinearCategory":
        n = self.n_objects
        homs = {
            (a, b): HomGroup(a, b, self.homs[(b, a)].orders, self.homs[(b, a)].labels)
            for a, b in cartesian(range(n), repeat=2)
        }
        structure = {}
        for a, b, c in cartesian(range(n), repeat=3):
            orig = self.structure[(c, b, a)]
            r_ab, r_bc = homs[(a, b)].rank, homs[(b, c)].rank
            structure[(a, b, c)] = tuple(
                tuple(orig[i][j] for i in range(r_ab)) for j in range(r_bc)
            )
        name = self.name[: -len("^op")] if self.name.endswith("^op") else f"{self.name}^op"
        op = FiniteLinearCategory(self.ring, self.labels, homs, structure, self.identities, name)
        op.sealed = self.sealed
        return op

    def structurally_equal(self, other: "FiniteLinearCategory") -> bool:
        return (
            self.ring == other.ring
            and self.labels == other.labels
            and all(self.homs[k].orders == other.homs[k].orders for k in self.homs)
            and self.structure == other.structure
            and self.identities == other.identities
        )

    def hom_frame(self) -> pd.DataFrame:
        rows = {
            self.labels[a]: {
                self.labels[b]: repr(self.homs[(a, b)].orders) for b in range(self.n_objects)
            }
            for a in range(self.n_objects)
        }
        return pd.DataFrame.from_dict(rows, orient="index")

    # module model helpers

    @property
    def is_module_model(self) -> bool:
        return self.decompositions is not None

    def _require_model(self) -> None:
        if not self.is_module_model:
            raise NotAModuleModel(f"{self.name} carries no module decompositions")

    def module_matrix(self, f: Morphism) -> list[list[int]]:
        """Integer matrix of f: rows are target summands, columns source summands."""
        self._require_model()
        src, tgt = self.decompositions[f.source], self.decompositions[f.target]
        mat = [[0] * len(src) for _ in tgt]
        for c, (l, k) in zip(f.coords, self.module_basis[(f.source, f.target)]):
            mat[l][k] = c * (tgt[l] // gcd(src[k], tgt[l])) % tgt[l]
        return mat

    def morphism_from_matrix(
        self, a: int | str, b: int | str, matrix: Sequence[Sequence[int]]
    ) -> Morphism:
        self._require_model()
        a, b = self.object_index(a), self.object_index(b)
        src, tgt = self.decompositions[a], self.decompositions[b]
        if len(matrix) != len(tgt) or any(len(r) != len(src) for r in matrix):
            raise AmbientMismatch(f"matrix shape does not fit {self._names(a, b)}")
        coords = []
        for l, k in self.module_basis[(a, b)]:
            step = tgt[l] // gcd(src[k], tgt[l])
            v = matrix[l][k] % tgt[l]
            if v % step:
                raise AmbientMismatch(
                    f"entry {v} at ({l},{k}) is not a homomorphism Z/{src[k]} -> Z/{tgt[l]}"
                )
            coords.append(v // step)
        for l, k in cartesian(range(len(tgt)), range(len(src))):
            if (l, k) not in self.module_basis[(a, b)] and matrix[l][k] % tgt[l]:
                raise AmbientMismatch(f"entry at ({l},{k}) must vanish")
        return self.morphism(a, b, coords)

    def module_hom(self, f: Morphism) -> GroupHom:
        """f as a homomorphism of the underlying abelian groups."""
        self._require_model()
        return GroupHom(
            OrderVector(self.decompositions[f.source]),
            OrderVector(self.decompositions[f.target]),
            tuple(tuple(r) for r in self.module_matrix(f)),
        )

    def module_group(self, a: int) -> OrderVector:
        self._require_model()
        return OrderVector(self.decompositions[a])

    def object_with_decomposition(self, decomposition: Sequence[int]) -> int | None:
        if not self.is_module_model:
            return None
        for a in range(self.n_objects):
            if self.decompositions[a] == tuple(decomposition):
                return a
        return None
