"""
Tools for ideal-theoretic homology in finite additive categories. Builders for module
models, free linearizations of finite categories and truncated quiver categories.
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
from collections.abc import Mapping, Sequence
from itertools import product as cartesian
from math import gcd

from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import BasisNotTerminating, BuilderError
from idealHomology.exactLinalg import OrderVector, ResidueRing
from idealHomology.linCat import FiniteLinearCategory, HomGroup

lgr = logging.getLogger(__name__)

Path = tuple[str, ...]


def module_label(decomposition: Sequence[int]) -> str:
    return "+".join(f"Z{c}" for c in decomposition) if decomposition else "0"


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def build_module_category(
    m: int,
    decompositions: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "",
    seal: bool = True,
) -> FiniteLinearCategory:
    """Full subcategory of finitely generated Z/m-modules on the given cyclic
    decompositions. Hom(Z/a, Z/b) is cyclic of order gcd(a, b), generated by
    1 -> b/gcd(a, b)."""
    ring = ResidueRing(m)
    decs = [tuple(int(c) for c in d) for d in decompositions]
    for d in decs:
        for c in d:
            if c < 2 or m % c:
                raise BuilderError(f"cyclic factor Z/{c} is not a nonzero quotient of Z/{m}")
    labels = list(labels) if labels is not None else [module_label(d) for d in decs]
    if len(labels) != len(decs):
        raise BuilderError(f"{len(labels)} labels for {len(decs)} objects")
    n = len(decs)
    homs: dict[tuple[int, int], HomGroup] = {}
    module_basis: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for a, b in cartesian(range(n), repeat=2):
        A, B = decs[a], decs[b]
        basis = tuple(
            (l, k)
            for l, k in cartesian(range(len(B)), range(len(A)))
            if gcd(A[k], B[l]) > 1
        )
        single = len(A) == 1 and len(B) == 1
        module_basis[(a, b)] = basis
        homs[(a, b)] = HomGroup(
            a,
            b,
            OrderVector(tuple(gcd(A[k], B[l]) for l, k in basis)),
            tuple(
                f"{labels[a]}->{labels[b]}" if single else f"{labels[a]}->{labels[b]}[{l},{k}]"
                for l, k in basis
            ),
        )
    structure = {}
    for a, b, c in cartesian(range(n), repeat=3):
        A, B, C = decs[a], decs[b], decs[c]
        target_basis = module_basis[(a, c)]
        rows = []
        for l2, k2 in module_basis[(b, c)]:
            row = []
            for l1, k1 in module_basis[(a, b)]:
                coords = [0] * len(target_basis)
                if k2 == l1:
                    value = (C[l2] // gcd(B[k2], C[l2])) * (B[l1] // gcd(A[k1], B[l1]))
                    value %= C[l2]
                    if value:
                        step = C[l2] // gcd(A[k1], C[l2])
                        coords[target_basis.index((l2, k1))] = value // step
                row.append(tuple(coords))
            rows.append(tuple(row))
        structure[(a, b, c)] = tuple(rows)
    identities = {
        a: tuple(int(l == k) for l, k in module_basis[(a, a)]) for a in range(n)
    }
    cat = FiniteLinearCategory(
        ring,
        labels,
        homs,
        structure,
        identities,
        name=name or f"module-Z{m}",
        decompositions={a: decs[a] for a in range(n)},
        module_basis=module_basis,
    )
    lgr.debug(f"build_module_category - {cat.name} with {n} objects")
    return cat.seal() if seal else cat


def build_free_linearization(
    m: int,
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    table: Mapping[tuple[str, str], str],
    name: str = "",
    seal: bool = True,
) -> FiniteLinearCategory:
    """Z/m-linear hull of a finite category. `arrows` are (name, source, target)
    without identities; `table[(g, f)]` names g o f for every composable pair."""
    ring = ResidueRing(m)
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise BuilderError(f"duplicate objects in {objects}")
    ends: dict[str, tuple[str, str]] = {}
    for arrow, src, tgt in arrows:
        if arrow in ends or arrow.startswith("1_"):
            raise BuilderError(f"arrow name {arrow!r} is duplicated or reserved")
        if src not in objects or tgt not in objects:
            raise BuilderError(f"arrow {arrow} joins unknown objects {src}, {tgt}")
        ends[arrow] = (src, tgt)
    for obj in objects:
        ends[f"1_{obj}"] = (obj, obj)
    for (g, f), h in table.items():
        for arrow in (g, f, h):
            if arrow not in ends:
                raise BuilderError(f"composition table mentions unknown arrow {arrow!r}")
        if ends[f][1] != ends[g][0]:
            raise BuilderError(f"table entry {g} o {f} is not composable")
        if ends[h] != (ends[f][0], ends[g][1]):
            raise BuilderError(f"table entry {g} o {f} = {h} has the wrong ends")

    def composite(g: str, f: str) -> str:
        if g.startswith("1_"):
            return f
        if f.startswith("1_"):
            return g
        if (g, f) not in table:
            raise BuilderError(f"composition table is not closed: {g} o {f} missing")
        return table[(g, f)]

    n = len(objects)
    basis: dict[tuple[int, int], list[str]] = {}
    for a, b in cartesian(range(n), repeat=2):
        names = [f"1_{objects[a]}"] if a == b else []
        names += [
            arrow for arrow, src, tgt in arrows if (src, tgt) == (objects[a], objects[b])
        ]
        basis[(a, b)] = names
    homs = {
        (a, b): HomGroup(a, b, OrderVector((m,) * len(names)), tuple(names))
        for (a, b), names in basis.items()
    }
    structure = {}
    for a, b, c in cartesian(range(n), repeat=3):
        target = basis[(a, c)]
        structure[(a, b, c)] = tuple(
            tuple(
                _unit(len(target), target.index(composite(g, f))) for f in basis[(a, b)]
            )
            for g in basis[(b, c)]
        )
    identities = {a: _unit(len(basis[(a, a)]), 0) for a in range(n)}
    cat = FiniteLinearCategory(
        ring, objects, homs, structure, identities, name=name or "free"
    )
    return cat.seal() if seal else cat


def build_quiver_category(
    m: int,
    vertices: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    zero_relations: Sequence[Sequence[str]] = (),
    nilpotency_cap: int | None = None,
    name: str = "",
    seal: bool = True,
    config: EngineConstants = DEFAULT_CONFIG,
) -> FiniteLinearCategory:
    """Path category of a quiver over Z/m modulo monomial relations. Paths are written
    in composition order, ("j", "p") meaning j o p. Paths longer than
    `nilpotency_cap` vanish."""
    ring = ResidueRing(m)
    vertices = list(vertices)
    ends: dict[str, tuple[str, str]] = {}
    for arrow, src, tgt in arrows:
        if arrow in ends or arrow.startswith("1_"):
            raise BuilderError(f"arrow name {arrow!r} is duplicated or reserved")
        if src not in vertices or tgt not in vertices:
            raise BuilderError(f"arrow {arrow} joins unknown vertices {src}, {tgt}")
        ends[arrow] = (src, tgt)
    relations = [tuple(r) for r in zero_relations]
    for rel in relations:
        if not rel or any(a not in ends for a in rel):
            raise BuilderError(f"relation {rel} is not a path of declared arrows")
        if any(ends[g][0] != ends[f][1] for g, f in zip(rel, rel[1:])):
            raise BuilderError(f"relation {rel} is not a composable path")

    def killed(path: Path) -> bool:
        if nilpotency_cap is not None and len(path) > nilpotency_cap:
            return True
        return any(
            path[i : i + len(rel)] == rel
            for rel in relations
            for i in range(len(path) - len(rel) + 1)
        )

    level: list[Path] = [(arrow,) for arrow, _, _ in arrows if not killed((arrow,))]
    paths = list(level)
    length = 1
    while level:
        nxt = [
            (g,) + p
            for p in level
            for g, _, _ in arrows
            if ends[g][0] == ends[p[0]][1] and not killed((g,) + p)
        ]
        length += 1
        if nxt and nilpotency_cap is None and length > config.MAX_PATH_LENGTH:
            raise BasisNotTerminating(
                f"surviving paths of length {length} (e.g. {'*'.join(nxt[0])}); "
                f"add relations or a nilpotency cap"
            )
        paths += nxt
        level = nxt

    n = len(vertices)
    basis: dict[tuple[int, int], list[Path]] = {}
    for a, b in cartesian(range(n), repeat=2):
        found: list[Path] = [()] if a == b else []
        found += [
            p for p in paths if ends[p[-1]][0] == vertices[a] and ends[p[0]][1] == vertices[b]
        ]
        basis[(a, b)] = found

    def label(p: Path, v: int) -> str:
        return "*".join(p) if p else f"1_{vertices[v]}"

    homs = {
        (a, b): HomGroup(
            a, b, OrderVector((m,) * len(found)), tuple(label(p, a) for p in found)
        )
        for (a, b), found in basis.items()
    }
    structure = {}
    for a, b, c in cartesian(range(n), repeat=3):
        target = basis[(a, c)]
        rows = []
        for q in basis[(b, c)]:
            row = []
            for p in basis[(a, b)]:
                joined = q + p
                if killed(joined):
                    row.append((0,) * len(target))
                else:
                    row.append(_unit(len(target), target.index(joined)))
            rows.append(tuple(row))
        structure[(a, b, c)] = tuple(rows)
    identities = {a: _unit(len(basis[(a, a)]), 0) for a in range(n)}
    cat = FiniteLinearCategory(
        ring, vertices, homs, structure, identities, name=name or "quiver"
    )
    lgr.debug(f"build_quiver_category - {cat.name}: {len(paths)} surviving paths")
    return cat.seal() if seal else cat
