"""
Tools for ideal-theoretic homology in finite additive categories. Category and complex
description documents.
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


Documents are line oriented. `#` starts a comment, blank lines are ignored and every
other line starts with a keyword. Category documents (`.cat`):

    name: free-xab
    kind: free                       # module | free | quiver | explicit
    modulus: 2
    object x                         # module kind: `object Z2+Z4: 2 4`
    arrow p: x -> a
    compose j p = jp                 # free kind: j o p = jp
    relation j p                     # quiver kind: the path j o p vanishes
    cap: 3                           # quiver kind: paths longer than 3 vanish
    hom A B: 2 2                     # explicit kind: Hom(A, B) = Z/2 x Z/2
    identity A: 1 0
    structure A B C 0 1: 1 0         # e_0 of Hom(B,C) after e_1 of Hom(A,B)

Complex documents (`.cx`):

    category: module-z4
    complex C
      degree 1: Z4
      degree 0: Z2
      d 1: 1
    end
    morphism u: Z2 -> Z4: 1
"""

import logging
import re
from importlib.resources import files
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from idealHomology.catBuilders import (
    build_free_linearization,
    build_module_category,
    build_quiver_category,
)
from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import DocumentError
from idealHomology.exactLinalg import OrderVector, ResidueRing
from idealHomology.homology import ChainComplex, make_complex
from idealHomology.linCat import FiniteLinearCategory, HomGroup, Morphism

lgr = logging.getLogger(__name__)

BUNDLED = (
    "module-z4",
    "matrix-f2",
    "free-xab",
    "ses-z4",
    "bo-z4",
    "module-z4-sums",
    "matrix-f2-cube",
    "exact-xab",
)
SUFFIXES = (".cat", ".cx")


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ObjectSpec(_Doc):
    label: str
    decomposition: tuple[int, ...] | None = None


class ArrowSpec(_Doc):
    name: str
    source: str
    target: str


class CompositionSpec(_Doc):
    outer: str
    inner: str
    result: str


class HomSpec(_Doc):
    source: str
    target: str
    orders: tuple[int, ...]


class StructureSpec(_Doc):
    source: str
    middle: str
    target: str
    outer: int
    inner: int
    coords: tuple[int, ...]


class CategoryDocument(_Doc):
    name: str
    kind: Literal["module", "free", "quiver", "explicit"]
    modulus: int = Field(ge=2)
    objects: list[ObjectSpec]
    arrows: list[ArrowSpec] = []
    compositions: list[CompositionSpec] = []
    relations: list[tuple[str, ...]] = []
    cap: int | None = Field(default=None, ge=1)
    homs: list[HomSpec] = []
    identities: dict[str, tuple[int, ...]] = {}
    structure: list[StructureSpec] = []

    @model_validator(mode="after")
    def _payload_fits_kind(self):
        if self.kind == "module":
            if any(o.decomposition is None for o in self.objects):
                raise ValueError("module objects need a cyclic decomposition")
            extra = self.arrows or self.compositions or self.relations or self.homs
        else:
            if any(o.decomposition is not None for o in self.objects):
                raise ValueError(f"{self.kind} objects take no decomposition")
            extra = []
            if self.kind == "free":
                extra = self.relations or self.homs or self.structure
            elif self.kind == "quiver":
                extra = self.compositions or self.homs or self.structure
            elif self.arrows or self.compositions or self.relations:
                extra = True
        if extra or (self.cap is not None and self.kind != "quiver"):
            raise ValueError(f"payload does not fit a {self.kind} category")
        return self

    @property
    def labels(self) -> list[str]:
        return [o.label for o in self.objects]

    def build(self, config: EngineConstants = DEFAULT_CONFIG) -> FiniteLinearCategory:
        arrows = [(a.name, a.source, a.target) for a in self.arrows]
        if self.kind == "module":
            return build_module_category(
                self.modulus,
                [o.decomposition for o in self.objects],
                self.labels,
                name=self.name,
            )
        if self.kind == "free":
            table = {(c.outer, c.inner): c.result for c in self.compositions}
            return build_free_linearization(
                self.modulus, self.labels, arrows, table, name=self.name
            )
        if self.kind == "quiver":
            return build_quiver_category(
                self.modulus,
                self.labels,
                arrows,
                self.relations,
                self.cap,
                name=self.name,
                config=config,
            )
        return self._build_explicit()

    def _build_explicit(self) -> FiniteLinearCategory:
        index = {label: i for i, label in enumerate(self.labels)}
        named = [h.source for h in self.homs] + [h.target for h in self.homs]
        named += [x for s in self.structure for x in (s.source, s.middle, s.target)]
        named += list(self.identities)
        for label in named:
            if label not in index:
                raise DocumentError(f"unknown object {label!r}")
        missing = [label for label in index if label not in self.identities]
        if missing:
            raise DocumentError(f"no identity given for {missing}")
        orders = {(index[h.source], index[h.target]): h.orders for h in self.homs}
        n = len(index)
        homs = {}
        for a in range(n):
            for b in range(n):
                ords = orders.get((a, b), ())
                homs[(a, b)] = HomGroup(
                    a,
                    b,
                    OrderVector(ords),
                    tuple(f"{self.labels[a]}->{self.labels[b]}#{i}" for i in range(len(ords))),
                )
        structure = {
            (a, b, c): [
                [[0] * homs[(a, c)].rank for _ in range(homs[(a, b)].rank)]
                for _ in range(homs[(b, c)].rank)
            ]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        }
        for s in self.structure:
            a, b, c = index[s.source], index[s.middle], index[s.target]
            if not (0 <= s.outer < homs[(b, c)].rank and 0 <= s.inner < homs[(a, b)].rank):
                raise DocumentError(f"structure entry {s.outer} {s.inner} outside the Hom bases")
            structure[(a, b, c)][s.outer][s.inner] = list(s.coords)
        frozen = {
            key: tuple(tuple(tuple(cell) for cell in row) for row in rows)
            for key, rows in structure.items()
        }
        identities = {index[k]: v for k, v in self.identities.items()}
        cat = FiniteLinearCategory(
            ResidueRing(self.modulus), self.labels, homs, frozen, identities, name=self.name
        )
        return cat.seal()


class ComplexSpec(_Doc):
    name: str
    objects: dict[int, str]
    differentials: dict[int, tuple[int, ...]] = {}


class MorphismSpec(_Doc):
    name: str
    source: str
    target: str
    coords: tuple[int, ...]


class ComplexDocument(_Doc):
    category: str
    complexes: list[ComplexSpec] = []
    morphisms: list[MorphismSpec] = []

    @model_validator(mode="after")
    def _names_are_unique(self):
        names = [c.name for c in self.complexes] + [m.name for m in self.morphisms]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate names in {names}")
        return self

    def build(self, cat: FiniteLinearCategory) -> list[ChainComplex]:
        if cat.name != self.category:
            raise DocumentError(
                f"complexes refer to category {self.category!r}, got {cat.name!r}"
            )
        return [make_complex(cat, c.objects, c.differentials, c.name) for c in self.complexes]

    def morphism(self, cat: FiniteLinearCategory, name: str | None = None) -> Morphism | None:
        """The named morphism, or the only declared one when `name` is None."""
        found = [m for m in self.morphisms if name is None or m.name == name]
        if not found:
            return None
        spec = found[0]
        return cat.morphism(spec.source, spec.target, spec.coords)


# Line parsing


_KEYWORD = re.compile(r"^(?P<key>[A-Za-z_]+)(?:\s+(?P<head>[^:]*?))?\s*(?::\s*(?P<value>.*))?$")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            match = _KEYWORD.match(line)
            if match is None:
                raise DocumentError(f"cannot read {line!r}", number)
            yield number, match["key"], (match["head"] or "").strip(), match["value"]


def _ints(text: str | None, number: int) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in (text or "").split())
    except ValueError as exc:
        raise DocumentError(f"expected integers, got {text!r}", number) from exc


def _ends(text: str | None, number: int) -> tuple[str, str]:
    parts = [p.strip() for p in (text or "").split("->")]
    if len(parts) != 2 or not all(parts):
        raise DocumentError(f"expected `source -> target`, got {text!r}", number)
    return parts[0], parts[1]


def _scalar(fields: dict, key: str, value: str | None, number: int) -> None:
    if key in fields:
        raise DocumentError(f"{key} given twice", number)
    if value is None:
        raise DocumentError(f"{key} needs a value", number)
    fields[key] = value.strip()


def _validated(model: type[BaseModel], fields: dict, source: str):
    try:
        return model.model_validate(fields)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise DocumentError(f"{where}: {first['msg']}", 0, source) from exc


def parse_category(text: str, source: str = "") -> CategoryDocument:
    fields: dict = {"objects": []}
    for number, key, head, value in _lines(text):
        try:
            if key in ("name", "kind", "modulus", "cap") and not head:
                _scalar(fields, key, value, number)
            elif key == "object" and head:
                decomposition = None if value is None else _ints(value, number)
                fields["objects"].append({"label": head, "decomposition": decomposition})
            elif key == "arrow" and head:
                src, tgt = _ends(value, number)
                fields.setdefault("arrows", []).append(
                    {"name": head, "source": src, "target": tgt}
                )
            elif key == "compose" and head and value is None:
                lhs, _, rhs = head.partition("=")
                names = lhs.split()
                if len(names) != 2 or not rhs.strip():
                    raise DocumentError(f"expected `compose g f = h`, got {head!r}", number)
                fields.setdefault("compositions", []).append(
                    {"outer": names[0], "inner": names[1], "result": rhs.strip()}
                )
            elif key == "relation" and head and value is None:
                fields.setdefault("relations", []).append(tuple(head.split()))
            elif key == "hom" and len(head.split()) == 2:
                src, tgt = head.split()
                fields.setdefault("homs", []).append(
                    {"source": src, "target": tgt, "orders": _ints(value, number)}
                )
            elif key == "identity" and head:
                fields.setdefault("identities", {})[head] = _ints(value, number)
            elif key == "structure" and len(head.split()) == 5:
                a, b, c, j, i = head.split()
                fields.setdefault("structure", []).append(
                    {
                        "source": a,
                        "middle": b,
                        "target": c,
                        "outer": int(j),
                        "inner": int(i),
                        "coords": _ints(value, number),
                    }
                )
            else:
                raise DocumentError(f"unknown or malformed line {key!r}", number)
        except DocumentError as exc:
            exc.source = source
            raise
        except ValueError as exc:
            raise DocumentError(str(exc), number, source) from exc
    return _validated(CategoryDocument, fields, source)


def parse_complexes(text: str, source: str = "") -> ComplexDocument:
    fields: dict = {"complexes": [], "morphisms": []}
    current: dict | None = None
    for number, key, head, value in _lines(text):
        try:
            if current is not None:
                if key == "end" and not head and value is None:
                    fields["complexes"].append(current)
                    current = None
                elif key == "degree" and head:
                    current["objects"][int(head)] = (value or "").strip()
                elif key == "d" and head:
                    current["differentials"][int(head)] = _ints(value, number)
                else:
                    raise DocumentError(f"unknown line {key!r} inside a complex", number)
            elif key == "category" and not head:
                _scalar(fields, key, value, number)
            elif key == "complex" and head and value is None:
                current = {"name": head, "objects": {}, "differentials": {}}
            elif key == "morphism" and head:
                ends, _, coords = (value or "").partition(":")
                src, tgt = _ends(ends, number)
                fields["morphisms"].append(
                    {"name": head, "source": src, "target": tgt, "coords": _ints(coords, number)}
                )
            else:
                raise DocumentError(f"unknown or malformed line {key!r}", number)
        except DocumentError as exc:
            exc.source = source
            raise
        except ValueError as exc:
            raise DocumentError(str(exc), number, source) from exc
    if current is not None:
        raise DocumentError(f"complex {current['name']} is missing its `end`", 0, source)
    return _validated(ComplexDocument, fields, source)


def read_source(ref: str) -> tuple[str, str]:
    """(text, source) for a bundled document name or a file path."""
    if ref in BUNDLED:
        for suffix in SUFFIXES:
            resource = files("idealHomology") / "data" / f"{ref}{suffix}"
            if resource.is_file():
                return resource.read_text(), ref
    path = Path(ref)
    if not path.is_file():
        raise DocumentError(f"no bundled document or file named {ref!r}", 0, ref)
    return path.read_text(), str(path)


def load_category(
    ref: str, config: EngineConstants = DEFAULT_CONFIG
) -> tuple[FiniteLinearCategory, str]:
    """Parse and build a category document; returns the category and its text."""
    text, source = read_source(ref)
    cat = parse_category(text, source).build(config)
    lgr.debug(f"load_category - {source}: {cat!r}")
    return cat, text


def load_complexes(
    ref: str, cat: FiniteLinearCategory
) -> tuple[ComplexDocument, list[ChainComplex], str]:
    text, source = read_source(ref)
    doc = parse_complexes(text, source)
    return doc, doc.build(cat), text


def parse_morphism(cat: FiniteLinearCategory, text: str) -> Morphism:
    """`A -> B: c1 c2 ...` as a morphism of `cat`."""
    ends, sep, coords = text.partition(":")
    if not sep:
        raise DocumentError(f"expected `source -> target: coords`, got {text!r}")
    src, tgt = _ends(ends, 0)
    return cat.morphism(src, tgt, _ints(coords, 0))
