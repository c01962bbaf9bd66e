"""
Tools for ideal-theoretic homology in finite additive categories. Shared test fixtures.
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

import random
from collections.abc import Sequence
from itertools import product as cartesian

import pytest

from idealHomology.catBuilders import build_free_linearization, build_module_category
from idealHomology.engineConfig import EngineConstants
from idealHomology.exactLinalg import GroupHom, OrderVector, full_subgroup, kernel
from idealHomology.homology import ChainComplex, make_complex
from idealHomology.ideals import Ideal, Side
from idealHomology.linCat import FiniteLinearCategory, Morphism


def brute_span(generators: Sequence[Sequence[int]], ambient: OrderVector) -> set:
    """Every element of the subgroup generated by `generators`, by closure."""
    found = {ambient.zero()}
    frontier = [ambient.zero()]
    gens = [ambient.reduce(g) for g in generators]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ambient.reduce([u + v for u, v in zip(x, g)])
            if y not in found:
                found.add(y)
                frontier.append(y)
    return found


def brute_kernel(h: GroupHom) -> set:
    zero = h.target.zero()
    return {x for x in h.source.elements() if h.apply(x) == zero}


def brute_ideal(
    cat: FiniteLinearCategory, side: Side, generators: Sequence[Morphism]
) -> dict[tuple[int, int], set]:
    """Elements of the ideal generated by `generators`, as the span of every
    psi o g o phi the side allows."""
    found = {}
    for a, b in cartesian(range(cat.n_objects), repeat=2):
        multiples = []
        for g in generators:
            if side == Side.RIGHT:
                lefts = [cat.identity(b)] if g.target == b else []
            else:
                lefts = list(cat.morphisms(g.target, b))
            if side == Side.LEFT:
                rights = [cat.identity(a)] if g.source == a else []
            else:
                rights = list(cat.morphisms(a, g.source))
            multiples += [cat.compose_all(psi, g, phi).coords for psi in lefts for phi in rights]
        found[(a, b)] = brute_span(multiples, cat.hom(a, b).orders)
    return found


def brute_annihilator(I: Ideal, side: Side) -> dict[tuple[int, int], set]:
    """R(I) (side RIGHT) or L(I) (side LEFT) over the anchor of I, by testing every
    candidate against every element of I."""
    cat = I.cat
    members = [f for key in I.components for f in I.elements(*key)]
    found = {}
    for a, b in cartesian(range(cat.n_objects), repeat=2):
        if side == Side.RIGHT and b in I.anchor:
            found[(a, b)] = {
                phi.coords
                for phi in cat.morphisms(a, b)
                if all(cat.compose(m, phi).is_zero() for m in members if m.source == b)
            }
        elif side == Side.LEFT and a in I.anchor:
            found[(a, b)] = {
                psi.coords
                for psi in cat.morphisms(a, b)
                if all(cat.compose(psi, m).is_zero() for m in members if m.target == a)
            }
        else:
            found[(a, b)] = {cat.hom(a, b).orders.zero()}
    return found


def element_sets(I: Ideal) -> dict[tuple[int, int], set]:
    return {key: set(sub.elements()) for key, sub in I.components.items()}


def random_morphism(cat: FiniteLinearCategory, rng: random.Random) -> Morphism:
    a, b = rng.choice(
        [(a, b) for a, b in cartesian(range(cat.n_objects), repeat=2) if cat.hom_order(a, b) > 1]
    )
    return cat.morphism(a, b, [rng.randrange(d) for d in cat.hom(a, b).orders])


def random_complex(
    cat: FiniteLinearCategory, rng: random.Random, length: int, name: str = "R"
) -> ChainComplex:
    """C_length -> ... -> C_0 on random objects, each d_n drawn from the kernel of
    d_{n-1} o -."""
    objects = {n: rng.randrange(cat.n_objects) for n in range(length + 1)}
    coords = {}
    below = None
    for n in range(1, length + 1):
        if below is None:
            allowed = full_subgroup(cat.hom(objects[n], objects[n - 1]).orders)
        else:
            allowed = kernel(cat.postcompose_hom(below, objects[n]))
        coords[n] = allowed.combine([rng.randrange(o) for o in allowed.generator_orders])
        below = cat.morphism(objects[n], objects[n - 1], coords[n])
    return make_complex(cat, objects, coords, name)


@pytest.fixture
def span():
    return brute_span


@pytest.fixture
def kernel_by_search():
    return brute_kernel


@pytest.fixture
def config():
    return EngineConstants(sample_size=12, quiet=True)


@pytest.fixture
def module_z4():
    return build_module_category(4, [(2,), (4,)], ["Z2", "Z4"], name="module-z4")


@pytest.fixture
def matrix_f2():
    return build_module_category(
        2, [(), (2,), (2, 2)], ["F2^0", "F2^1", "F2^2"], name="matrix-f2"
    )


@pytest.fixture
def free_xab():
    return build_free_linearization(
        2,
        ["x", "a", "b"],
        [("p", "x", "a"), ("q", "x", "b"), ("j", "a", "b"), ("jp", "x", "b")],
        {("j", "p"): "jp"},
        name="free-xab",
    )


@pytest.fixture
def ideal_by_search():
    return brute_ideal


@pytest.fixture
def annihilator_by_search():
    return brute_annihilator


@pytest.fixture
def module_z4_sums():
    return build_module_category(
        4, [(2,), (4,), (2, 4), (4, 4)], ["Z2", "Z4", "Z2+Z4", "Z4+Z4"], name="module-z4-sums"
    )


@pytest.fixture
def matrix_f2_cube():
    return build_module_category(
        2,
        [(), (2,), (2, 2), (2, 2, 2)],
        ["F2^0", "F2^1", "F2^2", "F2^3"],
        name="matrix-f2-cube",
    )


@pytest.fixture
def morphism_sampler():
    return random_morphism


@pytest.fixture
def complex_sampler():
    return random_complex


@pytest.fixture
def ideal_elements():
    return element_sets
