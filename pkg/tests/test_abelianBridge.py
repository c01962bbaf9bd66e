"""
Tools for ideal-theoretic homology in finite additive categories. Tests comparing ideal
homology with classical homology of abelian groups.
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

import pytest

from idealHomology.abelianBridge import (
    ShortExactSequence,
    classical_homology,
    connecting_map,
    connecting_sequence_check,
    delta_naturality_check,
    generator_corollary_check,
    hom_into_invariants,
    is_generator,
    is_projective,
    nonprojective_counterexample_search,
    projective_by_lifting,
    representability_check,
    representability_table,
)
from idealHomology.catBuilders import build_module_category
from idealHomology.errors import GeneratorMissing, NotAModuleModel, NotProjective, NotShortExact
from idealHomology.homology import ChainMap, make_complex


@pytest.fixture
def doubling(module_z4):
    return make_complex(module_z4, {1: "Z4", 0: "Z4"}, {1: [2]}, "D")


@pytest.fixture
def ses(module_z4):
    """0 -> (Z2 in degree 0) -> (Z4 -1-> Z4) -> (Z4 -proj-> Z2) -> 0."""
    A = make_complex(module_z4, {0: "Z2"}, name="A")
    B = make_complex(module_z4, {1: "Z4", 0: "Z4"}, {1: [1]}, "B")
    C = make_complex(module_z4, {1: "Z4", 0: "Z2"}, {1: [1]}, "C")
    i = ChainMap(A, B, {0: module_z4.morphism("Z2", "Z4", [1])})
    q = ChainMap(B, C, {1: module_z4.identity(1), 0: module_z4.morphism("Z4", "Z2", [1])})
    return ShortExactSequence(i, q)


def test_projectives_and_generators(module_z4, matrix_f2):
    assert is_projective(module_z4, 1) and is_generator(module_z4, 1)
    assert not is_projective(module_z4, 0)
    assert all(is_projective(matrix_f2, a) for a in range(3))
    assert not is_generator(matrix_f2, 0) and is_generator(matrix_f2, 1)


def test_projectivity_by_lifting_agrees(module_z4, config):
    for obj in range(module_z4.n_objects):
        assert projective_by_lifting(module_z4, obj, config) == is_projective(module_z4, obj)


def test_classical_homology(doubling):
    assert classical_homology(doubling, 1).invariants == (2,)
    assert classical_homology(doubling, 0).invariants == (2,)


def test_hom_into_invariants():
    assert hom_into_invariants((4,), (2, 4)) == (2, 4)
    assert hom_into_invariants((2,), (4,)) == (2,)
    assert hom_into_invariants((4,), ()) == ()


def test_representability_at_a_projective(doubling):
    rows = representability_check(doubling, 1)
    assert [r.degree for r in rows] == [1, 0]
    assert all(r.match for r in rows)
    with pytest.raises(NotProjective):
        representability_check(doubling, 0)


def test_non_projective_object_breaks_representability(doubling):
    row = nonprojective_counterexample_search(doubling, 0)
    assert row is not None
    assert (row.degree, row.ideal, row.classical) == (0, (), (2,))


def test_generator_corollary(doubling):
    rows = generator_corollary_check(doubling)
    assert all(r.ideal_trivial == r.classical_trivial for r in rows)
    assert not any(r.ideal_trivial for r in rows)


def test_generator_corollary_needs_a_generator():
    cat = build_module_category(4, [(2,)], ["Z2"])
    with pytest.raises(GeneratorMissing):
        generator_corollary_check(make_complex(cat, {0: "Z2"}, name="Z2"))


def test_free_category_is_rejected(free_xab):
    with pytest.raises(NotAModuleModel):
        is_projective(free_xab, 0)


def test_connecting_sequence_is_exact(ses):
    report = connecting_sequence_check(ses, 1)
    assert report.exact
    assert report.to_dict()["P"] == "Z4"
    with pytest.raises(NotProjective):
        connecting_sequence_check(ses, 0)


def test_connecting_map_is_an_isomorphism_here(ses):
    delta = connecting_map(ses, 1, 1)
    assert delta.source.order == 2 and delta.target.order == 2
    assert not delta.is_zero()


def test_connecting_map_is_natural(ses):
    identities = tuple(ChainMap.identity(X) for X in (ses.A, ses.B, ses.C))
    assert delta_naturality_check(ses, ses, identities, 1, 1)


def test_short_exact_sequence_is_checked(ses, module_z4):
    zero = ChainMap.zero(ses.B, ses.C)
    with pytest.raises(NotShortExact):
        ShortExactSequence(ses.i, zero)


def test_representability_table_covers_every_projective(doubling):
    rows = representability_table(doubling)
    assert [(r.degree, r.obj) for r in rows] == [(1, "Z4"), (0, "Z4")]
    assert all(r.match for r in rows)


@pytest.mark.parametrize("name", ["matrix_f2_cube", "module_z4_sums"])
def test_representability_on_random_complexes(name, request, complex_sampler):
    cat = request.getfixturevalue(name)
    rng = random.Random(20000)
    for i in range(100):
        C = complex_sampler(cat, rng, rng.randint(2, 4), f"R{i}")
        rows = representability_table(C)
        assert rows
        assert all(r.match for r in rows), [r.to_dict() for r in rows if not r.match]
        for row in generator_corollary_check(C):
            assert row.ideal_trivial == row.classical_trivial, C
