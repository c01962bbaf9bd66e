"""
Tools for ideal-theoretic homology in finite additive categories. Tests for complexes,
chain maps and ideal homology.
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

from idealHomology.errors import DegreeOutOfRange, NotAComplex, NotShortExact
from idealHomology.homology import (
    ChainMap,
    are_homotopic,
    check_homotopy,
    complex_conditions,
    global_right_homology,
    hom_left_sequences,
    homology_frame,
    im_vs_pointwise_image,
    induced_map,
    is_exact,
    left_homology,
    make_complex,
    reversed_complex,
    right_homology,
    shift,
)


@pytest.fixture
def extension(module_z4):
    """0 -> Z/2 -> Z/4 -> Z/2 -> 0."""
    return make_complex(module_z4, {2: "Z2", 1: "Z4", 0: "Z2"}, {2: [1], 1: [1]}, "E")


@pytest.fixture
def doubling(module_z4):
    return make_complex(module_z4, {1: "Z4", 0: "Z4"}, {1: [2]}, "D")


@pytest.fixture
def contractible(module_z4):
    return make_complex(module_z4, {1: "Z4", 0: "Z4"}, {1: [3]}, "U")


def test_non_split_extension_is_exact_both_ways(extension):
    assert is_exact(extension, "right")
    assert is_exact(extension, "left")


def test_doubling_homology(doubling):
    h1, h0 = right_homology(doubling, 1), right_homology(doubling, 0)
    assert h1.invariants(0) == (2,) and h1.invariants(1) == (2,)
    assert h0.invariants(0) == () and h0.invariants(1) == (2,)
    assert not h0.is_trivial()
    assert left_homology(doubling, 1).invariants(1) == (2,)
    assert left_homology(doubling, 1).invariants(0) == ()


def test_homology_families_are_functors(doubling):
    for n in doubling.degrees:
        assert right_homology(doubling, n).family.check_functoriality() == []
        assert left_homology(doubling, n).family.check_functoriality() == []


def test_left_homology_is_right_homology_of_the_reversed_complex(doubling, extension):
    for C in (doubling, extension):
        rev = reversed_complex(C)
        for n in C.degrees:
            for x in range(C.cat.n_objects):
                assert left_homology(C, n).invariants(x) == right_homology(rev, -n).invariants(x)


def test_global_ideals_recover_homology(doubling, extension):
    for C in (doubling, extension):
        for n in C.degrees:
            family = global_right_homology(C, n)
            for x in range(C.cat.n_objects):
                assert family.invariants(x) == right_homology(C, n).invariants(x)


def test_make_complex_checks_its_input(module_z4):
    with pytest.raises(NotAComplex):
        make_complex(module_z4, {1: "Z4", 0: "Z4", -1: "Z4"}, {1: [3], 0: [3]}, "bad")
    with pytest.raises(DegreeOutOfRange):
        make_complex(module_z4, {0: "Z4"}, {1: [1]}, "bad")
    with pytest.raises(DegreeOutOfRange):
        right_homology(make_complex(module_z4, {0: "Z4"}), 3)


def test_shift(extension):
    shifted = shift(extension, 1)
    assert shifted.name == "E[1]"
    assert shifted.degrees == [1, 2, 3]
    assert shifted.d(3).coords == extension.d(2).coords


def test_complex_conditions_agree(module_z4):
    incl = module_z4.morphism("Z2", "Z4", [1])
    proj = module_z4.morphism("Z4", "Z2", [1])
    cond = complex_conditions(module_z4, proj, incl)
    assert cond.composite_zero and cond.agree
    twice, unit = module_z4.morphism("Z4", "Z4", [2]), module_z4.morphism("Z4", "Z4", [3])
    cond = complex_conditions(module_z4, twice, unit)
    assert not cond.composite_zero and cond.agree


def test_induced_maps(doubling):
    identity = ChainMap.identity(doubling)
    zero = ChainMap.zero(doubling, doubling)
    for n in doubling.degrees:
        assert induced_map(identity, n).is_identity()
        assert induced_map(zero, n).is_zero()
        assert induced_map(identity, n, "left").is_identity()
    twice = ChainMap(doubling, doubling, {1: doubling.d(1), 0: doubling.d(1)})
    assert twice.is_chain_map()
    assert induced_map(twice, 0).is_zero()


def test_chain_map_problems(contractible):
    cat = contractible.cat
    broken = ChainMap(contractible, contractible, {1: cat.identity(1)})
    assert broken.problems() == [1]


def test_contractible_complex_has_a_homotopy(contractible):
    identity = ChainMap.identity(contractible)
    zero = ChainMap.zero(contractible, contractible)
    s = are_homotopic(identity, zero)
    assert s is not None
    assert s[0].coords == (3,)
    assert check_homotopy(identity, zero, s)
    assert is_exact(contractible)


def test_non_split_extension_is_not_contractible(extension):
    identity = ChainMap.identity(extension)
    assert are_homotopic(identity, ChainMap.zero(extension, extension)) is None


def test_hom_functor_is_not_exact_on_free_xab(free_xab):
    j = free_xab.morphism("a", "b", [1])
    C = make_complex(free_xab, {1: "a", 0: "b"}, {1: [1]}, "J")
    assert is_exact(C)
    by_x = hom_left_sequences(C, "x")
    assert by_x.obj == "x"
    assert by_x.covariant_injective
    assert not by_x.covariant_exact
    assert hom_left_sequences(C, "a").covariant_exact
    ideal, pointwise = im_vs_pointwise_image(free_xab, j, 0)
    assert (ideal.order, pointwise.order) == (4, 2)


def test_hom_sequences_of_the_non_split_extension(extension):
    row = hom_left_sequences(extension, "Z4")
    assert row.to_dict() == {
        "X": "Z4",
        "Hom(X,-) mono": True,
        "Hom(X,-) exact": True,
        "Hom(-,X) mono": True,
        "Hom(-,X) exact": True,
    }


def test_hom_sequences_need_a_short_exact_sequence(module_z4):
    not_exact = make_complex(module_z4, {2: "Z4", 1: "Z4", 0: "Z2"}, {2: [2], 1: [1]}, "N")
    with pytest.raises(NotShortExact, match="not exact"):
        hom_left_sequences(not_exact, "Z2")
    single = make_complex(module_z4, {0: "Z4"}, name="S")
    with pytest.raises(NotShortExact, match="two or three"):
        hom_left_sequences(single, "Z4")


def test_homology_frame(extension):
    frame = homology_frame(extension)
    assert list(frame["degree"]) == [2, 2, 1, 1, 0, 0]
    assert set(frame["invariants"]) == {"0"}


def boundary_of(C, s):
    """d s + s d as a chain map C -> C."""
    cat = C.cat
    comps = {}
    for n, o in C.objects.items():
        total = cat.zero(o, o)
        if n in s and C.d(n + 1) is not None:
            total = cat.add(total, cat.compose(C.d(n + 1), s[n]))
        if n - 1 in s and C.d(n) is not None:
            total = cat.add(total, cat.compose(s[n - 1], C.d(n)))
        comps[n] = total
    return ChainMap(C, C, comps)


@pytest.mark.parametrize("name", ["module_z4", "matrix_f2"])
def test_homotopic_maps_induce_the_same_maps(name, request, complex_sampler):
    cat = request.getfixturevalue(name)
    rng = random.Random(8)
    for i in range(50):
        C = complex_sampler(cat, rng, rng.randint(1, 2), f"H{i}")
        s = {}
        for n in C.degrees:
            if n + 1 in C.objects:
                a, b = C.objects[n], C.objects[n + 1]
                s[n] = cat.morphism(a, b, [rng.randrange(d) for d in cat.hom(a, b).orders])
        k = rng.randrange(cat.ring.modulus)
        g = ChainMap(C, C, {n: cat.scale(k, cat.identity(o)) for n, o in C.objects.items()})
        f = g.add(boundary_of(C, s))
        assert f.is_chain_map()
        assert check_homotopy(f, g, s)
        assert are_homotopic(f, g) is not None
        for n in C.degrees:
            for variant in ("right", "left"):
                assert induced_map(f, n, variant).same_as(induced_map(g, n, variant))
