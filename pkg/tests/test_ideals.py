"""
Tools for ideal-theoretic homology in finite additive categories. Tests for ideals,
annihilators and quotients.
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

from idealHomology.catBuilders import build_module_category
from idealHomology.engineConfig import EngineConstants
from idealHomology.errors import (
    CategoryValidationError,
    ContainmentViolation,
    EmptyClassError,
    EnumerationCapExceeded,
    SideMismatch,
)
from idealHomology.ideals import (
    Side,
    coim_ideal,
    coimage_of,
    coker_ideal,
    cokernel_exists,
    cokernel_of,
    composite_ideal_check,
    im_ideal,
    image_of,
    intersect_ideals,
    is_closed,
    is_epi,
    is_free_left,
    is_mono,
    is_principal,
    is_proper,
    is_saturated,
    ker_ideal,
    kernel_exists,
    kernel_of,
    lift_to_parent,
    principal_left,
    principal_right,
    principal_two_sided,
    product,
    project_from_parent,
    quotient_category,
    quotient_ideals,
    right_annihilator,
    saturate,
    sum_ideals,
    support,
    total_sieve,
    zero_ideal,
)
from idealHomology.linCat import Morphism


@pytest.fixture
def z4_maps(module_z4):
    return {
        "incl": module_z4.morphism("Z2", "Z4", [1]),
        "proj": module_z4.morphism("Z4", "Z2", [1]),
        "twice": module_z4.morphism("Z4", "Z4", [2]),
        "unit": module_z4.morphism("Z4", "Z4", [3]),
    }


def test_principal_ideals_in_module_z4(module_z4, z4_maps):
    right = principal_right(module_z4, z4_maps["incl"])
    assert right.component(0, 1).order == 2
    assert right.component(1, 1).rows == ((2,),)
    assert right.anchor == frozenset({1})
    left = principal_left(module_z4, z4_maps["proj"])
    assert left.component(1, 0).is_full()
    assert left.component(1, 1).rows == ((2,),)
    assert is_saturated(right) and is_saturated(left)


def test_saturation_matches_principal_ideals(module_z4, z4_maps):
    for f in z4_maps.values():
        right = saturate(module_z4, Side.RIGHT, [f])
        left = saturate(module_z4, Side.LEFT, [f])
        assert right.components == principal_right(module_z4, f).components
        assert left.components == principal_left(module_z4, f).components


def test_kernels_and_cokernels_in_module_z4(module_z4, z4_maps):
    incl, proj = z4_maps["incl"], z4_maps["proj"]
    assert kernel_of(module_z4, incl).is_zero()
    assert kernel_of(module_z4, proj).components == principal_right(module_z4, incl).components
    assert cokernel_of(module_z4, incl).components == principal_left(module_z4, proj).components
    assert cokernel_of(module_z4, proj).is_zero()
    assert is_mono(module_z4, incl) and not is_epi(module_z4, incl)
    assert is_epi(module_z4, proj) and not is_mono(module_z4, proj)
    assert not is_mono(module_z4, z4_maps["twice"])
    assert is_mono(module_z4, z4_maps["unit"]) and is_epi(module_z4, z4_maps["unit"])


def test_classical_kernels_and_cokernels(module_z4, z4_maps):
    incl, proj = z4_maps["incl"], z4_maps["proj"]
    assert kernel_exists(module_z4, proj) == incl
    assert kernel_exists(module_z4, z4_maps["twice"]) == incl
    assert cokernel_exists(module_z4, incl) == proj
    assert is_free_left(module_z4, proj)
    assert not is_free_left(module_z4, z4_maps["twice"])


def test_image_of_an_epi_is_the_total_sieve(module_z4, z4_maps):
    proj = z4_maps["proj"]
    assert image_of(module_z4, proj).components == total_sieve(module_z4, 0).components
    assert image_of(module_z4, z4_maps["incl"]).components == principal_right(
        module_z4, z4_maps["incl"]
    ).components
    assert coimage_of(module_z4, proj).components == principal_left(module_z4, proj).components


def test_image_in_free_xab_is_larger_than_the_principal_ideal(free_xab):
    j = free_xab.morphism("a", "b", [1])
    im = image_of(free_xab, j)
    assert im.components == total_sieve(free_xab, 2).components
    assert im.component(0, 2).order == 4
    assert principal_right(free_xab, j).component(0, 2).order == 2
    assert not is_closed(principal_right(free_xab, j))
    assert is_mono(free_xab, j) and is_epi(free_xab, j)


def test_closedness(module_z4, z4_maps):
    assert is_closed(principal_right(module_z4, z4_maps["incl"]))
    assert is_closed(kernel_of(module_z4, z4_maps["twice"]))
    with pytest.raises(SideMismatch):
        is_closed(principal_two_sided(module_z4, z4_maps["incl"]))


def test_principality(module_z4, free_xab, z4_maps):
    ker = kernel_of(module_z4, z4_maps["proj"])
    assert is_principal(ker) == z4_maps["incl"]
    q = free_xab.morphism("x", "b", [1, 0])
    j = free_xab.morphism("a", "b", [1])
    both = saturate(free_xab, Side.RIGHT, [q, j])
    assert is_principal(both) is None
    with pytest.raises(EnumerationCapExceeded):
        is_principal(ker, EngineConstants(enum_cap=1, quiet=True))


def test_annihilator_of_nothing(module_z4):
    with pytest.raises(EmptyClassError):
        right_annihilator(module_z4, [])


def test_lattice_operations(module_z4, z4_maps):
    I = principal_right(module_z4, z4_maps["incl"])
    J = principal_right(module_z4, z4_maps["unit"])
    assert sum_ideals(I, J).components == J.components
    assert intersect_ideals(I, J).components == I.components
    assert I.is_subideal(J) and not J.is_subideal(I)
    assert support(I) == frozenset({1})
    with pytest.raises(SideMismatch):
        sum_ideals(I, principal_left(module_z4, z4_maps["proj"]))


def test_two_sided_ideal_and_quotient(module_z4, z4_maps):
    twice = principal_two_sided(module_z4, z4_maps["twice"])
    assert is_proper(twice)
    assert twice.contains(module_z4.compose(z4_maps["incl"], z4_maps["proj"]))
    assert not twice.contains(z4_maps["incl"])
    Q = quotient_category(module_z4, twice)
    assert Q.hom_order(1, 1) == 2
    assert Q.hom_order(0, 1) == 2
    assert Q.parent is module_z4
    g = project_from_parent(Q, z4_maps["unit"])
    assert g == Q.identity(1)
    assert twice.contains(module_z4.sub(lift_to_parent(Q, g), z4_maps["unit"]))
    with pytest.raises(SideMismatch):
        quotient_category(module_z4, principal_right(module_z4, z4_maps["twice"]))


def test_quotient_module_family(module_z4, z4_maps):
    top = total_sieve(module_z4, 1)
    bottom = principal_right(module_z4, z4_maps["incl"])
    family = quotient_ideals(top, bottom)
    assert family.invariants(0) == ()
    assert family.invariants(1) == (2,)
    assert family.check_functoriality() == []
    with pytest.raises(ContainmentViolation):
        quotient_ideals(bottom, top)


def test_zero_ideal_is_principal_on_zero(module_z4):
    I = zero_ideal(module_z4, Side.RIGHT, [1])
    assert is_principal(I).is_zero()


def test_composite_ideal_in_module_z4(module_z4, z4_maps):
    report = composite_ideal_check(module_z4, z4_maps["incl"], z4_maps["proj"])
    assert report.bilateral.is_zero()
    assert report.holds


def test_ideals_need_a_sealed_category():
    cat = build_module_category(4, [(4,)], seal=False)
    with pytest.raises(CategoryValidationError):
        saturate(cat, Side.RIGHT, [cat.identity(0)])


def test_properness_is_relative_to_the_support(module_z4, z4_maps):
    assert not is_proper(zero_ideal(module_z4, Side.RIGHT, [1]))
    assert not is_proper(total_sieve(module_z4, 1))
    assert not is_proper(principal_right(module_z4, z4_maps["unit"]))
    assert is_proper(principal_right(module_z4, z4_maps["incl"]))


def test_composite_ideal_is_the_product_of_principal_ideals(module_z4, z4_maps):
    report = composite_ideal_check(module_z4, z4_maps["incl"], z4_maps["unit"])
    assert report.holds
    assert report.product == report.bilateral
    assert report.bilateral.component(0, 1).order == 2
    assert report.bilateral.component(1, 1).rows == ((2,),)
    assert report.bilateral.component(1, 0).is_zero()
    assert report.meet_agrees
    assert report.to_dict()["holds"]


@pytest.mark.parametrize("name", ["module_z4", "matrix_f2", "free_xab"])
def test_ideal_operations_against_search(
    name, request, span, ideal_by_search, annihilator_by_search, ideal_elements, morphism_sampler
):
    cat = request.getfixturevalue(name)
    rng = random.Random(41)
    for _ in range(25):
        side = rng.choice((Side.LEFT, Side.RIGHT))
        gens = [morphism_sampler(cat, rng) for _ in range(rng.randint(1, 2))]
        I = saturate(cat, side, gens)
        assert ideal_elements(I) == ideal_by_search(cat, side, gens)

        first = ker_ideal(I) if side == Side.LEFT else coker_ideal(I)
        other = Side.RIGHT if side == Side.LEFT else Side.LEFT
        assert ideal_elements(first) == annihilator_by_search(I, other)
        second = coim_ideal(I) if side == Side.LEFT else im_ideal(I)
        assert ideal_elements(second) == annihilator_by_search(first, side)

        J = saturate(cat, side, [morphism_sampler(cat, rng)])
        in_i, in_j = ideal_elements(I), ideal_elements(J)
        assert ideal_elements(intersect_ideals(I, J)) == {
            key: found & in_j[key] for key, found in in_i.items()
        }
        composites: dict = {key: [] for key in in_i}
        for (a, b), left in in_i.items():
            for (c, d), right in in_j.items():
                if d == a:
                    composites[(c, b)] += [
                        cat.compose(Morphism(a, b, u), Morphism(c, d, v)).coords
                        for u in left
                        for v in right
                    ]
        assert ideal_elements(product(I, J)) == {
            key: span(found, cat.hom(*key).orders) for key, found in composites.items()
        }
