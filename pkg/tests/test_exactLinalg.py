"""
Tools for ideal-theoretic homology in finite additive categories. Tests for the exact
linear algebra layer.
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
from math import gcd, prod

import pytest

from idealHomology.errors import (
    AmbientMismatch,
    ContainmentViolation,
    EnumerationCapExceeded,
    LinalgInputError,
    ModulusTooLarge,
    WellDefinednessViolation,
)
from idealHomology.exactLinalg import (
    GroupHom,
    OrderVector,
    ResidueRing,
    Subquotient,
    SubquotientMap,
    enumerate_subgroup,
    exact_at,
    full_subgroup,
    howell_form,
    image,
    induced_on_quotient,
    intersect,
    is_subgroup,
    kernel,
    quotient_invariants,
    solve,
    subgroup_sum,
    zero_subgroup,
)

Z4 = OrderVector((4,))
Z2 = OrderVector((2,))
Z4_2 = OrderVector((4, 4))


def random_hom(rng: random.Random, source: OrderVector, target: OrderVector) -> GroupHom:
    columns = [
        [t // gcd(d, t) * rng.randrange(t) for t in target] for d in source
    ]
    return GroupHom.from_columns(source, target, columns)


def random_elements(rng: random.Random, ambient: OrderVector, k: int) -> list:
    return [tuple(rng.randrange(d) for d in ambient) for _ in range(k)]


AMBIENTS = [OrderVector((4, 4)), OrderVector((2, 4)), OrderVector((2, 4, 8)), OrderVector((6, 4))]


def test_residue_ring_bounds():
    assert repr(ResidueRing(4)) == "Z/4"
    with pytest.raises(LinalgInputError):
        ResidueRing(1)
    with pytest.raises(ModulusTooLarge):
        ResidueRing(2**31 + 1)


def test_hom_columns_must_be_killed_by_their_order():
    with pytest.raises(LinalgInputError):
        GroupHom(Z2, Z4, ((1,),))
    assert GroupHom(Z2, Z4, ((2,),)).apply((1,)) == (2,)


def test_howell_form_adds_the_annihilated_row():
    sub = howell_form([(2, 1)], Z4_2)
    assert sub.rows == ((2, 1), (0, 2))
    assert sub.order == 4


def test_howell_form_in_mixed_ambient():
    sub = howell_form([(1, 1)], OrderVector((2, 4)))
    assert sub.rows == ((1, 1), (0, 2))
    assert sub.order == 4


def test_howell_form_is_canonical():
    assert howell_form([(2, 1)], Z4_2) == howell_form([(2, 3), (0, 2)], Z4_2)
    assert howell_form([(2, 2), (2, 2)], Z4_2).rows == ((2, 2),)
    assert zero_subgroup(Z4_2) == howell_form([(0, 0), (4, 8)], Z4_2)


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_howell_form_matches_brute_span(ambient, span):
    rng = random.Random(7)
    for _ in range(20):
        gens = random_elements(rng, ambient, rng.randrange(1, 4))
        sub = howell_form(gens, ambient)
        expected = span(gens, ambient)
        assert set(sub.elements()) == expected
        assert sub.order == len(expected)


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_kernel_and_image_match_search(ambient, kernel_by_search, span):
    rng = random.Random(11)
    target = OrderVector((4, 2))
    for _ in range(10):
        h = random_hom(rng, ambient, target)
        assert set(kernel(h).elements()) == kernel_by_search(h)
        columns = [h.column(i) for i in range(len(ambient))]
        assert set(image(h).elements()) == span(columns, target)


def test_intersect_and_sum(span):
    rng = random.Random(3)
    ambient = OrderVector((2, 4, 8))
    for _ in range(15):
        ga, gb = random_elements(rng, ambient, 2), random_elements(rng, ambient, 2)
        a, b = howell_form(ga, ambient), howell_form(gb, ambient)
        assert set(intersect(a, b).elements()) == span(ga, ambient) & span(gb, ambient)
        assert set(subgroup_sum(a, b).elements()) == span(ga + gb, ambient)
        assert is_subgroup(intersect(a, b), a)


def test_mismatched_ambients_are_rejected():
    with pytest.raises(AmbientMismatch):
        subgroup_sum(full_subgroup(Z4), full_subgroup(Z2))


def test_solve_returns_a_preimage():
    rng = random.Random(5)
    for _ in range(10):
        h = random_hom(rng, OrderVector((4, 2)), OrderVector((8, 4)))
        for y in image(h).elements():
            x = solve(h, y)
            assert x is not None and h.apply(x) == y
    doubling = GroupHom(Z4, Z4, ((2,),))
    assert solve(doubling, (1,)) is None
    assert doubling.apply(solve(doubling, (2,))) == (2,)


def test_quotient_invariants():
    assert quotient_invariants(Z4_2, howell_form([(2, 2)], Z4_2)) == (2, 4)
    assert quotient_invariants(Z4, full_subgroup(Z4)) == ()
    assert quotient_invariants(OrderVector((2, 3)), zero_subgroup(OrderVector((2, 3)))) == (6,)


def test_subquotient_projection_and_lift():
    sq = Subquotient.quotient(Z4, howell_form([(2,)], Z4))
    assert sq.invariants == (2,)
    assert sq.project((1,)) == sq.project((3,))
    assert sq.project((2,)) == (0,)
    for x in Z4.elements():
        back = sq.lift(sq.project(x))
        assert sq.is_zero_class(tuple(u - v for u, v in zip(back, x)))


def test_subquotient_of_a_subgroup():
    top = howell_form([(2, 0), (0, 1)], Z4_2)
    bottom = howell_form([(0, 2)], Z4_2)
    sq = Subquotient(Z4_2, top, bottom)
    assert sq.order == 4
    assert sorted(sq.invariants) == [2, 2]
    with pytest.raises(ContainmentViolation):
        Subquotient(Z4_2, bottom, top)
    with pytest.raises(ContainmentViolation):
        sq.project((1, 0))


def test_exactness_of_a_short_sequence():
    def whole(ambient):
        return Subquotient.quotient(ambient, zero_subgroup(ambient))

    inner = SubquotientMap.from_ambient_hom(GroupHom(Z2, Z4, ((2,),)), whole(Z2), whole(Z4))
    outer = SubquotientMap.from_ambient_hom(GroupHom(Z4, Z2, ((1,),)), whole(Z4), whole(Z2))
    assert exact_at(inner, outer)
    assert outer.compose(inner).is_zero()
    assert not exact_at(
        SubquotientMap.from_ambient_hom(GroupHom.zero(Z2, Z4), whole(Z2), whole(Z4)), outer
    )


def test_induced_map_needs_compatible_subgroups():
    two = howell_form([(2,)], Z4)
    with pytest.raises(WellDefinednessViolation):
        induced_on_quotient(GroupHom.identity(Z4), two, zero_subgroup(Z4))
    induced = induced_on_quotient(GroupHom.identity(Z4), two, two)
    assert induced.source.orders == (2,)
    assert induced.matrix == ((1,),)


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded) as info:
        enumerate_subgroup(full_subgroup(OrderVector((8, 8))), 10, "test group")
    assert info.value.order == 64
    assert len(enumerate_subgroup(full_subgroup(Z4_2), 16)) == 16


def test_subquotient_uses_element_orders_for_carried_rows():
    ambient = OrderVector((2, 4))
    top = howell_form([(1, 1)], ambient)
    assert top.generator_orders == (2, 2)
    assert top.element_orders == (4, 2)
    sq = Subquotient(ambient, top, zero_subgroup(ambient))
    assert sq.invariants == (4,)
    assert quotient_invariants(ambient, top) == (2,)
    assert sq.orders.element_order(sq.project((1, 1))) == 4
    assert sq.project((0, 2)) == sq.orders.reduce([2 * v for v in sq.project((1, 1))])
    assert SubquotientMap.from_ambient_hom(GroupHom.identity(ambient), sq, sq).is_identity()


CYCLIC_ORDERS = (2, 3, 4, 5, 6, 8, 9, 12, 16)


def random_ambient(rng: random.Random, bound: int) -> OrderVector:
    orders: list[int] = []
    for _ in range(rng.randint(1, 4)):
        d = rng.choice(CYCLIC_ORDERS)
        if prod(orders) * d <= bound:
            orders.append(d)
    return OrderVector(tuple(orders or [rng.choice(CYCLIC_ORDERS)]))


def test_howell_form_is_invariant_under_generator_moves():
    rng = random.Random(2024)
    for _ in range(10_000):
        ambient = random_ambient(rng, 4096)
        gens = random_elements(rng, ambient, rng.randint(1, 4))
        sub = howell_form(gens, ambient)
        N = ambient.exponent
        unit = rng.choice([u for u in range(1, N + 1) if gcd(u, N) == 1])
        moved = [tuple(unit * v for v in g) for g in gens]
        rng.shuffle(moved)
        if len(moved) > 1:
            c = rng.randrange(N)
            moved[0] = tuple(u + c * v for u, v in zip(moved[0], moved[1]))
        assert howell_form(moved, ambient) == sub
        assert howell_form(sub.rows, ambient) == sub
        assert all(sub.coefficients(g) is not None for g in gens)
        assert ambient.order % sub.order == 0


def test_howell_form_counts_against_search(span):
    rng = random.Random(99)
    for _ in range(300):
        ambient = random_ambient(rng, 256)
        gens = random_elements(rng, ambient, rng.randint(1, 3))
        sub = howell_form(gens, ambient)
        members = span(gens, ambient)
        assert set(sub.elements()) == members
        invariants = quotient_invariants(ambient, sub)
        assert len(members) * prod(invariants) == ambient.order
        for k in (2, 3, 4):
            torsion = [
                x
                for x in ambient.elements()
                if ambient.reduce([k * v for v in x]) in members
            ]
            assert len(torsion) == len(members) * prod(gcd(k, e) for e in invariants)
