import fractions
import pytest
import random

from src.config import Bounds
from src.errors import ContractViolation
from src.forest.trees import complete_tree
from src.groups.element import VElement
from src.groups.families import builtin_element
from src.groups.families import enumerate_elements
from src.groups.families import family_gn
from src.groups.families import random_element
from src.groups.notation import parse_element
from src.oracles.reduction import random_unreduced
from src.representations.haagerup import affine_rows
from src.representations.haagerup import alpha_sweep
from src.representations.haagerup import phi_alpha
from src.representations.haagerup import phi_alpha_eval
from src.representations.haagerup import phi_alpha_pair
from src.representations.haagerup import phi_expansion
from src.representations.haagerup import phi_terms
from src.representations.haagerup import vacuum_coefficient
from src.representations.haagerup import vanishing_scan
from src.representations.ring import RingElem

F = fractions.Fraction
SWAP_13 = "(f3 f1 f1)/(f3 f1 f1)~[3,2,1,4]"


def test_expansion_of_complete_tree():
    terms = phi_expansion(complete_tree(2))
    assert [term.coefficient for term in terms] == [
        RingElem.from_monomials({(0, 1): 1}),
        RingElem.from_monomials({(1, 2): 1}),
        RingElem.from_monomials({(2, 1): 1}),
        RingElem.from_monomials({(2, 1): 1}),
        RingElem.alpha_power(3),
    ]


def test_generators():
    assert phi_alpha(builtin_element("x0")) == RingElem.alpha_power(4)
    assert phi_alpha(builtin_element("rot2")) == RingElem.alpha_power(2)
    assert phi_alpha(VElement.identity()) == RingElem.one()


def test_outer_swap_breaks_the_norm_formula():
    g = parse_element(SWAP_13)
    value = phi_alpha(g)
    expected = RingElem.alpha_power(6) + RingElem.alpha_power(2) * (1 - RingElem.alpha_power(2)) ** 2
    assert value == expected
    assert value == RingElem.of([0, 0, 1, 0, -2, 0, 2])
    assert value != RingElem.alpha_power(2 * g.leaf_count - 2)
    assert phi_alpha_eval(g, F(1, 2)) == F(5, 32)
    assert {(term.alpha_exponent, term.beta_exponent) for term in phi_terms(g.range, g.domain, g.bijection)} == {
        (6, 0),
        (2, 4),
    }


@pytest.mark.parametrize("n", range(1, 7))
def test_affine_elements_follow_the_norm_formula(n):
    expected = RingElem.alpha_power(2 * n - 2)
    for g in enumerate_elements(n, affine_only=True):
        assert phi_alpha(g) == expected, str(g)


def test_regular_and_trivial_limits():
    rng = random.Random(2024)
    checked = 0
    while checked < 100:
        g = random_element(rng, rng.randint(1, 6))
        if g.is_identity:
            continue
        checked += 1
        assert phi_alpha_eval(g, 0) == 0
        assert phi_alpha_eval(g, 1) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_non_vanishing_family(n):
    g = family_gn(n, Bounds(max_leaves=12))
    assert phi_alpha_eval(g, F(1, 2)) >= F(9, 64)


def test_value_does_not_depend_on_representative():
    rng = random.Random(11)
    for _ in range(40):
        g = random_element(rng, rng.randint(0, 5))
        raw = random_unreduced(rng, g)
        assert phi_alpha_pair(raw.range, raw.domain, raw.bijection) == phi_alpha(g)


@pytest.mark.parametrize("n", range(1, 6))
def test_vacuum_route_agrees(n):
    for g in enumerate_elements(n):
        assert vacuum_coefficient(g) == phi_alpha(g), str(g)


def test_inverse_has_same_value():
    rng = random.Random(5)
    for _ in range(20):
        g = random_element(rng, 5)
        assert phi_alpha(g) == phi_alpha(VElement(g.range, g.domain, g.bijection.inverse()))


def test_alpha_range_is_checked():
    with pytest.raises(ContractViolation) as info:
        phi_alpha_eval(builtin_element("x0"), F(3, 2))
    assert info.value.contract == "alpha-range"


def test_sweep_rows():
    rows = alpha_sweep(builtin_element("x0"), [F(0), F(1, 2), F(1)])
    assert [(row.phi_num, row.phi_den) for row in rows] == [(0, 1), (1, 16), (1, 1)]
    assert rows[1].element_id == str(builtin_element("x0"))
    assert rows[1].n_leaves == 3
    assert (rows[1].alpha_num, rows[1].alpha_den) == (1, 2)


def test_sweep_values_approach_one():
    g = parse_element(SWAP_13)
    rows = alpha_sweep(g, [F(k, 10) for k in range(1, 11)])
    values = [F(row.phi_num, row.phi_den) for row in rows]
    assert values[-1] == 1
    assert values[-2] > F(1, 2)


def test_vanishing_scan():
    rows = vanishing_scan(F(1, 2), 4)
    assert [row.n_leaves for row in rows] == [1, 2, 3, 4]
    assert [row.elements for row in rows[:2]] == [1, 1]
    for row in rows:
        assert row.polynomial_mismatches == 0
        assert row.max_deviation_num == 0
        assert F(row.phi_num, row.phi_den) == F(1, 4 ** (row.n_leaves - 1))
    with pytest.raises(ContractViolation):
        vanishing_scan(F(1, 2), 11)


def test_affine_rows_cover_every_element():
    rows = list(affine_rows(F(1, 3), 3))
    assert len(rows) == sum(1 for n in range(1, 4) for _ in enumerate_elements(n, affine_only=True))
    assert all(F(row.phi_num, row.phi_den) == F(1, 9) ** (row.n_leaves - 1) for row in rows)
