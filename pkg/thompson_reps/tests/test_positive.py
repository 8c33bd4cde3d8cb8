import fractions
import math
import numpy
import pytest
import random

from src.groups.element import VElement
from src.groups.families import builtin_element
from src.groups.families import random_element
from src.groups.notation import parse_element
from src.representations.positive import agrees_with_farley
from src.representations.positive import farley_norm
from src.representations.positive import farley_phi
from src.representations.positive import gram_matrix
from src.representations.positive import gram_psd_check
from src.representations.positive import ldl_pivots

F = fractions.Fraction


def test_farley_norm_and_value():
    x0 = builtin_element("x0")
    assert farley_norm(x0) == 4
    assert farley_norm(VElement.identity()) == 0
    value = farley_phi(x0, F(1, 2))
    assert str(value) == "exp(-1/2)^4"
    assert value.to_float() == pytest.approx(math.exp(-2))


def test_farley_agreement():
    assert agrees_with_farley(builtin_element("x0"))
    assert agrees_with_farley(builtin_element("rot3"))
    assert not agrees_with_farley(parse_element("(f3 f1 f1)/(f3 f1 f1)~[3,2,1,4]"))


def test_gram_matrix_entries():
    matrix = gram_matrix([VElement.identity(), builtin_element("x0")], F(1, 2))
    assert matrix.tolist() == [[1, F(1, 16)], [F(1, 16), 1]]


def test_ldl_finds_negative_pivot():
    matrix = numpy.array([[F(1), F(2)], [F(2), F(1)]], dtype=object)
    pivots, witness = ldl_pivots(matrix)
    assert pivots == [1]
    assert witness == (1, -3)


def test_ldl_handles_rank_deficiency():
    matrix = numpy.array([[F(1), F(1)], [F(1), F(1)]], dtype=object)
    assert ldl_pivots(matrix) == ([1], None)
    off_diagonal = numpy.array([[F(0), F(1)], [F(1), F(0)]], dtype=object)
    assert ldl_pivots(off_diagonal) == ([], (0, 1))


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 2), F(3, 4)])
def test_random_gram_matrices_are_psd(seed, alpha):
    rng = random.Random(seed)
    elements = [random_element(rng, rng.randint(0, 6)) for _ in range(10)]
    report = gram_psd_check(elements, alpha)
    assert report.is_psd, report
    assert report.size == 10
    assert all(F(pivot) > 0 for pivot in report.pivots)
    assert 1 <= report.rank == len(report.pivots) <= 10
    assert report.min_eigenvalue > -1e-9


def test_empty_gram():
    report = gram_psd_check([], F(1, 2))
    assert report.is_psd and report.rank == 0 and report.min_eigenvalue is None
