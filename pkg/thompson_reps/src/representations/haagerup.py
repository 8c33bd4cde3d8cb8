import collections
import dataclasses
import fractions
import logging
import pydantic
import typing

from src.config import Bounds
from src.config import load_bounds
from src.errors import ContractViolation
from src.errors import InvariantError
from src.forest.trees import Tree
from src.forest.words import Prefix
from src.forest.words import WordTuple
from src.forest.words import subrooted_trees
from src.groups.element import VElement
from src.groups.families import enumerate_elements
from src.groups.symmetric import Perm
from src.representations.ring import RingElem

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ExpansionTerm:
    """coefficient * delta_words, one term of Phi_alpha(t) delta_e."""

    prefix: Prefix

    @property
    def coefficient(self) -> RingElem:
        return RingElem.from_monomials({(self.prefix.alpha_exponent, self.prefix.m): 1})

    @property
    def words(self) -> WordTuple:
        return self.prefix.words


@dataclasses.dataclass(frozen=True)
class PhiTerm:
    """A nonzero term of the coefficient: range prefix z and domain prefix r with matching residual words."""

    range_prefix: Prefix
    domain_prefix: Prefix

    @property
    def alpha_exponent(self) -> int:
        return self.range_prefix.alpha_exponent + self.domain_prefix.alpha_exponent

    @property
    def beta_exponent(self) -> int:
        return self.range_prefix.m + self.domain_prefix.m


def phi_expansion(t: Tree) -> list[ExpansionTerm]:
    """Phi_alpha(t) delta_e = sum over rooted subtrees z of alpha^(|z|-1) beta^m(t,z) delta_P(t,z)."""
    return [ExpansionTerm(prefix) for prefix in subrooted_trees(t)]


def phi_terms(range_: Tree, domain: Tree, bijection: Perm) -> list[PhiTerm]:
    """Pairs (z, r) with P(domain, r)_k == P(range, z)_bijection(k) for every leaf k."""
    images = [bijection(k) - 1 for k in range(1, bijection.size + 1)]
    by_words = {}
    for prefix in subrooted_trees(range_):
        by_words[tuple(prefix.words[image] for image in images)] = prefix
    terms = []
    for prefix in subrooted_trees(domain):
        match = by_words.get(prefix.words)
        if match is not None:
            terms.append(PhiTerm(match, prefix))
    return terms


def phi_alpha_pair(range_: Tree, domain: Tree, bijection: Perm) -> RingElem:
    """Haagerup coefficient of the fraction range^-1 (domain, bijection); every representative gives the same value."""
    terms = phi_terms(range_, domain, bijection)
    counts = collections.Counter((term.alpha_exponent, term.beta_exponent) for term in terms)
    value = RingElem.from_monomials(counts)
    if not value.is_beta_free:
        raise InvariantError(f"Odd beta power survived for {range_}/{domain}~{bijection}: {value}.")
    return value


def phi_alpha(g: VElement) -> RingElem:
    """phi_alpha(g) = <sigma_alpha(g) Omega, Omega> as an integer polynomial in alpha."""
    return phi_alpha_pair(g.range, g.domain, g.bijection)


def check_alpha(alpha: fractions.Fraction) -> fractions.Fraction:
    alpha = fractions.Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ContractViolation("alpha-range", f"alpha must lie in [0, 1], got {alpha}.")
    return alpha


def phi_alpha_eval(g: VElement, alpha: fractions.Fraction) -> fractions.Fraction:
    return phi_alpha(g).evaluate(check_alpha(alpha))


def vacuum_coefficient(g: VElement) -> RingElem:
    """<theta(bijection) Phi(domain) delta_e, Phi(range) delta_e> expanded term by term in the ring."""
    range_terms = {term.words: term.coefficient for term in phi_expansion(g.range)}
    inverse = g.bijection.inverse()
    total = RingElem.zero()
    for term in phi_expansion(g.domain):
        moved = tuple(term.words[inverse(i) - 1] for i in range(1, inverse.size + 1))
        if moved in range_terms:
            total = total + term.coefficient * range_terms[moved]
    return total


class SweepRow(pydantic.BaseModel):
    """One CSV row: phi_alpha(element) at one alpha, both as exact fractions."""

    element_id: str
    n_leaves: int
    alpha_num: int
    alpha_den: int
    phi_num: int
    phi_den: int

    @classmethod
    def of(cls, g: VElement, alpha: fractions.Fraction, value: fractions.Fraction) -> "SweepRow":
        return cls(
            element_id=str(g),
            n_leaves=g.leaf_count,
            alpha_num=alpha.numerator,
            alpha_den=alpha.denominator,
            phi_num=value.numerator,
            phi_den=value.denominator,
        )


def alpha_sweep(g: VElement, alphas: typing.Iterable[fractions.Fraction]) -> list[SweepRow]:
    """phi_alpha(g) along a list of alphas; the values tend to 1 as alpha tends to 1."""
    polynomial = phi_alpha(g)
    rows = []
    for alpha in alphas:
        alpha = check_alpha(alpha)
        rows.append(SweepRow.of(g, alpha, polynomial.evaluate(alpha)))
    return rows


def affine_rows(
    alpha: fractions.Fraction, max_leaves: int, bounds: typing.Optional[Bounds] = None
) -> typing.Iterator[SweepRow]:
    """One row per reduced element of T with at most max_leaves leaves."""
    alpha = check_alpha(alpha)
    for n in range(1, max_leaves + 1):
        for g in enumerate_elements(n, affine_only=True, bounds=bounds):
            yield SweepRow.of(g, alpha, phi_alpha(g).evaluate(alpha))


class ScanRow(pydantic.BaseModel):
    """Summary of phi_alpha over all reduced elements of T with a given leaf count."""

    n_leaves: int
    elements: int
    alpha_num: int
    alpha_den: int
    phi_num: int
    phi_den: int
    max_deviation_num: int
    max_deviation_den: int
    polynomial_mismatches: int


def vanishing_scan(alpha: fractions.Fraction, max_leaves: int, bounds: typing.Optional[Bounds] = None) -> list[ScanRow]:
    """For T, check phi_alpha(g) == alpha^(2n-2) for every reduced element with n <= max_leaves leaves."""
    alpha = check_alpha(alpha)
    bounds = bounds or load_bounds()
    if max_leaves > bounds.max_leaves:
        raise ContractViolation("bound", f"max_leaves {max_leaves} is over the configured maximum {bounds.max_leaves}.")
    rows = []
    for n in range(1, max_leaves + 1):
        expected = RingElem.alpha_power(2 * n - 2)
        expected_value = expected.evaluate(alpha)
        count, mismatches, deviation = 0, 0, fractions.Fraction(0)
        for g in enumerate_elements(n, affine_only=True, bounds=bounds):
            polynomial = phi_alpha(g)
            count += 1
            if polynomial != expected:
                mismatches += 1
            deviation = max(deviation, abs(polynomial.evaluate(alpha) - expected_value))
        logger.info(f"Scanned {count} elements of T with {n} leaves, {mismatches} polynomial mismatches.")
        rows.append(
            ScanRow(
                n_leaves=n,
                elements=count,
                alpha_num=alpha.numerator,
                alpha_den=alpha.denominator,
                phi_num=expected_value.numerator,
                phi_den=expected_value.denominator,
                max_deviation_num=deviation.numerator,
                max_deviation_den=deviation.denominator,
                polynomial_mismatches=mismatches,
            )
        )
    return rows
