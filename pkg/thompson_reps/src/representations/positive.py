import dataclasses
import fractions
import logging
import math
import numpy
import pydantic
import typing

from src.groups.element import VElement
from src.groups.element import inverse
from src.groups.element import multiply
from src.representations.haagerup import check_alpha
from src.representations.haagerup import phi_alpha
from src.representations.ring import RingElem

logger = logging.getLogger(__name__)


def farley_norm(g: VElement) -> int:
    """2n - 2 for a reduced element with n leaves."""
    return 2 * g.leaf_count - 2


@dataclasses.dataclass(frozen=True)
class FarleyValue:
    """exp(-beta)^exponent, kept symbolic so it stays exact."""

    beta: fractions.Fraction
    exponent: int

    def to_float(self) -> float:
        return math.exp(-float(self.beta) * self.exponent)

    def __str__(self) -> str:
        return f"exp(-{self.beta})^{self.exponent}"


def farley_phi(g: VElement, beta: fractions.Fraction) -> FarleyValue:
    return FarleyValue(fractions.Fraction(beta), farley_norm(g))


def agrees_with_farley(g: VElement) -> bool:
    """True when phi_alpha(g) is exactly alpha^(2n-2), i.e. the Farley function at alpha = exp(-beta)."""
    return phi_alpha(g) == RingElem.alpha_power(farley_norm(g))


def gram_matrix(elements: typing.Sequence[VElement], alpha: fractions.Fraction) -> numpy.ndarray:
    """M_ij = phi_alpha(g_i^-1 g_j) as an object array of Fractions."""
    alpha = check_alpha(alpha)
    polynomials: dict[VElement, RingElem] = {}
    size = len(elements)
    matrix = numpy.zeros((size, size), dtype=object)
    for i, left in enumerate(elements):
        left_inverse = inverse(left)
        for j, right in enumerate(elements):
            product = multiply(left_inverse, right)
            if product not in polynomials:
                polynomials[product] = phi_alpha(product)
            matrix[i, j] = polynomials[product].evaluate(alpha)
    return matrix


class GramReport(pydantic.BaseModel):
    size: int
    alpha: str
    is_psd: bool
    rank: int
    pivots: list[str]
    witness_index: typing.Optional[int] = None
    witness_value: typing.Optional[str] = None
    min_eigenvalue: typing.Optional[float] = None


Witness = typing.Optional[tuple[int, fractions.Fraction]]


def ldl_pivots(matrix: numpy.ndarray) -> tuple[list[fractions.Fraction], Witness]:
    """Exact symmetric LDL^T with diagonal pivoting.

    Returns the pivots taken and, when the matrix is not positive semidefinite, the (index, value) witnessing it: a
    negative diagonal, or a nonzero entry left once the largest remaining diagonal is zero.
    """
    work = numpy.array(matrix, dtype=object)
    remaining = list(range(work.shape[0]))
    pivots = []
    while remaining:
        index = max(remaining, key=lambda k: (work[k, k], -k))
        pivot = work[index, index]
        if pivot < 0:
            return pivots, (index, pivot)
        if pivot == 0:
            for k in remaining:
                for other in remaining:
                    if work[k, other] != 0:
                        return pivots, (k, work[k, other])
            return pivots, None
        pivots.append(pivot)
        remaining.remove(index)
        for k in remaining:
            factor = work[k, index] / pivot
            for other in remaining:
                work[k, other] -= factor * work[index, other]
    return pivots, None


def gram_psd_check(elements: typing.Sequence[VElement], alpha: fractions.Fraction) -> GramReport:
    """Decide exactly whether the Gram matrix of phi_alpha on the given elements is positive semidefinite."""
    alpha = check_alpha(alpha)
    matrix = gram_matrix(elements, alpha)
    pivots, witness = ldl_pivots(matrix)
    eigenvalues = numpy.linalg.eigvalsh(matrix.astype(float)) if len(elements) else numpy.zeros(0)
    report = GramReport(
        size=len(elements),
        alpha=str(alpha),
        is_psd=witness is None,
        rank=len(pivots),
        pivots=[str(pivot) for pivot in pivots],
        witness_index=None if witness is None else witness[0],
        witness_value=None if witness is None else str(witness[1]),
        min_eigenvalue=float(eigenvalues.min()) if len(eigenvalues) else None,
    )
    logger.info(f"Gram check over {report.size} elements at alpha={alpha}: psd={report.is_psd}, rank={report.rank}.")
    return report
