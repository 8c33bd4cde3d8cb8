import bisect
import dataclasses
import fractions
import functools
import re

from src.errors import ContractViolation
from src.errors import ParseError
from src.forest.trees import Leaf
from src.forest.trees import Tree
from src.forest.trees import least_common_refinement
from src.groups.element import VElement

_DYADIC = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")


@functools.total_ordering
@dataclasses.dataclass(frozen=True)
class Dyadic:
    """numerator / 2^exponent, kept with an odd numerator (or exponent 0)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            object.__setattr__(self, "numerator", self.numerator * 2**-self.exponent)
            object.__setattr__(self, "exponent", 0)
        while self.exponent > 0 and self.numerator % 2 == 0:
            object.__setattr__(self, "numerator", self.numerator // 2)
            object.__setattr__(self, "exponent", self.exponent - 1)

    @classmethod
    def from_fraction(cls, value: fractions.Fraction) -> "Dyadic":
        value = fractions.Fraction(value)
        exponent = value.denominator.bit_length() - 1
        if value.denominator != 1 << exponent:
            raise ContractViolation("dyadic", f"{value} does not have a power-of-two denominator.")
        return cls(value.numerator, exponent)

    def to_fraction(self) -> fractions.Fraction:
        return fractions.Fraction(self.numerator, 1 << self.exponent)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        exponent = max(self.exponent, other.exponent)
        return Dyadic(
            (self.numerator << (exponent - self.exponent)) + (other.numerator << (exponent - other.exponent)), exponent
        )

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + Dyadic(-other.numerator, other.exponent)

    def scale(self, shift: int) -> "Dyadic":
        """Multiply by 2^shift."""
        return Dyadic(self.numerator, self.exponent - shift)

    def __lt__(self, other: "Dyadic") -> bool:
        exponent = max(self.exponent, other.exponent)
        return self.numerator << (exponent - self.exponent) < other.numerator << (exponent - other.exponent)

    def __str__(self) -> str:
        return str(self.numerator) if self.exponent == 0 else f"{self.numerator}/{1 << self.exponent}"


def parse_dyadic(text: str) -> Dyadic:
    """Read "k", "k/2^e" or "p/q" (q a power of two)."""
    match = _DYADIC.match(text)
    if match is None:
        raise ParseError("Expected a dyadic rational such as 3/8 or 3/2^3", text, 0)
    numerator = int(match.group(1))
    if match.group(2) is not None:
        return Dyadic(numerator, int(match.group(2)))
    if match.group(3) is not None:
        denominator = int(match.group(3))
        if denominator == 0 or denominator & (denominator - 1):
            raise ParseError("Denominator is not a power of two", text, match.start(3))
        return Dyadic(numerator, denominator.bit_length() - 1)
    return Dyadic(numerator)


@functools.cache
def cells(tree: Tree) -> tuple[tuple[Dyadic, int], ...]:
    """(start, depth) of each leaf interval [start, start + 2^-depth), left to right."""
    result = []

    def _walk(node: Tree, start: Dyadic, depth: int):
        if isinstance(node, Leaf):
            result.append((start, depth))
            return
        _walk(node.left, start, depth + 1)
        _walk(node.right, start + Dyadic(1, depth + 1), depth + 1)

    _walk(tree, Dyadic(0), 0)
    return tuple(result)


@functools.cache
def _starts(tree: Tree) -> tuple[fractions.Fraction, ...]:
    return tuple(start.to_fraction() for start, _ in cells(tree))


def eval_pl(g: VElement, x: Dyadic) -> Dyadic:
    """Image of x under the piecewise-linear map of g on [0, 1)."""
    if not Dyadic(0) <= x < Dyadic(1):
        raise ContractViolation("domain", f"{x} is outside [0, 1).")
    k = bisect.bisect_right(_starts(g.domain), x.to_fraction())
    start, depth = cells(g.domain)[k - 1]
    target_start, target_depth = cells(g.range)[g.bijection(k) - 1]
    return target_start + (x - start).scale(depth - target_depth)


def pl_equal(g: VElement, h: VElement) -> bool:
    """True if g and h act identically on [0, 1); both are affine on every cell of the common refinement."""
    common = least_common_refinement(g.domain, h.domain)
    for start, depth in cells(common):
        for point in (start, start + Dyadic(1, depth + 1)):
            if eval_pl(g, point) != eval_pl(h, point):
                return False
    return True
