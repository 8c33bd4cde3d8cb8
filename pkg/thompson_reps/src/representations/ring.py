import dataclasses
import fractions
import math
import sympy
import typing

from src.errors import ContractViolation

ALPHA = sympy.Symbol("alpha")
BETA_SQUARED = sympy.Poly(1 - ALPHA**2, ALPHA, domain=sympy.ZZ)


def _poly(coefficients: typing.Sequence[int]) -> sympy.Poly:
    """Integer polynomial in alpha from coefficients listed lowest degree first."""
    return sympy.Poly.from_list(list(reversed(coefficients)) or [0], ALPHA, domain=sympy.ZZ)


def _coefficients(poly: sympy.Poly) -> list[int]:
    if poly.is_zero:
        return []
    return [int(c) for c in reversed(poly.all_coeffs())]


@dataclasses.dataclass(frozen=True)
class RingElem:
    """even + beta * odd, with even and odd integer polynomials in alpha and beta = sqrt(1 - alpha^2)."""

    even: sympy.Poly
    odd: sympy.Poly

    @classmethod
    def of(cls, even: typing.Sequence[int] = (), odd: typing.Sequence[int] = ()) -> "RingElem":
        return cls(_poly(even), _poly(odd))

    @classmethod
    def integer(cls, value: int) -> "RingElem":
        return cls.of([value])

    @classmethod
    def zero(cls) -> "RingElem":
        return cls.of()

    @classmethod
    def one(cls) -> "RingElem":
        return cls.of([1])

    @classmethod
    def alpha(cls) -> "RingElem":
        return cls.of([0, 1])

    @classmethod
    def beta(cls) -> "RingElem":
        return cls.of([], [1])

    @classmethod
    def alpha_power(cls, k: int) -> "RingElem":
        return cls.of([0] * k + [1])

    @classmethod
    def from_monomials(cls, counts: typing.Mapping[tuple[int, int], int]) -> "RingElem":
        """Sum of count * alpha^a * beta^M over {(a, M): count}, with beta^2 rewritten as 1 - alpha^2."""
        even, odd = {}, {}
        for (a, m), count in counts.items():
            target = even if m % 2 == 0 else odd
            half = m // 2
            for j in range(half + 1):
                degree = a + 2 * j
                target[degree] = target.get(degree, 0) + count * math.comb(half, j) * (-1) ** j

        def _dense(sparse: dict[int, int]) -> list[int]:
            return [sparse.get(d, 0) for d in range(max(sparse, default=-1) + 1)]

        return cls.of(_dense(even), _dense(odd))

    def _lift(self, other: typing.Any) -> "RingElem":
        if isinstance(other, RingElem):
            return other
        if isinstance(other, int):
            return RingElem.integer(other)
        return NotImplemented

    def __add__(self, other: typing.Any) -> "RingElem":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RingElem(self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem(-self.even, -self.odd)

    def __sub__(self, other: typing.Any) -> "RingElem":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: typing.Any) -> "RingElem":
        return (-self) + other

    def __mul__(self, other: typing.Any) -> "RingElem":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RingElem(
            self.even * other.even + BETA_SQUARED * self.odd * other.odd,
            self.even * other.odd + self.odd * other.even,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElem":
        result = RingElem.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: typing.Any) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.even == other.even and self.odd == other.odd

    def __hash__(self) -> int:
        return hash((tuple(_coefficients(self.even)), tuple(_coefficients(self.odd))))

    @property
    def is_beta_free(self) -> bool:
        return self.odd.is_zero

    def coefficients(self) -> tuple[list[int], list[int]]:
        """(even, odd) coefficient lists, lowest degree first."""
        return _coefficients(self.even), _coefficients(self.odd)

    def evaluate(self, alpha: fractions.Fraction) -> fractions.Fraction:
        """Exact value at a rational alpha; only defined when no beta term survives."""
        if not self.is_beta_free:
            raise ContractViolation("beta-free", f"{self} has a beta term and no exact rational value.")
        alpha = fractions.Fraction(alpha)
        value = self.even.eval(sympy.Rational(alpha.numerator, alpha.denominator))
        return fractions.Fraction(int(value.p), int(value.q))

    def evaluate_float(self, alpha: float) -> float:
        beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
        return float(self.even.eval(alpha)) + beta * float(self.odd.eval(alpha))

    def to_sympy(self) -> sympy.Expr:
        return sympy.expand(self.even.as_expr() + sympy.sqrt(1 - ALPHA**2) * self.odd.as_expr())

    def __str__(self) -> str:
        return str(self.to_sympy())
