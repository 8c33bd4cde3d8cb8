import dataclasses
import enum
import fractions
import functools
import math
import typing

from src.config import Bounds
from src.config import load_bounds
from src.errors import ContractViolation
from src.forest.trees import Forest
from src.forest.trees import Leaf
from src.forest.trees import Tree
from src.forest.trees import as_forest

if hasattr(enum, "StrEnum"):
    _StrEnum = enum.StrEnum
else:  # Python < 3.11: same str()/format() behaviour as enum.StrEnum

    class _StrEnum(str, enum.Enum):
        __str__ = str.__str__
        __format__ = str.__format__


def _exact_sqrt(value: fractions.Fraction) -> fractions.Fraction:
    numerator, denominator = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if numerator * numerator != value.numerator or denominator * denominator != value.denominator:
        raise ContractViolation("rational-inner-product", f"Normalization {value} is not a rational square.")
    return fractions.Fraction(numerator, denominator)


@dataclasses.dataclass(frozen=True)
class SparseVec:
    """A finitely supported vector of l^2(Z), equal to entries / sqrt(scale)."""

    entries: typing.Mapping[int, fractions.Fraction]
    scale: fractions.Fraction = fractions.Fraction(1)

    @classmethod
    def point_mass(cls, position: int = 0) -> "SparseVec":
        return cls({position: fractions.Fraction(1)})

    @classmethod
    def of(cls, values: typing.Mapping[int, typing.Any], scale: typing.Any = 1) -> "SparseVec":
        entries = {k: fractions.Fraction(v) for k, v in values.items() if v}
        return cls(entries, fractions.Fraction(scale))

    def shift(self, k: int) -> "SparseVec":
        """u^k: move every coordinate up by k."""
        return SparseVec({position + k: value for position, value in self.entries.items()}, self.scale)

    def inner(self, other: "SparseVec") -> fractions.Fraction:
        raw = sum(
            (value * other.entries[position] for position, value in self.entries.items() if position in other.entries),
            fractions.Fraction(0),
        )
        if raw == 0:
            return raw
        return raw / _exact_sqrt(self.scale * other.scale)

    def norm_squared(self) -> fractions.Fraction:
        return self.inner(self)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.entries.items())), self.scale))


def zeta_height(m: int) -> int:
    return 2 * m * 8**m


@functools.cache
def _zeta(m: int) -> SparseVec:
    height = zeta_height(m)
    return SparseVec({position: fractions.Fraction(1) for position in range(1, height + 1)}, fractions.Fraction(height))


def zeta(m: int, bounds: typing.Optional[Bounds] = None) -> SparseVec:
    """The unit vector spread evenly over {1, ..., 2m 8^m}."""
    bounds = bounds or load_bounds()
    if not 1 <= m <= bounds.max_m:
        raise ContractViolation("bound", f"zeta_m needs 1 <= m <= {bounds.max_m}, got {m}.")
    return _zeta(m)


@functools.cache
def shift_overlap(m: int, distance: int) -> fractions.Fraction:
    """<u^distance zeta_m, zeta_m> = max(0, h - |distance|) / h."""
    height = zeta_height(m)
    return fractions.Fraction(max(0, height - abs(distance)), height)


class Base(_StrEnum):
    INPUT = "input"
    ZETA = "zeta"


@dataclasses.dataclass(frozen=True)
class LeafSymbol:
    """u^power applied to either the input vector of a root or to zeta."""

    power: int
    base: Base
    root: typing.Optional[int] = None

    def __str__(self) -> str:
        name = f"xi_{self.root}" if self.base == Base.INPUT else "zeta"
        return f"u^{self.power} {name}" if self.power else name


def _leaf_symbols(tree: Tree, incoming: LeafSymbol) -> list[LeafSymbol]:
    if isinstance(tree, Leaf):
        return [incoming]
    left = LeafSymbol(incoming.power + 1, incoming.base, incoming.root)
    return _leaf_symbols(tree.left, left) + _leaf_symbols(tree.right, LeafSymbol(0, Base.ZETA))


def forest_apply_shift(
    f: Tree | Forest, incoming: typing.Optional[typing.Sequence[LeafSymbol]] = None
) -> list[LeafSymbol]:
    """Leaf components of Phi(f) applied to (xi_1, ..., xi_roots) for the shift isometry R(xi) = u xi (x) zeta.

    A leaf reached by left edges only gets u^depth xi_root; any other leaf gets u^k zeta, k being the number of left
    edges after the last right turn.
    """
    f = as_forest(f)
    if incoming is None:
        incoming = [LeafSymbol(0, Base.INPUT, root) for root in range(1, f.root_count + 1)]
    if len(incoming) != f.root_count:
        raise ContractViolation("arity", f"{len(incoming)} incoming vectors for {f.root_count} roots.")
    return [symbol for tree, start in zip(f.trees, incoming, strict=True) for symbol in _leaf_symbols(tree, start)]


def resolve(symbol: LeafSymbol, inputs: typing.Sequence[SparseVec], base: SparseVec) -> SparseVec:
    vector = inputs[symbol.root - 1] if symbol.base == Base.INPUT else base
    return vector.shift(symbol.power)
