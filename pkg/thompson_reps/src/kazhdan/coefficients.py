import dataclasses
import fractions
import logging
import pydantic
import typing

from src.config import Bounds
from src.config import load_bounds
from src.errors import ContractViolation
from src.errors import InvariantError
from src.forest.trees import Forest
from src.forest.trees import Tree
from src.forest.trees import complete_tree
from src.forest.trees import is_prefix
from src.forest.trees import least_common_refinement
from src.forest.trees import residual
from src.forest.trees import tensor_forest
from src.groups.element import VElement
from src.groups.element import refine
from src.groups.families import builtin_tree
from src.kazhdan.shift import Base
from src.kazhdan.shift import LeafSymbol
from src.kazhdan.shift import SparseVec
from src.kazhdan.shift import forest_apply_shift
from src.kazhdan.shift import resolve
from src.kazhdan.shift import shift_overlap
from src.kazhdan.shift import zeta

logger = logging.getLogger(__name__)


def _pair_symbols(
    left: typing.Sequence[LeafSymbol],
    right: typing.Sequence[LeafSymbol],
    inputs: typing.Sequence[SparseVec],
    base: SparseVec,
) -> fractions.Fraction:
    if len(left) != len(right):
        raise InvariantError(f"Cannot pair {len(left)} leaf components with {len(right)}.")
    total = fractions.Fraction(1)
    for x, y in zip(left, right, strict=True):
        total *= resolve(x, inputs, base).inner(resolve(y, inputs, base))
        if total == 0:
            break
    return total


def c_constant(base: SparseVec) -> fractions.Fraction:
    """<u base, base>^2 <base, u^2 base>, the factor each copy of q, a contributes besides <xi, xi>."""
    constant = base.shift(1).inner(base) ** 2 * base.inner(base.shift(2))
    # Cross-check against the leafwise pairing of Phi(q) and Phi(a) on a unit input.
    symbols_q = forest_apply_shift(builtin_tree("q"))
    symbols_a = forest_apply_shift(builtin_tree("a"))
    paired = _pair_symbols(symbols_q, symbols_a, [SparseVec.point_mass()], base)
    if paired != constant:
        raise InvariantError(f"Leafwise pairing gave {paired}, closed form gave {constant}.")
    return constant


def kn_coefficient(
    n: int, xi: typing.Sequence[SparseVec], base: SparseVec, bounds: typing.Optional[Bounds] = None
) -> fractions.Fraction:
    """<Phi((q)_n) xi, Phi((a)_n) xi> for xi = xi_1 (x) ... (x) xi_(2^n), which equals C^(2^n) prod <xi_i, xi_i>."""
    bounds = bounds or load_bounds()
    if n > bounds.max_level:
        raise ContractViolation("bound", f"Level {n} is over the configured maximum {bounds.max_level}.")
    if len(xi) != 2**n:
        raise ContractViolation("arity", f"(q)_{n} has {2**n} roots but {len(xi)} input vectors were given.")
    symbols_q = forest_apply_shift(tensor_forest([builtin_tree("q")] * 2**n))
    symbols_a = forest_apply_shift(tensor_forest([builtin_tree("a")] * 2**n))
    value = _pair_symbols(symbols_q, symbols_a, xi, base)

    expected = c_constant(base) ** (2**n)
    for vector in xi:
        expected *= vector.norm_squared()
    if value != expected:
        raise InvariantError(f"kn coefficient {value} differs from C^(2^n) prod <xi_i, xi_i> = {expected}.")
    return value


def invariance_threshold(m: int, bounds: typing.Optional[Bounds] = None) -> int:
    """Smallest n with C(zeta_m)^(2^n) < 1/2."""
    constant = c_constant(zeta(m, bounds))
    if constant >= 1:
        raise InvariantError(f"C = {constant} is not below 1.")
    n, value = 0, constant
    while value >= fractions.Fraction(1, 2):
        value *= value
        n += 1
    return n


def invariance_bound(m: int) -> fractions.Fraction:
    """(1 - 8^-m)^(4^m)."""
    return fractions.Fraction(8**m - 1, 8**m) ** (4**m)


@dataclasses.dataclass(frozen=True)
class ShiftState:
    """A vector Phi(t) applied to a tensor of powers of u on zeta, one power per leaf of t."""

    tree: Tree
    powers: tuple[int, ...]


def _refine_state(state: ShiftState, target: Tree) -> ShiftState:
    hanging: Forest = residual(target, state.tree)
    incoming = [LeafSymbol(power, Base.ZETA) for power in state.powers]
    symbols = forest_apply_shift(hanging, incoming)
    return ShiftState(target, tuple(symbol.power for symbol in symbols))


def _overlap(m: int, left: ShiftState, right: ShiftState) -> fractions.Fraction:
    total = fractions.Fraction(1)
    for x, y in zip(left.powers, right.powers, strict=True):
        total *= shift_overlap(m, x - y)
    return total


class AlmostInvarianceReport(pydantic.BaseModel):
    element: str
    m: int
    coefficient: str
    bound: str
    domain_depth: int
    range_depth: int
    hypothesis_holds: bool
    exceeds_bound: bool


def _depths(g: VElement, m: int) -> tuple[int, int, bool]:
    """Depth of the domain tree, depth of the range tree after refining the domain to t_m, and whether both fit."""
    level_tree = complete_tree(m)
    fits = g.domain.depth <= m
    target = level_tree if fits else least_common_refinement(level_tree, g.domain)
    expanded = refine(g, residual(target, g.domain))
    return g.domain.depth, expanded.range.depth, fits and expanded.range.depth <= 2 * m


def almost_invariance(
    g: VElement,
    m: int,
    strict: bool = False,
    through: typing.Optional[Tree] = None,
    bounds: typing.Optional[Bounds] = None,
) -> fractions.Fraction:
    """<pi(g) eta_m, eta_m> where eta_m is the class of zeta_m in every leaf slot of t_m.

    The domain-depth <= m and range-depth <= 2m hypotheses are only enforced when strict is set; the value itself is
    computed for any element by refining both sides to a common tree (through, if given).
    """
    base = zeta(m, bounds)
    level_tree = complete_tree(m)
    domain_depth, range_depth, holds = _depths(g, m)
    if strict and not holds:
        raise ContractViolation(
            "depth", f"{g} has domain depth {domain_depth} and range depth {range_depth} for m = {m}."
        )
    start = ShiftState(level_tree, (0,) * 2**m)

    domain_tree = least_common_refinement(level_tree, g.domain)
    moved = _refine_state(start, domain_tree)
    expanded = refine(g, residual(domain_tree, g.domain))
    images = [0] * expanded.leaf_count
    for k, power in enumerate(moved.powers, start=1):
        images[expanded.bijection(k) - 1] = power
    image = ShiftState(expanded.range, tuple(images))

    common = through if through is not None else least_common_refinement(image.tree, level_tree)
    if not (is_prefix(image.tree, common) and is_prefix(level_tree, common)):
        raise ContractViolation("refinement", f"{common} does not refine both {image.tree} and {level_tree}.")
    value = _overlap(m, _refine_state(image, common), _refine_state(start, common))
    if base.norm_squared() != 1:
        raise InvariantError("zeta_m is not a unit vector.")
    return value


def almost_invariance_report(g: VElement, m: int, bounds: typing.Optional[Bounds] = None) -> AlmostInvarianceReport:
    value = almost_invariance(g, m, bounds=bounds)
    bound = invariance_bound(m)
    domain_depth, range_depth, holds = _depths(g, m)
    logger.info(f"<pi(g) eta_{m}, eta_{m}> = {value} for {g}.")
    return AlmostInvarianceReport(
        element=str(g),
        m=m,
        coefficient=str(value),
        bound=str(bound),
        domain_depth=domain_depth,
        range_depth=range_depth,
        hypothesis_holds=holds,
        exceeds_bound=value >= bound,
    )


class KnRow(pydantic.BaseModel):
    n: int
    m: int
    coefficient: str
    c_constant: str
    matches: bool


def kn_report(n: int, m: int, bounds: typing.Optional[Bounds] = None) -> KnRow:
    """kn coefficient on xi = zeta_m in every slot."""
    base = zeta(m, bounds)
    value = kn_coefficient(n, [base] * 2**n, base, bounds)
    constant = c_constant(base)
    return KnRow(n=n, m=m, coefficient=str(value), c_constant=str(constant), matches=value == constant ** (2**n))
