import dataclasses
import enum
import random
import typing

from src.errors import ContractViolation
from src.errors import InvariantError
from src.forest.trees import LEAF
from src.forest.trees import Forest
from src.forest.trees import Tree
from src.forest.trees import caret_positions
from src.forest.trees import collapse_caret
from src.forest.trees import least_common_refinement
from src.forest.trees import residual
from src.groups.symmetric import Perm
from src.groups.symmetric import SymmetricForest
from src.groups.symmetric import compose_symmetric
from src.groups.symmetric import permute_trees

if hasattr(enum, "StrEnum"):
    _StrEnum = enum.StrEnum
else:  # Python < 3.11: same str()/format() behaviour as enum.StrEnum

    class _StrEnum(str, enum.Enum):
        __str__ = str.__str__
        __format__ = str.__format__


class GroupClass(_StrEnum):
    """Smallest of F < T < V containing an element."""

    F = "F"
    T_ONLY = "T_only"
    V_ONLY = "V_only"


@dataclasses.dataclass(frozen=True)
class VElement:
    """An element of V written as a tree-pair diagram.

    Leaf k of the domain tree is sent to leaf bijection(k) of the range tree. The constructor keeps the pair as given;
    use make_element for the reduced (canonical) form.
    """

    domain: Tree
    range: Tree
    bijection: Perm

    def __post_init__(self):
        if not self.domain.leaf_count == self.range.leaf_count == self.bijection.size:
            raise ContractViolation(
                "arity",
                f"Domain has {self.domain.leaf_count} leaves, range {self.range.leaf_count}, "
                f"bijection acts on {self.bijection.size}.",
            )

    @classmethod
    def identity(cls) -> "VElement":
        return cls(LEAF, LEAF, Perm.identity(1))

    @property
    def leaf_count(self) -> int:
        return self.domain.leaf_count

    @property
    def is_identity(self) -> bool:
        return self.leaf_count == 1

    def as_symmetric(self) -> tuple[SymmetricForest, SymmetricForest]:
        """The fraction representative ((range, id), (domain, bijection))."""
        return (
            SymmetricForest.plain(Forest.of(self.range)),
            SymmetricForest(Forest.of(self.domain), self.bijection),
        )

    def __str__(self) -> str:
        return f"{self.range}/{self.domain}~{self.bijection}"


def from_symmetric(range_side: SymmetricForest, domain_side: SymmetricForest) -> VElement:
    """The element (t, tau)^-1 (s, sigma), i.e. bijection tau^-1 o sigma. Not reduced."""
    range_tree, domain_tree = range_side.forest.as_tree(), domain_side.forest.as_tree()
    return VElement(domain_tree, range_tree, range_side.perm.inverse().compose(domain_side.perm))


def _cancellable(domain: Tree, range_: Tree, bijection: Perm) -> list[int]:
    range_carets = caret_positions(range_)
    return sorted(
        i
        for i in caret_positions(domain)
        if bijection(i + 1) == bijection(i) + 1 and bijection(i) in range_carets
    )


def merge_bijection(bijection: Perm, i: int, j: int) -> Perm:
    """Bijection left after the domain leaves i, i+1 and the range leaves j, j+1 each collapse to one leaf."""
    images = []
    for k in range(1, bijection.size + 1):
        if k == i + 1:
            continue
        image = bijection(k)
        images.append(j if k == i else image - 1 if image > j else image)
    return Perm(tuple(images))


def cancel_caret(element: VElement, i: int, j: int) -> VElement:
    return VElement(
        collapse_caret(element.domain, i),
        collapse_caret(element.range, j),
        merge_bijection(element.bijection, i, j),
    )


def is_reduced(element: VElement) -> bool:
    return not _cancellable(element.domain, element.range, element.bijection)


def reduce_pair(domain: Tree, range_: Tree, bijection: Perm, rng: typing.Optional[random.Random] = None) -> VElement:
    """Cancel matching exposed carets until none remain.

    The leftmost cancellation is taken each round; with an rng a random one is taken instead (the result is the same).
    """
    element = VElement(domain, range_, bijection)
    while True:
        positions = _cancellable(element.domain, element.range, element.bijection)
        if not positions:
            return element
        i = rng.choice(positions) if rng is not None else positions[0]
        element = cancel_caret(element, i, element.bijection(i))


def make_element(domain: Tree, range_: Tree, bijection: typing.Optional[Perm] = None) -> VElement:
    """Build the canonical (reduced) element with the given tree-pair diagram."""
    if bijection is None:
        bijection = Perm.identity(domain.leaf_count)
    return reduce_pair(domain, range_, bijection)


def reduce_element(element: VElement, rng: typing.Optional[random.Random] = None) -> VElement:
    return reduce_pair(element.domain, element.range, element.bijection, rng)


def refine_range(element: VElement, p: Forest) -> VElement:
    """Hang tree p_j under range leaf j; the matching domain leaves get the same trees. Not reduced."""
    range_side, domain_side = element.as_symmetric()
    top = SymmetricForest.plain(p)
    return from_symmetric(compose_symmetric(top, range_side), compose_symmetric(top, domain_side))


def refine(element: VElement, p: Forest) -> VElement:
    """Hang tree p_k under domain leaf k; the matching range leaves get the same trees. Not reduced."""
    if p.root_count != element.leaf_count:
        raise ContractViolation("arity", f"Refining {element.leaf_count} leaves with {p.root_count} trees.")
    return refine_range(element, permute_trees(p, element.bijection.inverse()))


def multiply(g: VElement, h: VElement) -> VElement:
    """g o h: first h, then g."""
    common = least_common_refinement(g.domain, h.range)
    g_expanded = refine(g, residual(common, g.domain))
    h_expanded = refine_range(h, residual(common, h.range))
    if g_expanded.domain != h_expanded.range:
        raise InvariantError(f"Refinements disagree: {g_expanded.domain} vs {h_expanded.range}.")
    return reduce_pair(h_expanded.domain, g_expanded.range, g_expanded.bijection.compose(h_expanded.bijection))


def inverse(g: VElement) -> VElement:
    return VElement(g.range, g.domain, g.bijection.inverse())


def power(g: VElement, exponent: int) -> VElement:
    base = g if exponent >= 0 else inverse(g)
    result = VElement.identity()
    for _ in range(abs(exponent)):
        result = multiply(base, result)
    return result


def classify(g: VElement) -> GroupClass:
    if g.bijection.is_identity:
        return GroupClass.F
    if g.bijection.rotation_shift is not None:
        return GroupClass.T_ONLY
    return GroupClass.V_ONLY
