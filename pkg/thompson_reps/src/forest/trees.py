import dataclasses
import functools
import itertools
import typing

from src.config import Bounds
from src.config import load_bounds
from src.errors import ContractViolation


@dataclasses.dataclass(frozen=True)
class Leaf:
    """The trivial tree (one root, one leaf)."""

    leaf_count: typing.ClassVar[int] = 1
    depth: typing.ClassVar[int] = 0

    def __str__(self) -> str:
        return "."


@dataclasses.dataclass(frozen=True)
class Caret:
    """A root carrying two subtrees. Leaves are ordered left to right."""

    left: "Tree"
    right: "Tree"
    leaf_count: int = dataclasses.field(init=False, repr=False, compare=False)
    depth: int = dataclasses.field(init=False, repr=False, compare=False)
    _hash: int = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "leaf_count", self.left.leaf_count + self.right.leaf_count)
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return f"({self.left} {self.right})"


Tree = Leaf | Caret
LEAF = Leaf()
CARET = Caret(LEAF, LEAF)


@dataclasses.dataclass(frozen=True)
class Forest:
    """An ordered sequence of trees; roots and leaves are both numbered left to right from 1."""

    trees: tuple[Tree, ...]

    @classmethod
    def of(cls, *trees: Tree) -> "Forest":
        return cls(tuple(trees))

    @classmethod
    def trivial(cls, n: int) -> "Forest":
        return cls((LEAF,) * n)

    @property
    def root_count(self) -> int:
        return len(self.trees)

    @property
    def leaf_count(self) -> int:
        return sum(tree.leaf_count for tree in self.trees)

    @property
    def depth(self) -> int:
        return max((tree.depth for tree in self.trees), default=0)

    def as_tree(self) -> Tree:
        if self.root_count != 1:
            raise ContractViolation("arity", f"Expected a single tree, found a forest with {self.root_count} roots.")
        return self.trees[0]

    def __str__(self) -> str:
        return "; ".join(str(tree) for tree in self.trees)


def as_forest(value: Tree | Forest) -> Forest:
    return value if isinstance(value, Forest) else Forest.of(value)


def _graft(tree: Tree, replacements: typing.Iterator[Tree]) -> Tree:
    if isinstance(tree, Leaf):
        return next(replacements)
    return Caret(_graft(tree.left, replacements), _graft(tree.right, replacements))


def compose(p: Tree | Forest, q: Tree | Forest) -> Forest:
    """Stack p on top of q: the i-th root of p is attached to the i-th leaf of q."""
    p, q = as_forest(p), as_forest(q)
    if p.root_count != q.leaf_count:
        raise ContractViolation(
            "arity", f"Cannot compose a forest with {p.root_count} roots onto one with {q.leaf_count} leaves."
        )
    replacements = iter(p.trees)
    return Forest(tuple(_graft(tree, replacements) for tree in q.trees))


def graft(p: Tree | Forest, t: Tree) -> Tree:
    return compose(p, t).trees[0]


def elementary_forest(i: int, n: int) -> Forest:
    """f_{i,n}: n roots, a single caret at root i."""
    if not 1 <= i <= n:
        raise ContractViolation("arity", f"Elementary forest f_({i},{n}) needs 1 <= i <= n.")
    return Forest(tuple(CARET if k == i else LEAF for k in range(1, n + 1)))


@functools.cache
def complete_tree(n: int) -> Tree:
    """The complete binary tree t_n with 2^n leaves, all at depth n."""
    if n < 0:
        raise ContractViolation("arity", f"Complete tree level must be non-negative, got {n}.")
    if n == 0:
        return LEAF
    half = complete_tree(n - 1)
    return Caret(half, half)


def tensor_forest(trees: typing.Iterable[Tree | Forest]) -> Forest:
    """Juxtapose trees (or forests) side by side, e.g. (x)_n is tensor_forest([x] * 2**n)."""
    return Forest(tuple(itertools.chain.from_iterable(as_forest(item).trees for item in trees)))


def inflate(x: Tree, n: int) -> Tree:
    """(x)_n composed onto t_n: a copy of x hung from every leaf of the complete tree of level n."""
    return graft(tensor_forest([x] * 2**n), complete_tree(n))


def decompose(f: Tree | Forest) -> list[tuple[int, int]]:
    """Split f into elementary forests, returned as (i, n) pairs in the order they are applied.

    The leftmost pending caret is always split first, so f == e_k o ... o e_1 with e_1 = f_{i_1, n_1} the first pair.
    """
    frontier = list(as_forest(f).trees)
    factors = []
    while True:
        index = next((k for k, tree in enumerate(frontier) if isinstance(tree, Caret)), None)
        if index is None:
            return factors
        factors.append((index + 1, len(frontier)))
        tree = frontier[index]
        frontier[index : index + 1] = [tree.left, tree.right]


def recompose(factors: typing.Sequence[tuple[int, int]], roots: int = 1) -> Forest:
    result = Forest.trivial(roots)
    for i, n in factors:
        result = compose(elementary_forest(i, n), result)
    return result


def least_common_refinement(s: Tree, t: Tree) -> Tree:
    """The smallest tree that has both s and t as rooted subtrees."""
    if isinstance(s, Leaf):
        return t
    if isinstance(t, Leaf):
        return s
    return Caret(least_common_refinement(s.left, t.left), least_common_refinement(s.right, t.right))


def is_prefix(z: Tree, t: Tree) -> bool:
    """True if z is a rooted subtree of t (t refines z)."""
    if isinstance(z, Leaf):
        return True
    if isinstance(t, Leaf):
        return False
    return is_prefix(z.left, t.left) and is_prefix(z.right, t.right)


def residual(t: Tree, z: Tree) -> Forest:
    """The forest f with compose(f, z) == t; z must be a rooted subtree of t."""
    if isinstance(z, Leaf):
        return Forest.of(t)
    if isinstance(t, Leaf):
        raise ContractViolation("refinement", f"{z} is not a rooted subtree of {t}.")
    return tensor_forest([residual(t.left, z.left), residual(t.right, z.right)])


def caret_positions(tree: Tree) -> set[int]:
    """Positions i such that leaves i and i+1 of the tree hang from a common caret."""
    positions = set()

    def _walk(node: Tree, offset: int):
        if isinstance(node, Leaf):
            return
        if isinstance(node.left, Leaf) and isinstance(node.right, Leaf):
            positions.add(offset + 1)
            return
        _walk(node.left, offset)
        _walk(node.right, offset + node.left.leaf_count)

    _walk(tree, 0)
    return positions


def collapse_caret(tree: Tree, position: int, offset: int = 0) -> Tree:
    """Remove the exposed caret whose leaves are position and position + 1."""
    if isinstance(tree, Caret):
        if tree == CARET and offset + 1 == position:
            return LEAF
        if position <= offset + tree.left.leaf_count:
            return Caret(collapse_caret(tree.left, position, offset), tree.right)
        return Caret(tree.left, collapse_caret(tree.right, position, offset + tree.left.leaf_count))
    raise ContractViolation("caret", f"No exposed caret at leaves {position}, {position + 1}.")


@functools.cache
def _trees_with(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (LEAF,)
    return tuple(Caret(left, right) for k in range(1, n) for left in _trees_with(k) for right in _trees_with(n - k))


def enumerate_trees(n: int, bounds: typing.Optional[Bounds] = None) -> tuple[Tree, ...]:
    """All binary trees with n leaves (Catalan(n-1) of them)."""
    bounds = bounds or load_bounds()
    if n < 1:
        raise ContractViolation("arity", f"Trees have at least one leaf, asked for {n}.")
    if n > bounds.max_leaves:
        raise ContractViolation("bound", f"Refusing to enumerate trees with {n} > {bounds.max_leaves} leaves.")
    return _trees_with(n)


def enumerate_forests(m: int, bounds: typing.Optional[Bounds] = None) -> typing.Iterator[Forest]:
    """All forests with m leaves in total (any number of roots)."""
    bounds = bounds or load_bounds()
    if m > bounds.max_leaves:
        raise ContractViolation("bound", f"Refusing to enumerate forests with {m} > {bounds.max_leaves} leaves.")

    def _compositions(total: int) -> typing.Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in _compositions(total - first):
                yield (first, *rest)

    for sizes in _compositions(m):
        for trees in itertools.product(*(_trees_with(size) for size in sizes)):
            yield Forest(trees)
