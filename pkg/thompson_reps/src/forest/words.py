import dataclasses
import functools

from src.forest.trees import LEAF
from src.forest.trees import Caret
from src.forest.trees import Forest
from src.forest.trees import Leaf
from src.forest.trees import Tree
from src.forest.trees import as_forest

# Leaf paths are words over {a, b}; the letter for each descent is prepended, so the last letter belongs to the root.
WordTuple = tuple[str, ...]


def _tree_words(tree: Tree, suffix: str = "") -> list[str]:
    if isinstance(tree, Leaf):
        return [suffix]
    return _tree_words(tree.left, "a" + suffix) + _tree_words(tree.right, "b" + suffix)


@functools.cache
def tree_words(tree: Tree) -> WordTuple:
    return tuple(_tree_words(tree))


def path_words(f: Tree | Forest) -> WordTuple:
    """One word per leaf, left to right, each read from its own root."""
    return tuple(word for tree in as_forest(f).trees for word in tree_words(tree))


def format_word(word: str) -> str:
    return word or "e"


@dataclasses.dataclass(frozen=True)
class Prefix:
    """A rooted subtree z of t, with m = number of leaves of z that are internal in t and the residual words P(t, z)."""

    tree: Tree
    m: int
    words: WordTuple

    @property
    def alpha_exponent(self) -> int:
        return self.tree.leaf_count - 1


def _shape_key(tree: Tree) -> tuple[int, ...]:
    if isinstance(tree, Leaf):
        return ()
    return (-tree.left.leaf_count,) + _shape_key(tree.left) + _shape_key(tree.right)


def prefix_order(tree: Tree) -> tuple:
    """Ascending leaf count, then larger left subtrees first."""
    return tree.leaf_count, _shape_key(tree)


@functools.cache
def subrooted_trees(t: Tree) -> tuple[Prefix, ...]:
    """Every rooted subtree of t with its m and residual words, in prefix order."""
    prefixes = [Prefix(LEAF, 0 if isinstance(t, Leaf) else 1, tree_words(t))]
    if isinstance(t, Caret):
        for left in subrooted_trees(t.left):
            for right in subrooted_trees(t.right):
                prefixes.append(Prefix(Caret(left.tree, right.tree), left.m + right.m, left.words + right.words))
    return tuple(sorted(prefixes, key=lambda prefix: prefix_order(prefix.tree)))
