import functools
import itertools
import logging
import random
import typing

from src.config import Bounds
from src.config import load_bounds
from src.errors import ContractViolation
from src.forest.parsing import parse_tree
from src.forest.trees import CARET
from src.forest.trees import Caret
from src.forest.trees import Tree
from src.forest.trees import elementary_forest
from src.forest.trees import enumerate_trees
from src.forest.trees import graft
from src.forest.trees import inflate
from src.groups.element import VElement
from src.groups.element import inverse
from src.groups.element import is_reduced
from src.groups.element import make_element
from src.groups.element import multiply
from src.groups.symmetric import Perm

logger = logging.getLogger(__name__)

# Trees of the commutator k = g h g^-1 h^-1 with g = a/b and h = c/d.
TREES = {
    "a": "((. .) ((. .) .))",
    "b": "(. (. (. (. .))))",
    "c": "((. .) .)",
    "d": "(. (. .))",
    "q": "((. (. .)) (. .))",
}


@functools.cache
def builtin_tree(name: str) -> Tree:
    if name not in TREES:
        raise ContractViolation("builtin", f"Unknown tree {name!r}; expected one of {sorted(TREES)}.")
    return parse_tree(TREES[name])


def _generators() -> dict[str, VElement]:
    t3 = parse_tree("f2 f1")
    return {
        # F is generated by x0 and x1.
        "x0": make_element(parse_tree("f2 f1"), parse_tree("f1 f1")),
        "x1": make_element(parse_tree("f3 f2 f1"), parse_tree("f2 f2 f1")),
        # T adds the rotations, V the transposition.
        "rot2": make_element(CARET, CARET, Perm.of([2, 1])),
        "rot3": make_element(t3, parse_tree("f1 f1"), Perm.of([2, 3, 1])),
        "pi0": make_element(t3, t3, Perm.of([2, 1, 3])),
    }


@functools.cache
def generators() -> dict[str, VElement]:
    return _generators()


@functools.cache
def builtin_element(name: str) -> VElement:
    """The named elements g = a/b, h = c/d, k = a/q, plus the generators."""
    if name == "g":
        return make_element(builtin_tree("b"), builtin_tree("a"))
    if name == "h":
        return make_element(builtin_tree("d"), builtin_tree("c"))
    if name == "k":
        return make_element(builtin_tree("q"), builtin_tree("a"))
    if name in generators():
        return generators()[name]
    raise ContractViolation("builtin", f"Unknown element {name!r}.")


def builtin(name: str) -> Tree | VElement:
    return builtin_tree(name) if name in TREES else builtin_element(name)


def commutator(g: VElement, h: VElement) -> VElement:
    return multiply(multiply(multiply(g, h), inverse(g)), inverse(h))


def _check_level(n: int, bounds: Bounds):
    if n < 0:
        raise ContractViolation("arity", f"Levels are non-negative, got {n}.")
    if n > bounds.max_level:
        raise ContractViolation("bound", f"Level {n} is over the configured maximum {bounds.max_level}.")


def inflate_element(name: str, n: int, bounds: typing.Optional[Bounds] = None) -> VElement:
    """g_n, h_n or k_n: both trees of the named element inflated to level n."""
    _check_level(n, bounds or load_bounds())
    element = builtin_element(name)
    if not element.bijection.is_identity:
        raise ContractViolation("builtin", f"Only elements of F can be inflated this way, {name!r} is not one.")
    return make_element(inflate(element.domain, n), inflate(element.range, n))


def family_kn(n: int, bounds: typing.Optional[Bounds] = None) -> VElement:
    """(a)_n t_n / (q)_n t_n with the identity bijection."""
    _check_level(n, bounds or load_bounds())
    return make_element(inflate(builtin_tree("q"), n), inflate(builtin_tree("a"), n))


@functools.cache
def left_comb(n: int) -> Tree:
    """x_n: n leaves, every caret hanging from the leftmost leaf."""
    if n < 2:
        raise ContractViolation("arity", f"Left combs start at two leaves, got {n}.")
    tree = CARET
    for leaves in range(2, n):
        tree = graft(elementary_forest(1, leaves), tree)
    return tree


def family_gn(n: int, bounds: typing.Optional[Bounds] = None) -> VElement:
    """s_n / s_n with s_n = x_n x_n, swapping odd leaf k <= n with leaf k + n."""
    bounds = bounds or load_bounds()
    if n < 2:
        raise ContractViolation("arity", f"The non-vanishing family starts at n = 2, got {n}.")
    if 2 * n > bounds.max_leaves:
        raise ContractViolation("bound", f"g_{n} has {2 * n} leaves, over the maximum {bounds.max_leaves}.")
    comb = left_comb(n)
    tree = Caret(comb, comb)
    images = [k + n if k <= n and k % 2 else k - n if k > n and (k - n) % 2 else k for k in range(1, 2 * n + 1)]
    return make_element(tree, tree, Perm.of(images))


def random_element(
    rng: random.Random, length: int, pool: typing.Optional[typing.Sequence[VElement]] = None
) -> VElement:
    """Product of `length` generators (or their inverses) drawn uniformly from the pool."""
    pool = list(pool if pool is not None else generators().values())
    pool = pool + [inverse(g) for g in pool]
    result = VElement.identity()
    for _ in range(length):
        result = multiply(rng.choice(pool), result)
    return result


def enumerate_elements(
    n: int, affine_only: bool = False, bounds: typing.Optional[Bounds] = None
) -> typing.Iterator[VElement]:
    """Every reduced element with n leaves, in T only (cyclic bijections) when affine_only is set."""
    trees = enumerate_trees(n, bounds)
    if affine_only:
        perms = [Perm.rotation(n, shift) for shift in range(n)]
    else:
        perms = [Perm.of(images) for images in itertools.permutations(range(1, n + 1))]
    logger.debug(f"Enumerating {len(trees) ** 2 * len(perms)} candidate pairs with {n} leaves.")
    for domain in trees:
        for range_ in trees:
            for perm in perms:
                candidate = VElement(domain, range_, perm)
                if is_reduced(candidate):
                    yield candidate
