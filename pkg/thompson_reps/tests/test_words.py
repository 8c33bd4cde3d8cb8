import pytest

from src.errors import ContractViolation
from src.forest.trees import CARET
from src.forest.trees import LEAF
from src.forest.trees import Caret
from src.forest.trees import Forest
from src.forest.trees import complete_tree
from src.forest.trees import compose
from src.forest.trees import enumerate_trees
from src.forest.trees import recompose
from src.forest.trees import residual
from src.forest.words import format_word
from src.forest.words import path_words
from src.forest.words import subrooted_trees
from src.forest.words import tree_words
from src.groups.symmetric import Perm
from src.groups.symmetric import SymmetricForest
from src.groups.symmetric import compose_symmetric
from src.groups.symmetric import inflate_perm
from src.groups.symmetric import permute_trees


def test_words_of_complete_tree():
    assert tree_words(complete_tree(2)) == ("aa", "ba", "ab", "bb")
    assert tree_words(LEAF) == ("",)
    assert format_word("") == "e"


def test_words_of_composed_forest():
    forest = recompose([(1, 2), (3, 3), (1, 4)], roots=2)
    assert path_words(forest) == ("aa", "ba", "b", "a", "b")


def test_subrooted_trees_in_prefix_order():
    prefixes = subrooted_trees(complete_tree(2))
    assert [prefix.tree for prefix in prefixes] == [
        LEAF,
        CARET,
        Caret(CARET, LEAF),
        Caret(LEAF, CARET),
        complete_tree(2),
    ]
    assert [prefix.m for prefix in prefixes] == [1, 2, 1, 1, 0]
    assert [tuple(map(format_word, prefix.words)) for prefix in prefixes] == [
        ("aa", "ba", "ab", "bb"),
        ("a", "b", "a", "b"),
        ("e", "e", "a", "b"),
        ("a", "b", "e", "e"),
        ("e", "e", "e", "e"),
    ]
    assert [prefix.alpha_exponent for prefix in prefixes] == [0, 1, 2, 2, 3]


def test_subrooted_trees_of_leaf():
    (only,) = subrooted_trees(LEAF)
    assert only.tree == LEAF and only.m == 0 and only.words == ("",)


@pytest.mark.parametrize("n", range(1, 11))
def test_every_tree_has_distinct_words(n):
    for tree in enumerate_trees(n):
        words = tree_words(tree)
        assert len(set(words)) == n


@pytest.mark.parametrize("n", range(1, 9))
def test_subrooted_trees_match_their_residuals(n):
    for t in enumerate_trees(n):
        for prefix in subrooted_trees(t):
            rest = residual(t, prefix.tree)
            assert compose(rest, prefix.tree).as_tree() == t
            assert prefix.m == sum(1 for tree in rest.trees if tree != LEAF)
            assert len(prefix.words) == n
            assert sum(1 for word in prefix.words if word and set(word) == {"a"}) == prefix.m


def test_perm_basics():
    sigma = Perm.of([2, 3, 1])
    assert sigma(1) == 2
    assert sigma.inverse() == Perm.of([3, 1, 2])
    assert sigma.compose(sigma.inverse()).is_identity
    assert sigma.compose(Perm.of([2, 1, 3])) == Perm.of([3, 2, 1])
    assert sigma.rotation_shift == 1
    assert Perm.of([2, 1, 3]).rotation_shift is None
    assert Perm.rotation(4, 3) == Perm.of([4, 1, 2, 3])
    assert str(Perm.of([3, 2, 1, 4])) == "[3,2,1,4]"
    with pytest.raises(ContractViolation) as info:
        Perm.of([1, 1])
    assert info.value.contract == "perm"


def test_permute_trees_reorders_roots():
    forest = Forest.of(CARET, LEAF, Caret(CARET, LEAF))
    moved = permute_trees(forest, Perm.of([3, 1, 2]))
    assert moved == Forest.of(Caret(CARET, LEAF), CARET, LEAF)
    with pytest.raises(ContractViolation):
        permute_trees(forest, Perm.identity(2))


def test_inflate_perm_moves_blocks():
    assert inflate_perm(Forest.of(CARET, CARET), Perm.of([2, 1])) == Perm.of([3, 4, 1, 2])
    assert inflate_perm(Forest.of(CARET, LEAF), Perm.of([2, 1])) == Perm.of([3, 1, 2])
    assert inflate_perm(Forest.of(LEAF, LEAF, LEAF), Perm.of([2, 3, 1])) == Perm.of([2, 3, 1])


def test_compose_symmetric():
    top = SymmetricForest.plain(Forest.of(CARET, CARET))
    bottom = SymmetricForest(Forest.of(CARET), Perm.of([2, 1]))
    result = compose_symmetric(top, bottom)
    assert result.forest == Forest.of(complete_tree(2))
    assert result.perm == Perm.of([3, 4, 1, 2])
    with pytest.raises(ContractViolation):
        SymmetricForest(Forest.of(CARET), Perm.identity(3))
