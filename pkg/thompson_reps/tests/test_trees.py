import itertools
import pytest
import random

from src.errors import ContractViolation
from src.errors import ParseError
from src.forest.parsing import parse_forest
from src.forest.parsing import parse_tree
from src.forest.parsing import serialize_forest
from src.forest.parsing import serialize_tree
from src.forest.parsing import to_product
from src.forest.trees import CARET
from src.forest.trees import LEAF
from src.forest.trees import Caret
from src.forest.trees import Forest
from src.forest.trees import caret_positions
from src.forest.trees import collapse_caret
from src.forest.trees import complete_tree
from src.forest.trees import compose
from src.forest.trees import decompose
from src.forest.trees import elementary_forest
from src.forest.trees import enumerate_forests
from src.forest.trees import enumerate_trees
from src.forest.trees import inflate
from src.forest.trees import is_prefix
from src.forest.trees import least_common_refinement
from src.forest.trees import recompose
from src.forest.trees import residual
from src.forest.trees import tensor_forest
from src.groups.families import builtin_tree

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def test_leaf_and_caret_counts():
    tree = parse_tree("((. .) ((. .) .))")
    assert tree.leaf_count == 5
    assert tree.depth == 3
    assert LEAF.leaf_count == 1 and LEAF.depth == 0
    assert str(tree) == "((. .) ((. .) .))"


def test_equal_trees_hash_equal():
    assert Caret(CARET, LEAF) == parse_tree("((. .) .)")
    assert len({Caret(CARET, LEAF), parse_tree("f1 f1")}) == 1


@pytest.mark.parametrize(
    "text, expected",
    [
        ("f3 f1 f1", "((. .) (. .))"),
        ("(f3 f1 f1)", "((. .) (. .))"),
        ("f1 f1", "((. .) .)"),
        ("f2 f1", "(. (. .))"),
        ("f3 f3 f1 f1", "((. .) ((. .) .))"),
        ("f4 f2 f1 f1", "((. (. .)) (. .))"),
        ("  .  ", "."),
    ],
)
def test_product_and_nested_syntax_agree(text, expected):
    assert parse_tree(text) == parse_tree(expected)


@pytest.mark.parametrize(
    "text, position",
    [
        ("(. .", 4),
        ("(. . .)", 5),
        ("f1 f3", 3),
        ("(. x)", 3),
        ("", 0),
        ("(. .) .", 5),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_tree(text)
    assert info.value.position == position
    assert info.value.text == text


def test_parse_forest_positions_are_relative_to_whole_text():
    forest = parse_forest("(. .); .; ((. .) .)")
    assert forest.root_count == 3
    assert forest.leaf_count == 6
    assert serialize_forest(forest) == "(. .); .; ((. .) .)"
    with pytest.raises(ParseError) as info:
        parse_forest(". ; (. ")
    assert info.value.position == 6


def test_serialize_reparses():
    for tree in enumerate_trees(6):
        assert parse_tree(serialize_tree(tree)) == tree
        assert parse_tree(to_product(tree)) == tree


def test_products_of_named_trees():
    assert to_product(builtin_tree("q")) == "f4 f2 f1 f1"
    assert to_product(builtin_tree("a")) == "f3 f3 f1 f1"
    assert to_product(complete_tree(2)) == "f3 f1 f1"
    assert to_product(LEAF) == "."


def test_compose_attaches_roots_to_leaves():
    top = Forest.of(LEAF, CARET, LEAF)
    assert compose(top, parse_tree("((. .) .)")).as_tree() == parse_tree("((. (. .)) .)")
    with pytest.raises(ContractViolation) as info:
        compose(Forest.of(CARET, CARET), Caret(CARET, CARET))
    assert info.value.contract == "arity"


def test_compose_is_associative():
    f = Forest.of(CARET, LEAF, LEAF, CARET)
    g = Forest.of(LEAF, CARET, LEAF)
    h = Forest.of(CARET, LEAF)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_compose_is_associative_on_all_small_triples():
    by_roots = {}
    for m in range(1, 6):
        for forest in enumerate_forests(m):
            by_roots.setdefault(forest.root_count, []).append(forest)
    triples = 0
    for h in itertools.chain.from_iterable(by_roots.values()):
        for g in by_roots.get(h.leaf_count, []):
            for f in by_roots.get(g.leaf_count, []):
                assert compose(compose(f, g), h) == compose(f, compose(g, h))
                triples += 1
    assert triples == 637


def _random_forest(rng: random.Random, roots: int, leaves: int) -> Forest:
    sizes = [1] * roots
    for _ in range(leaves - roots):
        sizes[rng.randrange(roots)] += 1
    return Forest(tuple(rng.choice(enumerate_trees(size)) for size in sizes))


def test_compose_is_associative_on_random_triples():
    rng = random.Random(11)
    for _ in range(200):
        h = _random_forest(rng, rng.randint(1, 3), rng.randint(3, 4))
        g = _random_forest(rng, h.leaf_count, rng.randint(h.leaf_count, 7))
        f = _random_forest(rng, g.leaf_count, rng.randint(g.leaf_count, 10))
        assert compose(compose(f, g), h).leaf_count == f.leaf_count
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_elementary_forest_bounds():
    assert elementary_forest(2, 3) == Forest.of(LEAF, CARET, LEAF)
    with pytest.raises(ContractViolation):
        elementary_forest(4, 3)


def test_decompose_recompose():
    for n in range(1, 7):
        for tree in enumerate_trees(n):
            factors = decompose(tree)
            assert len(factors) == n - 1
            assert recompose(factors).as_tree() == tree
    forest = Forest.of(CARET, CARET, LEAF)
    assert recompose(decompose(forest), roots=3) == forest


def test_recompose_two_root_forest():
    assert recompose([(1, 2), (3, 3), (1, 4)], roots=2) == Forest.of(parse_tree("((. .) .)"), CARET)


def test_complete_and_inflated_trees():
    assert complete_tree(0) == LEAF
    assert complete_tree(3).leaf_count == 8
    assert complete_tree(3).depth == 3
    c = builtin_tree("c")
    assert tensor_forest([c, c]) == Forest.of(c, c)
    assert inflate(c, 1) == Caret(c, c)
    assert inflate(c, 2).leaf_count == 12
    with pytest.raises(ContractViolation):
        complete_tree(-1)


def test_refinement_and_residual():
    c, d = builtin_tree("c"), builtin_tree("d")
    common = least_common_refinement(c, d)
    assert common == complete_tree(2)
    assert is_prefix(c, common) and is_prefix(d, common)
    assert not is_prefix(common, c)
    rest = residual(common, c)
    assert rest == Forest.of(LEAF, LEAF, CARET)
    assert compose(rest, c).as_tree() == common
    with pytest.raises(ContractViolation) as info:
        residual(c, common)
    assert info.value.contract == "refinement"


def test_caret_positions_and_collapse():
    tree = complete_tree(2)
    assert caret_positions(tree) == {1, 3}
    assert collapse_caret(tree, 3) == builtin_tree("c")
    assert collapse_caret(tree, 1) == builtin_tree("d")
    with pytest.raises(ContractViolation):
        collapse_caret(tree, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_tree_enumeration_is_catalan(n):
    trees = enumerate_trees(n)
    assert len(trees) == CATALAN[n - 1]
    assert len(set(trees)) == len(trees)


def test_forest_enumeration_counts():
    forests = list(enumerate_forests(6))
    assert len(forests) == 132
    assert all(forest.leaf_count == 6 for forest in forests)


def test_enumeration_respects_bound():
    with pytest.raises(ContractViolation) as info:
        enumerate_trees(11)
    assert info.value.contract == "bound"
