import re
import typing

from src.errors import ParseError
from src.forest.trees import LEAF
from src.forest.trees import Caret
from src.forest.trees import Forest
from src.forest.trees import Leaf
from src.forest.trees import Tree
from src.forest.trees import compose
from src.forest.trees import decompose
from src.forest.trees import elementary_forest

_PRODUCT_TOKEN = re.compile(r"\s*f(\d+)")
_WRAPPED_PRODUCT = re.compile(r"^\(\s*(f\d+(?:\s*f\d+)*)\s*\)$")


def _parse_product(text: str, base: int, source: str) -> Tree:
    # Tokens are applied right to left: the rightmost factor splits the single starting leaf.
    tokens = []
    cursor = 0
    while cursor < len(text):
        match = _PRODUCT_TOKEN.match(text, cursor)
        if match is None:
            if text[cursor:].strip() == "":
                break
            raise ParseError("Expected a factor of the form f<i>", source, base + cursor)
        tokens.append((int(match.group(1)), base + match.start(1) - 1))
        cursor = match.end()
    if not tokens:
        raise ParseError("Empty product", source, base)

    tree = LEAF
    for index, position in reversed(tokens):
        if not 1 <= index <= tree.leaf_count:
            message = f"Factor f{index} splits a leaf that does not exist ({tree.leaf_count} leaves)"
            raise ParseError(message, source, position)
        tree = compose(elementary_forest(index, tree.leaf_count), tree).trees[0]
    return tree


def _parse_nested(text: str, cursor: int, source: str, base: int) -> tuple[Tree, int]:
    while cursor < len(text) and text[cursor].isspace():
        cursor += 1
    if cursor >= len(text):
        raise ParseError("Unexpected end of tree", source, base + cursor)
    if text[cursor] == ".":
        return LEAF, cursor + 1
    if text[cursor] != "(":
        raise ParseError(f"Unexpected character {text[cursor]!r}", source, base + cursor)
    left, cursor = _parse_nested(text, cursor + 1, source, base)
    right, cursor = _parse_nested(text, cursor, source, base)
    while cursor < len(text) and text[cursor].isspace():
        cursor += 1
    if cursor >= len(text) or text[cursor] != ")":
        raise ParseError("Expected ')'", source, base + cursor)
    return Caret(left, right), cursor + 1


def parse_tree(text: str, source: typing.Optional[str] = None, base: int = 0) -> Tree:
    """Read a tree written either as nested carets "((. .) .)" or as a product "f3 f1 f1".

    A product may be wrapped in one pair of parentheses, e.g. "(f3 f1 f1)".
    """
    source = text if source is None else source
    stripped = text.strip()
    offset = base + len(text) - len(text.lstrip())
    if not stripped:
        raise ParseError("Empty tree", source, offset)
    wrapped = _WRAPPED_PRODUCT.match(stripped)
    if wrapped is not None:
        return _parse_product(wrapped.group(1), offset + wrapped.start(1), source)
    if stripped.startswith("f"):
        return _parse_product(stripped, offset, source)
    tree, cursor = _parse_nested(stripped, 0, source, offset)
    if stripped[cursor:].strip():
        raise ParseError("Trailing characters after tree", source, offset + cursor)
    return tree


def parse_forest(text: str) -> Forest:
    """Read trees separated by ';'."""
    trees, base = [], 0
    for part in text.split(";"):
        trees.append(parse_tree(part, source=text, base=base))
        base += len(part) + 1
    return Forest(tuple(trees))


def serialize_tree(tree: Tree) -> str:
    return str(tree)


def serialize_forest(forest: Forest) -> str:
    return str(forest)


def to_product(tree: Tree) -> str:
    """Product form of a tree, leftmost factor applied last; the trivial tree is written '.'."""
    if isinstance(tree, Leaf):
        return "."
    return " ".join(f"f{i}" for i, _ in reversed(decompose(tree)))
