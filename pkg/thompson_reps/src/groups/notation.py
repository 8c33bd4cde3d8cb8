import re
import typing

from src.errors import ContractViolation
from src.errors import ParseError
from src.forest.parsing import parse_tree
from src.forest.trees import Tree
from src.groups.element import VElement
from src.groups.element import make_element
from src.groups.families import builtin_element
from src.groups.families import family_gn
from src.groups.families import family_kn
from src.groups.families import inflate_element
from src.groups.symmetric import Perm

_FAMILY = re.compile(r"^(kn|gn|[ghk]_inflated):(\d+)$")


def parse_perm(text: str, source: typing.Optional[str] = None, base: int = 0) -> Perm:
    """Read "[3,2,1,4]" (brackets optional)."""
    source = text if source is None else source
    body = text.strip()
    if body.startswith("[") != body.endswith("]"):
        raise ParseError("Unbalanced brackets in permutation", source, base)
    body = body.strip("[]")
    try:
        images = tuple(int(part) for part in body.split(",")) if body.strip() else ()
    except ValueError as e:
        raise ParseError(f"Permutation entries must be integers ({e})", source, base) from e
    try:
        return Perm(images)
    except ContractViolation as e:
        raise ParseError(str(e), source, base) from e


def _named(text: str) -> VElement | None:
    family = _FAMILY.match(text)
    if family is not None:
        kind, level = family.group(1), int(family.group(2))
        if kind == "kn":
            return family_kn(level)
        if kind == "gn":
            return family_gn(level)
        return inflate_element(kind[0], level)
    try:
        return builtin_element(text)
    except ContractViolation:
        return None


def parse_element(text: str, reduce: bool = True) -> VElement:
    """Read "RANGE/DOMAIN~[perm]" (the "~[perm]" part defaults to the identity) or a builtin name.

    Builtin names are g, h, k, x0, x1, rot2, rot3, pi0 and the families kn:<n>, gn:<n>, g_inflated:<n>, ...
    """
    stripped = text.strip()
    named = _named(stripped)
    if named is not None:
        return named
    if "/" not in stripped:
        raise ParseError("Expected RANGE/DOMAIN~[perm] or a builtin element name", text, 0)

    slash = text.index("/")
    tilde = text.find("~", slash)
    range_text = text[:slash]
    domain_text = text[slash + 1 : tilde] if tilde >= 0 else text[slash + 1 :]
    range_tree: Tree = parse_tree(range_text, source=text, base=0)
    domain_tree: Tree = parse_tree(domain_text, source=text, base=slash + 1)
    if tilde >= 0:
        perm = parse_perm(text[tilde + 1 :], source=text, base=tilde + 1)
    else:
        perm = Perm.identity(domain_tree.leaf_count)
    if not domain_tree.leaf_count == range_tree.leaf_count == perm.size:
        raise ParseError(
            f"Leaf counts disagree: range {range_tree.leaf_count}, domain {domain_tree.leaf_count}, "
            f"permutation {perm.size}",
            text,
            slash,
        )
    if reduce:
        return make_element(domain_tree, range_tree, perm)
    return VElement(domain_tree, range_tree, perm)
