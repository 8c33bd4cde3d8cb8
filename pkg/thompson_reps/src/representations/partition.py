import collections
import dataclasses
import functools
import itertools
import numpy
import typing

from src.errors import ContractViolation
from src.forest.trees import Forest
from src.forest.trees import Leaf
from src.forest.trees import Tree
from src.forest.trees import as_forest
from src.forest.trees import decompose
from src.forest.words import WordTuple
from src.representations.ring import RingElem

Scalar = typing.Any  # fractions.Fraction, int or RingElem: anything closed under + and *.


@dataclasses.dataclass(frozen=True, eq=False)
class RTensor:
    """A map R: C^I -> C^I (x) C^I given by its coefficients R_i^{j,k} (root spin i, children spins j, k)."""

    index_set: tuple
    entries: typing.Mapping[tuple, Scalar]
    one: Scalar = 1
    zero: Scalar = 0
    _children: dict = dataclasses.field(init=False, repr=False)

    def __post_init__(self):
        allowed = set(self.index_set)
        children = collections.defaultdict(list)
        for (i, j, k), value in self.entries.items():
            if not {i, j, k} <= allowed:
                raise ContractViolation("index", f"Coefficient R_{i}^({j},{k}) uses an index outside the index set.")
            if value != self.zero:
                children[i].append((j, k, value))
        object.__setattr__(self, "_children", dict(children))

    def children(self, i: typing.Hashable) -> list[tuple[typing.Hashable, typing.Hashable, Scalar]]:
        return self._children.get(i, [])

    def column_norm(self, i: typing.Hashable) -> Scalar:
        total = self.zero
        for _, _, value in self.children(i):
            total = total + value * value
        return total

    def is_isometry(self) -> bool:
        """True when every column R(delta_i) has unit norm (real coefficients assumed)."""
        return all(self.column_norm(i) == self.one for i in self.index_set)

    @classmethod
    def build(cls, index_set: typing.Iterable, entries: typing.Mapping, check: bool = True, **kwargs) -> "RTensor":
        tensor = cls(tuple(index_set), dict(entries), **kwargs)
        if check and not tensor.is_isometry():
            raise ContractViolation("isometry", "Some column of R does not have unit norm.")
        return tensor


def _tree_amplitude(tree: Tree, root: typing.Hashable, leaves: typing.Sequence, tensor: RTensor) -> Scalar:
    """Sum over spin states of the tree with the given root and leaf spins of the product of vertex weights."""
    if isinstance(tree, Leaf):
        return tensor.one if leaves[0] == root else tensor.zero
    split = tree.left.leaf_count
    total = tensor.zero
    for j, k, value in tensor.children(root):
        left = _tree_amplitude(tree.left, j, leaves[:split], tensor)
        if left == tensor.zero:
            continue
        right = _tree_amplitude(tree.right, k, leaves[split:], tensor)
        if right == tensor.zero:
            continue
        total = total + value * left * right
    return total


def partition_function(
    f: Tree | Forest, tensor: RTensor, roots: typing.Sequence, leaves: typing.Sequence
) -> Scalar:
    """<Phi(f) delta_roots, delta_leaves>: the state sum of f with fixed root and leaf spins."""
    f = as_forest(f)
    if len(roots) != f.root_count or len(leaves) != f.leaf_count:
        raise ContractViolation(
            "arity",
            f"Forest has {f.root_count} roots and {f.leaf_count} leaves, got {len(roots)} and {len(leaves)} spins.",
        )
    allowed = set(tensor.index_set)
    if not set(roots) <= allowed or not set(leaves) <= allowed:
        raise ContractViolation("index", "Spins outside the index set.")
    result, offset = tensor.one, 0
    for tree, root in zip(f.trees, roots, strict=True):
        amplitude = _tree_amplitude(tree, root, leaves[offset : offset + tree.leaf_count], tensor)
        if amplitude == tensor.zero:
            return tensor.zero
        result = result * amplitude
        offset += tree.leaf_count
    return result


def _flat_index(spins: typing.Sequence, position: dict) -> int:
    index = 0
    for spin in spins:
        index = index * len(position) + position[spin]
    return index


def _tensor_matrix(tensor: RTensor) -> numpy.ndarray:
    size = len(tensor.index_set)
    position = {spin: n for n, spin in enumerate(tensor.index_set)}
    matrix = numpy.full((size * size, size), tensor.zero, dtype=object)
    for i in tensor.index_set:
        for j, k, value in tensor.children(i):
            matrix[position[j] * size + position[k], position[i]] = value
    return matrix


def apply_forest_operator(f: Tree | Forest, tensor: RTensor) -> numpy.ndarray:
    """Matrix of Phi(f): C^(I^roots) -> C^(I^leaves), built by composing one elementary forest at a time.

    Basis vectors are ordered lexicographically in the order of tensor.index_set, leftmost spin most significant.
    """
    f = as_forest(f)
    size = len(tensor.index_set)
    block = _tensor_matrix(tensor)
    operator = numpy.identity(size**f.root_count, dtype=object)
    for i, n in decompose(f):
        factor = numpy.kron(
            numpy.kron(numpy.identity(size ** (i - 1), dtype=object), block),
            numpy.identity(size ** (n - i), dtype=object),
        )
        operator = factor.dot(operator)
    return operator


def operator_coefficient(
    f: Tree | Forest, tensor: RTensor, roots: typing.Sequence, leaves: typing.Sequence
) -> Scalar:
    position = {spin: n for n, spin in enumerate(tensor.index_set)}
    return apply_forest_operator(f, tensor)[_flat_index(leaves, position), _flat_index(roots, position)]


def suffix_closure(words: typing.Iterable[str]) -> tuple[str, ...]:
    closed = {""}
    for word in words:
        closed.update(word[n:] for n in range(len(word) + 1))
    return tuple(sorted(closed, key=lambda word: (len(word), word)))


@functools.cache
def haagerup_tensor(words: tuple[str, ...]) -> RTensor:
    """R_alpha restricted to the suffix closure of the given words, with RingElem coefficients.

    R(delta_e) = alpha delta_e (x) delta_e + beta delta_a (x) delta_b and R(delta_g) = delta_ag (x) delta_bg otherwise.
    """
    index_set = suffix_closure(words)
    present = set(index_set)
    entries = {("", "", ""): RingElem.alpha()}
    if "a" in present and "b" in present:
        entries[("", "a", "b")] = RingElem.beta()
    for word in index_set:
        if word and "a" + word in present and "b" + word in present:
            entries[(word, "a" + word, "b" + word)] = RingElem.one()
    return RTensor(index_set, entries, one=RingElem.one(), zero=RingElem.zero())


def haagerup_coefficient(f: Tree | Forest, words: WordTuple) -> RingElem:
    """<Phi_alpha(f) delta_e^(roots), delta_words> through the restricted R_alpha."""
    f = as_forest(f)
    tensor = haagerup_tensor(tuple(sorted(set(words))))
    return partition_function(f, tensor, ("",) * f.root_count, tuple(words))


def index_tuples(tensor: RTensor, length: int) -> typing.Iterator[tuple]:
    return itertools.product(tensor.index_set, repeat=length)
