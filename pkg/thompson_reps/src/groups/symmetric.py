import dataclasses
import typing

from src.errors import ContractViolation
from src.forest.trees import Forest
from src.forest.trees import compose


@dataclasses.dataclass(frozen=True)
class Perm:
    """A bijection of {1..n}, stored as the tuple of images (images[k-1] is where k goes)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ContractViolation("perm", f"{list(self.images)} is not a permutation of 1..{len(self.images)}.")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def rotation(cls, n: int, shift: int) -> "Perm":
        """k -> k + shift (mod n)."""
        return cls(tuple((k - 1 + shift) % n + 1 for k in range(1, n + 1)))

    @classmethod
    def of(cls, images: typing.Iterable[int]) -> "Perm":
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Perm") -> "Perm":
        """self o other, i.e. apply other first."""
        if self.size != other.size:
            raise ContractViolation("arity", f"Cannot compose permutations of sizes {self.size} and {other.size}.")
        return Perm(tuple(self.images[k - 1] for k in other.images))

    def inverse(self) -> "Perm":
        images = [0] * self.size
        for k, image in enumerate(self.images, start=1):
            images[image - 1] = k
        return Perm(tuple(images))

    @property
    def is_identity(self) -> bool:
        return all(image == k for k, image in enumerate(self.images, start=1))

    @property
    def rotation_shift(self) -> int | None:
        """The shift c if this is a cyclic rotation k -> k + c, otherwise None."""
        if self.size == 0:
            return 0
        shift = (self.images[0] - 1) % self.size
        return shift if self == Perm.rotation(self.size, shift) else None

    def __str__(self) -> str:
        return "[" + ",".join(str(image) for image in self.images) + "]"


def permute_trees(p: Forest, tau: Perm) -> Forest:
    """tau(p): the i-th tree of the result is the tau(i)-th tree of p."""
    if p.root_count != tau.size:
        raise ContractViolation("arity", f"Cannot permute {p.root_count} trees by a permutation of {tau.size}.")
    return Forest(tuple(p.trees[tau(i) - 1] for i in range(1, tau.size + 1)))


def inflate_perm(p: Forest, tau: Perm) -> Perm:
    """S(p, tau): moves the leaves of tau(p) back into the order of p, keeping each tree's leaves in order.

    Leaf block i of tau(p) is the tree p_tau(i), so its j-th leaf goes to the j-th leaf of block tau(i) of p.
    """
    sizes = [tree.leaf_count for tree in p.trees]
    starts = [sum(sizes[:j]) for j in range(len(sizes))]
    images = []
    for i in range(1, tau.size + 1):
        block = tau(i) - 1
        images.extend(starts[block] + offset + 1 for offset in range(sizes[block]))
    return Perm(tuple(images))


@dataclasses.dataclass(frozen=True)
class SymmetricForest:
    """A forest together with a permutation of its leaves."""

    forest: Forest
    perm: Perm

    def __post_init__(self):
        if self.forest.leaf_count != self.perm.size:
            raise ContractViolation(
                "arity", f"Forest has {self.forest.leaf_count} leaves but the permutation acts on {self.perm.size}."
            )

    @classmethod
    def plain(cls, forest: Forest) -> "SymmetricForest":
        return cls(forest, Perm.identity(forest.leaf_count))


def compose_symmetric(p: SymmetricForest, q: SymmetricForest) -> SymmetricForest:
    """(p, sigma) o (q, tau) = (tau(p) o q, sigma o S(p, tau))."""
    if p.forest.root_count != q.forest.leaf_count:
        raise ContractViolation(
            "arity", f"Cannot compose {p.forest.root_count} roots onto {q.forest.leaf_count} leaves."
        )
    forest = compose(permute_trees(p.forest, q.perm), q.forest)
    return SymmetricForest(forest, p.perm.compose(inflate_perm(p.forest, q.perm)))
