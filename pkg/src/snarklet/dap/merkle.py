"""Fixed-depth append-only Merkle tree over the sponge hash.

Leaves default to 0; parent = H(left, right).  An authentication path is a
list of (sibling, direction) pairs from leaf to root, direction 1 meaning
the running node is the right child at that level.
"""

from __future__ import annotations

from ..algebra import Scalar
from .mimc import MimcParams, mimc_hash

AuthPath = list[tuple[Scalar, int]]


class MerkleTree:
    def __init__(self, depth: int, params: MimcParams):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        self.depth = depth
        self.params = params
        self.leaves: list[Scalar] = []

    @property
    def capacity(self) -> int:
        return 2**self.depth

    @property
    def empty_leaf(self) -> Scalar:
        return Scalar(0, self.params.modulus)

    def append(self, leaf: Scalar) -> int:
        if len(self.leaves) >= self.capacity:
            raise ValueError("merkle tree is full")
        self.leaves.append(leaf)
        return len(self.leaves) - 1

    def _levels(self) -> list[list[Scalar]]:
        level = self.leaves + [self.empty_leaf] * (self.capacity - len(self.leaves))
        levels = [level]
        while len(level) > 1:
            level = [
                mimc_hash(self.params, [level[i], level[i + 1]])
                for i in range(0, len(level), 2)
            ]
            levels.append(level)
        return levels

    def root(self) -> Scalar:
        return self._levels()[-1][0]

    def path(self, index: int) -> AuthPath:
        if not 0 <= index < len(self.leaves):
            raise IndexError(f"no leaf at index {index}")
        levels = self._levels()
        out: AuthPath = []
        for level in levels[:-1]:
            direction = index & 1
            out.append((level[index ^ 1], direction))
            index >>= 1
        return out

    def index_of(self, leaf: Scalar) -> int | None:
        try:
            return self.leaves.index(leaf)
        except ValueError:
            return None


def merkle_check(params: MimcParams, root: Scalar, leaf: Scalar, path: AuthPath) -> bool:
    node = leaf
    for sibling, direction in path:
        pair = [sibling, node] if direction else [node, sibling]
        node = mimc_hash(params, pair)
    return node == root
