"""
Uniform random trees by Remy's algorithm, with splittable seeding.

Every item of an experiment gets its own generator seeded from
(master, stream index), so results never depend on call order or on how
many workers share the work.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Union

import numpy as np

from .transform import TreePair
from .tree import Tree

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_ONE = ord("1")


def splitmix64(z: int) -> int:
    """SplitMix64 finalizer, a bijection on 64-bit integers."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class Seed:
    """
    Seed of one random stream.

    Args:
        master: 64-bit master seed
        stream_index: Index of the stream under that master
    """

    master: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master <= MASK64:
            raise ValueError(f"Master seed must fit in 64 bits, got {self.master}")
        if self.stream_index < 0:
            raise ValueError(f"Stream index must be >= 0, got {self.stream_index}")

    @property
    def key(self) -> int:
        """64-bit value the stream's generator is seeded with."""
        return splitmix64(self.master ^ ((GOLDEN_GAMMA * self.stream_index) & MASK64))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.key))


def as_seed(seed: Union[Seed, int]) -> Seed:
    return seed if isinstance(seed, Seed) else Seed(int(seed) & MASK64)


def derive_seed(seed: Union[Seed, int], index: int) -> Seed:
    """
    Child stream ``index`` of ``seed``.

    Distinct indices give distinct keys since the finalizer is a bijection
    and the golden gamma is odd.
    """
    if index < 0:
        raise ValueError(f"Stream index must be >= 0, got {index}")
    return Seed(as_seed(seed).key, index)


@dataclass(frozen=True)
class SampleConfig:
    """How many trees of which size to draw from which seed."""

    size: int
    count: int
    seed: Seed = Seed(0)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"Tree size must be >= 0, got {self.size}")
        if self.count < 0:
            raise ValueError(f"Count must be >= 0, got {self.count}")


def _subtree_end(buf: bytearray, position: int) -> int:
    need = 1
    q = position
    while need:
        need += 1 if buf[q] == _ONE else -1
        q += 1
    return q


def remy_tree(n: int, rng: np.random.Generator) -> Tree:
    """
    Grow a uniform tree of size n from a single leaf.

    At step k the tree has 2k + 1 nodes. One draw d in [0, 4k + 1] picks the
    node at preorder rank d // 2 and the side d % 2 (0 = left) where a new
    leaf is attached; the picked node becomes the other child of a new
    internal node.
    """
    if n < 0:
        raise ValueError(f"Tree size must be >= 0, got {n}")
    buf = bytearray(b"0")
    if n == 0:
        return Tree("0")
    draws = rng.integers(0, 4 * np.arange(n, dtype=np.int64) + 2)
    for d in draws.tolist():
        u, side = divmod(d, 2)
        if side == 0:
            buf[u:u] = b"10"
        else:
            end = u + 1 if buf[u] != _ONE else _subtree_end(buf, u)
            buf[end:end] = b"0"
            buf[u:u] = b"1"
    return Tree(buf.decode("ascii"))


def sample_tree(n: int, seed: Union[Seed, int]) -> Tree:
    """
    Uniform random tree of size n.

    Args:
        n: Number of internal nodes
        seed: Seed or integer master seed

    Returns:
        Tree: Depends only on (n, seed)
    """
    return remy_tree(n, as_seed(seed).generator())


def sample_pair(n: int, seed: Union[Seed, int]) -> TreePair:
    """Two independent uniform trees of size n from child streams 0 and 1."""
    seed = as_seed(seed)
    return TreePair(
        sample_tree(n, derive_seed(seed, 0)),
        sample_tree(n, derive_seed(seed, 1)),
    )


def sample_trees(config: SampleConfig) -> Iterator[Tree]:
    """Trees for ``config``; item i uses stream ``stream_index + i`` of the master seed."""
    first = config.seed.stream_index
    for i in range(config.count):
        yield sample_tree(config.size, Seed(config.seed.master, first + i))


def draw_size(lo: int, hi: int, seed: Seed, rng: Optional[np.random.Generator] = None) -> int:
    """Raw size uniform in [lo, hi] from child stream 2 of ``seed``."""
    if lo == hi:
        return lo
    rng = rng or derive_seed(seed, 2).generator()
    return int(rng.integers(lo, hi + 1))
