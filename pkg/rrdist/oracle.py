"""
Exhaustive checks on the restricted rotation graph RRG(n).

RRG(n) has one vertex per tree of size n and an edge wherever a single
rotation at the root or at the right child of the root turns one tree into
the other. Shortest paths in it are restricted rotation distances by
definition, which makes it an independent check of the weight method.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .errors import OracleBoundError, SizeMismatchError
from .metric import rrd
from .transform import applicable_moves, apply_move
from .tree import Tree, catalan

logger = logging.getLogger(__name__)

# C_12 = 208,012 vertices
PRACTICAL_BOUND = 12
# all ordered pairs, C_7^2 = 184,041
ALL_PAIRS_BOUND = 7
EXTREMAL_BOUND = 9


def enumerate_trees(n: int) -> List[str]:
    """
    All encodings of size n in lexicographic order.

    Raises:
        OracleBoundError: If n is above PRACTICAL_BOUND
    """
    if n < 0:
        raise ValueError(f"Tree size must be >= 0, got {n}")
    if n > PRACTICAL_BOUND:
        raise OracleBoundError(n, PRACTICAL_BOUND)
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def _enumerate(n: int) -> Tuple[str, ...]:
    by_size: List[List[str]] = [["0"]]
    for m in range(1, n + 1):
        by_size.append(
            [
                "1" + a + b
                for k in range(m)
                for a in by_size[k]
                for b in by_size[m - 1 - k]
            ]
        )
    return tuple(sorted(by_size[n]))


@dataclass(frozen=True)
class RrgGraph:
    """
    Restricted rotation graph of size n.

    Args:
        n: Tree size
        vertices: Encodings in lexicographic order
        adjacency: Neighbour indices of each vertex
    """

    n: int
    vertices: Tuple[str, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    index: Dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from(
            (i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j
        )
        return g

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def is_connected(self) -> bool:
        return len(self.vertices) <= 1 or nx.is_connected(self.graph)

    def vertex(self, t: Tree) -> int:
        if t.size != self.n:
            raise SizeMismatchError(t.size, self.n)
        return self.index[t.bits]

    def distances_from(self, source: int) -> List[int]:
        """BFS distances from vertex ``source`` to every vertex."""
        lengths = nx.single_source_shortest_path_length(self.graph, source)
        return [lengths[j] for j in range(len(self.vertices))]

    def edge_lines(self) -> List[str]:
        """Edge list, one ``encodingA encodingB`` line per edge."""
        return [
            f"{self.vertices[i]} {self.vertices[j]}"
            for i, nbrs in enumerate(self.adjacency)
            for j in nbrs
            if i < j
        ]


@lru_cache(maxsize=4)
def build_rrg(n: int) -> RrgGraph:
    """
    Build RRG(n) and check its invariants.

    Raises:
        OracleBoundError: If n is outside 1..PRACTICAL_BOUND
        RuntimeError: If a structural invariant does not hold
    """
    if n < 1 or n > PRACTICAL_BOUND:
        raise OracleBoundError(n, PRACTICAL_BOUND, "RRG construction")
    vertices = tuple(enumerate_trees(n))
    index = {v: i for i, v in enumerate(vertices)}
    logger.info("Building RRG(%d) on %d vertices", n, len(vertices))

    adjacency = []
    for v in vertices:
        t = Tree(v)
        nbrs = sorted(index[apply_move(t, m).bits] for m in applicable_moves(t))
        adjacency.append(tuple(nbrs))

    rrg = RrgGraph(n, vertices, tuple(adjacency), index)
    if len(vertices) != catalan(n):
        raise RuntimeError(f"RRG({n}) has {len(vertices)} vertices, expected {catalan(n)}")
    if rrg.max_degree > 4:
        raise RuntimeError(f"RRG({n}) has a vertex of degree {rrg.max_degree}")
    for i, nbrs in enumerate(rrg.adjacency):
        for j in nbrs:
            if i not in rrg.adjacency[j]:
                raise RuntimeError(f"RRG({n}) edge {vertices[i]} -> {vertices[j]} has no inverse")
    if not rrg.is_connected():
        raise RuntimeError(f"RRG({n}) is not connected")
    logger.info("RRG(%d) has %d edges", n, rrg.edge_count)
    return rrg


def oracle_distance(s: Tree, t: Tree) -> int:
    """
    Restricted rotation distance by BFS in RRG(n).

    Raises:
        SizeMismatchError: If the trees differ in size
        OracleBoundError: If the size is above PRACTICAL_BOUND
    """
    if s.size != t.size:
        raise SizeMismatchError(s.size, t.size)
    if s.bits == t.bits:
        return 0
    rrg = build_rrg(s.size)
    return nx.shortest_path_length(rrg.graph, rrg.vertex(s), rrg.vertex(t))


@dataclass
class Mismatch:
    s: str
    t: str
    fordham: int
    bfs: int


@dataclass
class VerificationReport:
    n: int
    pairs_checked: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_fordham(n: int) -> VerificationReport:
    """
    Compare the weight method with BFS on every ordered pair of size n.

    Mismatches are collected, not raised.

    Raises:
        OracleBoundError: If n is outside 2..ALL_PAIRS_BOUND
    """
    if n < 2 or n > ALL_PAIRS_BOUND:
        raise OracleBoundError(n, ALL_PAIRS_BOUND, "all-pairs verification")
    rrg = build_rrg(n)
    trees = [Tree(v) for v in rrg.vertices]
    report = VerificationReport(n)
    for i, s in enumerate(trees):
        bfs = rrg.distances_from(i)
        for j, t in enumerate(trees):
            fordham = rrd((s, t)).distance
            report.pairs_checked += 1
            if fordham != bfs[j]:
                report.mismatches.append(Mismatch(s.bits, t.bits, fordham, bfs[j]))
    logger.info(
        "Checked %d pairs of size %d, %d mismatches",
        report.pairs_checked,
        n,
        len(report.mismatches),
    )
    return report


@dataclass
class ExtremalReport:
    """
    Smallest and largest distance over reduced pairs of size exactly n.

    ``below_lower_bound`` counts unordered reduced pairs closer than n - 1.
    """

    n: int
    min_reduced: int
    max_reduced: int
    min_attained_by: Tuple[str, str]
    max_attained_by: Tuple[str, str]
    reduced_pairs: int
    below_lower_bound: int

    @property
    def lower_bound(self) -> int:
        return self.n - 1

    @property
    def upper_bound(self) -> int:
        return 4 * self.n - 8

    @property
    def upper_bound_attained(self) -> bool:
        return self.max_reduced == self.upper_bound

    @property
    def lower_bound_attained(self) -> bool:
        return self.min_reduced == self.lower_bound


def extremal_distances(n: int) -> ExtremalReport:
    """
    Scan all reduced pairs of size n for extreme BFS distances.

    Raises:
        OracleBoundError: If n is outside 3..EXTREMAL_BOUND
    """
    if n < 3 or n > EXTREMAL_BOUND:
        raise OracleBoundError(n, EXTREMAL_BOUND, "extremal scan")
    rrg = build_rrg(n)
    cherries = [Tree(v).sibling_leaf_pairs() for v in rrg.vertices]
    lo: Optional[Tuple[int, int, int]] = None
    hi: Optional[Tuple[int, int, int]] = None
    reduced = below = 0
    for i in range(len(rrg.vertices)):
        bfs = rrg.distances_from(i)
        for j in range(i + 1, len(rrg.vertices)):
            if cherries[i] & cherries[j]:
                continue
            d = bfs[j]
            reduced += 1
            if d < n - 1:
                below += 1
            if lo is None or d < lo[0]:
                lo = (d, i, j)
            if hi is None or d > hi[0]:
                hi = (d, i, j)
    v = rrg.vertices
    return ExtremalReport(
        n=n,
        min_reduced=lo[0],
        max_reduced=hi[0],
        min_attained_by=(v[lo[1]], v[lo[2]]),
        max_attained_by=(v[hi[1]], v[hi[2]]),
        reduced_pairs=reduced,
        below_lower_bound=below,
    )
