"""Immutable labeled trees with per-vertex provenance.

A :class:`Tree` stores a sorted adjacency list per vertex plus a provenance
tag recording which growth step created the vertex.  Vertices are dense
0-based indices; growth operations always append new vertices after the
existing ones, so seed vertices keep their indices forever.

The module also provides the enumeration machinery that acts as the
ground-truth oracle for every closed form in :mod:`growthtrees.formulas`:
per-source BFS hop counts and the exact all-pairs geodesic-distance sum.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import (
    DegenerateTree,
    EdgeListNotATree,
    ParameterOutOfRange,
    SourceOutOfRange,
)

# Provenance roles.  ORIGINAL marks seed vertices (step 0); the other three
# mark vertices created by a growth operation at step >= 1.
ORIGINAL = "original"
SUBDIVISION_CENTER = "subdivision-center"
STAR_CENTER = "star-center"
STAR_LEAF = "star-leaf"

# geodesic_sum switches from the pure-Python BFS loop to the SciPy csgraph
# backend above this vertex count; both are exact, the C one is just faster.
_CSGRAPH_THRESHOLD = 512


class Provenance(NamedTuple):
    role: str
    step: int


_SEED_TAG = Provenance(ORIGINAL, 0)


@dataclass(frozen=True)
class Tree:
    """An unrooted, unweighted, connected acyclic graph.

    Attributes
    ----------
    adjacency:
        One sorted tuple of neighbor indices per vertex.
    provenance:
        One :class:`Provenance` tag per vertex.

    Instances are immutable and safe for concurrent reads.
    """

    adjacency: tuple[tuple[int, ...], ...]
    provenance: tuple[Provenance, ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min, max) pairs in canonical ascending order."""
        return sorted(
            (u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v
        )

    def leaf_count(self) -> int:
        return sum(1 for nbrs in self.adjacency if len(nbrs) == 1)


def _tree_from_edges(n: int, edges: Iterable[tuple[int, int]],
                     provenance: tuple[Provenance, ...] | None = None) -> Tree:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if provenance is None:
        provenance = (_SEED_TAG,) * n
    return Tree(tuple(tuple(sorted(nbrs)) for nbrs in adj), provenance)


# ---------------------------------------------------------------------------
# Seed constructors
# ---------------------------------------------------------------------------

def single_edge() -> Tree:
    """The two-vertex tree with the single edge {0, 1}."""
    return _tree_from_edges(2, [(0, 1)])


def path_tree(k: int) -> Tree:
    """Path on ``k`` >= 2 vertices: edges {0,1}, {1,2}, ..., {k-2,k-1}."""
    if k < 2:
        raise ParameterOutOfRange(f"path needs k >= 2 vertices, got {k}")
    return _tree_from_edges(k, [(i, i + 1) for i in range(k - 1)])


def star_tree(leaves: int) -> Tree:
    """Star with center 0 and ``leaves`` >= 1 leaf vertices 1..leaves."""
    if leaves < 1:
        raise ParameterOutOfRange(f"star needs >= 1 leaf, got {leaves}")
    return _tree_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def from_edge_list(pairs: Iterable[tuple[int, int]]) -> Tree:
    """Build a seed tree from explicit undirected edges.

    The pairs must reference indices 0..n-1 (n inferred as 1 + max index)
    and form a tree: exactly n - 1 distinct edges, no self-loops, connected.

    Raises
    ------
    EdgeListNotATree
        if the list has duplicates, self-loops, the wrong edge count, gaps
        in the index range, or describes a disconnected graph.
    """
    edges = [(min(u, v), max(u, v)) for u, v in pairs]
    if not edges:
        raise EdgeListNotATree("empty edge list")
    if any(u == v for u, v in edges):
        raise EdgeListNotATree("self-loop present")
    if any(u < 0 for u, _ in edges):
        raise EdgeListNotATree("negative vertex index")
    if len(set(edges)) != len(edges):
        raise EdgeListNotATree("duplicate edge present")
    n = 1 + max(v for _, v in edges)
    if len(edges) != n - 1:
        raise EdgeListNotATree(
            f"{len(edges)} edges for {n} vertices; a tree needs {n - 1}"
        )
    tree = _tree_from_edges(n, edges)
    if _reachable_count(tree, 0) != n:
        raise EdgeListNotATree("graph is disconnected")
    return tree


def random_labeled_tree(n: int, rng_seed: int) -> Tree:
    """Uniformly random labeled tree on ``n`` >= 2 vertices.

    Draws a uniform random sequence of length n - 2 over 0..n-1 with the
    stdlib Mersenne Twister seeded by ``rng_seed`` and decodes it with the
    smallest-leaf-first rule, so the result is bit-identical across runs
    and platforms for a fixed seed.
    """
    if n < 2:
        raise ParameterOutOfRange(f"random tree needs n >= 2, got {n}")
    rng = random.Random(rng_seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return _tree_from_edges(n, _decode_sequence(n, seq))


def _decode_sequence(n: int, seq: list[int]) -> list[tuple[int, int]]:
    # Smallest-leaf-first decoding; seq entries are 0-based vertex labels.
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _reachable_count(tree: Tree, start: int) -> int:
    seen = bytearray(tree.n)
    seen[start] = 1
    stack = [start]
    count = 1
    while stack:
        v = stack.pop()
        for w in tree.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count


def validate(tree: Tree) -> list[str]:
    """Check every structural invariant; return the list of violations.

    An empty list means the tree is valid.  Violations are returned rather
    than raised so callers can report all of them at once.
    """
    problems: list[str] = []
    n = tree.n
    if n < 1:
        return ["tree has no vertices"]
    if len(tree.provenance) != n:
        problems.append("provenance length differs from vertex count")
    if tree.edge_count != n - 1:
        problems.append(f"edge count {tree.edge_count} != n - 1 = {n - 1}")
    for v, nbrs in enumerate(tree.adjacency):
        if v in nbrs:
            problems.append(f"self-loop at vertex {v}")
        if list(nbrs) != sorted(set(nbrs)):
            problems.append(f"adjacency of vertex {v} not sorted and duplicate-free")
        for w in nbrs:
            if not 0 <= w < n:
                problems.append(f"vertex {v} lists out-of-range neighbor {w}")
            elif v not in tree.adjacency[w]:
                problems.append(f"asymmetric adjacency between {v} and {w}")
    if not problems and _reachable_count(tree, 0) != n:
        problems.append("graph is disconnected")
    originals = [v for v, tag in enumerate(tree.provenance) if tag.role == ORIGINAL]
    grown = [v for v, tag in enumerate(tree.provenance) if tag.role != ORIGINAL]
    if grown and originals and max(originals) > min(grown):
        problems.append("an original vertex is indexed after a grown vertex")
    for v, tag in enumerate(tree.provenance):
        if tag.role == ORIGINAL and tag.step != 0:
            problems.append(f"original vertex {v} carries nonzero step {tag.step}")
        if tag.role != ORIGINAL and tag.step < 1:
            problems.append(f"grown vertex {v} carries step {tag.step} < 1")
    return problems


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

def bfs_distances(tree: Tree, source: int) -> list[int]:
    """Hop counts from ``source`` to every vertex (result[source] == 0)."""
    if not 0 <= source < tree.n:
        raise SourceOutOfRange(f"source {source} not in 0..{tree.n - 1}")
    dist = [-1] * tree.n
    dist[source] = 0
    queue = deque([source])
    adj = tree.adjacency
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv + 1
                queue.append(w)
    return dist


def geodesic_sum(tree: Tree) -> int:
    """Exact sum of hop distances over all unordered vertex pairs.

    This is the enumeration oracle that every closed form is checked
    against.  Small trees run the pure-Python BFS above; larger ones use
    SciPy's compiled breadth-first search, summed exactly (hop counts are
    small integers, so the float accumulation below 2**53 is lossless).
    The two backends are tested against each other.
    """
    if tree.n >= _CSGRAPH_THRESHOLD:
        return _geodesic_sum_csgraph(tree)
    total = 0
    for source in range(tree.n):
        total += sum(bfs_distances(tree, source))
    assert total % 2 == 0
    return total // 2


def _geodesic_sum_csgraph(tree: Tree) -> int:
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    n = tree.n
    rows = np.fromiter(
        (u for u, nbrs in enumerate(tree.adjacency) for _ in nbrs),
        dtype=np.int64,
        count=2 * (n - 1),
    )
    cols = np.fromiter(
        (w for nbrs in tree.adjacency for w in nbrs),
        dtype=np.int64,
        count=2 * (n - 1),
    )
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    total = 0
    chunk = max(1, (8 << 20) // (8 * n))  # cap scratch at ~8 MB per batch
    for start in range(0, n, chunk):
        idx = np.arange(start, min(start + chunk, n))
        dist = dijkstra(graph, unweighted=True, indices=idx)
        total += int(dist.sum())
    assert total % 2 == 0
    return total // 2


def average_geodesic(tree: Tree) -> Fraction:
    """Exact mean distance over unordered pairs: 2 * sum / (n * (n - 1))."""
    if tree.n < 2:
        raise DegenerateTree("average distance needs n >= 2")
    return Fraction(2 * geodesic_sum(tree), tree.n * (tree.n - 1))


def diameter(tree: Tree) -> int:
    """Largest hop distance between any vertex pair, by double BFS."""
    first = bfs_distances(tree, 0)
    far = max(range(tree.n), key=first.__getitem__)
    return max(bfs_distances(tree, far))


# ---------------------------------------------------------------------------
# Edge-list files
# ---------------------------------------------------------------------------
#
# Format: UTF-8 text, one edge per line as two 0-based decimal indices
# separated by whitespace; lines starting with '#' are comments; the vertex
# count is inferred as 1 + max index.

def read_edge_list(path: str) -> Tree:
    """Load a tree from an edge-list file; all vertices are tagged original."""
    pairs: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListNotATree(
                    f"{path}:{lineno}: expected two indices, got {line!r}"
                )
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise EdgeListNotATree(f"{path}:{lineno}: {exc}") from exc
    return from_edge_list(pairs)


def write_edge_list(tree: Tree, path: str, header_comments: list[str] | None = None) -> None:
    """Write the canonical edge list, preceded by optional '#' comment lines."""
    with open(path, "w", encoding="utf-8") as fh:
        for comment in header_comments or []:
            fh.write(f"# {comment}\n")
        for u, v in tree.edges():
            fh.write(f"{u} {v}\n")
