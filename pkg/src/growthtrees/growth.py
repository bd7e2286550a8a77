"""Growth operations: edge subdivision and star insertion.

One growth step visits every edge of the current tree in canonical sorted
order and replaces edge (u, v) by the path u - w - v through a fresh center
w.  The star operation with parameter m additionally hangs m fresh leaves
on each center, so one step multiplies the edge count by m + 2.  Setting
m = 0 reproduces plain subdivision exactly (only the provenance role of
the centers differs).

Vertex numbering is fixed so results are reproducible: at step s the
centers are appended first, one per edge in edge order, then the star
leaves, grouped per center in the same edge order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoEdges, ParameterOutOfRange, SizeLimitExceeded
from .tree import (
    STAR_CENTER,
    STAR_LEAF,
    SUBDIVISION_CENTER,
    Provenance,
    Tree,
)

SUBDIVISION_KIND = "subdivision"
STAR_FRACTAL_KIND = "star-fractal"

MAX_STAR_LEAVES = 64
DEFAULT_VERTEX_LIMIT = 5_000_000


@dataclass(frozen=True)
class GrowthOp:
    """Which operation to iterate: subdivision, or star insertion with m leaves."""

    kind: str
    m: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (SUBDIVISION_KIND, STAR_FRACTAL_KIND):
            raise ParameterOutOfRange(f"unknown operation kind {self.kind!r}")
        if self.kind == SUBDIVISION_KIND and self.m != 0:
            raise ParameterOutOfRange("subdivision takes no leaf parameter")
        if self.m < 0:
            raise ParameterOutOfRange(f"leaf count m must be >= 0, got {self.m}")
        if self.m > MAX_STAR_LEAVES:
            raise ParameterOutOfRange(
                f"leaf count m={self.m} exceeds the cap of {MAX_STAR_LEAVES}"
            )

    @property
    def branching(self) -> int:
        """Edge multiplication factor of one step: 2, or m + 2."""
        return 2 if self.kind == SUBDIVISION_KIND else self.m + 2

    @property
    def leaves_per_center(self) -> int:
        return 0 if self.kind == SUBDIVISION_KIND else self.m

    def describe(self) -> str:
        if self.kind == SUBDIVISION_KIND:
            return "subdivision"
        return f"star-fractal(m={self.m})"


SUBDIVISION = GrowthOp(SUBDIVISION_KIND)


def star_fractal(m: int) -> GrowthOp:
    return GrowthOp(STAR_FRACTAL_KIND, m)


def predict_counts(n_seed: int, e_seed: int, op: GrowthOp, t: int) -> tuple[int, int]:
    """Vertex and edge counts after t steps, without building anything.

    Subdivision: n + (2**t - 1) * e edges become 2**t * e.
    Star insertion: n + ((m+2)**t - 1) * e edges become (m+2)**t * e.
    Exact arbitrary-precision integers for any t.
    """
    if t < 0:
        raise ParameterOutOfRange(f"step count t must be >= 0, got {t}")
    if e_seed < 1 or e_seed != n_seed - 1:
        raise ParameterOutOfRange(
            f"seed must satisfy e = n - 1 >= 1, got n={n_seed}, e={e_seed}"
        )
    b = op.branching
    return n_seed + (b**t - 1) * e_seed, b**t * e_seed


def apply_once(tree: Tree, op: GrowthOp, step: int,
               vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> Tree:
    """Apply one growth step, tagging new vertices with ``step``."""
    if step < 1:
        raise ParameterOutOfRange(f"step must be >= 1, got {step}")
    edges = tree.edges()
    if not edges:
        raise NoEdges("growth needs at least one edge")
    n = tree.n
    e = len(edges)
    m = op.leaves_per_center
    n_new = n + (1 + m) * e
    if n_new > vertex_limit:
        raise SizeLimitExceeded(
            f"one {op.describe()} step would grow the tree to {n_new} vertices "
            f"(limit {vertex_limit})"
        )

    adj: list[list[int]] = [[w for w in nbrs] for nbrs in tree.adjacency]
    adj.extend([] for _ in range((1 + m) * e))
    center_role = SUBDIVISION_CENTER if op.kind == SUBDIVISION_KIND else STAR_CENTER
    tags = list(tree.provenance)
    tags.extend(Provenance(center_role, step) for _ in range(e))
    tags.extend(Provenance(STAR_LEAF, step) for _ in range(m * e))

    for j, (u, v) in enumerate(edges):
        center = n + j
        adj[u].remove(v)
        adj[v].remove(u)
        adj[u].append(center)
        adj[v].append(center)
        adj[center].extend((u, v))
        for k in range(m):
            leaf = n + e + j * m + k
            adj[center].append(leaf)
            adj[leaf].append(center)

    return Tree(tuple(tuple(sorted(nbrs)) for nbrs in adj), tuple(tags))


def grow(seed: Tree, op: GrowthOp, t: int,
         vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> Tree:
    """Iterate ``apply_once`` t times; t = 0 returns the seed unchanged."""
    if t < 0:
        raise ParameterOutOfRange(f"step count t must be >= 0, got {t}")
    if seed.edge_count < 1:
        raise NoEdges("growth needs a seed with at least one edge")
    n_pred, _ = predict_counts(seed.n, seed.edge_count, op, t)
    if n_pred > vertex_limit:
        raise SizeLimitExceeded(
            f"growing for t={t} steps would need {n_pred} vertices "
            f"(limit {vertex_limit})"
        )
    tree = seed
    for step in range(1, t + 1):
        tree = apply_once(tree, op, step, vertex_limit=vertex_limit)
    return tree
