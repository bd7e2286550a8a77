"""Ground-truth first-passage computations for random walks on trees.

Three independent routes to the same quantities live here:

* exact expected hitting times, from the absorbing linear system
  ``h(v) = 1 + mean of h over neighbors`` solved by exact rational
  Gaussian elimination (a leaf-first elimination order has no fill-in on
  a tree, so each target costs O(n));
* the dense floating-point route through the Laplacian pseudoinverse,
  kept as a second oracle;
* Monte Carlo simulation of the walk itself, vectorized and fully
  deterministic for a fixed seed.

A uniform random walk moves to a neighbor chosen uniformly at random each
step.  The mean first-passage time (MFPT) of a tree is the expected
hitting time averaged over all ordered vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateTree,
    IndexOutOfRange,
    ParameterOutOfRange,
    SingularMatrix,
    SizeLimitExceeded,
)
from .tree import Tree, bfs_distances

DENSE_LIMIT = 2000


def _check_vertex(tree: Tree, v: int, name: str) -> None:
    if not 0 <= v < tree.n:
        raise IndexOutOfRange(f"{name} {v} not in 0..{tree.n - 1}")


# ---------------------------------------------------------------------------
# Exact hitting times
# ---------------------------------------------------------------------------

def hitting_times_to_target(tree: Tree, target: int) -> list[Fraction]:
    """Exact expected hitting time h(v -> target) for every start vertex v.

    Solves   h(v) = 1 + (1/deg v) * sum over neighbors w of h(w),
             h(target) = 0
    by Gaussian elimination in the leaf-first order of the tree rooted at
    the target.  Writing h(v) = a(v) + b(v) * h(parent(v)) and folding in
    the already-eliminated children c of v gives

        a(v) = (deg v + sum a(c)) / (deg v - sum b(c))
        b(v) = 1 / (deg v - sum b(c)),

    after which one pass from the target back down fills in every h(v).
    All arithmetic is over exact rationals.
    """
    _check_vertex(tree, target, "target")
    n = tree.n
    order = _bfs_order(tree, target)
    parent = order["parent"]
    sequence = order["sequence"]

    a = [Fraction(0)] * n
    b = [Fraction(0)] * n
    sum_a = [Fraction(0)] * n
    sum_b = [Fraction(0)] * n
    for v in reversed(sequence):
        if v == target:
            continue
        deg = tree.degree(v)
        denom = deg - sum_b[v]
        a[v] = (deg + sum_a[v]) / denom
        b[v] = Fraction(1, 1) / denom
        p = parent[v]
        sum_a[p] += a[v]
        sum_b[p] += b[v]

    h = [Fraction(0)] * n
    for v in sequence:
        if v == target:
            continue
        h[v] = a[v] + b[v] * h[parent[v]]
    return h


def _bfs_order(tree: Tree, root: int) -> dict:
    parent = [-1] * tree.n
    sequence = [root]
    seen = bytearray(tree.n)
    seen[root] = 1
    head = 0
    while head < len(sequence):
        v = sequence[head]
        head += 1
        for w in tree.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                parent[w] = v
                sequence.append(w)
    return {"parent": parent, "sequence": sequence}


def hitting_time_exact(tree: Tree, source: int, target: int) -> Fraction:
    """Exact expected number of steps for a walk from source to hit target."""
    _check_vertex(tree, source, "source")
    _check_vertex(tree, target, "target")
    if source == target:
        return Fraction(0)
    return hitting_times_to_target(tree, target)[source]


def mfpt_exact_solve(tree: Tree) -> Fraction:
    """Exact MFPT: hitting times averaged over all ordered pairs u != v."""
    if tree.n < 2:
        raise DegenerateTree("MFPT needs n >= 2")
    total = Fraction(0)
    for target in range(tree.n):
        total += sum(hitting_times_to_target(tree, target))
    return total / (tree.n * (tree.n - 1))


def effective_resistance(tree: Tree, u: int, v: int) -> Fraction:
    """Resistance between u and v with unit resistors on edges.

    On a tree the current has a single route, so this is exactly the hop
    distance d(u, v); commute time then satisfies
    hitting(u,v) + hitting(v,u) = 2 |E| d(u,v).
    """
    _check_vertex(tree, u, "u")
    _check_vertex(tree, v, "v")
    return Fraction(bfs_distances(tree, u)[v])


# ---------------------------------------------------------------------------
# Laplacian pseudoinverse route (second oracle, floating point)
# ---------------------------------------------------------------------------

class PseudoinverseFpt:
    """Dense pseudoinverse of the Laplacian, reusable across FPT queries.

    Builds L = Z - A (degree matrix minus adjacency) and forms
    Lp = (L - J/n)**(-1) + J/n with J the all-ones matrix.  A query then
    returns

        sum_i (Lp[source,i] - Lp[source,target] - Lp[target,i]
               + Lp[target,target]) * L[i,i].

    Dense O(n**3) float route retained purely as an independent check on
    the exact rational solver.
    """

    def __init__(self, tree: Tree, dense_limit: int = DENSE_LIMIT) -> None:
        if tree.n > dense_limit:
            raise SizeLimitExceeded(
                f"dense pseudoinverse limited to n <= {dense_limit}, "
                f"tree has {tree.n}"
            )
        self._n = tree.n
        n = tree.n
        lap = np.zeros((n, n), dtype=np.float64)
        for v, nbrs in enumerate(tree.adjacency):
            lap[v, v] = len(nbrs)
            for w in nbrs:
                lap[v, w] = -1.0
        self.degrees = np.diag(lap).copy()
        shift = np.full((n, n), 1.0 / n)
        try:
            self.lap_pinv = np.linalg.inv(lap - shift) + shift
        except np.linalg.LinAlgError as exc:
            raise SingularMatrix(f"shifted Laplacian not invertible: {exc}") from exc

    def fpt(self, source: int, target: int) -> float:
        if not 0 <= source < self._n:
            raise IndexOutOfRange(f"source {source} not in 0..{self._n - 1}")
        if not 0 <= target < self._n:
            raise IndexOutOfRange(f"target {target} not in 0..{self._n - 1}")
        lp = self.lap_pinv
        u, v = source, target
        gaps = lp[u, :] - lp[u, v] - lp[v, :] + lp[v, v]
        return float(np.dot(gaps, self.degrees))


def laplacian_pseudoinverse_fpt(tree: Tree, source: int, target: int,
                                dense_limit: int = DENSE_LIMIT) -> float:
    """One-shot first-passage time via :class:`PseudoinverseFpt`."""
    _check_vertex(tree, source, "source")
    _check_vertex(tree, target, "target")
    return PseudoinverseFpt(tree, dense_limit=dense_limit).fpt(source, target)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkConfig:
    """Simulation parameters.

    trials:    independent walks per (source, target) pair.
    max_steps: per-walk abort threshold; aborted walks are reported as
               truncated, never folded into the mean.
    rng_seed:  64-bit master seed.  Each (source, target) pair draws from
               its own counter-based substream keyed by
               (rng_seed, source, target), consumed in a fixed order, so
               estimates are bit-identical across runs for one config.
    """

    trials: int
    max_steps: int = 1_000_000
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ParameterOutOfRange(f"trials must be >= 1, got {self.trials}")
        if self.max_steps < 1:
            raise ParameterOutOfRange(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class FptEstimate:
    """Empirical first-passage statistics over completed walks."""

    mean_steps: float
    stderr: float
    completed: int
    truncated: int

    @property
    def biased_low(self) -> bool:
        # Truncation drops exactly the longest walks.
        return self.truncated > 0


def _neighbor_table(tree: Tree) -> tuple[np.ndarray, np.ndarray]:
    n = tree.n
    degrees = np.fromiter((len(a) for a in tree.adjacency), dtype=np.int64, count=n)
    table = np.zeros((n, int(degrees.max())), dtype=np.int64)
    for v, nbrs in enumerate(tree.adjacency):
        table[v, : len(nbrs)] = nbrs
    return table, degrees


def _pair_rng(seed: int, source: int, target: int, rep: int = 0) -> np.random.Generator:
    key = np.random.SeedSequence(entropy=seed, spawn_key=(source, target, rep))
    return np.random.Generator(np.random.Philox(key))


def _simulate_pair(table: np.ndarray, degrees: np.ndarray, source: int, target: int,
                   cfg: WalkConfig, rep: int = 0) -> tuple[np.ndarray, int]:
    """Run cfg.trials walks source -> target; return completed step counts."""
    rng = _pair_rng(cfg.rng_seed, source, target, rep)
    position = np.full(cfg.trials, source, dtype=np.int64)
    walker = np.arange(cfg.trials)
    steps = np.zeros(cfg.trials, dtype=np.int64)
    taken = 0
    while walker.size and taken < cfg.max_steps:
        taken += 1
        choice = rng.integers(0, degrees[position])
        position = table[position, choice]
        arrived = position == target
        if arrived.any():
            steps[walker[arrived]] = taken
            keep = ~arrived
            walker = walker[keep]
            position = position[keep]
    truncated = walker.size
    completed = np.delete(steps, walker) if truncated else steps
    return completed, truncated


def monte_carlo_fpt(tree: Tree, source: int, target: int, cfg: WalkConfig) -> FptEstimate:
    """Estimate the first-passage time source -> target by simulation."""
    _check_vertex(tree, source, "source")
    _check_vertex(tree, target, "target")
    if source == target:
        raise ParameterOutOfRange("source and target must differ")
    table, degrees = _neighbor_table(tree)
    completed, truncated = _simulate_pair(table, degrees, source, target, cfg)
    return _estimate_from_samples(completed, truncated)


def _estimate_from_samples(samples: np.ndarray, truncated: int) -> FptEstimate:
    if samples.size == 0:
        return FptEstimate(float("nan"), float("nan"), 0, truncated)
    mean = float(samples.mean())
    if samples.size > 1:
        stderr = float(samples.std(ddof=1) / np.sqrt(samples.size))
    else:
        stderr = 0.0
    return FptEstimate(mean, stderr, int(samples.size), truncated)


def monte_carlo_mfpt(tree: Tree, cfg: WalkConfig, pair_budget: int) -> FptEstimate:
    """Estimate the MFPT by sampling ordered pairs uniformly.

    Pairs are drawn without replacement until the budget or the pair
    population is exhausted, then with replacement.  The estimate is the
    mean of per-pair sample means; its standard error combines the
    between-pair spread (scaled by the finite-population factor) with the
    within-pair walk noise, so full-coverage runs report pure walk noise.
    """
    if tree.n < 2:
        raise DegenerateTree("MFPT needs n >= 2")
    if pair_budget < 1:
        raise ParameterOutOfRange(f"pair budget must be >= 1, got {pair_budget}")
    n = tree.n
    total_pairs = n * (n - 1)
    pair_rng = _pair_rng(cfg.rng_seed, n, n, rep=1)  # out-of-range key: pair picking
    base = min(pair_budget, total_pairs)
    chosen = pair_rng.choice(total_pairs, size=base, replace=False)
    extra = pair_budget - base
    if extra > 0:
        chosen = np.concatenate([chosen, pair_rng.integers(0, total_pairs, size=extra)])

    table, degrees = _neighbor_table(tree)
    seen: dict[int, int] = {}
    means = np.empty(len(chosen), dtype=np.float64)
    variances = np.empty(len(chosen), dtype=np.float64)
    truncated_total = 0
    completed_total = 0
    for slot, code in enumerate(chosen):
        code = int(code)
        source, offset = divmod(code, n - 1)
        target = offset if offset < source else offset + 1
        rep = seen.get(code, 0)
        seen[code] = rep + 1
        samples, truncated = _simulate_pair(table, degrees, source, target, cfg, rep)
        truncated_total += truncated
        completed_total += int(samples.size)
        means[slot] = samples.mean() if samples.size else np.nan
        variances[slot] = samples.var(ddof=1) if samples.size > 1 else 0.0

    estimate = float(np.nanmean(means))
    budget = len(chosen)
    walk_var = float(np.mean(variances / cfg.trials)) / budget
    coverage = min(1.0, budget / total_pairs)
    if budget > 1:
        between = max(0.0, float(np.var(means, ddof=1)) - float(np.mean(variances / cfg.trials)))
    else:
        between = 0.0
    pair_var = (1.0 - coverage) * between / budget
    stderr = float(np.sqrt(walk_var + pair_var))
    return FptEstimate(estimate, stderr, completed_total, truncated_total)
