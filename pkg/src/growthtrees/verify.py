"""Self-contained verification suites: formulas against independent oracles.

Each suite pits a closed form against a route that shares nothing with it:
all-pairs BFS enumeration, exact rational linear solves, the dense
pseudoinverse, or plain simulation.  Suites return structured results so
the command line can tabulate them and exit nonzero when anything fails.

``fault_injection=True`` deliberately perturbs the closed-form side of the
enumeration suite by +1.  It exists as a negative control: a verifier that
cannot fail is not verifying anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import formulas, growth, mfpt, tree, walks
from .formulas import SeedSummary
from .growth import SUBDIVISION, GrowthOp, star_fractal
from .tree import ORIGINAL, STAR_CENTER, STAR_LEAF, Tree


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str


@dataclass
class VerifyConfig:
    """Bounds for one verification run.

    ``small`` keeps every suite under a few seconds; ``full`` runs the
    documented corpus bounds (minutes, not hours).
    """

    seeds: list[tuple[str, Tree]]
    m_values: tuple[int, ...] = (0, 1, 2, 3)
    t_values: tuple[int, ...] = (0, 1, 2, 3)
    oracle_vertex_limit: int = 10_000
    mfpt_vertex_limit: int = 400
    cross_oracle_vertex_limit: int = 200
    cross_oracle_pairs: int = 50
    commute_vertex_limit: int = 60
    mc_trials: int = 20_000
    fault_injection: bool = False


def _named_seeds(extra_random: int, rng_base: int) -> list[tuple[str, Tree]]:
    seeds: list[tuple[str, Tree]] = [
        ("edge", tree.single_edge()),
        ("path(3)", tree.path_tree(3)),
        ("path(4)", tree.path_tree(4)),
        ("star(3)", tree.star_tree(3)),
    ]
    for i in range(extra_random):
        n = 4 + (i % 5)
        seed = rng_base + i + 1
        seeds.append((f"random(n={n},seed={seed})", tree.random_labeled_tree(n, seed)))
    return seeds


def small_config(rng_base: int = 0) -> VerifyConfig:
    return VerifyConfig(
        seeds=_named_seeds(2, rng_base),
        t_values=(0, 1, 2),
        mfpt_vertex_limit=150,
        cross_oracle_vertex_limit=120,
        cross_oracle_pairs=20,
        commute_vertex_limit=40,
        mc_trials=8_000,
    )


def full_config(rng_base: int = 0) -> VerifyConfig:
    return VerifyConfig(
        seeds=_named_seeds(5, rng_base),
        t_values=(0, 1, 2, 3, 4),
    )


def _ops(cfg: VerifyConfig) -> list[GrowthOp]:
    return [SUBDIVISION] + [star_fractal(m) for m in cfg.m_values]


def _grown_corpus(cfg: VerifyConfig, vertex_limit: int) -> list[tuple[str, Tree]]:
    out = []
    for name, seed in cfg.seeds:
        for op in _ops(cfg):
            for t in cfg.t_values:
                n_t, _ = growth.predict_counts(seed.n, seed.edge_count, op, t)
                if n_t <= vertex_limit:
                    out.append((f"{name}/{op.describe()}/t={t}",
                                growth.grow(seed, op, t)))
    return out


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_tree_invariants(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    for k in (2, 3, 5, 9, 17):
        p = tree.path_tree(k)
        checks += 1
        if tree.geodesic_sum(p) != k * (k * k - 1) // 6:
            failures.append(f"path({k}) sum != k(k^2-1)/6")
        checks += 1
        if tree.diameter(p) != k - 1:
            failures.append(f"path({k}) diameter != k-1")
    for name, t0 in cfg.seeds:
        ordered = sum(sum(tree.bfs_distances(t0, s)) for s in range(t0.n))
        checks += 1
        if ordered != 2 * tree.geodesic_sum(t0):
            failures.append(f"{name}: ordered sum != 2 * unordered sum")
        checks += 1
        avg = tree.average_geodesic(t0)
        if not (1 <= avg <= tree.diameter(t0)):
            failures.append(f"{name}: average {avg} outside [1, diameter]")
        checks += 1
        if tree.validate(t0):
            failures.append(f"{name}: validation violations")
        checks += 1
        is_path = sorted(len(a) for a in t0.adjacency) == [1, 1] + [2] * (t0.n - 2)
        if (tree.diameter(t0) == t0.n - 1) != is_path:
            failures.append(f"{name}: diameter == n-1 iff path violated")
    checks += 1
    a = tree.random_labeled_tree(9, 1234)
    b = tree.random_labeled_tree(9, 1234)
    if a.adjacency != b.adjacency:
        failures.append("random tree not reproducible for a fixed seed")
    return _result("tree-invariants", checks, failures)


def suite_growth_structure(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    for name, seed in cfg.seeds:
        for op in _ops(cfg):
            for t in cfg.t_values:
                grown = growth.grow(seed, op, t)
                n_t, e_t = growth.predict_counts(seed.n, seed.edge_count, op, t)
                checks += 1
                if (grown.n, grown.edge_count) != (n_t, e_t):
                    failures.append(
                        f"{name}/{op.describe()}/t={t}: counts "
                        f"({grown.n},{grown.edge_count}) != predicted ({n_t},{e_t})"
                    )
                checks += 1
                if _degree_rules_violated(grown, op, t):
                    failures.append(f"{name}/{op.describe()}/t={t}: degree rules")
        for t in cfg.t_values:
            checks += 1
            grown = growth.grow(seed, SUBDIVISION, t)
            if grown.leaf_count() != seed.leaf_count():
                failures.append(f"{name}: subdivision changed the leaf count at t={t}")
            checks += 1
            twin = growth.grow(seed, star_fractal(0), t)
            if twin.adjacency != grown.adjacency:
                failures.append(f"{name}: star(m=0) differs from subdivision at t={t}")
        checks += 1
        once = growth.grow(seed, star_fractal(2), min(2, max(cfg.t_values)))
        again = growth.grow(seed, star_fractal(2), min(2, max(cfg.t_values)))
        if once.adjacency != again.adjacency or once.provenance != again.provenance:
            failures.append(f"{name}: growth not deterministic")
    return _result("growth-structure", checks, failures)


def _degree_rules_violated(grown: Tree, op: GrowthOp, t: int) -> bool:
    for v, tag in enumerate(grown.provenance):
        deg = grown.degree(v)
        if tag.role == tree.SUBDIVISION_CENTER and deg != 2:
            return True
        if tag.role == STAR_CENTER and deg != op.m + 2:
            return True
        if tag.role == STAR_LEAF and tag.step == t and deg != 1:
            return True
    return False


def suite_formula_vs_enumeration(cfg: VerifyConfig) -> SuiteResult:
    """The central check: every closed form equals all-pairs enumeration."""
    failures: list[str] = []
    checks = 0
    nudge = 1 if cfg.fault_injection else 0
    for name, seed in cfg.seeds:
        summary = SeedSummary.from_tree(seed)
        for op in _ops(cfg):
            for t in cfg.t_values:
                n_t, _ = growth.predict_counts(seed.n, seed.edge_count, op, t)
                if n_t > cfg.oracle_vertex_limit:
                    continue
                grown = growth.grow(seed, op, t)
                oracle = tree.geodesic_sum(grown)
                closed = formulas.closed_form_sum(summary, op, t) + nudge
                checks += 1
                if closed != oracle:
                    failures.append(
                        f"{name}/{op.describe()}/t={t}: formula {closed} != "
                        f"enumeration {oracle}"
                    )
                if t == 1:
                    checks += 1
                    one_step = (
                        formulas.subdivision_s1(summary)
                        if op.kind == growth.SUBDIVISION_KIND
                        else formulas.star_fractal_s1(summary, op.m)
                    )
                    if one_step + nudge != oracle:
                        failures.append(
                            f"{name}/{op.describe()}: one-step formula != enumeration"
                        )
    return _result("formula-vs-enumeration", checks, failures)


def classify_pair_sums(grown: Tree) -> dict[str, int]:
    """Distance sums per vertex-pair class after one star step.

    Classes are read off the provenance tags; two leaves share a star iff
    they share their unique neighbor.  Complements the closed-form
    :func:`growthtrees.formulas.star_fractal_s1_cases`.
    """
    roles = [tag.role for tag in grown.provenance]
    star_of = [grown.adjacency[v][0] if roles[v] == STAR_LEAF else -1
               for v in range(grown.n)]
    sums = {k: 0 for k in ("c1", "c2", "c3", "c4", "c5", "c6", "c7")}
    for u in range(grown.n):
        dist = tree.bfs_distances(grown, u)
        for v in range(u + 1, grown.n):
            a, b = roles[u], roles[v]
            d = dist[v]
            if a == ORIGINAL and b == ORIGINAL:
                sums["c1"] += d
            elif a == STAR_CENTER and b == STAR_CENTER:
                sums["c2"] += d
            elif {a, b} == {ORIGINAL, STAR_CENTER}:
                sums["c3"] += d
            elif a == STAR_LEAF and b == STAR_LEAF:
                sums["c4" if star_of[u] == star_of[v] else "c5"] += d
            elif {a, b} == {ORIGINAL, STAR_LEAF}:
                sums["c6"] += d
            else:
                sums["c7"] += d
    return sums


def suite_seven_class_split(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    m_values = [m for m in cfg.m_values if m >= 1]
    for name, seed in cfg.seeds:
        summary = SeedSummary.from_tree(seed)
        for m in m_values:
            grown = growth.grow(seed, star_fractal(m), 1)
            enumerated = classify_pair_sums(grown)
            breakdown = formulas.star_fractal_s1_cases(summary, m)
            for idx, value in enumerate(breakdown.as_tuple(), start=1):
                checks += 1
                if enumerated[f"c{idx}"] != value:
                    failures.append(
                        f"{name}/m={m}: class c{idx} formula {value} != "
                        f"enumeration {enumerated[f'c{idx}']}"
                    )
            checks += 1
            if breakdown.total != formulas.star_fractal_s1(summary, m):
                failures.append(f"{name}/m={m}: class sum != one-step formula")
    return _result("seven-class-split", checks, failures)


def suite_route_equivalence(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    edge = SeedSummary(2, 1)
    for m in range(5):
        for t in range(9):
            direct = formulas.ntm_st(t, m)
            recursion = formulas.ntm_st_selfsimilar(t, m)
            general = formulas.star_fractal_st(edge, m, t)
            checks += 1
            if not direct == recursion == general:
                failures.append(
                    f"m={m},t={t}: routes disagree "
                    f"({direct}, {recursion}, {general})"
                )
    for t in range(11):
        checks += 1
        if formulas.tgraph_st(t) != formulas.ntm_st(t, 1):
            failures.append(f"t={t}: T-graph route != family route at m=1")
    for t in range(17):
        checks += 1
        if formulas.path_st(t) != formulas.path_st_enumeration(t):
            failures.append(f"t={t}: path closed form != literal summation")
    return _result("route-equivalence", checks, failures)


def suite_mfpt_identity(cfg: VerifyConfig) -> SuiteResult:
    """Exact solver against the 2S/n tree identity, plus hand spot values."""
    failures: list[str] = []
    checks = 0
    spot = [
        (tree.path_tree(3), Fraction(8, 3)),
        (tree.star_tree(3), Fraction(9, 2)),
        (tree.single_edge(), Fraction(1)),
    ]
    for t0, expected in spot:
        checks += 1
        if walks.mfpt_exact_solve(t0) != expected:
            failures.append(f"spot value {expected} missed")
    for name, grown in _grown_corpus(cfg, cfg.mfpt_vertex_limit):
        checks += 1
        solved = walks.mfpt_exact_solve(grown)
        identity = Fraction(2 * tree.geodesic_sum(grown), grown.n)
        if solved != identity:
            failures.append(f"{name}: solver {solved} != identity {identity}")
    for name, seed in cfg.seeds:
        summary = SeedSummary.from_tree(seed)
        for op in _ops(cfg):
            previous = None
            for t in cfg.t_values:
                value = mfpt.mfpt_closed(summary, op, t)
                checks += 1
                if previous is not None and value <= previous:
                    failures.append(f"{name}/{op.describe()}: MFPT not increasing in t")
                previous = value
    return _result("mfpt-identity", checks, failures)


def suite_cross_oracle(cfg: VerifyConfig) -> SuiteResult:
    """Dense pseudoinverse route against exact hitting times."""
    import numpy as np

    failures: list[str] = []
    checks = 0
    rng = np.random.default_rng(20_240_901)
    for name, grown in _grown_corpus(cfg, cfg.cross_oracle_vertex_limit):
        n = grown.n
        pairs = min(cfg.cross_oracle_pairs, n * (n - 1))
        codes = rng.choice(n * (n - 1), size=pairs, replace=False)
        dense = walks.PseudoinverseFpt(grown)
        per_target: dict[int, list[Fraction]] = {}
        for code in codes:
            u, off = divmod(int(code), n - 1)
            v = off if off < u else off + 1
            if v not in per_target:
                per_target[v] = walks.hitting_times_to_target(grown, v)
            exact = float(per_target[v][u])
            approx = dense.fpt(u, v)
            checks += 1
            if abs(approx - exact) > 1e-6 * max(1.0, abs(exact)):
                failures.append(
                    f"{name}: pair ({u},{v}) pseudoinverse {approx} vs exact {exact}"
                )
    return _result("cross-oracle", checks, failures)


def suite_commute_identity(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    for name, grown in _grown_corpus(cfg, cfg.commute_vertex_limit):
        n = grown.n
        to_target = [walks.hitting_times_to_target(grown, v) for v in range(n)]
        for u in range(n):
            dist = tree.bfs_distances(grown, u)
            for v in range(u + 1, n):
                checks += 1
                commute = to_target[v][u] + to_target[u][v]
                if commute != 2 * (n - 1) * dist[v]:
                    failures.append(
                        f"{name}: commute({u},{v}) = {commute} != "
                        f"2(n-1)d = {2 * (n - 1) * dist[v]}"
                    )
    return _result("commute-identity", checks, failures)


def suite_scaling_fits(cfg: VerifyConfig) -> SuiteResult:
    """Fitted growth exponents against theory, from exact series."""
    failures: list[str] = []
    checks = 0
    edge = SeedSummary(2, 1)
    for op in [SUBDIVISION] + [star_fractal(m) for m in (1, 2, 3)]:
        gamma, _ = formulas.scaling_exponents(op)
        points = []
        for t in range(3, 9):
            n_t, _ = growth.predict_counts(2, 1, op, t)
            s_t = formulas.closed_form_sum(edge, op, t)
            points.append((float(n_t), 2 * s_t / (n_t * (n_t - 1))))
        slope, _, _ = mfpt.fit_exponent(points)
        checks += 1
        if abs(slope - gamma) > 0.05 * gamma:
            failures.append(f"{op.describe()}: mean-distance slope {slope} vs {gamma}")
        lam = 1 + gamma
        points = []
        for t in range(2, 8):
            n_t, _ = growth.predict_counts(2, 1, op, t)
            points.append((float(n_t), float(mfpt.mfpt_closed(edge, op, t))))
        slope, _, _ = mfpt.fit_exponent(points)
        checks += 1
        if abs(slope - lam) > 0.05 * lam:
            failures.append(f"{op.describe()}: MFPT slope {slope} vs {lam}")
    return _result("scaling-fits", checks, failures)


def suite_monte_carlo(cfg: VerifyConfig) -> SuiteResult:
    failures: list[str] = []
    checks = 0

    path3 = tree.path_tree(3)
    est = walks.monte_carlo_fpt(path3, 0, 1, walks.WalkConfig(trials=200, rng_seed=7))
    checks += 1
    if est.mean_steps != 1.0 or est.stderr != 0.0:
        failures.append("forced one-step walk not exactly 1.0")
    est = walks.monte_carlo_fpt(path3, 1, 0,
                                walks.WalkConfig(trials=cfg.mc_trials, rng_seed=7))
    checks += 1
    if abs(est.mean_steps - 3.0) > 3 * est.stderr:
        failures.append(f"path(3) walk mean {est.mean_steps} not within 3 stderr of 3")
    checks += 1
    twin = walks.monte_carlo_fpt(path3, 1, 0,
                                 walks.WalkConfig(trials=cfg.mc_trials, rng_seed=7))
    if (twin.mean_steps, twin.stderr) != (est.mean_steps, est.stderr):
        failures.append("identical config did not reproduce identical estimate")

    half = walks.monte_carlo_fpt(path3, 1, 0,
                                 walks.WalkConfig(trials=cfg.mc_trials // 2, rng_seed=11))
    checks += 1
    ratio = half.stderr / est.stderr
    if not (math.sqrt(2) * 0.8 <= ratio <= math.sqrt(2) * 1.2):
        failures.append(f"stderr did not shrink like sqrt(trials): ratio {ratio:.3f}")

    tg1 = growth.grow(tree.single_edge(), star_fractal(1), 1)
    est = walks.monte_carlo_mfpt(
        tg1, walks.WalkConfig(trials=max(2000, cfg.mc_trials // 4), rng_seed=5),
        pair_budget=12,
    )
    checks += 1
    if abs(est.mean_steps - 4.5) > 3 * max(est.stderr, 1e-9):
        failures.append(f"T-graph(1) MFPT estimate {est.mean_steps} vs exact 4.5")

    for t0 in (path3, tree.star_tree(3), growth.grow(tree.single_edge(), star_fractal(1), 2)):
        cap = 100 * t0.n * t0.n
        est = walks.monte_carlo_fpt(
            t0, 0, t0.n - 1, walks.WalkConfig(trials=500, max_steps=cap, rng_seed=3)
        )
        checks += 1
        if est.truncated:
            failures.append(f"truncation occurred with max_steps = 100 n^2 on n={t0.n}")
    return _result("monte-carlo", checks, failures)


def _result(name: str, checks: int, failures: list[str]) -> SuiteResult:
    detail = "ok" if not failures else f"{len(failures)} failed; first: {failures[0]}"
    return SuiteResult(name, not failures, checks, detail)


ALL_SUITES = (
    suite_tree_invariants,
    suite_growth_structure,
    suite_formula_vs_enumeration,
    suite_seven_class_split,
    suite_route_equivalence,
    suite_mfpt_identity,
    suite_cross_oracle,
    suite_commute_identity,
    suite_scaling_fits,
    suite_monte_carlo,
)


def run_all(cfg: VerifyConfig) -> list[SuiteResult]:
    return [suite(cfg) for suite in ALL_SUITES]
