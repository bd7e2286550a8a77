"""Parameter sweeps: the tabular data behind the mean-distance and MFPT plots.

Every sweep produces a list of :class:`SweepRow` with one schema, written
as RFC-4180 CSV.  Exact integers travel as decimal strings; exact
rationals as decimal strings rounded to 12 significant digits; cells that
a given sweep does not measure hold the literal ``n/a`` so no cell is ever
empty.  Timing columns stay ``n/a`` unless timings are requested, which
keeps default outputs byte-identical across runs.
"""

from __future__ import annotations

import csv
import decimal
import time
from dataclasses import dataclass, fields
from fractions import Fraction

from . import formulas, growth, mfpt, tree, walks
from .errors import ParameterOutOfRange
from .formulas import SeedSummary
from .growth import SUBDIVISION, GrowthOp, star_fractal

NA = "n/a"

ORACLE_VERTEX_LIMIT = 10_000
MC_VERTEX_LIMIT = 1_000


@dataclass(frozen=True)
class SweepRow:
    op: str
    m: int
    t: int
    n_t: str
    e_t: str
    s_exact: str
    avg_exact: str
    avg_approx: str
    mfpt_exact: str
    mfpt_theorem: str
    avg_oracle: str
    mfpt_mc: str
    mfpt_mc_stderr: str
    elapsed_ms_formula: str
    elapsed_ms_oracle: str
    elapsed_ms_mc: str


CSV_COLUMNS = [f.name for f in fields(SweepRow)]


def significant(value: Fraction | float, digits: int = 12) -> str:
    """Decimal string of ``value`` rounded to ``digits`` significant digits.

    Exact decimal arithmetic so the string is a pure function of the
    rational value, independent of any float detour.
    """
    if isinstance(value, float):
        value = Fraction(value)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        out = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return str(out)


def _format_ms(elapsed: float | None) -> str:
    return NA if elapsed is None else f"{elapsed * 1000:.3f}"


def _build_row(op: GrowthOp, t: int, seed: SeedSummary, base: tree.Tree, *,
               oracle_limit: int, mc: dict | None, timings: bool) -> SweepRow:
    t0 = time.perf_counter()
    report = formulas.geodesic_report(seed, op, t)
    exact_mfpt = mfpt.mfpt_closed(seed, op, t)
    if op.kind == growth.SUBDIVISION_KIND:
        theorem = mfpt.subdivision_mfpt_approx(seed, t)
    else:
        theorem = mfpt.star_fractal_mfpt_approx(seed, op.m, t)
    formula_elapsed = time.perf_counter() - t0

    avg_oracle = NA
    oracle_elapsed = None
    grown = None
    if report.n_t <= oracle_limit:
        t0 = time.perf_counter()
        grown = growth.grow(base, op, t)
        avg_oracle = significant(tree.average_geodesic(grown))
        oracle_elapsed = time.perf_counter() - t0

    mc_mean = mc_stderr = NA
    mc_elapsed = None
    if mc is not None and report.n_t <= mc["vertex_limit"]:
        t0 = time.perf_counter()
        if grown is None:
            grown = growth.grow(base, op, t)
        estimate = walks.monte_carlo_mfpt(
            grown,
            walks.WalkConfig(trials=mc["trials"], rng_seed=mc["rng_seed"]),
            pair_budget=mc["pair_budget"],
        )
        mc_mean = significant(estimate.mean_steps)
        mc_stderr = significant(estimate.stderr)
        mc_elapsed = time.perf_counter() - t0

    return SweepRow(
        op=op.kind,
        m=op.leaves_per_center,
        t=t,
        n_t=str(report.n_t),
        e_t=str(report.e_t),
        s_exact=str(report.s_t),
        avg_exact=significant(report.avg_exact),
        avg_approx=significant(report.avg_approx),
        mfpt_exact=significant(exact_mfpt),
        mfpt_theorem=significant(theorem),
        avg_oracle=avg_oracle,
        mfpt_mc=mc_mean,
        mfpt_mc_stderr=mc_stderr,
        elapsed_ms_formula=_format_ms(formula_elapsed) if timings else NA,
        elapsed_ms_oracle=_format_ms(oracle_elapsed) if timings else NA,
        elapsed_ms_mc=_format_ms(mc_elapsed) if timings else NA,
    )


def fig3_rows(t_max: int = 5, *, m_values: tuple[int, ...] = (0, 1, 2, 3, 4),
              oracle_limit: int = ORACLE_VERTEX_LIMIT, timings: bool = False,
              t_max_per_m: dict[int, int] | None = None) -> list[SweepRow]:
    """Mean geodesic distance of the edge-seeded star family, per m and t.

    Exact average, the asymptotic approximation, and the enumeration
    oracle wherever the tree stays under ``oracle_limit`` vertices.
    """
    if t_max < 1:
        raise ParameterOutOfRange("sweep needs t_max >= 1")
    seed = SeedSummary(2, 1)
    base = tree.single_edge()
    rows = []
    for m in m_values:
        top = t_max if t_max_per_m is None else t_max_per_m.get(m, t_max)
        for t in range(1, top + 1):
            rows.append(_build_row(star_fractal(m), t, seed, base,
                                   oracle_limit=oracle_limit, mc=None,
                                   timings=timings))
    return rows


def fig6_rows(t_max: int = 5, *, m_values: tuple[int, ...] = (1, 2, 3),
              trials: int = 1000, pair_budget: int = 60, rng_seed: int = 0,
              mc_limit: int = MC_VERTEX_LIMIT,
              oracle_limit: int = ORACLE_VERTEX_LIMIT,
              timings: bool = False) -> list[SweepRow]:
    """MFPT of the edge-seeded star family: exact, stated approximation,
    and a Monte Carlo estimate wherever the tree stays under ``mc_limit``
    vertices."""
    if t_max < 1:
        raise ParameterOutOfRange("sweep needs t_max >= 1")
    seed = SeedSummary(2, 1)
    base = tree.single_edge()
    mc = {"trials": trials, "pair_budget": pair_budget,
          "rng_seed": rng_seed, "vertex_limit": mc_limit}
    rows = []
    for m in m_values:
        for t in range(1, t_max + 1):
            rows.append(_build_row(star_fractal(m), t, seed, base,
                                   oracle_limit=oracle_limit, mc=mc,
                                   timings=timings))
    return rows


def custom_rows(base: tree.Tree, op: GrowthOp, t_min: int, t_max: int, *,
                oracle_limit: int = ORACLE_VERTEX_LIMIT,
                timings: bool = False) -> list[SweepRow]:
    """Sweep one operation over t for an arbitrary seed tree."""
    if t_min < 0 or t_max < t_min:
        raise ParameterOutOfRange(f"bad t range [{t_min}, {t_max}]")
    summary = SeedSummary.from_tree(base)
    return [
        _build_row(op, t, summary, base, oracle_limit=oracle_limit, mc=None,
                   timings=timings)
        for t in range(t_min, t_max + 1)
    ]


def write_csv(rows: list[SweepRow], path: str) -> None:
    """RFC-4180 CSV with a header row; stable byte-for-byte given equal rows."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([getattr(row, col) for col in CSV_COLUMNS])
