"""Closed-form mean first-passage times and scaling diagnostics.

On a tree, effective resistance equals hop distance and the number of
edges is n - 1, so the ordered-pair MFPT collapses to 2 * S / n with S the
exact geodesic-distance sum.  That identity gives an exact MFPT for every
grown tree straight from the closed forms, verified elsewhere against the
rational linear solver.

The two ``*_mfpt_approx`` functions are coarse asymptotic approximations,
deliberately not tightened to agree with the exact identity; their ratio
to the exact value converges to a constant that the reports expose as
data (for the two-vertex seed the subdivision ratio tends to 2 and the
star ratio to (m + 2) / (m + 1)**2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientPoints, NonPositiveValue, ParameterOutOfRange
from .formulas import SeedSummary, closed_form_sum, scaling_exponents
from .growth import SUBDIVISION_KIND, GrowthOp, predict_counts


def mfpt_closed(seed: SeedSummary, op: GrowthOp, t: int) -> Fraction:
    """Exact MFPT of the grown tree: 2 * S_t / n_t."""
    n_t, _ = predict_counts(seed.n_seed, seed.n_seed - 1, op, t)
    return Fraction(2 * closed_form_sum(seed, op, t), n_t)


def subdivision_mfpt_approx(seed: SeedSummary, t: int) -> float:
    """Asymptotic MFPT after t subdivision steps.

    2**(2t+2) s / (n-1) - 2**(2t+2) / 3 + (2 - 2**(2t+1)) (n-1).
    """
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    e = n - 1
    return 2 ** (2 * t + 2) * s / e - 2 ** (2 * t + 2) / 3 + (2 - 2 ** (2 * t + 1)) * e


def star_fractal_mfpt_approx(seed: SeedSummary, m: int, t: int) -> float:
    """Asymptotic MFPT after t star steps.

    4 (4+2m)**t s / (n-1) - 4 (4+2m)**t (m+1) / (2m+3)
                          + (2 - 2**(t+1)) (m+2)**t (n-1).

    At m = 0 the first two terms match the subdivision approximation but
    the third differs by exactly (2**(t+1) - 2)(n - 1); the two functions
    stay independent and the gap is asserted in tests instead of patched.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    e = n - 1
    return (
        4 * (4 + 2 * m) ** t * s / e
        - 4 * (4 + 2 * m) ** t * (m + 1) / (2 * m + 3)
        + (2 - 2 ** (t + 1)) * (2 + m) ** t * e
    )


def dimensions(m: int) -> tuple[float, float, float]:
    """Fractal, walk, and spectral dimensions of the star-grown family.

    d_f = ln(m+2)/ln 2,  d_w = ln(2(m+2))/ln 2 = 1 + d_f,
    d_s = 2 d_f / d_w < 2 (walks on these trees are recurrent).
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    d_f = math.log(m + 2) / math.log(2)
    d_w = math.log(2 * (m + 2)) / math.log(2)
    d_s = 2 * d_f / d_w
    assert abs(d_w - (1 + d_f)) < 1e-12
    assert d_s < 2
    return d_f, d_w, d_s


def fit_exponent(points: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Ordinary least squares of ln(value) against ln(n).

    Returns (slope, intercept, r_squared).  Used to recover growth
    exponents from exact series; values are converted to float only here,
    at the last step.
    """
    if len(points) < 3:
        raise InsufficientPoints(f"need >= 3 points, got {len(points)}")
    if any(x <= 0 or y <= 0 for x, y in points):
        raise NonPositiveValue("log-log fit needs strictly positive points")
    xs = [math.log(float(x)) for x, _ in points]
    ys = [math.log(float(y)) for _, y in points]
    k = len(xs)
    mean_x = sum(xs) / k
    mean_y = sum(ys) / k
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    syy = sum((y - mean_y) ** 2 for y in ys)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    r_squared = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return slope, intercept, r_squared


@dataclass(frozen=True)
class MfptReport:
    """Exact MFPT next to the stated approximation and theory exponents."""

    exact: Fraction
    theorem_approx: float
    ratio: float
    gamma_theory: float
    lambda_theory: float
    d_f: float | None
    d_w: float | None
    d_spectral: float | None


def mfpt_report(seed: SeedSummary, op: GrowthOp, t: int) -> MfptReport:
    exact = mfpt_closed(seed, op, t)
    if op.kind == SUBDIVISION_KIND:
        approx = subdivision_mfpt_approx(seed, t)
        d_f = d_w = d_s = None
    else:
        approx = star_fractal_mfpt_approx(seed, op.m, t)
        d_f, d_w, d_s = dimensions(op.m)
    gamma, _ = scaling_exponents(op)
    assert exact > 0
    return MfptReport(
        exact=exact,
        theorem_approx=approx,
        ratio=approx / float(exact),
        gamma_theory=gamma,
        lambda_theory=1 + gamma,
        d_f=d_f,
        d_w=d_w,
        d_spectral=d_s,
    )
