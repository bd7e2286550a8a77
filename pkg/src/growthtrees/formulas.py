"""Closed-form geodesic-distance sums for grown trees.

Every exact formula here is a function of just two seed quantities, the
vertex count n and the distance sum s, so evaluation cost is independent
of how large the grown tree gets.  All exact formulas are evaluated with
rational arithmetic and must come out integral; a non-integral result
raises :class:`FormulaNonIntegral` instead of rounding, which is how
transcription mistakes get caught.

Asymptotic approximations (the ``*_avg_approx`` functions) are separate
from the exact routes, return floats, and are never used in exactness
checks.

Two independent evaluation routes exist for the edge-seeded star family:
``ntm_st`` (direct closed form) and ``ntm_st_selfsimilar`` (a recursion
over the m + 2 branches hanging off the newest center).  They must agree
exactly; that agreement is part of the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulaNonIntegral, ParameterOutOfRange
from .growth import SUBDIVISION_KIND, GrowthOp
from .tree import Tree, geodesic_sum


@dataclass(frozen=True)
class SeedSummary:
    """The only two seed quantities the closed forms need: (n, s)."""

    n_seed: int
    s_seed: int

    def __post_init__(self) -> None:
        if self.n_seed < 2:
            raise ParameterOutOfRange(f"seed needs n >= 2, got {self.n_seed}")
        if self.s_seed < self.n_seed - 1:
            raise ParameterOutOfRange(
                f"distance sum {self.s_seed} below the n - 1 = "
                f"{self.n_seed - 1} minimum"
            )
        if self.n_seed == 2 and self.s_seed != 1:
            raise ParameterOutOfRange("a two-vertex seed has distance sum 1")

    @classmethod
    def from_tree(cls, tree: Tree) -> "SeedSummary":
        return cls(tree.n, geodesic_sum(tree))


@dataclass(frozen=True)
class CaseBreakdown:
    """Distance sum after one star step, split by vertex-pair class.

    c1: both old            c2: both centers       c3: old with center
    c4: leaves, same star   c5: leaves, different stars
    c6: old with leaf       c7: center with leaf
    """

    c1: int
    c2: int
    c3: int
    c4: int
    c5: int
    c6: int
    c7: int

    @property
    def total(self) -> int:
        return self.c1 + self.c2 + self.c3 + self.c4 + self.c5 + self.c6 + self.c7

    def as_tuple(self) -> tuple[int, ...]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7)


def _require_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaNonIntegral(f"{what} evaluated to non-integer {value}")
    return int(value)


def _pow2(exp: int) -> Fraction:
    # Exact rational power; exponents may be negative (e.g. 2**(t-1) at t=0).
    return Fraction(2) ** exp


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------

def subdivision_s1(seed: SeedSummary) -> int:
    """Distance sum after one subdivision step: 8s - 2n(n-1)."""
    n, s = seed.n_seed, seed.s_seed
    return 8 * s - 2 * n * (n - 1)


def subdivision_st(seed: SeedSummary, t: int) -> int:
    """Distance sum after t subdivision steps.

    8**t * s - (1/3)(2**(3t) - 2**t)(n-1) + (2**(2t-1) - 2**(3t-1))(n-1)**2,
    evaluated with exact rationals; the division by 3 always clears because
    3 divides 2**(2t) - 1.
    """
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    e = n - 1
    value = (
        Fraction(8) ** t * s
        - Fraction(2 ** (3 * t) - 2**t, 3) * e
        + (_pow2(2 * t - 1) - _pow2(3 * t - 1)) * e * e
    )
    return _require_integer(value, "subdivision distance sum")


def subdivision_avg_approx(seed: SeedSummary, t: int) -> float:
    """Asymptotic mean distance after t subdivision steps (float).

    2**(t+1) s / (n-1)**2 - 2**(t+1) / (3(n-1)) + 1 - 2**t.  The +1 makes
    this an approximation even at t = 0; accuracy improves with t.
    """
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    e = n - 1
    return 2 ** (t + 1) * s / e**2 - 2 ** (t + 1) / (3 * e) + 1 - 2**t


def path_st(t: int) -> int:
    """Distance sum of the path on 2**t + 1 vertices: (2**(t-1)+1) 2**t (2**t+1) / 3."""
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    value = (_pow2(t - 1) + 1) * 2**t * (2**t + 1) / 3
    return _require_integer(value, "path distance sum")


def path_st_enumeration(t: int) -> int:
    """Same quantity by literal summation over path offsets.

    sum_{i=1}^{2**t} (2**t + 1 - i)(2**t + 2 - i) / 2, kept deliberately
    independent of :func:`path_st` so their equality is a real check of
    the combinatorial identity behind the closed form.
    """
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    length = 2**t
    total = 0
    for i in range(1, length + 1):
        a = length + 1 - i
        b = length + 2 - i
        assert (a * b) % 2 == 0
        total += a * b // 2
    return total


def path_avg_approx(t: int) -> float:
    """Asymptotic mean distance on the subdivided path: (2**t + 3) / 3."""
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    return (2**t + 3) / 3


# ---------------------------------------------------------------------------
# Star insertion
# ---------------------------------------------------------------------------

def star_fractal_s1(seed: SeedSummary, m: int) -> int:
    """Distance sum after one star step: 2(m+2)**2 s - (m+2)(n-1)(m+n)."""
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    n, s = seed.n_seed, seed.s_seed
    return 2 * (m + 2) ** 2 * s - (m + 2) * (n - 1) * (m + n)


def star_fractal_s1_cases(seed: SeedSummary, m: int) -> CaseBreakdown:
    """The one-step sum split across the seven vertex-pair classes.

    Each component is separately checkable against a per-class enumeration
    over provenance tags, and the components sum to
    :func:`star_fractal_s1` exactly.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    n, s = seed.n_seed, seed.s_seed
    pairs2 = n * (n - 1)  # twice the number of unordered old pairs
    c1 = 2 * s
    c2 = c1 - pairs2
    c3 = 2 * c2 + pairs2
    c4 = (n - 1) * m * (m - 1)
    c5 = m * m * c2 + sum(2 * m * m * (n - 1 - i) for i in range(1, n - 1))
    c6 = m * c3 + m * pairs2
    c7 = 2 * m * c2 + m * (n - 1) ** 2
    breakdown = CaseBreakdown(c1, c2, c3, c4, c5, c6, c7)
    assert breakdown.total == star_fractal_s1(seed, m)
    return breakdown


def star_fractal_st(seed: SeedSummary, m: int, t: int) -> int:
    """Distance sum after t star steps, for an arbitrary seed.

    With q = m + 2 and e = n - 1:

        2**t q**(2t) s  -  (2**t - 1) q**(2t-1) e**2
                        -  (m+1) e (2**t q**(2t) - q**t) / (2q - 1)

    obtained by iterating the one-step formula; the per-step subtraction
    uses the counts n_k = q**k e + 1.  Matches the enumeration oracle for
    every seed, and reduces to the subdivision formula at m = 0.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    q = m + 2
    e = n - 1
    value = (
        Fraction(2**t) * q ** (2 * t) * s
        - (2**t - 1) * Fraction(q) ** (2 * t - 1) * e * e
        - Fraction((m + 1) * e * (2**t * q ** (2 * t) - q**t), 2 * q - 1)
    )
    return _require_integer(value, "star-step distance sum")


def star_fractal_avg_approx(seed: SeedSummary, m: int, t: int) -> float:
    """Asymptotic mean distance after t star steps (float).

    2**(t+1) s / (n-1)**2 - (m+1) 2**(t+1) / ((2m+3)(n-1))
                          + (2 - 2**(t+1)) / (m+2).

    At m = 0 this coincides with :func:`subdivision_avg_approx`; the
    relative error against the exact mean shrinks monotonically in t.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    n, s = seed.n_seed, seed.s_seed
    e = n - 1
    return (
        2 ** (t + 1) * s / e**2
        - (m + 1) * 2 ** (t + 1) / ((2 * m + 3) * e)
        + (2 - 2 ** (t + 1)) / (m + 2)
    )


# ---------------------------------------------------------------------------
# Edge-seeded star family: two independent routes
# ---------------------------------------------------------------------------

_EDGE_SEED = None  # created lazily to avoid import-order games


def _edge_seed() -> SeedSummary:
    global _EDGE_SEED
    if _EDGE_SEED is None:
        _EDGE_SEED = SeedSummary(2, 1)
    return _EDGE_SEED


def ntm_st(t: int, m: int) -> int:
    """Distance sum of the edge-seeded star family after t steps.

    ((m+1)**2 2**t + 2m+3)/(2m+3) * (m+2)**(2t-1)
        + (m+2)**t - (m+2)**2/(2m+3) * (m+2)**(t-1),

    which the rational evaluation reduces to 1 at t = 0.  Must agree with
    ``star_fractal_st`` on the two-vertex seed for all t and m.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    q = Fraction(m + 2)
    value = (
        Fraction((m**2 + 2 * m + 1) * 2**t + 2 * m + 3, 2 * m + 3) * q ** (2 * t - 1)
        + q**t
        - Fraction((m + 2) ** 2, 2 * m + 3) * q ** (t - 1)
    )
    return _require_integer(value, "edge-seeded star-family distance sum")


def ntm_st_selfsimilar(t: int, m: int) -> int:
    """Same quantity via the self-similar recursion (independent route).

    The tree after t steps is m + 2 copies of the tree after t - 1 steps
    glued at one merge vertex.  With q = m + 2:

        s(t)     = q s(t-1) + (m+1)(m+2)/2 * cross(t)
        cross(t) = 2 (n(t-1) - 1) theta(t-1)
        theta(k) = q**k + (m+1) q**(k-1) (2**k - 1)
        n(k)     = q**k + 1,   s(0) = 1,

    where theta(k) is the distance sum from a branch's merge vertex to
    every other vertex of that branch (rational powers keep k = 0 legal).
    Must equal :func:`ntm_st` exactly.
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    q = m + 2
    s = Fraction(1)
    for step in range(1, t + 1):
        theta = Fraction(q) ** (step - 1) + (m + 1) * Fraction(q) ** (step - 2) * (
            2 ** (step - 1) - 1
        )
        n_prev = q ** (step - 1) + 1
        cross_pair = 2 * (n_prev - 1) * theta
        s = q * s + Fraction((m + 1) * q, 2) * cross_pair
    return _require_integer(s, "self-similar distance sum")


def tgraph_st(t: int) -> int:
    """Distance sum of the T-graph after t steps.

    3**t + (2**(t+2) + 5)/5 * 3**(2t-1) - 3**(t+1)/5; equals
    ``ntm_st(t, 1)`` for every t.
    """
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    value = (
        Fraction(3) ** t
        + Fraction(2 ** (t + 2) + 5, 5) * Fraction(3) ** (2 * t - 1)
        - Fraction(3 ** (t + 1), 5)
    )
    return _require_integer(value, "T-graph distance sum")


def tgraph_avg_approx(t: int) -> float:
    """Asymptotic mean distance of the T-graph: 2**t."""
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    return float(2**t)


def ntm_avg_approx(t: int, m: int) -> float:
    """Asymptotic mean distance of the edge-seeded family.

    2**(t+1) (m+1)**2 / ((m+2)(2m+3)).  Note the tension with
    :func:`tgraph_avg_approx`: at m = 1 this gives (8/15) 2**t while the
    T-graph form says 2**t.  Both are exposed unchanged; the exact
    averages arbitrate empirically (the measured constant is 8/15).
    """
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    if t < 0:
        raise ParameterOutOfRange(f"t must be >= 0, got {t}")
    return 2 ** (t + 1) * (m + 1) ** 2 / ((m + 2) * (2 * m + 3))


# ---------------------------------------------------------------------------
# Scaling exponents and reports
# ---------------------------------------------------------------------------

def scaling_exponents(op: GrowthOp) -> tuple[float, str]:
    """Growth exponent of the mean distance as a power of the vertex count.

    Subdivision scales linearly (exponent 1); star insertion with m leaves
    scales as ln 2 / ln(m + 2).
    """
    if op.kind == SUBDIVISION_KIND:
        return 1.0, "mean distance grows linearly with vertex count"
    gamma = math.log(2) / math.log(op.m + 2)
    return gamma, (
        f"mean distance grows like n**{gamma:.4f} "
        f"(ln 2 / ln {op.m + 2}) for star insertion with m={op.m}"
    )


def closed_form_sum(seed: SeedSummary, op: GrowthOp, t: int) -> int:
    """Dispatch to the exact closed form matching ``op``."""
    if op.kind == SUBDIVISION_KIND:
        return subdivision_st(seed, t)
    return star_fractal_st(seed, op.m, t)


def closed_form_avg_approx(seed: SeedSummary, op: GrowthOp, t: int) -> float:
    if op.kind == SUBDIVISION_KIND:
        return subdivision_avg_approx(seed, t)
    return star_fractal_avg_approx(seed, op.m, t)


@dataclass(frozen=True)
class GeodesicReport:
    """Exact distance sum and mean for a grown tree, plus the float approximation."""

    s_t: int
    avg_exact: Fraction
    avg_approx: float
    n_t: int
    e_t: int


def geodesic_report(seed: SeedSummary, op: GrowthOp, t: int) -> GeodesicReport:
    from .growth import predict_counts

    n_t, e_t = predict_counts(seed.n_seed, seed.n_seed - 1, op, t)
    s_t = closed_form_sum(seed, op, t)
    avg = Fraction(2 * s_t, n_t * (n_t - 1))
    if not (s_t >= e_t and 1 <= avg <= n_t - 1):
        raise FormulaNonIntegral(
            f"report sanity violated: s_t={s_t}, e_t={e_t}, avg={avg}"
        )
    return GeodesicReport(
        s_t=s_t,
        avg_exact=avg,
        avg_approx=closed_form_avg_approx(seed, op, t),
        n_t=n_t,
        e_t=e_t,
    )
