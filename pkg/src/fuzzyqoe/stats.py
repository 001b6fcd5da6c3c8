"""Descriptive statistics, RMSE, the paired t-test, and model evaluation."""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import NoRuleCoverageError
from .inference import MamdaniModel
from .rules import TrainingRecord

_CF_TOL = 1e-12
_CF_MAX_ITER = 500
_TINY = 1e-300


@dataclass(frozen=True)
class DescriptiveStats:
    """Sample summary with a Student-t confidence interval for the mean."""

    n: int
    mean: float
    se_mean: float
    median: float
    sd: float
    ci_lo: float
    ci_hi: float
    confidence: float = 0.95


@dataclass(frozen=True)
class TTestResult:
    """Two-tailed paired-samples t-test under H0: equal means."""

    t: float
    df: int
    p: float
    alpha: float
    reject_null: bool
    note: str | None = None


@dataclass(frozen=True)
class EvaluationReport:
    """Paired comparison of ground-truth and model-estimated scores.

    Records without rule coverage are excluded and counted in ``uncovered``;
    the descriptive blocks and the t-test need at least two covered pairs and
    are ``None`` below that.
    """

    n: int
    uncovered: int
    qoe_user: DescriptiveStats | None
    qoe_fis: DescriptiveStats | None
    rmse: float
    ttest: TTestResult | None
    alpha: float


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz iteration)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) evaluated by continued fractions."""
    if a <= 0 or b <= 0:
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log(1.0 - x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_cdf(t: float, df: int) -> float:
    """P(T <= t) for Student's t with ``df`` degrees of freedom.

    Uses the tail relation through I_x(df/2, 1/2) with x = df / (df + t^2);
    exact 0.5 at t = 0 by construction.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
    return tail if t < 0 else 1.0 - tail


def student_t_ppf(q: float, df: int) -> float:
    """Quantile of Student's t, inverted from the CDF by bisection."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must be in (0, 1), got {q}")
    if q == 0.5:
        return 0.0
    if q < 0.5:
        return -student_t_ppf(1.0 - q, df)
    lo, hi = 0.0, 1.0
    while student_t_cdf(hi, df) < q:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if student_t_cdf(mid, df) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def descriptive(values: Sequence[float] | np.ndarray, confidence: float = 0.95) -> DescriptiveStats:
    """Mean, SE, median, sample SD (n-1), and a t-based confidence interval."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot summarize an empty sample")
    if v.size < 2:
        raise ValueError("need at least 2 values for SD and a confidence interval")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    if not np.all(np.isfinite(v)):
        raise ValueError("values must be finite")
    n = int(v.size)
    mean = float(v.mean())
    sd = float(v.std(ddof=1))
    se = sd / math.sqrt(n)
    t_crit = student_t_ppf((1.0 + confidence) / 2.0, n - 1)
    return DescriptiveStats(
        n=n,
        mean=mean,
        se_mean=se,
        median=float(np.median(v)),
        sd=sd,
        ci_lo=mean - t_crit * se,
        ci_hi=mean + t_crit * se,
        confidence=confidence,
    )


def rmse(pairs: Sequence[tuple[float, float]]) -> float:
    """Root of the mean squared (estimate - truth) error."""
    if len(pairs) == 0:
        raise ValueError("cannot compute RMSE of an empty pair list")
    truth = np.asarray([p[0] for p in pairs], dtype=float)
    estimate = np.asarray([p[1] for p in pairs], dtype=float)
    return float(np.sqrt(np.mean((estimate - truth) ** 2)))


def paired_t_test(pairs: Sequence[tuple[float, float]], alpha: float = 0.05) -> TTestResult:
    """Two-tailed paired t-test on per-pair differences a - b.

    Degenerate samples are handled explicitly: all-zero differences give
    t = 0, p = 1; constant nonzero differences give p = 0 with an
    "exact difference" note.
    """
    if len(pairs) < 2:
        raise ValueError(f"paired t-test needs at least 2 pairs, got {len(pairs)}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    a = np.asarray([p[0] for p in pairs], dtype=float)
    b = np.asarray([p[1] for p in pairs], dtype=float)
    d = a - b
    n = int(d.size)
    df = n - 1
    mean_d = float(d.mean())
    sd_d = float(d.std(ddof=1))
    note = None
    if sd_d == 0.0:
        if mean_d == 0.0:
            t_stat, p = 0.0, 1.0
        else:
            t_stat = math.copysign(math.inf, mean_d)
            p = 0.0
            note = "exact difference"
    else:
        t_stat = mean_d / (sd_d / math.sqrt(n))
        p = 2.0 * (1.0 - student_t_cdf(abs(t_stat), df))
    return TTestResult(t=t_stat, df=df, p=p, alpha=alpha, reject_null=p <= alpha, note=note)


def evaluate(
    model: MamdaniModel,
    test: Sequence[TrainingRecord],
    alpha: float = 0.05,
) -> EvaluationReport:
    """Infer every test record and compare against the recorded overall scores."""
    if len(test) == 0:
        raise ValueError("cannot evaluate on an empty test set")
    pairs: list[tuple[float, float]] = []
    uncovered = 0
    for record in test:
        try:
            result = model.infer(record.inputs)
        except NoRuleCoverageError:
            uncovered += 1
            continue
        pairs.append((record.overall, result.crisp))
    if not pairs:
        raise NoRuleCoverageError(f"all {len(test)} test records are outside rule coverage")

    truths = [p[0] for p in pairs]
    estimates = [p[1] for p in pairs]
    enough = len(pairs) >= 2
    return EvaluationReport(
        n=len(pairs),
        uncovered=uncovered,
        qoe_user=descriptive(truths) if enough else None,
        qoe_fis=descriptive(estimates) if enough else None,
        rmse=rmse(pairs),
        ttest=paired_t_test(pairs, alpha) if enough else None,
        alpha=alpha,
    )
