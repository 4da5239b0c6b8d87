"""Welch's two-sided t-test for the format-preference analysis.

The p-value comes from the Student-t tail integral, computed by adaptive
Simpson quadrature of the density (absolute accuracy well below 1e-9), with
the Welch-Satterthwaite degrees of freedom. Verdicts follow the preference
thresholds: marked when p < 0.05, strong when p < 0.01.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

VERDICTS = ("none", "ttl95", "json95", "ttl99", "json99")


class InsufficientSamplesError(ValueError):
    """Both samples need at least two observations."""


@dataclass(frozen=True)
class WelchResult:
    statistic: float
    df: float
    p_value: float


@dataclass(frozen=True)
class PreferenceResult:
    task_class_id: str
    model_id: str
    mean_turtle: float
    mean_jsonld: float
    p_value: float
    verdict: str


def _mean(xs) -> float:
    return sum(xs) / len(xs)


def _variance(xs) -> float:
    m = _mean(xs)
    return sum((x - m) ** 2 for x in xs) / (len(xs) - 1)


def _t_log_norm(df: float) -> float:
    return (
        math.lgamma((df + 1.0) / 2.0)
        - math.lgamma(df / 2.0)
        - 0.5 * math.log(df * math.pi)
    )


def _t_pdf(x: float, df: float, log_norm: float) -> float:
    return math.exp(log_norm - ((df + 1.0) / 2.0) * math.log1p(x * x / df))


def _adaptive_simpson(f, a: float, b: float, eps: float) -> float:
    """Iterative adaptive Simpson with Richardson correction."""

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    m = (a + b) / 2.0
    stack = [(a, b, f(a), f(m), f(b), simpson(a, b, f(a), f(m), f(b)), eps, 0)]
    total = 0.0
    while stack:
        x0, x2, f0, f1, f2, whole, tol, depth = stack.pop()
        xm = (x0 + x2) / 2.0
        xl = (x0 + xm) / 2.0
        xr = (xm + x2) / 2.0
        fl = f(xl)
        fr = f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        if depth > 48 or abs(left + right - whole) <= 15.0 * tol:
            total += left + right + (left + right - whole) / 15.0
        else:
            stack.append((x0, xm, f0, fl, f1, left, tol / 2.0, depth + 1))
            stack.append((xm, x2, f1, fr, f2, right, tol / 2.0, depth + 1))
    return total


def student_t_tail(t: float, df: float) -> float:
    """P(T >= t) for t >= 0, by quadrature of the transformed density."""
    if t < 0:
        raise ValueError("tail is defined for non-negative t")
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    log_norm = _t_log_norm(df)

    def integrand(u: float) -> float:
        # substitution x = t + u/(1-u) maps [0,1) onto [t, inf)
        if u >= 1.0:
            if df > 1.0:
                return 0.0
            return math.exp(log_norm + (df / 2.0) * math.log(df))
        rest = 1.0 - u
        x = t + u / rest
        return _t_pdf(x, df, log_norm) / (rest * rest)

    return _adaptive_simpson(integrand, 0.0, 1.0, 1e-13)


def welch_t_test(sample_a, sample_b) -> WelchResult:
    """Two-sided Welch t-test (unequal variances)."""
    a, b = list(sample_a), list(sample_b)
    if len(a) < 2 or len(b) < 2:
        raise InsufficientSamplesError(
            f"need at least 2 observations per sample, got {len(a)} and {len(b)}"
        )
    va, vb = _variance(a), _variance(b)
    sa, sb = va / len(a), vb / len(b)
    se2 = sa + sb
    diff = _mean(a) - _mean(b)
    if se2 == 0.0:
        # both samples constant: equal means are indistinguishable,
        # different means are unambiguous
        if diff == 0.0:
            return WelchResult(0.0, float(len(a) + len(b) - 2), 1.0)
        return WelchResult(math.copysign(math.inf, diff), float(len(a) + len(b) - 2), 0.0)
    t = diff / math.sqrt(se2)
    df = se2 * se2 / (sa * sa / (len(a) - 1) + sb * sb / (len(b) - 1))
    p = min(1.0, 2.0 * student_t_tail(abs(t), df))
    return WelchResult(t, df, p)


def preference_verdict(p_value: float, mean_turtle: float, mean_jsonld: float) -> str:
    if p_value >= 0.05 or mean_turtle == mean_jsonld:
        return "none"
    direction = "ttl" if mean_turtle > mean_jsonld else "json"
    return f"{direction}99" if p_value < 0.01 else f"{direction}95"


def format_preference_test(
    scores_turtle,
    scores_jsonld,
    task_class_id: str = "",
    model_id: str = "",
) -> PreferenceResult:
    """Turtle-vs-JSON-LD preference for one (task class, model) pair.

    Raises InsufficientSamplesError when either side has fewer than two
    observations.
    """
    result = welch_t_test(scores_turtle, scores_jsonld)
    mean_ttl = _mean(list(scores_turtle))
    mean_json = _mean(list(scores_jsonld))
    return PreferenceResult(
        task_class_id=task_class_id,
        model_id=model_id,
        mean_turtle=mean_ttl,
        mean_jsonld=mean_json,
        p_value=result.p_value,
        verdict=preference_verdict(result.p_value, mean_ttl, mean_json),
    )
