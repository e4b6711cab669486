"""Pearson correlation and its two-tailed Student-t significance test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, NumericError, ParameterError

_CF_EPS = 1e-16
_CF_TINY = 1e-300
_CF_MAX_ITER = 20000


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ParameterError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 3:
        raise ParameterError(f"need at least 3 samples, got {n}")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise DomainError("zero variance in input; correlation undefined")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def t_statistic(r: float, n: int) -> float:
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return math.copysign(math.inf, r)
    return r * math.sqrt((n - 2) / (1.0 - r * r))


def _betacf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _CF_TINY if abs(d) < _CF_TINY else d
        c = 1.0 + aa / c
        c = _CF_TINY if abs(c) < _CF_TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise NumericError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function ``I_x(a, b)``."""
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def p_value_two_tailed(r: float, n: int) -> float:
    """Two-tailed p-value of a sample correlation ``r`` over ``n`` pairs.

    With ``df = n - 2`` and ``t = r sqrt(df / (1 - r^2))``,
    ``P(|T_df| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)`` and
    ``df/(df+t^2)`` simplifies to ``1 - r^2``.
    """
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    if not abs(r) <= 1.0 + 1e-12:
        raise ParameterError(f"|r| must be <= 1, got {r}")
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return 0.0
    x = (1.0 - r) * (1.0 + r)
    return min(1.0, max(0.0, betainc((n - 2) / 2.0, 0.5, x)))


@dataclass(frozen=True)
class CorrelationReport:
    r: float
    n: int
    t_stat: float
    p_value: float
    x_label: str
    y_label: str
    n_excluded: int = 0

    def line(self) -> str:
        return (f"x={self.x_label} y={self.y_label} n={self.n} r={self.r:.4f} "
                f"t={self.t_stat:.4f} p={self.p_value:.3e}")


def correlation_report(xs: Sequence[float], ys: Sequence[float], x_label: str = "x",
                       y_label: str = "y", n_excluded: int = 0) -> CorrelationReport:
    r = pearson_r(xs, ys)
    n = len(xs)
    return CorrelationReport(r, n, t_statistic(r, n), p_value_two_tailed(r, n),
                             x_label, y_label, n_excluded)


def correlate(records: Sequence, x_field: str | Callable, y_field: str | Callable) -> CorrelationReport:
    """Correlate two fields over the converged records; the rest are counted as excluded.

    Fields are attribute names or callables taking a record.
    """
    get_x = x_field if callable(x_field) else (lambda rec: getattr(rec, x_field))
    get_y = y_field if callable(y_field) else (lambda rec: getattr(rec, y_field))
    kept = [rec for rec in records if rec.converged]
    if len(kept) < 3:
        raise DomainError(f"need at least 3 converged runs, got {len(kept)}")
    xs = [float(get_x(rec)) for rec in kept]
    ys = [float(get_y(rec)) for rec in kept]
    return correlation_report(xs, ys, _label(x_field), _label(y_field),
                              len(records) - len(kept))


def _label(f) -> str:
    return f if isinstance(f, str) else getattr(f, "__name__", "value")
