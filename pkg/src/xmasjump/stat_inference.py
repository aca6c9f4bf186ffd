"""Inference statistics for the bilinear jump model.

Self-contained Student-t machinery: two-sided p-values come from the
regularized incomplete beta function, evaluated with a modified-Lentz
continued fraction. No external numerics libraries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateVariance, DomainError, TooFewRows
from .regression_core import DesignMatrix, normal_system, solve_spd_equilibrated

N_PARAMETERS = 4

_LENTZ_EPS = 1e-14
_LENTZ_TINY = 1e-300
_LENTZ_MAX_ITER = 300


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the regularized incomplete beta function.

    Continued-fraction evaluation (modified Lentz, 1e-14 convergence
    threshold, 300-term cap); the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    keeps the fraction in its fast-converging region. Absolute error is
    well below 1e-12 for moderate (a, b).
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _LENTZ_TINY:
        d = _LENTZ_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _LENTZ_MAX_ITER + 1):
        m2 = 2 * m
        numerator = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + numerator * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + numerator / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        h *= d * c
        numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + numerator * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + numerator / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < _LENTZ_EPS:
            break
    return h


def student_t_two_sided_p(t: float, df: int) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom.

    Computed as I_x(df/2, 1/2) at x = df / (df + t^2).
    """
    if df < 1:
        raise DomainError("degrees of freedom must be at least 1")
    if math.isnan(t):
        raise DomainError("t statistic is NaN")
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


@dataclass(frozen=True)
class CoefficientInference:
    """One coefficient with its standard error, t statistic and p-value.

    A perfect fit has zero residual variance; the standard error then
    degenerates to 0 with an infinite t statistic and a zero p-value.
    """

    estimate: float
    standard_error: float
    t_statistic: float
    p_value: float

    def __post_init__(self):
        if self.standard_error < 0.0:
            raise DomainError("standard error cannot be negative")
        if not 0.0 <= self.p_value <= 1.0:
            raise DomainError("p-value must lie in [0, 1]")
        if self.standard_error > 0.0:
            implied = self.estimate / self.standard_error
            if abs(self.t_statistic - implied) > 1e-12 * max(1.0, abs(implied)):
                raise DomainError("t statistic inconsistent with estimate / se")


@dataclass(frozen=True)
class InferenceReport:
    coefficients: tuple[CoefficientInference, ...]
    adjusted_r2: float


def inference_for_fit(
    design: DesignMatrix, beta: tuple[float, ...], rss: float
) -> InferenceReport:
    """Standard errors, t statistics, p-values and adjusted R^2 of a fit.

    s^2 = rss / (n - 4); standard errors are sqrt(s^2 * diag((X'X)^-1));
    p-values are two-sided Student-t with n - 4 degrees of freedom;
    adjusted R^2 applies the (n - 1)/(n - 4) correction to 1 - rss/TSS,
    TSS taken about the target mean.
    """
    n = len(design.rows)
    if n <= N_PARAMETERS:
        raise TooFewRows(
            f"{n} rows cannot support inference on {N_PARAMETERS} parameters"
        )
    df = n - N_PARAMETERS
    targets = design.targets
    target_mean = math.fsum(targets) / n
    tss = math.fsum((t - target_mean) ** 2 for t in targets)
    if tss == 0.0:
        raise DegenerateVariance("targets have zero variance")
    xtx, _ = normal_system(design.rows, targets)
    inverse_diag = _inverse_diagonal(xtx)
    s2 = rss / df
    coefficients = []
    for i in range(N_PARAMETERS):
        estimate = float(beta[i])
        variance = s2 * max(inverse_diag[i], 0.0)
        se = math.sqrt(variance)
        if se > 0.0:
            t_stat = estimate / se
        elif estimate > 0.0:
            t_stat = math.inf
        elif estimate < 0.0:
            t_stat = -math.inf
        else:
            t_stat = 0.0
        p = student_t_two_sided_p(t_stat, df)
        coefficients.append(
            CoefficientInference(
                estimate=estimate, standard_error=se, t_statistic=t_stat, p_value=p
            )
        )
    r2 = 1.0 - rss / tss
    adjusted = 1.0 - (1.0 - r2) * (n - 1) / (n - N_PARAMETERS)
    return InferenceReport(coefficients=tuple(coefficients), adjusted_r2=adjusted)


def _inverse_diagonal(matrix: list[list[float]]) -> list[float]:
    """Diagonal of the inverse, one unit-vector solve per entry."""
    n = len(matrix)
    diag = []
    for i in range(n):
        unit = [0.0] * n
        unit[i] = 1.0
        column = solve_spd_equilibrated(matrix, unit)
        diag.append(column[i])
    return diag
