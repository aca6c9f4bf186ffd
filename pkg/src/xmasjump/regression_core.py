"""Least-squares machinery behind the jump pipeline.

Everything here is a closed form or a small dense solve over a handful of
points, so plain 64-bit floats with exactly-rounded sums (``math.fsum``)
are enough; results are bit-identical across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegenerateDesign,
    DomainError,
    RankDeficient,
    SingularSystem,
    TooFewRows,
)

PIVOT_TOLERANCE = 1e-12
MIN_DESIGN_ROWS = 5


@dataclass(frozen=True)
class LineFit:
    """A fitted line ``rate = slope * offset + intercept``."""

    slope: float
    intercept: float
    residual_sum_squares: float
    n: int

    def predict(self, x: float) -> float:
        return self.slope * x + self.intercept


def fit_simple_ols(xs: Sequence[float], ys: Sequence[float]) -> LineFit:
    """Ordinary least squares for a line through ``(xs, ys)``.

    Closed form: slope = Sxy / Sxx, intercept = mean(y) - slope * mean(x),
    with sums about the means.
    """
    n = len(xs)
    if n != len(ys):
        raise DomainError("xs and ys differ in length")
    if n < 2:
        raise DomainError("need at least two points to fit a line")
    x_mean = math.fsum(xs) / n
    y_mean = math.fsum(ys) / n
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    if sxx == 0.0:
        raise DegenerateDesign("all x values are identical")
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    rss = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    return LineFit(slope=slope, intercept=intercept, residual_sum_squares=rss, n=n)


def fit_intercept_fixed_slope(
    xs: Sequence[float], ys: Sequence[float], slope: float
) -> float:
    """The least-squares intercept of a line whose slope is held fixed.

    Equals the mean of ``y - slope * x``, which minimizes
    ``sum((slope * x + b - y)^2)`` over ``b``.
    """
    n = len(xs)
    if n != len(ys):
        raise DomainError("xs and ys differ in length")
    if n == 0:
        raise DomainError("need at least one point")
    return math.fsum(y - slope * x for x, y in zip(xs, ys)) / n


@dataclass(frozen=True)
class DesignMatrix:
    """Regressor rows ``[1, a, b, a*b]`` with one jump target per row."""

    rows: tuple[tuple[float, float, float, float], ...]
    targets: tuple[float, ...]

    def __post_init__(self):
        rows = tuple(tuple(float(v) for v in row) for row in self.rows)
        targets = tuple(float(t) for t in self.targets)
        if len(rows) != len(targets):
            raise DomainError("rows and targets differ in length")
        for row in rows:
            if len(row) != 4:
                raise DomainError("each design row must have exactly 4 entries")
            if row[0] != 1.0:
                raise DomainError("the first entry of each design row must be 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "targets", targets)

    @classmethod
    def from_trends(
        cls,
        trends: Sequence[tuple[float, float]],
        targets: Sequence[float],
    ) -> "DesignMatrix":
        """Rows ``[1, a, b, a*b]`` built from (slope, intercept) pairs."""
        rows = tuple((1.0, a, b, a * b) for a, b in trends)
        return cls(rows=rows, targets=tuple(targets))


@dataclass(frozen=True)
class BilinearFit:
    """Least-squares coefficients for targets ~ ``[1, a, b, a*b]``."""

    coefficients: tuple[float, float, float, float]
    residual_sum_squares: float


def solve_linear_system(
    matrix: Sequence[Sequence[float]], rhs: Sequence[float]
) -> list[float]:
    """Solve ``A x = b`` by Gaussian elimination with scaled partial pivoting.

    Raises SingularSystem when the best available pivot falls below
    PIVOT_TOLERANCE relative to its row's largest entry.
    """
    n = len(matrix)
    a = [list(map(float, row)) for row in matrix]
    for row in a:
        if len(row) != n:
            raise DomainError("matrix must be square")
    if len(rhs) != n:
        raise DomainError("rhs length must match the matrix size")
    b = list(map(float, rhs))
    scales = [max(abs(v) for v in row) for row in a]
    if any(s == 0.0 for s in scales):
        raise SingularSystem("matrix has an all-zero row")
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]) / scales[r])
        if abs(a[pivot_row][col]) / scales[pivot_row] < PIVOT_TOLERANCE:
            raise SingularSystem(f"pivot below tolerance in column {col}")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            b[col], b[pivot_row] = b[pivot_row], b[col]
            scales[col], scales[pivot_row] = scales[pivot_row], scales[col]
        pivot = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor == 0.0:
                continue
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
            b[r] -= factor * b[col]
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        tail = math.fsum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = (b[i] - tail) / a[i][i]
    return x


def normal_system(
    rows: Sequence[Sequence[float]], targets: Sequence[float]
) -> tuple[list[list[float]], list[float]]:
    """The normal equations ``(X'X, X'y)`` of a design, exactly-rounded sums."""
    k = len(rows[0])
    xtx = [
        [math.fsum(row[i] * row[j] for row in rows) for j in range(k)]
        for i in range(k)
    ]
    xty = [
        math.fsum(row[i] * t for row, t in zip(rows, targets)) for i in range(k)
    ]
    return xtx, xty


def fit_bilinear(design: DesignMatrix) -> BilinearFit:
    """Least-squares coefficients of the four-term bilinear surface.

    Solves the normal equations after symmetric diagonal equilibration;
    the regressor columns carry very different magnitudes (1 vs. a small
    slope), which the scaling neutralizes before pivoting.
    """
    rows = design.rows
    m = len(rows)
    if m < MIN_DESIGN_ROWS:
        raise TooFewRows(f"{m} design rows; need at least {MIN_DESIGN_ROWS}")
    xtx, xty = normal_system(rows, design.targets)
    try:
        solution = solve_spd_equilibrated(xtx, xty)
    except SingularSystem as exc:
        raise RankDeficient("design matrix is numerically rank-deficient") from exc
    beta = (solution[0], solution[1], solution[2], solution[3])
    rss = math.fsum(
        (math.fsum(c * v for c, v in zip(beta, row)) - t) ** 2
        for row, t in zip(rows, design.targets)
    )
    return BilinearFit(coefficients=beta, residual_sum_squares=rss)


def solve_spd_equilibrated(
    matrix: Sequence[Sequence[float]], rhs: Sequence[float]
) -> list[float]:
    """Solve a symmetric positive-definite system with Jacobi scaling.

    Rescales to ``D A D z = D b`` with ``D = diag(1/sqrt(A_ii))`` so unit
    mismatch between columns does not inflate the condition number, then
    eliminates. Raises SingularSystem when a diagonal entry is not
    positive or a pivot degenerates.
    """
    n = len(matrix)
    d = []
    for i in range(n):
        diag = matrix[i][i]
        if diag <= 0.0:
            raise SingularSystem(f"non-positive diagonal entry in row {i}")
        d.append(1.0 / math.sqrt(diag))
    scaled = [[matrix[i][j] * d[i] * d[j] for j in range(n)] for i in range(n)]
    scaled_rhs = [rhs[i] * d[i] for i in range(n)]
    z = solve_linear_system(scaled, scaled_rhs)
    return [z[i] * d[i] for i in range(n)]
