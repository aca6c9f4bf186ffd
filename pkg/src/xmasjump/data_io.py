"""Rate-series ingestion, serialization, and a seeded synthetic generator.

File format: a ``date,rate`` header, then one ``YYYY-MM-DD,<decimal>`` row
per line. Blank lines and ``#`` comments are ignored; a ``# tenor: <label>``
comment carries the tenor label through serialization. Rates are percent
per annum (2.70 means 2.70%).

The synthetic generator's noise stream is a fully specified 64-bit linear
congruential generator, so fixtures are bit-identical on every platform:

    state(k+1) = (6364136223846793005 * state(k) + 1442695040888963407) mod 2^64
    uniform(k) = (state(k+1) >> 11) / 2^53        in [0, 1)
    noise(k)   = amplitude * (2 * uniform(k) - 1)  in [-amplitude, amplitude]

state(0) is the seed reduced mod 2^64. Draws advance year by year
(ascending) and banking day by banking day (ascending) within each year,
one draw per generated fixing, including when the amplitude is zero.
"""

from __future__ import annotations

import datetime
import json
import math
import re
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Mapping

from .errors import DomainError, DuplicateDate, ParseError
from .market_calendar import HolidayCalendar, banking_days, day_offset

CSV_HEADER = "date,rate"
_TENOR_COMMENT = re.compile(r"^#\s*tenor:\s*(.+?)\s*$")
_RATE_FIELD = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

GENERATION_START = (11, 25)  # rates are emitted from Nov 25 through Dec 31

_LCG_MULTIPLIER = 6364136223846793005
_LCG_INCREMENT = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class DailyRateSeries:
    """Date-ordered banking-day fixings, rates in percent per annum."""

    entries: tuple[tuple[date, float], ...]
    tenor_label: str = ""

    def __post_init__(self):
        entries = tuple((d, float(r)) for d, r in self.entries)
        for d, r in entries:
            if not isinstance(d, date) or isinstance(d, datetime.datetime):
                raise DomainError(f"fixing dates must be datetime.date, got {d!r}")
            if not math.isfinite(r):
                raise DomainError(f"rate on {d.isoformat()} is not finite")
        for (d0, _), (d1, _) in zip(entries, entries[1:]):
            if d1 <= d0:
                raise DomainError("fixing dates must be strictly increasing")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_by_date", {d: r for d, r in entries})

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def first_date(self) -> date:
        return self.entries[0][0]

    @property
    def last_date(self) -> date:
        return self.entries[-1][0]

    def covers(self, d: date) -> bool:
        """True when ``d`` lies inside the series' date span."""
        return bool(self.entries) and self.first_date <= d <= self.last_date

    def rate_on(self, d: date) -> float | None:
        return self._by_date.get(d)


def parse_rate_series(text: str, tenor_label: str | None = None) -> DailyRateSeries:
    """Parse delimited rate-series text into a DailyRateSeries.

    Tolerates blank lines and ``#`` comments, rejects malformed rows with
    their line number, sorts by date, then rejects duplicates. An explicit
    ``tenor_label`` overrides any ``# tenor:`` comment in the text.
    """
    rows: list[tuple[date, float]] = []
    seen_header = False
    parsed_tenor = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            match = _TENOR_COMMENT.match(stripped)
            if match:
                parsed_tenor = match.group(1)
            continue
        line = stripped.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.replace(" ", "").lower() != CSV_HEADER:
                raise ParseError(lineno, f"expected header {CSV_HEADER!r}, got {line!r}")
            seen_header = True
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise ParseError(lineno, "expected exactly two comma-separated fields")
        try:
            d = date.fromisoformat(fields[0])
        except ValueError as exc:
            raise ParseError(lineno, f"bad date {fields[0]!r}") from exc
        if not _RATE_FIELD.match(fields[1]):
            raise ParseError(lineno, f"bad rate {fields[1]!r}")
        rows.append((d, float(fields[1])))
    if not seen_header:
        raise ParseError(None, f"missing {CSV_HEADER!r} header")
    rows.sort(key=lambda item: item[0])
    for (d0, _), (d1, _) in zip(rows, rows[1:]):
        if d0 == d1:
            raise DuplicateDate(d0)
    label = tenor_label if tenor_label is not None else parsed_tenor
    return DailyRateSeries(entries=tuple(rows), tenor_label=label)


def serialize_rate_series(series: DailyRateSeries) -> str:
    """Render a series back to the delimited text format.

    Shortest round-trip float formatting, so parse(serialize(s)) == s.
    """
    lines = []
    if series.tenor_label:
        lines.append(f"# tenor: {series.tenor_label}")
    lines.append(CSV_HEADER)
    lines.extend(f"{d.isoformat()},{rate!r}" for d, rate in series.entries)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FixedJump:
    """Plant the same jump every year."""

    value: float

    def jump_for(self, slope: float, intercept: float) -> float:
        return self.value


@dataclass(frozen=True)
class BilinearJump:
    """Plant ``c0 + c1*slope + c2*intercept + c3*slope*intercept``."""

    coefficients: tuple[float, float, float, float]

    def jump_for(self, slope: float, intercept: float) -> float:
        c0, c1, c2, c3 = self.coefficients
        return c0 + c1 * slope + c2 * intercept + c3 * slope * intercept


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a deterministic synthetic rate series.

    ``year_trends`` maps each year to its (slope, intercept) in
    percent/day and percent; the jump rule decides what is added to
    post-event rates; ``seed`` fixes the noise stream exactly.
    """

    year_trends: Mapping[int, tuple[float, float]]
    jump: FixedJump | BilinearJump = FixedJump(0.0)
    noise_amplitude: float = 0.0
    seed: int = 0
    tenor_label: str = "SYN"

    def __post_init__(self):
        object.__setattr__(
            self,
            "year_trends",
            {int(y): (float(a), float(b)) for y, (a, b) in self.year_trends.items()},
        )
        if self.noise_amplitude < 0.0:
            raise DomainError("noise amplitude must be non-negative")


class _Lcg:
    """The documented 64-bit LCG; one uniform in [0, 1) per draw."""

    def __init__(self, seed: int):
        self.state = seed & _LCG_MASK

    def uniform(self) -> float:
        self.state = (_LCG_MULTIPLIER * self.state + _LCG_INCREMENT) & _LCG_MASK
        return (self.state >> 11) / float(1 << 53)


def generate_synthetic_series(
    spec: SyntheticSpec, years: Iterable[int], cal: HolidayCalendar
) -> DailyRateSeries:
    """Emit rates on every banking day of Nov 25 - Dec 31 per year.

    Banking days before December 25 follow the year's linear trend; days
    after it additionally carry the planted jump. Noise is uniform in
    [-amplitude, amplitude] from the documented LCG stream.
    """
    year_list = sorted(set(int(y) for y in years))
    if not year_list:
        raise DomainError("year range is empty")
    missing = [y for y in year_list if y not in spec.year_trends]
    if missing:
        raise DomainError(f"no trend configured for years {missing}")
    rng = _Lcg(spec.seed)
    entries = []
    for year in year_list:
        slope, intercept = spec.year_trends[year]
        jump = spec.jump.jump_for(slope, intercept)
        start = date(year, *GENERATION_START)
        for d in banking_days(start, date(year, 12, 31), cal):
            x = day_offset(d, year)
            noise = spec.noise_amplitude * (2.0 * rng.uniform() - 1.0)
            rate = slope * x + intercept + noise
            if x >= 1:
                rate += jump
            entries.append((d, rate))
    return DailyRateSeries(entries=tuple(entries), tenor_label=spec.tenor_label)


def synthetic_spec_from_json(text: str) -> tuple[SyntheticSpec, list[int]]:
    """Parse a generator spec document; returns the spec and its years.

    Schema:
        {
          "tenor": "SYN-2M",          optional, default "SYN"
          "seed": 1,                  optional, default 0
          "noise": 0.01,              optional, default 0.0
          "jump": {"fixed": 0.25},    or {"coefficients": [c0, c1, c2, c3]}
          "years": {"2004": [slope, intercept], ...}
        }
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(None, "spec document must be a JSON object")
    years_doc = doc.get("years")
    if not isinstance(years_doc, dict) or not years_doc:
        raise ParseError(None, "'years' must be a non-empty object")
    year_trends = {}
    for key, value in years_doc.items():
        try:
            year = int(key)
        except ValueError:
            raise ParseError(None, f"bad year key {key!r}") from None
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or not all(isinstance(v, (int, float)) for v in value)
        ):
            raise ParseError(None, f"year {key}: expected [slope, intercept]")
        year_trends[year] = (float(value[0]), float(value[1]))
    jump_doc = doc.get("jump", {"fixed": 0.0})
    if not isinstance(jump_doc, dict) or len(jump_doc) != 1:
        raise ParseError(None, "'jump' must hold exactly one of 'fixed' or 'coefficients'")
    if "fixed" in jump_doc:
        if not isinstance(jump_doc["fixed"], (int, float)):
            raise ParseError(None, "'jump.fixed' must be a number")
        jump: FixedJump | BilinearJump = FixedJump(float(jump_doc["fixed"]))
    elif "coefficients" in jump_doc:
        coeffs = jump_doc["coefficients"]
        if (
            not isinstance(coeffs, (list, tuple))
            or len(coeffs) != 4
            or not all(isinstance(v, (int, float)) for v in coeffs)
        ):
            raise ParseError(None, "'jump.coefficients' must be four numbers")
        jump = BilinearJump(tuple(float(v) for v in coeffs))
    else:
        raise ParseError(None, "'jump' must hold 'fixed' or 'coefficients'")
    noise = doc.get("noise", 0.0)
    if not isinstance(noise, (int, float)) or noise < 0:
        raise ParseError(None, "'noise' must be a non-negative number")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int):
        raise ParseError(None, "'seed' must be an integer")
    tenor = doc.get("tenor", "SYN")
    if not isinstance(tenor, str):
        raise ParseError(None, "'tenor' must be a string")
    spec = SyntheticSpec(
        year_trends=year_trends,
        jump=jump,
        noise_amplitude=float(noise),
        seed=seed,
        tenor_label=tenor,
    )
    return spec, sorted(year_trends)
