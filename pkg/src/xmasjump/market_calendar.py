"""Banking-day arithmetic and the rate windows around December 25.

Dates are naive ``datetime.date`` values; there is no timezone or intraday
handling. A banking day is a weekday that is not listed as a holiday.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from typing import TYPE_CHECKING, Iterator

from .errors import DomainError, InsufficientData, MissingFixing, ParseError

if TYPE_CHECKING:
    from .data_io import DailyRateSeries

SATURDAY = 5
SUNDAY = 6

# Recurring closures relevant around the turn of the year. Approximates the
# interbank fixing calendar; one-off closures go in a calendar override file.
DEFAULT_RECURRING_HOLIDAYS = frozenset({(12, 25), (12, 26), (1, 1)})

PRE_WINDOW_DAYS = 15
# A 15-banking-day window nominally covers 21 calendar days; other spans are
# legal but flagged.
NOMINAL_PRE_SPAN_DAYS = 21
# Nominally three post-event banking days before year end; other counts are
# flagged, fewer than two is an error.
NOMINAL_POST_COUNT = 3
POST_WINDOW_MIN = 2


@dataclass(frozen=True)
class HolidayCalendar:
    """Weekend days plus holiday entries, recurring or year-specific.

    ``holidays`` holds ``datetime.date`` entries for one-off closures and
    ``(month, day)`` pairs for closures recurring every year. December 25 is
    always enforced as a recurring holiday: the event date is never a
    banking day.
    """

    holidays: frozenset = DEFAULT_RECURRING_HOLIDAYS
    weekend_days: frozenset = frozenset({SATURDAY, SUNDAY})

    def __post_init__(self):
        entries = set(self.holidays)
        for entry in entries:
            if isinstance(entry, date):
                continue
            if isinstance(entry, tuple) and len(entry) == 2:
                month, day = entry
                try:
                    date(2000, month, day)  # leap year, so (2, 29) is legal
                except (TypeError, ValueError):
                    raise DomainError(f"invalid recurring holiday {entry!r}") from None
            else:
                raise DomainError(
                    f"holiday entries must be a date or a (month, day) pair, got {entry!r}"
                )
        for weekday in self.weekend_days:
            if weekday not in range(7):
                raise DomainError(f"weekday numbers run 0..6, got {weekday!r}")
        entries.add((12, 25))
        object.__setattr__(self, "holidays", frozenset(entries))
        object.__setattr__(self, "weekend_days", frozenset(self.weekend_days))
        object.__setattr__(
            self, "_recurring", frozenset(e for e in entries if isinstance(e, tuple))
        )
        object.__setattr__(
            self, "_fixed", frozenset(e for e in entries if isinstance(e, date))
        )

    def is_holiday(self, d: date) -> bool:
        return d in self._fixed or (d.month, d.day) in self._recurring


def calendar_from_lines(text: str) -> HolidayCalendar:
    """Build a calendar from holiday override-file text.

    One entry per line: ``YYYY-MM-DD`` for a one-off closure or ``--MM-DD``
    for a closure recurring every year; ``#`` starts a comment. The file
    replaces the default holiday list (December 25 stays enforced);
    weekends remain Saturday and Sunday.
    """
    entries: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("--"):
                month_text, day_text = line[2:].split("-", 1)
                entry = (int(month_text), int(day_text))
                date(2000, *entry)
            else:
                entry = date.fromisoformat(line)
        except (TypeError, ValueError) as exc:
            raise ParseError(lineno, f"bad calendar entry {line!r}") from exc
        entries.add(entry)
    return HolidayCalendar(holidays=frozenset(entries))


def is_banking_day(d: date, cal: HolidayCalendar) -> bool:
    """True when ``d`` is neither a weekend day nor a holiday."""
    return d.weekday() not in cal.weekend_days and not cal.is_holiday(d)


def banking_days(start: date, end: date, cal: HolidayCalendar) -> Iterator[date]:
    """Banking days from ``start`` through ``end`` inclusive, ascending."""
    d = start
    while d <= end:
        if is_banking_day(d, cal):
            yield d
        d += timedelta(days=1)


def day_offset(d: date, year: int) -> int:
    """Signed whole days from December 25 of ``year`` to ``d``.

    For December dates of the same year this is day-of-month minus 25.
    """
    return (d - date(year, 12, 25)).days


@dataclass(frozen=True)
class WindowSample:
    """Rates observed on banking days on one side of December 25.

    Offsets are whole days from December 25 of ``year``: pre-side offsets
    are all negative, post-side offsets lie in [2, 6] (December 27-31).
    ``warning`` flags a window whose shape deviates from the nominal one.
    """

    year: int
    offsets: tuple[int, ...]
    rates: tuple[float, ...]
    side: str
    warning: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(int(x) for x in self.offsets))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if self.side not in ("pre", "post"):
            raise DomainError(f"side must be 'pre' or 'post', got {self.side!r}")
        if len(self.offsets) != len(self.rates):
            raise DomainError("offsets and rates differ in length")
        if len(self.offsets) < 2:
            raise DomainError("a window needs at least two observations")
        if any(b <= a for a, b in zip(self.offsets, self.offsets[1:])):
            raise DomainError("offsets must be strictly increasing")
        if self.side == "pre" and self.offsets[-1] >= 0:
            raise DomainError("pre-window offsets must all be negative")
        if self.side == "post" and not all(2 <= x <= 6 for x in self.offsets):
            raise DomainError("post-window offsets must lie in [2, 6]")


def pre_window(
    year: int,
    series: "DailyRateSeries",
    cal: HolidayCalendar,
    n: int = PRE_WINDOW_DAYS,
) -> WindowSample:
    """The last ``n`` banking-day fixings strictly before December 25.

    Walks backward from December 24; every banking day inside the series
    coverage must carry a rate (no interpolation). Returns exactly ``n``
    observations or raises: InsufficientData when the series does not
    reach back far enough, MissingFixing when a covered banking day has
    no rate. With the default ``n`` the sample is flagged when its
    calendar span differs from the nominal 21 days.
    """
    if n < 2:
        raise DomainError("pre-window needs at least 2 banking days")
    if len(series) == 0:
        raise InsufficientData(
            f"series is empty; need {n} fixings before Dec 25 {year}"
        )
    picked: list[tuple[int, float]] = []
    d = date(year, 12, 25) - timedelta(days=1)
    while len(picked) < n:
        if d < series.first_date:
            raise InsufficientData(
                f"only {len(picked)} banking-day fixings before Dec 25 {year},"
                f" need {n}"
            )
        if is_banking_day(d, cal):
            rate = series.rate_on(d)
            if rate is None:
                raise MissingFixing(d)
            picked.append((day_offset(d, year), rate))
        d -= timedelta(days=1)
    picked.reverse()
    offsets = tuple(x for x, _ in picked)
    rates = tuple(r for _, r in picked)
    warning = None
    span = -offsets[0]
    if n == PRE_WINDOW_DAYS and span != NOMINAL_PRE_SPAN_DAYS:
        warning = (
            f"pre-window spans {span} calendar days,"
            f" nominal {NOMINAL_PRE_SPAN_DAYS}"
        )
    return WindowSample(year=year, offsets=offsets, rates=rates, side="pre", warning=warning)


def post_window_offsets(year: int, cal: HolidayCalendar) -> tuple[int, ...]:
    """Banking-day offsets in [2, 6] (December 27-31) for ``year``.

    Needs no rate data, so it also serves prediction for years whose
    post-event fixings do not exist yet.
    """
    start = date(year, 12, 27)
    end = date(year, 12, 31)
    return tuple(day_offset(d, year) for d in banking_days(start, end, cal))


def post_window(year: int, series: "DailyRateSeries", cal: HolidayCalendar) -> WindowSample:
    """All banking-day fixings with offsets in [2, 6] after December 25.

    Nominally three observations; any other count is returned with a
    warning. Fewer than two is InsufficientData; a banking day inside the
    series coverage without a rate is MissingFixing.
    """
    event = date(year, 12, 25)
    picked: list[tuple[int, float]] = []
    for x in post_window_offsets(year, cal):
        d = event + timedelta(days=x)
        if not series.covers(d):
            continue
        rate = series.rate_on(d)
        if rate is None:
            raise MissingFixing(d)
        picked.append((x, rate))
    if len(picked) < POST_WINDOW_MIN:
        raise InsufficientData(
            f"{len(picked)} banking-day fixings with offsets 2..6 after"
            f" Dec 25 {year}, need at least {POST_WINDOW_MIN}"
        )
    warning = None
    if len(picked) != NOMINAL_POST_COUNT:
        warning = (
            f"post-window has {len(picked)} observations,"
            f" nominal {NOMINAL_POST_COUNT}"
        )
    return WindowSample(
        year=year,
        offsets=tuple(x for x, _ in picked),
        rates=tuple(r for _, r in picked),
        side="post",
        warning=warning,
    )
