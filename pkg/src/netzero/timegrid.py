"""Five-year planning grid and node-indexed series.

All per-period quantities in the package (capacity, generation, shares,
prices, emissions) live on a common grid of calendar years, by default
2020..2060 in 5-year steps.  A NodeSeries stores (year, value) pairs on
that grid; values between nodes are obtained by linear interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import DomainError, EmptySeries, MissingYear, ValidationError

HOURS_PER_YEAR = 8760


@dataclass(frozen=True)
class TimeGrid:
    """Calendar years start..end inclusive, spaced by step."""

    start_year: int = 2020
    end_year: int = 2060
    step: int = 5
    hours_per_year: int = HOURS_PER_YEAR

    def __post_init__(self) -> None:
        if self.start_year >= self.end_year:
            raise DomainError("grid start_year must precede end_year")
        if (self.end_year - self.start_year) % self.step != 0:
            raise DomainError("grid span must be divisible by step")

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(range(self.start_year, self.end_year + 1, self.step))

    @property
    def node_count(self) -> int:
        return (self.end_year - self.start_year) // self.step + 1

    def is_node(self, year: int) -> bool:
        return (
            self.start_year <= year <= self.end_year
            and (year - self.start_year) % self.step == 0
        )

    def index(self, year: int) -> int:
        if not self.is_node(year):
            raise MissingYear(f"{year} is not a node of the {self.step}-year grid")
        return (year - self.start_year) // self.step


DEFAULT_GRID = TimeGrid()


class NodeSeries:
    """Immutable ordered (year, value) pairs with linear interpolation.

    Construction enforces strictly increasing years; grid alignment and
    interior completeness are checked by scenario validation so that
    malformed specs can be reported rather than rejected mid-parse.
    """

    __slots__ = ("_years", "_values")

    def __init__(self, points: Iterable[tuple[int, float]]):
        pts = [(int(y), float(v)) for y, v in points]
        if not pts:
            raise EmptySeries("NodeSeries needs at least one (year, value) pair")
        years = [y for y, _ in pts]
        if any(b <= a for a, b in zip(years, years[1:])):
            raise ValidationError("years", "series years must be strictly increasing")
        self._years = tuple(years)
        self._values = tuple(v for _, v in pts)

    @classmethod
    def from_dict(cls, mapping: Mapping[int, float]) -> "NodeSeries":
        return cls(sorted((int(y), float(v)) for y, v in mapping.items()))

    @property
    def years(self) -> tuple[int, ...]:
        return self._years

    @property
    def values(self) -> tuple[float, ...]:
        return self._values

    @property
    def first_year(self) -> int:
        return self._years[0]

    @property
    def last_year(self) -> int:
        return self._years[-1]

    def items(self) -> Iterator[tuple[int, float]]:
        return iter(zip(self._years, self._values))

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self._years, self._values))

    def __len__(self) -> int:
        return len(self._years)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NodeSeries):
            return NotImplemented
        return self._years == other._years and self._values == other._values

    def __hash__(self) -> int:
        return hash((self._years, self._values))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{y}: {v:g}" for y, v in self.items())
        return f"NodeSeries({{{pairs}}})"

    def has_year(self, year: int) -> bool:
        return year in self._years

    def value_at(self, year: int) -> float:
        """Exact node lookup; no interpolation."""
        try:
            return self._values[self._years.index(year)]
        except ValueError:
            raise MissingYear(f"year {year} not a node of this series") from None

    def interp(self, year: float) -> float:
        """Piecewise-linear value at any year inside the series span."""
        if year < self._years[0] or year > self._years[-1]:
            raise DomainError(
                f"year {year} outside series span {self._years[0]}..{self._years[-1]}"
            )
        ys = self._years
        for i in range(len(ys) - 1):
            if ys[i] <= year <= ys[i + 1]:
                a, b = ys[i], ys[i + 1]
                va, vb = self._values[i], self._values[i + 1]
                if year == a:
                    return va
                return va + (vb - va) * (year - a) / (b - a)
        return self._values[-1]

    def map(self, fn: Callable[[float], float]) -> "NodeSeries":
        return NodeSeries((y, fn(v)) for y, v in self.items())

    def combine(self, other: "NodeSeries", fn: Callable[[float, float], float]) -> "NodeSeries":
        """Pointwise combination over the common years of both series."""
        common = [y for y in self._years if other.has_year(y)]
        if not common:
            raise EmptySeries("series have no common years")
        return NodeSeries((y, fn(self.value_at(y), other.value_at(y))) for y in common)

    def restrict(self, first: int, last: int) -> "NodeSeries":
        pts = [(y, v) for y, v in self.items() if first <= y <= last]
        if not pts:
            raise EmptySeries(f"no nodes in {first}..{last}")
        return NodeSeries(pts)

    def off_grid_years(self, grid: TimeGrid = DEFAULT_GRID) -> tuple[int, ...]:
        return tuple(y for y in self._years if not grid.is_node(y))

    def missing_interior(self, grid: TimeGrid = DEFAULT_GRID) -> tuple[int, ...]:
        """Grid nodes between first and last entry that carry no value."""
        expected = [y for y in grid.years if self._years[0] <= y <= self._years[-1]]
        return tuple(y for y in expected if y not in self._years)


def interpolate_annual(series: NodeSeries) -> tuple[tuple[int, float], ...]:
    """Piecewise-linear values for every calendar year between first and last node."""
    if len(series) < 2:
        raise EmptySeries("annual interpolation needs at least 2 nodes")
    out = []
    for year in range(series.first_year, series.last_year + 1):
        out.append((year, series.interp(year)))
    return tuple(out)
