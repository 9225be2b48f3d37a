"""Static SVG line charts for scenario output.

Hand-rolled rendering with fixed layout and fixed decimal formatting, so
chart bytes are deterministic for identical inputs. Three chart kinds:
the coal generation path, grid intensity with the electrification rate on
a second axis, and per-appliance parity intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .parity import ApplianceSpec, service_intensity_electric, service_intensity_fossil
from .pipeline import ScenarioRun, annual_economy_rate, grid_trajectory

PALETTE = ("#1f6fb4", "#d95f02", "#1b9e77", "#7570b3", "#e7298a", "#666666")
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 58.0, 58.0, 34.0, 40.0


@dataclass
class Series:
    label: str
    points: tuple[tuple[float, float], ...]
    axis: str = "left"  # left or right
    dash: str = ""  # SVG stroke-dasharray, empty for solid


@dataclass
class _Scale:
    lo: float
    hi: float
    pix_lo: float
    pix_hi: float

    def __call__(self, v: float) -> float:
        span = self.hi - self.lo
        frac = 0.5 if span == 0 else (v - self.lo) / span
        return self.pix_lo + frac * (self.pix_hi - self.pix_lo)


def _bounds(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        return lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    lo = 0.0 if 0 <= lo <= pad * 4 else lo - pad
    return lo, hi + pad


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


@dataclass
class LineChart:
    title: str
    ylabel: str
    y2label: str = ""
    width: float = 640.0
    height: float = 400.0
    series: list[Series] = field(default_factory=list)

    def add(self, s: Series) -> None:
        self.series.append(s)

    def render(self) -> str:
        left = [s for s in self.series if s.axis == "left"]
        right = [s for s in self.series if s.axis == "right"]
        xs = [x for s in self.series for x, _ in s.points]
        x_lo, x_hi = min(xs), max(xs)
        sx = _Scale(x_lo, x_hi, _MARGIN_L, self.width - _MARGIN_R)
        y_lo, y_hi = _bounds([y for s in left for _, y in s.points])
        sy = _Scale(y_lo, y_hi, self.height - _MARGIN_B, _MARGIN_T)
        sy2 = None
        if right:
            y2_lo, y2_hi = _bounds([y for s in right for _, y in s.points])
            sy2 = _Scale(y2_lo, y2_hi, self.height - _MARGIN_B, _MARGIN_T)

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(self.width)}" '
            f'height="{_num(self.height)}" viewBox="0 0 {_num(self.width)} {_num(self.height)}">',
            f'<rect width="{_num(self.width)}" height="{_num(self.height)}" fill="white"/>',
            f'<text x="{_num(self.width / 2)}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{self.title}</text>',
        ]
        axis_y = self.height - _MARGIN_B
        out.append(
            f'<line x1="{_num(_MARGIN_L)}" y1="{_num(axis_y)}" x2="{_num(self.width - _MARGIN_R)}" '
            f'y2="{_num(axis_y)}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<line x1="{_num(_MARGIN_L)}" y1="{_num(_MARGIN_T)}" x2="{_num(_MARGIN_L)}" '
            f'y2="{_num(axis_y)}" stroke="black" stroke-width="1"/>'
        )
        for tx in _ticks(x_lo, x_hi):
            px = sx(tx)
            out.append(
                f'<text x="{_num(px)}" y="{_num(axis_y + 16)}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{_num(tx)}</text>'
            )
        for ty in _ticks(y_lo, y_hi):
            py = sy(ty)
            out.append(
                f'<text x="{_num(_MARGIN_L - 6)}" y="{_num(py + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{_num(ty)}</text>'
            )
            out.append(
                f'<line x1="{_num(_MARGIN_L)}" y1="{_num(py)}" x2="{_num(self.width - _MARGIN_R)}" '
                f'y2="{_num(py)}" stroke="#dddddd" stroke-width="0.5"/>'
            )
        if sy2 is not None:
            out.append(
                f'<line x1="{_num(self.width - _MARGIN_R)}" y1="{_num(_MARGIN_T)}" '
                f'x2="{_num(self.width - _MARGIN_R)}" y2="{_num(axis_y)}" stroke="black" stroke-width="1"/>'
            )
            for ty in _ticks(sy2.lo, sy2.hi):
                py = sy2(ty)
                out.append(
                    f'<text x="{_num(self.width - _MARGIN_R + 6)}" y="{_num(py + 4)}" '
                    f'text-anchor="start" font-family="sans-serif" font-size="11">{_num(ty)}</text>'
                )
        out.append(
            f'<text x="14" y="{_num(self.height / 2)}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12" transform="rotate(-90 14 {_num(self.height / 2)})">{self.ylabel}</text>'
        )
        if self.y2label:
            x2 = self.width - 12
            out.append(
                f'<text x="{_num(x2)}" y="{_num(self.height / 2)}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="12" '
                f'transform="rotate(90 {_num(x2)} {_num(self.height / 2)})">{self.y2label}</text>'
            )

        for k, s in enumerate(self.series):
            color = PALETTE[k % len(PALETTE)]
            scale_y = sy2 if s.axis == "right" and sy2 is not None else sy
            pts = " ".join(f"{_num(sx(x))},{_num(scale_y(y))}" for x, y in s.points)
            dash = f' stroke-dasharray="{s.dash}"' if s.dash else ""
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>'
            )
            ly = _MARGIN_T + 14 * k + 8
            lx = _MARGIN_L + 10
            out.append(
                f'<line x1="{_num(lx)}" y1="{_num(ly)}" x2="{_num(lx + 18)}" y2="{_num(ly)}" '
                f'stroke="{color}" stroke-width="1.8"{dash}/>'
            )
            out.append(
                f'<text x="{_num(lx + 24)}" y="{_num(ly + 4)}" font-family="sans-serif" '
                f'font-size="11">{s.label}</text>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"


def plot_coal_path(run: ScenarioRun) -> str:
    chart = LineChart(title=f"Coal power, {run.name}", ylabel="TWh/yr")
    gen = run.plan.generation.generation["coal"]
    chart.add(Series("generation", tuple((float(y), v) for y, v in gen.items())))
    ceiling = run.spec.coal_capacity.combine(
        run.spec.coal_cf_cap, lambda gw, cf: gw * cf * 8.76
    )
    chart.add(Series("capacity x cf cap", tuple(
        (float(y), v) for y, v in ceiling.items()
    ), dash="4 3"))
    return chart.render()


def plot_intensity_electrification(run: ScenarioRun) -> str:
    chart = LineChart(
        title=f"Grid intensity and electrification, {run.name}",
        ylabel="gCO2/kWh",
        y2label="electrification %",
    )
    chart.add(Series("grid intensity", tuple(
        (float(y), v) for y, v in run.ledger.grid_intensity.items()
    )))
    years = run.ledger.grid_intensity.years
    chart.add(Series("economy electrification", tuple(
        (float(y), annual_economy_rate(run, y)) for y in years
    ), axis="right"))
    return chart.render()


def plot_parity(runs: dict[str, ScenarioRun], app: ApplianceSpec) -> str:
    chart = LineChart(
        title=f"Service emission intensity, {app.name}",
        ylabel=f"gCO2 per {app.service_unit}",
    )
    fossil = service_intensity_fossil(app)
    for name in sorted(runs):
        traj = grid_trajectory(runs[name])
        chart.add(Series(name, tuple(
            (float(y), service_intensity_electric(app, g)) for y, g in traj
        )))
    span = grid_trajectory(runs[sorted(runs)[0]])
    chart.add(Series("fossil incumbent", (
        (float(span[0][0]), fossil), (float(span[-1][0]), fossil),
    ), dash="6 3"))
    return chart.render()
