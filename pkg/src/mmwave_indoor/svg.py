"""Static SVG line charts of sweep results, written without a plotting library."""

from __future__ import annotations

import enum
import math
from pathlib import Path
from xml.sax.saxutils import escape

from .metrics import SweepResult, tradeoff_curve

WIDTH, HEIGHT = 760, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 200, 40, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


class PlotMode(enum.Enum):
    COVERAGE_VS_DS = "coverage-vs-ds"
    ASE_VS_DS = "ase-vs-ds"
    TRADEOFF = "tradeoff"

    @classmethod
    def parse(cls, text) -> "PlotMode":
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown plot mode {text!r} (expected one of {names})") from None


def _fmt(v):
    return f"{v:.2f}"


def _nice_ticks(lo, hi, count=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9)
    ticks = []
    k = first
    while k * step <= hi + 1e-9 * step:
        ticks.append(round(k * step, 12))
        k += 1
    return ticks


class _Axis:
    def __init__(self, lo, hi, log, pixel_lo, pixel_hi):
        if log:
            lo, hi = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
            if hi == lo:
                hi = lo + 1
        elif hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        self.lo, self.hi, self.log = lo, hi, log
        self.p0, self.p1 = pixel_lo, pixel_hi

    def __call__(self, v):
        t = math.log10(v) if self.log else v
        return self.p0 + (t - self.lo) / (self.hi - self.lo) * (self.p1 - self.p0)

    def ticks(self):
        if self.log:
            return [(10.0 ** e, f"1e{e}") for e in range(int(self.lo), int(self.hi) + 1)]
        return [(t, f"{t:g}") for t in _nice_ticks(self.lo, self.hi)]


def _series(result: SweepResult, mode: PlotMode, threshold_db):
    """List of (label, [(x, y), ...]) for the requested chart."""
    series = []
    families = result.families()
    if mode is PlotMode.TRADEOFF:
        for scenario, association in families:
            pts = tradeoff_curve(result, threshold_db, scenario, association)
            xy = [(p.ase_bps_hz_m2, p.coverage) for p in pts if p.ase_bps_hz_m2 > 0.0]
            series.append((f"{scenario}, {association}", xy))
        return series
    for scenario, association in families:
        fam = result.select(threshold_db=threshold_db, scenario=scenario, association=association)
        for theta in fam.values("theta_bw_deg"):
            rows = fam.select(theta_bw_deg=theta).rows
            if mode is PlotMode.COVERAGE_VS_DS:
                xy = [(r.d_s_m, r.coverage) for r in rows]
            else:
                xy = [(r.d_s_m, r.ase_bps_hz_m2) for r in rows if r.ase_bps_hz_m2 > 0.0]
            label = f"{theta:g} deg" if len(families) == 1 else f"{theta:g} deg, {scenario}, {association}"
            series.append((label, xy))
    return series


def render_svg(result: SweepResult, mode, path, threshold_db=None, scenario=None, association=None):
    """Write a standalone SVG chart of ``result``.

    Coverage and ASE against inter-site distance get one line per beamwidth;
    the trade-off chart gets one line per scenario/association pair, ASE on a
    log x axis and peak coverage on y. ``threshold_db`` defaults to the lowest
    threshold in the result.
    """
    mode = PlotMode.parse(mode)
    chosen = result.select(scenario=scenario, association=association)
    if not len(chosen):
        raise ValueError("nothing to plot: the selection is empty")
    if threshold_db is None:
        threshold_db = chosen.values("threshold_db")[0]
    chosen = chosen.select(threshold_db=threshold_db)
    if not len(chosen):
        raise ValueError(f"nothing to plot at threshold {threshold_db:g} dB")
    series = [(label, xy) for label, xy in _series(chosen, mode, threshold_db) if xy]
    if not series:
        raise ValueError("nothing to plot: no positive values for a log axis")

    xs = [x for _, xy in series for x, _ in xy]
    ys = [y for _, xy in series for _, y in xy]
    if mode is PlotMode.TRADEOFF:
        x_axis = _Axis(min(xs), max(xs), True, LEFT, WIDTH - RIGHT)
        y_axis = _Axis(0.0, 1.0, False, HEIGHT - BOTTOM, TOP)
        x_label, y_label = "ASE (bit/s/Hz/m²)", "Peak coverage P[SINR > T]"
    elif mode is PlotMode.COVERAGE_VS_DS:
        x_axis = _Axis(min(xs), max(xs), False, LEFT, WIDTH - RIGHT)
        y_axis = _Axis(0.0, 1.0, False, HEIGHT - BOTTOM, TOP)
        x_label, y_label = "Inter-site distance d_S (m)", "Coverage P[SINR > T]"
    else:
        x_axis = _Axis(min(xs), max(xs), False, LEFT, WIDTH - RIGHT)
        y_axis = _Axis(min(ys), max(ys), True, HEIGHT - BOTTOM, TOP)
        x_label, y_label = "Inter-site distance d_S (m)", "ASE (bit/s/Hz/m²)"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="14">'
        f'{escape(mode.value)}, T = {threshold_db:g} dB</text>',
    ]
    x0, x1, y0, y1 = LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP
    out.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for value, text in x_axis.ticks():
        px = x_axis(value)
        out.append(f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(px)}" y="{y0 + 18}" text-anchor="middle">{escape(text)}</text>')
    for value, text in y_axis.ticks():
        py = y_axis(value)
        out.append(f'<line x1="{x0 - 5}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{_fmt(py + 4)}" text-anchor="end">{escape(text)}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.0f}" y="{HEIGHT - 18}" text-anchor="middle">{escape(x_label)}</text>')
    out.append(f'<text x="18" y="{(y0 + y1) / 2:.0f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {(y0 + y1) / 2:.0f})">{escape(y_label)}</text>')

    for k, (label, xy) in enumerate(series):
        colour = PALETTE[k % len(PALETTE)]
        points = " ".join(f"{_fmt(x_axis(x))},{_fmt(y_axis(y))}" for x, y in xy)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{points}"/>')
        ly = TOP + 10 + 18 * k
        out.append(f'<line x1="{x1 + 15}" y1="{ly}" x2="{x1 + 40}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{x1 + 46}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")

    path = Path(path)
    try:
        path.write_text("\n".join(out) + "\n", encoding="utf-8")
    except OSError as err:
        raise OSError(f"cannot write {path}: {err.strerror or err}") from err
