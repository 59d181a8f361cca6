"""Deterministic text renderers: numbers, CSV tables, JSON and self-contained SVG."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from xml.sax.saxutils import escape

import numpy as np


def fmt(x, precision: int = 10) -> str:
    """Shortest round-trip repr, cut to ``precision`` significant digits."""
    if x is None:
        return "nan"
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    short = repr(x)
    mantissa = short.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
    if len(mantissa) <= precision:
        return short
    return format(x, f".{precision}g")


def csv_text(columns, rows, comments=(), precision: int = 10) -> str:
    """Comma-separated, ``#`` comment header, column-name row, LF endings."""
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v, precision) for v in row])
    return buf.getvalue()


def _cell(v, precision):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return fmt(v, precision)


def jsonable(obj, precision: int = 10):
    """Round floats to ``precision`` digits; non-finite values become strings."""
    if isinstance(obj, dict):
        return {k: jsonable(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v, precision) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    x = float(obj)
    if not math.isfinite(x):
        return fmt(x)
    return float(fmt(x, precision))


def json_text(obj, precision: int = 10) -> str:
    return json.dumps(jsonable(obj, precision), indent=2, ensure_ascii=False) + "\n"


def write_output(text: str, path: str | None):
    """Write atomically (temp file + rename), or to stdout when no path is given."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
WIDTH, HEIGHT = 800, 500
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 170, 40, 60


def _ticks(lo, hi, log):
    if log:
        return [10.0 ** k for k in range(math.floor(lo), math.ceil(hi) + 1)
                if lo - 1e-9 <= k <= hi + 1e-9]
    return list(np.linspace(lo, hi, 6))


def _tick_label(v, log):
    if log:
        return f"1e{int(round(math.log10(v)))}"
    return f"{v:.4g}"


def line_chart(series, title="", xlabel="x", ylabel="y", logx=False, logy=False) -> str:
    """SVG line chart with one polyline per series.

    ``series`` is a list of (label, xs, ys).  Non-finite points, and
    non-positive ones on log axes, are dropped from their polyline.
    """
    cleaned = []
    for label, xs, ys in series:
        xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
        ok = np.isfinite(xs) & np.isfinite(ys)
        if logx:
            ok &= xs > 0
        if logy:
            ok &= ys > 0
        px = np.log10(xs[ok]) if logx else xs[ok]
        py = np.log10(ys[ok]) if logy else ys[ok]
        cleaned.append((label, px, py))
    allx = np.concatenate([c[1] for c in cleaned]) if cleaned else np.array([])
    ally = np.concatenate([c[2] for c in cleaned]) if cleaned else np.array([])
    x0, x1 = (allx.min(), allx.max()) if allx.size else (0.0, 1.0)
    y0, y1 = (ally.min(), ally.max()) if ally.size else (0.0, 1.0)
    if logx:
        x0, x1 = math.floor(x0), math.ceil(x1)
    if logy:
        y0, y1 = math.floor(y0), math.ceil(y1)
    if x1 <= x0:
        x1 = x0 + 1.0
    if y1 <= y0:
        y1 = y0 + 1.0
    pw, ph = WIDTH - _LEFT - _RIGHT, HEIGHT - _TOP - _BOTTOM

    def sx(v):
        return _LEFT + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return _TOP + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1, logx):
        v = math.log10(t) if logx else t
        out.append(f'<line x1="{sx(v):.2f}" y1="{_TOP + ph}" x2="{sx(v):.2f}" y2="{_TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(v):.2f}" y="{_TOP + ph + 18}" text-anchor="middle">{_tick_label(t, logx)}</text>')
    for t in _ticks(y0, y1, logy):
        v = math.log10(t) if logy else t
        out.append(f'<line x1="{_LEFT - 5}" y1="{sy(v):.2f}" x2="{_LEFT}" y2="{sy(v):.2f}" stroke="black"/>')
        out.append(f'<text x="{_LEFT - 8}" y="{sy(v) + 4:.2f}" text-anchor="end">{_tick_label(t, logy)}</text>')
    out.append(f'<text x="{_LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{_TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {_TOP + ph / 2:.1f})">{escape(ylabel)}</text>')
    for i, (label, px, py) in enumerate(cleaned):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(px, py))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = _TOP + 10 + 18 * i
        lx = WIDTH - _RIGHT + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
