"""Record persistence (JSONL/CSV), run manifests and standalone SVG charts.

Serialization is byte-deterministic: keys follow dataclass field order,
floats carry 17 significant digits, rows are written with bare newlines.
"""

from __future__ import annotations

import csv
import dataclasses
import io as _io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParameterError


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _encode_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode_value(v) for v in value) + "]"
    raise ParameterError(f"unsupported record field type {type(value)!r}")


def record_fields(record) -> list[str]:
    if not dataclasses.is_dataclass(record):
        raise ParameterError("records must be dataclasses")
    return [f.name for f in dataclasses.fields(record)]


def _record_items(record) -> list[tuple[str, object]]:
    return [(f, getattr(record, f)) for f in record_fields(record)]


def emit_jsonl(records: Sequence, path: str | Path) -> int:
    """One JSON object per record, keys in dataclass field order."""
    lines = []
    for rec in records:
        body = ", ".join(
            f"{json.dumps(k)}: {_encode_value(v)}" for k, v in _record_items(rec)
        )
        lines.append("{" + body + "}")
    data = ("\n".join(lines) + "\n") if lines else ""
    Path(path).write_bytes(data.encode())
    return len(data.encode())


def emit_csv(records: Sequence, path: str | Path, fields: list[str] | None = None) -> int:
    """CSV with a header row; sequences are embedded as JSON strings."""
    if fields is None:
        if not records:
            raise ParameterError("cannot infer a CSV header from zero records")
        fields = record_fields(records[0])
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        row = []
        for _, v in _record_items(rec):
            if isinstance(v, (list, tuple)):
                row.append("[" + ", ".join(_encode_value(u) for u in v) + "]")
            elif isinstance(v, float):
                row.append(_format_float(v))
            elif isinstance(v, bool):
                row.append("true" if v else "false")
            else:
                row.append(str(v))
        writer.writerow(row)
    data = buf.getvalue()
    Path(path).write_bytes(data.encode())
    return len(data.encode())


def emit_records(records: Sequence, fmt: str, path: str | Path,
                 fields: list[str] | None = None) -> int:
    """Write records as ``fmt`` in {jsonl, csv}; returns the byte count."""
    if fmt == "jsonl":
        return emit_jsonl(records, path)
    if fmt == "csv":
        return emit_csv(records, path, fields)
    raise ParameterError(f"unknown output format {fmt!r}")


def _coerce(value, target_type):
    if target_type is float:
        return float(value)
    if target_type is int:
        return int(value)
    if target_type is bool:
        return value if isinstance(value, bool) else value == "true"
    if target_type is str:
        return str(value)
    return value


def parse_records(path: str | Path, record_type) -> list:
    """Inverse of emit_records for one record dataclass (format inferred)."""
    text = Path(path).read_text()
    fields = {f.name: f for f in dataclasses.fields(record_type)}
    hints = {f.name: f.type for f in dataclasses.fields(record_type)}
    records = []
    if str(path).endswith(".jsonl") or text.lstrip().startswith("{"):
        for line in text.splitlines():
            if not line.strip():
                continue
            raw = json.loads(line)
            kwargs = {}
            for name, value in raw.items():
                hint = hints.get(name, "")
                if isinstance(value, list):
                    kwargs[name] = tuple(value)
                elif "int" in str(hint):
                    kwargs[name] = int(value)
                elif "float" in str(hint):
                    kwargs[name] = float(value)
                else:
                    kwargs[name] = value
            records.append(record_type(**kwargs))
    else:
        reader = csv.reader(_io.StringIO(text))
        header = next(reader)
        for row in reader:
            kwargs = {}
            for name, cell in zip(header, row):
                hint = str(hints.get(name, ""))
                if cell.startswith("["):
                    kwargs[name] = tuple(json.loads(cell))
                elif "bool" in hint:
                    kwargs[name] = cell == "true"
                elif "int" in hint:
                    kwargs[name] = int(cell)
                elif "float" in hint:
                    kwargs[name] = float(cell)
                else:
                    kwargs[name] = cell
            records.append(record_type(**kwargs))
        del fields
    return records


def write_manifest(path: str | Path, config: dict) -> None:
    """Flat key = value manifest carrying the full run configuration."""
    import numpy

    from . import __version__

    lines = [
        "# dgbo run manifest",
        f"dgbo_version = {__version__}",
        f"python_version = {sys.version.split()[0]}",
        f"numpy_version = {numpy.__version__}",
    ]
    for key in sorted(config):
        value = config[key]
        if isinstance(value, float):
            value = _format_float(value)
        lines.append(f"{key} = {value}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_config(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` file with # comments."""
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"malformed config line: {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def svg_chart(
    series: dict[str, list[tuple[float, float]]],
    path: str | Path,
    title: str,
    x_label: str,
    y_label: str,
    loglog: bool = False,
) -> None:
    """Standalone SVG line/scatter chart; no external plotting dependency."""
    width, height, margin = 640, 420, 56
    points = [p for pts in series.values() for p in pts]
    if loglog:
        points = [(math.log2(max(x, 1e-300)), math.log2(max(y, 1e-300)))
                  for x, y in points if x > 0 and y > 0]
    if not points:
        points = [(0.0, 0.0), (1.0, 1.0)]
    xs, ys = zip(*points)
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def sx(x):
        return margin + (x - x_lo) / x_span * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{x_label}'
        f'{" (log2)" if loglog else ""}</text>',
        f'<text x="16" y="{height / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {height / 2:.0f})">{y_label}'
        f'{" (log2)" if loglog else ""}</text>',
        f'<text x="{margin}" y="{height - margin + 16}" font-family="sans-serif" '
        f'font-size="10">{x_lo:.3g}</text>',
        f'<text x="{width - margin:.0f}" y="{height - margin + 16}" '
        f'text-anchor="end" font-family="sans-serif" font-size="10">{x_hi:.3g}</text>',
        f'<text x="{margin - 4}" y="{height - margin}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_lo:.3g}</text>',
        f'<text x="{margin - 4}" y="{margin + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_hi:.3g}</text>',
    ]
    for idx, (name, pts) in enumerate(series.items()):
        color = palette[idx % len(palette)]
        if loglog:
            pts = [(math.log2(x), math.log2(y)) for x, y in pts if x > 0 and y > 0]
        if not pts:
            continue
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
        for x, y in pts:
            parts.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}"/>'
            )
        parts.append(
            f'<text x="{width - margin + 4}" y="{margin + 14 * idx + 10}" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def ensure_directory(path: str | Path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def records_sorted(records: Iterable, key_fields: Sequence[str]) -> list:
    return sorted(records, key=lambda rec: tuple(getattr(rec, f) for f in key_fields))
