"""Deterministic report writers: CSV, JSON, and a minimal SVG ROC plot.

All writers produce byte-identical output for identical inputs: floats
are rendered with repr (shortest round-trip form), JSON keys are sorted,
and the SVG is assembled from fixed-format strings rather than a plotting
library.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path
from typing import Iterable


def write_csv(path: str | Path, header: list[str], rows: Iterable[Iterable]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_json(path: str | Path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def roc_svg(points: list[tuple[float, float]], title: str = "ROC") -> str:
    """A small standalone SVG: unit box, chance diagonal, ROC polyline."""
    size, margin = 360, 40
    span = size - 2 * margin

    def sx(v: float) -> str:
        return f"{margin + v * span:.2f}"

    def sy(v: float) -> str:
        return f"{size - margin - v * span:.2f}"

    poly = " ".join(f"{sx(fpr)},{sy(tpr)}" for fpr, tpr in points)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="{margin}" y="{margin}" width="{span}" height="{span}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        f'<line x1="{sx(0.0)}" y1="{sy(0.0)}" x2="{sx(1.0)}" y2="{sy(1.0)}" '
        'stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>',
        f'<polyline points="{poly}" fill="none" stroke="#1f5fa6" stroke-width="2"/>',
        f'<text x="{size / 2:.0f}" y="{margin - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<text x="{size / 2:.0f}" y="{size - 8}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12">false positive rate</text>',
        f'<text x="12" y="{size / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 12 {size / 2:.0f})">true positive rate</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def write_roc_outputs(
    out_dir: str | Path, stem: str, points: list[tuple[float, float]], title: str
) -> list[Path]:
    out_dir = Path(out_dir)
    csv_path = out_dir / f"{stem}.csv"
    svg_path = out_dir / f"{stem}.svg"
    write_csv(csv_path, ["fpr", "tpr"], [[repr(f), repr(t)] for f, t in points])
    svg_path.write_text(roc_svg(points, title), encoding="utf-8")
    return [csv_path, svg_path]
