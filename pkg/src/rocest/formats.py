"""On-disk formats: curve CSV, sample TSV, distribution/report JSON.

All floating-point output uses 17 significant digits so emitted values
round-trip exactly and golden-file tests can compare verbatim.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .core import DomainError, MonotoneCurve
from .estimators import LabeledSample, parse_sample_lines


def format_float(x: float) -> str:
    return format(x, ".17g")


def curve_to_csv(curve: MonotoneCurve) -> str:
    lines = ["p,q"]
    lines += [
        f"{format_float(p)},{format_float(q)}" for p, q in curve.vertices
    ]
    return "\n".join(lines) + "\n"


def curve_from_csv(text: str) -> MonotoneCurve:
    """Parses a curve CSV, reporting the offending row on failure."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != "p,q":
        raise DomainError("curve CSV must start with the header 'p,q'")
    verts: list[tuple[float, float]] = []
    for row, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise DomainError(f"row {row}: expected 'p,q', got {line!r}")
        try:
            p, q = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(f"row {row}: cannot parse {line!r}") from None
        if verts and (p < verts[-1][0] or q < verts[-1][1]):
            raise DomainError(f"row {row}: vertices must be nondecreasing")
        verts.append((p, q))
    try:
        return MonotoneCurve(tuple(verts))
    except DomainError as exc:
        raise DomainError(f"invalid curve CSV: {exc}") from None


def read_curve(path: str | Path) -> MonotoneCurve:
    return curve_from_csv(Path(path).read_text())


def write_curve(path: str | Path, curve: MonotoneCurve) -> None:
    Path(path).write_text(curve_to_csv(curve))


def read_samples(path: str | Path) -> list[LabeledSample]:
    return parse_sample_lines(Path(path).read_text().splitlines())


def write_json(path: str | Path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def reps_csv(rows: Iterable[tuple[int, str, float]]) -> str:
    lines = ["rep,estimator,levy"]
    lines += [
        f"{rep},{name},{format_float(levy)}" for rep, name, levy in rows
    ]
    return "\n".join(lines) + "\n"
