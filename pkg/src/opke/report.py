"""Convergence reports: comma-delimited rows under a ``#`` metadata header."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "ConvergenceRow",
    "ConvergenceReport",
    "fmt",
    "spec_digest",
    "read_report",
    "recompute_abs_error",
]

COLUMNS = ("case", "n", "value_re", "value_im", "limit_re", "limit_im", "abs_error")


def fmt(v):
    """Twelve significant digits in scientific notation."""
    v = float(v)
    return f"{v + 0.0:.11e}"


def _rounded(z):
    return complex(float(fmt(z.real)), float(fmt(z.imag)))


def spec_digest(spec):
    h = hashlib.sha256()
    h.update(json.dumps([spec.family, list(spec.params), list(spec.support)]).encode())
    if spec.grid is not None:
        h.update(spec.grid.tobytes())
        h.update(spec.values.tobytes())
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class ConvergenceRow:
    case: str
    n: int
    value: complex
    limit: complex

    @property
    def abs_error(self):
        # computed from the printed columns so that a re-read file reproduces it
        return abs(_rounded(self.value) - _rounded(self.limit))

    def cells(self):
        v, lim = _rounded(self.value), _rounded(self.limit)
        return [
            self.case,
            str(self.n),
            fmt(v.real),
            fmt(v.imag),
            fmt(lim.real),
            fmt(lim.imag),
            fmt(self.abs_error),
        ]


@dataclass
class ConvergenceReport:
    kind: str
    metadata: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    complete: bool = True

    def sorted_rows(self):
        return sorted(self.rows, key=lambda r: (r.n, r.case))

    def to_text(self):
        lines = [f"# opke convergence report: {self.kind}"]
        for key, value in self.metadata.items():
            lines.append(f"# {key}={value}")
        lines.append(f"# complete={'true' if self.complete else 'false'}")
        lines.append(",".join(COLUMNS))
        lines.extend(",".join(r.cells()) for r in self.sorted_rows())
        return "\n".join(lines) + "\n"

    def write(self, path):
        Path(path).write_text(self.to_text())

    def summary(self):
        """Final error and error ratio across successive n, per case."""
        out = []
        cases = sorted({r.case for r in self.rows})
        for case in cases:
            rows = [r for r in self.sorted_rows() if r.case == case]
            errs = [r.abs_error for r in rows]
            ratios = [
                f"{e0 / e1:.3g}" if e1 > 0 else "inf" for e0, e1 in zip(errs, errs[1:])
            ]
            out.append(
                f"{case}: final n={rows[-1].n} abs_error={fmt(errs[-1])}"
                + (f" ratios={','.join(ratios)}" if ratios else "")
            )
        return "\n".join(out)


def read_report(path):
    """Parse a report file into ``(metadata, rows)``; rows are dicts of strings."""
    meta = {}
    rows = []
    header = None
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                meta[k.strip()] = v.strip()
            continue
        if not line.strip():
            continue
        cells = line.split(",")
        if header is None:
            header = cells
            continue
        rows.append(dict(zip(header, cells)))
    return meta, rows


def recompute_abs_error(row):
    """abs_error re-derived from the value and limit columns, formatted."""
    v = complex(float(row["value_re"]), float(row["value_im"]))
    lim = complex(float(row["limit_re"]), float(row["limit_im"]))
    return fmt(abs(v - lim))
