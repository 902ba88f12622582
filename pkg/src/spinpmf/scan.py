"""Grid scans of Bloch space for plotting the octahedron-in-sphere picture.

Grid order is p3-major, then p2, then p1 (p1 varies fastest). Numbers are
written with 12 significant digits (``%.12g``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, TextIO

import numpy as np

from spinpmf.bloch import DEFAULT_DOMAIN_TOL, DomainClass, classify_domain_array, domain_from_code

CSV_HEADER = ("p1", "p2", "p3", "domain", "min_quasi_mass", "l1", "l2")
FIELDS = CSV_HEADER
DEFAULT_REGION = ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0))

_INSIDE_CODES = [
    tuple(DomainClass).index(d)
    for d in (DomainClass.OCTAHEDRON_INTERIOR, DomainClass.OCTAHEDRON_BOUNDARY, DomainClass.VERTEX_PURE)
]
_OUTSIDE_CODE = tuple(DomainClass).index(DomainClass.OUTSIDE_SPHERE)


def fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True)
class ScanSpec:
    resolution: int = 21
    region: tuple[tuple[float, float], ...] = DEFAULT_REGION
    # (axis index 0..2, fixed value); that axis is not gridded
    slice: tuple[int, float] | None = None
    tol: float = field(default=DEFAULT_DOMAIN_TOL)

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        region = tuple((float(lo), float(hi)) for lo, hi in self.region)
        if len(region) != 3:
            raise ValueError("region needs three (min, max) pairs")
        for lo, hi in region:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad region bounds ({lo}, {hi})")
        object.__setattr__(self, "region", region)
        if self.slice is not None:
            axis, value = self.slice
            if axis not in (0, 1, 2) or not math.isfinite(value):
                raise ValueError(f"bad slice {self.slice!r}")
            object.__setattr__(self, "slice", (int(axis), float(value)))

    def axes(self) -> list[np.ndarray]:
        out = [np.linspace(lo, hi, self.resolution) for lo, hi in self.region]
        if self.slice is not None:
            axis, value = self.slice
            out[axis] = np.array([value])
        return out

    @property
    def size(self) -> int:
        return math.prod(len(a) for a in self.axes())


@dataclass
class ScanBlock:
    p: np.ndarray
    code: np.ndarray
    min_quasi_mass: np.ndarray
    l1: np.ndarray
    l2: np.ndarray

    def __len__(self) -> int:
        return len(self.p)


def iter_blocks(spec: ScanSpec) -> Iterator[ScanBlock]:
    """Evaluate the grid one p3 layer at a time, in output order."""
    a1, a2, a3 = spec.axes()
    g2, g1 = np.meshgrid(a2, a1, indexing="ij")
    for v3 in a3:
        p = np.column_stack([g1.ravel(), g2.ravel(), np.full(g1.size, v3)])
        l1 = np.abs(p).sum(axis=1)
        l2 = np.sqrt((p**2).sum(axis=1))
        yield ScanBlock(p, classify_domain_array(p, spec.tol), (1 - l1) / 8, l1, l2)


def volume_fraction(spec: ScanSpec) -> float:
    """Fraction of in-ball grid points that lie in the closed octahedron."""
    inside = in_ball = 0
    for block in iter_blocks(spec):
        in_ball += int(np.count_nonzero(block.code != _OUTSIDE_CODE))
        inside += int(np.count_nonzero(np.isin(block.code, _INSIDE_CODES)))
    return inside / in_ball


def _rows(spec: ScanSpec) -> Iterator[list[str]]:
    for block in iter_blocks(spec):
        for i in range(len(block)):
            p = block.p[i]
            yield [
                fmt(p[0]),
                fmt(p[1]),
                fmt(p[2]),
                domain_from_code(block.code[i]).value,
                fmt(block.min_quasi_mass[i]),
                fmt(block.l1[i]),
                fmt(block.l2[i]),
            ]


def write_scan(spec: ScanSpec, out: TextIO, format: str = "csv") -> int:
    """Write one record per grid point; returns the record count."""
    n = 0
    if format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in _rows(spec):
            w.writerow(row)
            n += 1
    elif format == "json":
        out.write('{"spec": ')
        out.write(json.dumps(_spec_dict(spec), sort_keys=True))
        out.write(', "records": [')
        for row in _rows(spec):
            rec = dict(zip(FIELDS, row))
            for k in FIELDS:
                if k != "domain":
                    rec[k] = float(rec[k])
            out.write((",\n" if n else "\n") + json.dumps(rec))
            n += 1
        out.write("\n]}\n")
    else:
        raise ValueError(f"unsupported scan format {format!r}")
    return n


def _spec_dict(spec: ScanSpec) -> dict:
    d = asdict(spec)
    d["region"] = [list(r) for r in spec.region]
    d["slice"] = list(spec.slice) if spec.slice else None
    return d


def read_scan(text: str, format: str = "csv") -> list[dict]:
    """Parse scan output back into records with float fields."""
    if format == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
    else:
        rows = json.loads(text)["records"]
    return [{k: (v if k == "domain" else float(v)) for k, v in r.items()} for r in rows]
