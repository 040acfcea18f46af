"""Root scans of good-word trace polynomials and plane classification.

For a fixed first parameter, every corpus word contributes the roots of its
trace polynomial in the second variable; the union approximates the zero
set whose closure bounds the moduli region of discrete free groups.  A grid
classifier marks each cell as near a root, killed by a certificate, or
inconclusive (never "discrete": only necessary conditions are available).
"""
from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .discreteness import killer_search
from .exactpoly import roots_univariate
from .words import GoodWord, enumerate_order2_words
from .wordpoly import trace_poly

__all__ = [
    "RootRecord",
    "ZeroSetScan",
    "scan_roots",
    "GridClassification",
    "classify_grid",
    "export_roots_csv",
    "export_roots_json",
    "export_raster",
    "CELL_INCONCLUSIVE",
    "CELL_ROOT_NEAR",
    "CELL_CERTIFICATE",
]

CELL_INCONCLUSIVE = 0
CELL_ROOT_NEAR = 1
CELL_CERTIFICATE = 2

_CLUSTER_RADIUS = 1e-6


@dataclass(frozen=True)
class RootRecord:
    gamma: complex
    word: GoodWord
    multiplicity: int


@dataclass(frozen=True)
class ZeroSetScan:
    beta: complex
    max_syllables: int
    max_exp: int
    words_scanned: int
    roots: tuple[RootRecord, ...]

    def max_modulus(self) -> float:
        return max((abs(r.gamma) for r in self.roots), default=0.0)


def _word_roots(w: GoodWord, beta: complex) -> list[tuple[complex, int]]:
    p = trace_poly(w)
    coeffs = [complex(c) for c in p.substitute_first(beta)]
    zero_mult = 0
    while coeffs and abs(coeffs[0]) < 1e-14:
        coeffs.pop(0)
        zero_mult += 1
    out: list[tuple[complex, int]] = []
    if zero_mult:
        out.append((0j, zero_mult))
    if len(coeffs) > 1:
        out.extend(roots_univariate(coeffs, cluster_radius=_CLUSTER_RADIUS))
    return out


def scan_roots(
    beta: complex,
    max_syllables: int = 5,
    max_exp: int = 4,
    budget: int = 10_000,
    dedup: bool = True,
) -> ZeroSetScan:
    """Roots of every corpus word's trace polynomial at the given beta.

    Words run in breadth-first order; with ``dedup`` a root within the
    clustering radius of an earlier one is dropped, so each root is reported
    with its earliest (smallest) witnessing word.
    """
    count = 0
    records: list[RootRecord] = []
    for w in enumerate_order2_words(max_syllables, max_exp):
        if count >= budget:
            raise ValueError(f"word budget {budget} exceeded")
        count += 1
        for root, mult in _word_roots(w, complex(beta)):
            if dedup and any(abs(root - r.gamma) < _CLUSTER_RADIUS for r in records):
                continue
            records.append(RootRecord(root, w, mult))
    records.sort(key=lambda r: (abs(r.gamma), r.gamma.real, r.gamma.imag))
    return ZeroSetScan(complex(beta), max_syllables, max_exp, count, tuple(records))


@dataclass(frozen=True)
class GridClassification:
    beta: complex
    window: tuple[float, float, float, float]  # re_min, re_max, im_min, im_max
    resolution: tuple[int, int]
    codes: tuple[tuple[int, ...], ...]  # row-major, codes[iy][ix]

    def counts(self) -> dict:
        flat = [c for row in self.codes for c in row]
        return {
            "inconclusive": flat.count(CELL_INCONCLUSIVE),
            "root_near": flat.count(CELL_ROOT_NEAR),
            "certificate": flat.count(CELL_CERTIFICATE),
        }


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TRACEPOLY_THREADS", "1")))
    except ValueError:
        return 1


def classify_grid(
    beta: complex,
    window: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0),
    resolution: tuple[int, int] = (50, 50),
    max_depth: int = 30,
    word_budget: int = 120,
    scan: Optional[ZeroSetScan] = None,
    root_radius: float = 1e-3,
) -> GridClassification:
    """Classify grid cell centers as certificate / root-near / inconclusive.

    Cell order is row-major over the window.  A successful killer search
    wins; otherwise proximity to a scanned root (the scan is computed with
    small defaults when not supplied) marks the cell root-near; everything
    else is inconclusive, never "discrete".  TRACEPOLY_THREADS caps the
    worker pool used for the per-cell searches.
    """
    if scan is None:
        scan = scan_roots(beta, max_syllables=3, max_exp=2)
    re_min, re_max, im_min, im_max = window
    nx, ny = resolution
    roots = [r.gamma for r in scan.roots]

    def cell(ix: int, iy: int) -> int:
        g = complex(
            re_min + (ix + 0.5) * (re_max - re_min) / nx,
            im_min + (iy + 0.5) * (im_max - im_min) / ny,
        )
        cert = killer_search(beta, g, max_depth=max_depth, word_budget=word_budget)
        if cert is not None:
            return CELL_CERTIFICATE
        if any(abs(g - r) < root_radius for r in roots):
            return CELL_ROOT_NEAR
        return CELL_INCONCLUSIVE

    workers = _threads()
    rows: list[tuple[int, ...]] = []
    if workers == 1:
        for iy in range(ny):
            rows.append(tuple(cell(ix, iy) for ix in range(nx)))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                [pool.submit(cell, ix, iy) for ix in range(nx)] for iy in range(ny)
            ]
            rows = [tuple(f.result() for f in row) for row in futures]
    return GridClassification(complex(beta), window, (nx, ny), tuple(rows))


# -- export ------------------------------------------------------------------------


def export_roots_csv(scan: ZeroSetScan, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "word", "multiplicity"])
        for r in scan.roots:
            writer.writerow([repr(r.gamma.real), repr(r.gamma.imag), str(r.word), r.multiplicity])


def export_roots_json(scan: ZeroSetScan, path: str) -> None:
    data = {
        "beta": [scan.beta.real, scan.beta.imag],
        "max_syllables": scan.max_syllables,
        "max_exp": scan.max_exp,
        "words_scanned": scan.words_scanned,
        "roots": [
            {
                "re": r.gamma.real,
                "im": r.gamma.imag,
                "word": str(r.word),
                "multiplicity": r.multiplicity,
            }
            for r in scan.roots
        ],
    }
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)


def export_raster(grid: GridClassification, path: str, sidecar: Optional[str] = None) -> None:
    """Write the raster as PGM (``.pgm``) or CSV, plus a JSON metadata sidecar."""
    nx, ny = grid.resolution
    if path.endswith(".pgm"):
        with open(path, "w") as fh:
            fh.write(f"P2\n{nx} {ny}\n2\n")
            for row in grid.codes:
                fh.write(" ".join(str(c) for c in row) + "\n")
    else:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in grid.codes:
                writer.writerow(row)
    meta = {
        "beta": [grid.beta.real, grid.beta.imag],
        "window": list(grid.window),
        "resolution": list(grid.resolution),
        "codes": {
            "inconclusive": CELL_INCONCLUSIVE,
            "root_near": CELL_ROOT_NEAR,
            "certificate": CELL_CERTIFICATE,
        },
    }
    with open(sidecar or path + ".json", "w") as fh:
        json.dump(meta, fh, indent=2)
