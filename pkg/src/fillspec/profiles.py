"""Batch sweeps over the stock families, plus frozen regression values.

The frozen constants file pins numbers the test suite compares against:
the corridor Rayleigh calibration, the fill-length calibration, and a few
sampled eigenvalues.  It ships with the package; FILLSPEC_FIXTURES points
at an alternative copy, and regenerate_frozen rewrites one in place.
"""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .families import (
    fan,
    grid,
    heisenberg_filling,
    corridor_test_vector,
)
from .filling import fl_greedy
from .spectra import (
    dual_mu1_unweighted,
    dual_mu1_weighted,
    grid_dual_mu1_exact,
    grid_lambda1_exact,
    primal_lambda1,
    rayleigh_dual_unweighted,
)

__all__ = [
    "GridProfileRow",
    "HeisenbergProfileRow",
    "SeparationRow",
    "corridor_rayleigh",
    "frozen_constants",
    "read_rows",
    "regenerate_frozen",
    "run_suite",
    "spectral_separation_report",
    "sweep_grid_profiles",
    "sweep_heisenberg",
    "write_rows",
]


@dataclass(frozen=True)
class GridProfileRow:
    p: int
    q: int
    area: int
    boundary: int
    lambda1: float
    lambda1_exact: float
    mu1_unweighted: float
    mu1_unweighted_exact: float
    mu1_weighted: float
    fill_length: int


def sweep_grid_profiles(p_max: int, q_max: int | None = None) -> list[GridProfileRow]:
    q_max = p_max if q_max is None else q_max
    rows = []
    for p in range(2, p_max + 1):
        for q in range(p, q_max + 1):
            d = grid(p, q)
            rows.append(
                GridProfileRow(
                    p=p,
                    q=q,
                    area=d.area,
                    boundary=d.boundary_length(),
                    lambda1=float(primal_lambda1(d)),
                    lambda1_exact=grid_lambda1_exact(p, q),
                    mu1_unweighted=float(dual_mu1_unweighted(d)),
                    mu1_unweighted_exact=grid_dual_mu1_exact(p, q),
                    mu1_weighted=float(dual_mu1_weighted(d)),
                    fill_length=fl_greedy(d).value,
                )
            )
    return rows


def corridor_rayleigh(filling) -> float:
    """Rayleigh quotient of the corridor test function, n >= 3."""
    return rayleigh_dual_unweighted(filling.diagram, corridor_test_vector(filling))


@dataclass(frozen=True)
class HeisenbergProfileRow:
    n: int
    area: int
    boundary: int
    mu1_unweighted: float
    rayleigh: float  # nan below n = 3
    seconds: float


def sweep_heisenberg(n_max: int) -> list[HeisenbergProfileRow]:
    rows = []
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        filling = heisenberg_filling(n)
        mu = float(dual_mu1_unweighted(filling.diagram))
        ray = corridor_rayleigh(filling) if n >= 3 else math.nan
        rows.append(
            HeisenbergProfileRow(
                n=n,
                area=filling.diagram.area,
                boundary=filling.diagram.boundary_length(),
                mu1_unweighted=mu,
                rayleigh=ray,
                seconds=time.perf_counter() - t0,
            )
        )
    return rows


@dataclass(frozen=True)
class SeparationRow:
    """Dual gaps of the two same-area rectangle families at scale m."""

    m: int
    area: int
    mu_thin: float  # 2 x m^2 rectangle
    mu_balanced: float  # m x 2m rectangle
    ratio: float
    reference: float  # m^2 / 8
    meets_reference: bool


def spectral_separation_report(
    m_min: int = 5, m_max: int = 20, exact: bool = True
) -> list[SeparationRow]:
    rows = []
    for m in range(m_min, m_max + 1):
        if exact:
            thin = grid_dual_mu1_exact(2, m * m)
            bal = grid_dual_mu1_exact(m, 2 * m)
        else:
            thin = float(dual_mu1_unweighted(grid(2, m * m)))
            bal = float(dual_mu1_unweighted(grid(m, 2 * m)))
        ratio = thin / bal
        ref = m * m / 8.0
        rows.append(
            SeparationRow(
                m=m,
                area=2 * m * m,
                mu_thin=thin,
                mu_balanced=bal,
                ratio=ratio,
                reference=ref,
                meets_reference=ratio >= ref,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# csv round-trip


def write_rows(path: str | Path, rows) -> None:
    """Write a list of one dataclass type to CSV with a header row."""
    if not rows:
        raise ValueError("nothing to write")
    fields = dataclasses.fields(rows[0])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(f.name for f in fields)
        for row in rows:
            w.writerow(getattr(row, f.name) for f in fields)


_CASTS = {"int": int, "float": float, "bool": lambda s: s == "True", "str": str}


def read_rows(path: str | Path, cls) -> list:
    """Read back a CSV written by write_rows into dataclass instances."""
    fields = dataclasses.fields(cls)
    casts = [_CASTS[f.type] for f in fields]
    out = []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != [f.name for f in fields]:
            raise ValueError(f"header mismatch in {path}")
        for rec in r:
            out.append(cls(*(c(v) for c, v in zip(casts, rec))))
    return out


# ---------------------------------------------------------------------------
# frozen constants


_FROZEN_CACHE: dict | None = None


def _frozen_path() -> Path:
    env = os.environ.get("FILLSPEC_FIXTURES")
    if env:
        return Path(env)
    return Path(str(resources.files("fillspec") / "data" / "frozen.json"))


def frozen_constants() -> dict:
    global _FROZEN_CACHE
    if _FROZEN_CACHE is None:
        path = _frozen_path()
        if not path.exists():
            raise FileNotFoundError(
                f"frozen constants missing at {path}; run regenerate_frozen()"
            )
        _FROZEN_CACHE = json.loads(path.read_text())
    return _FROZEN_CACHE


def _compute_frozen() -> dict:
    fil3 = heisenberg_filling(3)
    ray3 = corridor_rayleigh(fil3)
    q22 = grid(2, 2)
    lam22 = grid_lambda1_exact(2, 2)
    fl22 = fl_greedy(q22).value
    samples = {}
    for p, q in ((2, 2), (3, 5), (7, 4), (10, 10)):
        key = f"{p}x{q}"
        d = grid(p, q)
        samples[key] = {
            "lambda1": float(primal_lambda1(d)),
            "mu1_unweighted": float(dual_mu1_unweighted(d)),
            "mu1_weighted": float(dual_mu1_weighted(d)),
        }
    fans = {
        str(m): float(dual_mu1_unweighted(fan(m))) for m in (1, 2, 3, 4)
    }
    heis = {}
    for n in (1, 2, 3):
        filn = heisenberg_filling(n)
        heis[str(n)] = {
            "area": filn.diagram.area,
            "boundary": filn.diagram.boundary_length(),
            "mu1_unweighted": float(dual_mu1_unweighted(filn.diagram)),
        }
    from .resistance import effective_resistance

    return {
        "version": 1,
        "corridor_constant": 9.0 * ray3,
        "corridor_rayleigh_n3": ray3,
        "fl_calibration": fl22 * math.sqrt(lam22),
        "q22_center_resistance": effective_resistance(q22, 4),
        "grids": samples,
        "fan_mu1_unweighted": fans,
        "heisenberg": heis,
    }


def regenerate_frozen(path: str | Path | None = None) -> dict:
    """Recompute the frozen constants and write them to path (default: the
    active constants file).  Returns the new table."""
    global _FROZEN_CACHE
    data = _compute_frozen()
    target = Path(path) if path is not None else _frozen_path()
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    _FROZEN_CACHE = None
    return data


# ---------------------------------------------------------------------------
# suite


def run_suite(
    out_dir: str | Path,
    grids_max: int = 10,
    heisenberg_max: int = 4,
    separation: tuple[int, int] = (5, 20),
) -> dict:
    """Write the three sweep CSVs plus a summary JSON; returns the summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grids = sweep_grid_profiles(grids_max)
    heis = sweep_heisenberg(heisenberg_max)
    sep = spectral_separation_report(*separation)
    write_rows(out / "grids.csv", grids)
    write_rows(out / "heisenberg.csv", heis)
    write_rows(out / "separation.csv", sep)
    worst = max(
        abs(r.lambda1 - r.lambda1_exact) for r in grids
    )
    summary = {
        "grid_rows": len(grids),
        "grid_worst_lambda1_error": worst,
        "heisenberg_rows": len(heis),
        "heisenberg_max_n": heisenberg_max,
        "separation_rows": len(sep),
        "separation_any_meets_reference": any(r.meets_reference for r in sep),
        "files": ["grids.csv", "heisenberg.csv", "separation.csv"],
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary
