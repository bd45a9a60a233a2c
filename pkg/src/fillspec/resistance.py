"""Electrical quantities on the primal graph of a diagram.

Interior vertices are free nodes, boundary vertices are grounded.  The
grounded Laplacian keeps the full vertex degree on the diagonal, so edges
into the boundary act as unit conductances to ground and the matrix stays
positive definite whenever the interior is nonempty.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .filling import fl_exact
from .halfedge import DiskDiagram
from .spectra import primal_lambda1

__all__ = [
    "DirichletMetric",
    "InversionReport",
    "dirichlet_metric",
    "distance_to_boundary",
    "effective_resistance",
    "extremal_inversion_check",
]


def distance_to_boundary(d: DiskDiagram) -> dict[int, int]:
    """Hop distance from every vertex to the outer boundary."""
    dist = {v: 0 for v in d.boundary_vertices()}
    adj: dict[int, set[int]] = {v: set() for v in range(d.num_vertices)}
    for h, t in d.edges():
        u, v = d.origin[h], d.origin[t]
        adj[u].add(v)
        adj[v].add(u)
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _grounded_laplacian(d: DiskDiagram) -> tuple[sp.csr_matrix, list[int]]:
    interior = sorted(d.interior_vertices())
    index = {v: i for i, v in enumerate(interior)}
    n = len(interior)
    deg = d.degrees()
    diag = [float(deg[v]) for v in interior]
    rows, cols, vals = [], [], []
    mult: dict[tuple[int, int], int] = {}
    for h, t in d.edges():
        u, v = d.origin[h], d.origin[t]
        if u in index and v in index:
            a, b = index[u], index[v]
            mult[a, b] = mult.get((a, b), 0) + 1
    for (a, b), m in mult.items():
        rows += [a, b]
        cols += [b, a]
        vals += [-float(m), -float(m)]
    lap = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    lap += sp.diags(diag)
    return lap.tocsr(), interior


def effective_resistance(d: DiskDiagram, v0: int) -> float:
    """Resistance between v0 and the grounded outer boundary, unit edges."""
    if not 0 <= v0 < d.num_vertices:
        raise ValueError(f"vertex {v0} out of range")
    if v0 in d.boundary_vertices():
        return 0.0
    lap, interior = _grounded_laplacian(d)
    i = interior.index(v0)
    rhs = np.zeros(len(interior))
    rhs[i] = 1.0
    if len(interior) <= 400:
        pot = np.linalg.solve(lap.toarray(), rhs)
    else:
        pot = spla.spsolve(lap.tocsc(), rhs)
    return float(pot[i])


@dataclass(frozen=True)
class DirichletMetric:
    edge_lengths: dict[int, float]  # keyed by the smaller half-edge id
    energy: float
    mass: float

    @property
    def rayleigh(self) -> float:
        return self.energy / self.mass


def dirichlet_metric(d: DiskDiagram, f=None) -> DirichletMetric:
    """Edge metric |df| induced by a vertex function (default: the ground
    state of the killed Laplacian), with its energy and interior mass."""
    if f is None:
        res = primal_lambda1(d)
        if res.eigenvector is None:
            raise ValueError("diagram has no interior vertices")
        f = res.eigenvector
    vals = [float(f[v]) for v in range(d.num_vertices)]
    boundary = d.boundary_vertices()
    lengths: dict[int, float] = {}
    energy = 0.0
    for h, t in d.edges():
        m = abs(vals[d.origin[h]] - vals[d.origin[t]])
        lengths[h] = m
        energy += m * m
    deg = d.degrees()
    mass = sum(
        vals[v] * vals[v] * deg[v]
        for v in range(d.num_vertices)
        if v not in boundary
    )
    if mass == 0.0:
        raise ValueError("function vanishes on the interior")
    return DirichletMetric(lengths, energy, mass)


@dataclass(frozen=True)
class InversionReport:
    v0: int
    lambda1: float
    vol_interior: int
    resistance: float
    lower_bound: float  # 1 / (lambda1 * vol)
    distance: int
    fill_length: int
    fill_length_exhaustive: bool
    ok_lower: bool
    ok_upper: bool
    ok_fill_length: bool

    @property
    def ok(self) -> bool:
        return self.ok_lower and self.ok_upper and self.ok_fill_length

    def lines(self) -> list[str]:
        return [
            f"v0 = {self.v0}  (ground-state maximum)",
            f"lambda1 = {self.lambda1:.12g}  vol(interior) = {self.vol_interior}",
            f"1/(lambda1*vol) = {self.lower_bound:.12g}"
            f" <= R_eff = {self.resistance:.12g}: {self.ok_lower}",
            f"R_eff <= dist(v0, boundary) = {self.distance}: {self.ok_upper}",
            f"dist <= FL/2 = {self.fill_length / 2:.6g}"
            f" (exhaustive={self.fill_length_exhaustive}): {self.ok_fill_length}",
        ]


def extremal_inversion_check(d: DiskDiagram, tol: float = 1e-9) -> InversionReport:
    """Check the resistance sandwich at the ground-state maximum.

    v0 is the interior vertex maximizing the killed-Laplacian ground state
    (ties to the smallest id).  At that vertex 1/(lambda1 * vol) <= R_eff
    holds because the rescaled eigenfunction is a unit-potential test
    function, and R_eff <= dist(v0, boundary) by shorting each sphere.
    """
    res = primal_lambda1(d)
    if res.eigenvector is None or res.value.is_infinite:
        raise ValueError("diagram has no interior vertices")
    vec = res.eigenvector
    interior = sorted(d.interior_vertices())
    v0 = max(interior, key=lambda v: (vec[v], -v))
    lam = res.value.unwrap()
    vol = sum(d.degrees()[v] for v in interior)
    r_eff = effective_resistance(d, v0)
    lower = 1.0 / (lam * vol)
    dist = distance_to_boundary(d)[v0]
    fl = fl_exact(d)
    return InversionReport(
        v0=v0,
        lambda1=lam,
        vol_interior=vol,
        resistance=r_eff,
        lower_bound=lower,
        distance=dist,
        fill_length=fl.value,
        fill_length_exhaustive=fl.exhaustive,
        ok_lower=lower <= r_eff + tol,
        ok_upper=r_eff <= dist + tol,
        ok_fill_length=dist <= fl.value / 2 + tol,
    )
