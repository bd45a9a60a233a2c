"""Primal and dual spectral gaps of disk diagrams.

Primal: normalized Laplacian on interior vertices, killed at the boundary;
degrees count all incident edges, boundary neighbors included.  Dual: the
face network with one weight unit per shared primal edge, killed across
boundary edges.  The unweighted gap normalizes by face boundary lengths
(diagonal similarity, so the problem stays symmetric); the weighted gap is
the smallest eigenvalue of the raw killed Laplacian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .halfedge import DiskDiagram
from .values import ExtendedValue

_DENSE_LIMIT = 128
_RESIDUAL_TARGET = 1e-12
_MAX_ITER = 1000


@dataclass(frozen=True)
class SpectralResult:
    value: ExtendedValue
    eigenvector: tuple[float, ...] | None
    residual: float
    iterations: int
    method: str

    def __float__(self) -> float:
        return float(self.value)


_EMPTY = SpectralResult(ExtendedValue.infinity(), None, 0.0, 0, "empty")


@dataclass(frozen=True)
class DualNetwork:
    """Face adjacency with multiplicities and boundary kill weights.

    pair_weights[(f, g)] (f < g) counts primal edges shared by distinct
    faces; self_weights[f] counts both sides of edges with f on both sides;
    boundary_weights[f] counts edges f shares with the outer region.
    Face-free edges belong to no face and enter no weight.
    """

    face_degrees: tuple[int, ...]
    boundary_weights: tuple[int, ...]
    self_weights: tuple[int, ...]
    pair_weights: dict[tuple[int, int], int]

    @staticmethod
    def from_diagram(d: DiskDiagram) -> "DualNetwork":
        nf = d.num_faces
        fo = d.face_of()
        bw = [0] * nf
        sw = [0] * nf
        pw: dict[tuple[int, int], int] = {}
        for h, t in d.edges():
            a, b = fo[h], fo[t]
            if a == -1 and b == -1:
                continue
            if a == -1:
                bw[b] += 1
            elif b == -1:
                bw[a] += 1
            elif a == b:
                sw[a] += 2
            else:
                key = (a, b) if a < b else (b, a)
                pw[key] = pw.get(key, 0) + 1
        return DualNetwork(
            face_degrees=tuple(len(f.cycle) for f in d.faces),
            boundary_weights=tuple(bw),
            self_weights=tuple(sw),
            pair_weights=pw,
        )

    @property
    def num_faces(self) -> int:
        return len(self.face_degrees)

    def identity_mismatches(self) -> list[tuple[int, int, int]]:
        """Faces where |bd f| != sum of weights; empty list when consistent."""
        nf = self.num_faces
        acc = [self.self_weights[f] + self.boundary_weights[f] for f in range(nf)]
        for (a, b), m in self.pair_weights.items():
            acc[a] += m
            acc[b] += m
        return [
            (f, self.face_degrees[f], acc[f])
            for f in range(nf)
            if self.face_degrees[f] != acc[f]
        ]

    def killed_laplacian(self) -> sp.csr_matrix:
        """K = diag(|bd f|) - M, M the multiplicity matrix with diagonal."""
        nf = self.num_faces
        rows, cols, vals = [], [], []
        for f in range(nf):
            rows.append(f)
            cols.append(f)
            vals.append(float(self.face_degrees[f] - self.self_weights[f]))
        for (a, b), m in self.pair_weights.items():
            rows.extend((a, b))
            cols.extend((b, a))
            vals.extend((-float(m), -float(m)))
        return sp.csr_matrix((vals, (rows, cols)), shape=(nf, nf))


def _fix_sign(x: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(x)))
    return -x if x[i] < 0 else x


def _smallest_eig(A: sp.spmatrix) -> tuple[float, np.ndarray, float, int, str]:
    """Smallest eigenpair of a symmetric positive definite sparse matrix."""
    n = A.shape[0]
    if n == 1:
        lam = float(A[0, 0])
        return lam, np.ones(1), 0.0, 0, "direct"
    if n <= _DENSE_LIMIT:
        Ad = A.toarray()
        w, v = scipy.linalg.eigh(Ad, subset_by_index=[0, 0])
        lam = float(w[0])
        x = _fix_sign(v[:, 0])
        res = float(np.linalg.norm(Ad @ x - lam * x))
        return lam, x, res, 0, "dense"
    lu = spla.splu(A.tocsc())
    x = np.full(n, 1.0 / math.sqrt(n))
    lam, res = 0.0, math.inf
    it = 0
    for it in range(1, _MAX_ITER + 1):
        y = lu.solve(x)
        y /= np.linalg.norm(y)
        lam = float(y @ (A @ y))
        res = float(np.linalg.norm(A @ y - lam * y))
        x = y
        if res <= _RESIDUAL_TARGET * max(1.0, abs(lam)):
            break
    return lam, _fix_sign(x), res, it, "inverse_iteration"


def primal_lambda1(d: DiskDiagram) -> SpectralResult:
    """Smallest eigenvalue of the boundary-killed normalized Laplacian.

    Infinite when the diagram has no interior vertices.
    """
    interior = sorted(d.interior_vertices())
    if not interior:
        return _EMPTY
    idx = {v: i for i, v in enumerate(interior)}
    deg = d.degrees()
    n = len(interior)
    rows, cols, vals = list(range(n)), list(range(n)), [1.0] * n
    for h, t in d.edges():
        u, v = d.origin[h], d.origin[t]
        iu, iv = idx.get(u), idx.get(v)
        if iu is not None and iv is not None:
            w = -1.0 / math.sqrt(deg[u] * deg[v])
            rows.extend((iu, iv))
            cols.extend((iv, iu))
            vals.extend((w, w))
    A = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    lam, x, res, it, method = _smallest_eig(A)
    full = np.zeros(d.num_vertices)
    full[interior] = x
    return SpectralResult(ExtendedValue.of(lam), tuple(full), res, it, method)


def _dual_result(d: DiskDiagram, normalized: bool) -> SpectralResult:
    if d.num_faces == 0:
        return _EMPTY
    net = DualNetwork.from_diagram(d)
    K = net.killed_laplacian()
    if normalized:
        s = 1.0 / np.sqrt(np.asarray(net.face_degrees, dtype=float))
        D = sp.diags(s)
        K = (D @ K @ D).tocsr()
    lam, x, res, it, method = _smallest_eig(K)
    if normalized:
        # undo the similarity so the vector lives on faces
        x = x * s
        x /= np.linalg.norm(x)
    return SpectralResult(ExtendedValue.of(lam), tuple(x), res, it, method)


def dual_mu1_unweighted(d: DiskDiagram) -> SpectralResult:
    """Boundary-length-normalized dual gap; 1.0 on any single-face disk.

    Smallest eigenvalue of W^{-1/2} K W^{-1/2} with W = diag(|bd f|); equals
    one minus the spectral radius of the killed dual walk.  Infinite when
    there are no faces.
    """
    return _dual_result(d, normalized=True)


def dual_mu1_weighted(d: DiskDiagram) -> SpectralResult:
    """Smallest eigenvalue of the raw killed dual Laplacian K.

    Sandwiched between l_min and L_max times the unweighted gap.  Infinite
    when there are no faces.
    """
    return _dual_result(d, normalized=False)


# ---------------------------------------------------------------------------
# Rayleigh quotients (zero extension outside the support)


def rayleigh_primal(d: DiskDiagram, f) -> float:
    """Energy over interior mass for a vertex function.

    f is indexed by vertex id; entries at boundary vertices are treated as
    zero.  Raises when f vanishes on the whole interior.
    """
    vals = np.zeros(d.num_vertices)
    interior = d.interior_vertices()
    for v in interior:
        vals[v] = f[v]
    num = 0.0
    for h, t in d.edges():
        diff = vals[d.origin[h]] - vals[d.origin[t]]
        num += diff * diff
    deg = d.degrees()
    den = sum(vals[v] * vals[v] * deg[v] for v in interior)
    if den == 0.0:
        raise ValueError("test function vanishes on the interior")
    return num / den


def _dual_energy(d: DiskDiagram, g: np.ndarray) -> float:
    fo = d.face_of()
    num = 0.0
    for h, t in d.edges():
        a, b = fo[h], fo[t]
        if a == -1 and b == -1:
            continue
        ga = g[a] if a >= 0 else 0.0
        gb = g[b] if b >= 0 else 0.0
        diff = ga - gb
        num += diff * diff
    return num


def rayleigh_dual_unweighted(d: DiskDiagram, g) -> float:
    """Killed dual energy over boundary-length-weighted mass.

    g is indexed by face id.  Dominates the unweighted dual gap for every
    nonzero g.
    """
    gv = np.asarray(g, dtype=float)
    if gv.shape[0] != d.num_faces:
        raise ValueError("test function must assign a value to every face")
    den = sum(len(f.cycle) * gv[i] * gv[i] for i, f in enumerate(d.faces))
    if den == 0.0:
        raise ValueError("test function vanishes")
    return _dual_energy(d, gv) / den


def rayleigh_dual_weighted(d: DiskDiagram, g) -> float:
    """Killed dual energy over unweighted mass; dominates the weighted gap."""
    gv = np.asarray(g, dtype=float)
    if gv.shape[0] != d.num_faces:
        raise ValueError("test function must assign a value to every face")
    den = float(gv @ gv)
    if den == 0.0:
        raise ValueError("test function vanishes")
    return _dual_energy(d, gv) / den


# ---------------------------------------------------------------------------
# closed forms for rectangles


def grid_lambda1_exact(p: int, q: int) -> float:
    """Primal gap of the p-by-q rectangle, needing p, q >= 2."""
    if p < 2 or q < 2:
        raise ValueError("interior is empty for p or q below 2")
    return 1.0 - 0.5 * (math.cos(math.pi / p) + math.cos(math.pi / q))


def grid_dual_mu1_exact(p: int, q: int) -> float:
    """Unweighted dual gap of the p-by-q rectangle, any p, q >= 1."""
    if p < 1 or q < 1:
        raise ValueError("grid needs p, q >= 1")
    return 1.0 - 0.5 * (math.cos(math.pi / (p + 1)) + math.cos(math.pi / (q + 1)))
