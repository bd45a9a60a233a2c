"""Cut constants and boundary structure of face subsets.

The multiboundary of a face set A is the set of half-edges with A on the
left and non-A (another face or the outer region) on the right, organized
into loops by rotating at each head vertex until the next such half-edge.
Its norm is the plain count, one unit per half-edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .halfedge import DiskDiagram
from .values import ExtendedValue

__all__ = [
    "CheegerResult",
    "MultiBoundary",
    "boundary_half_edges",
    "cheeger_dual",
    "cheeger_primal",
    "connected_subsets",
    "dual_adjacency",
    "hole_fill",
    "is_dual_connected",
    "is_hole_free",
    "multiboundary",
]


# ---------------------------------------------------------------------------
# dual graph helpers


def dual_adjacency(d: DiskDiagram) -> tuple[list[set[int]], list[bool]]:
    """Face adjacency sets and a flag per face for outer-region contact."""
    nf = d.num_faces
    fo = d.face_of()
    adj: list[set[int]] = [set() for _ in range(nf)]
    touches: list[bool] = [False] * nf
    for h, t in d.edges():
        a, b = fo[h], fo[t]
        if a >= 0 and b >= 0:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        elif a >= 0:
            touches[a] = True
        elif b >= 0:
            touches[b] = True
    return adj, touches


def is_dual_connected(d: DiskDiagram, faces: Iterable[int]) -> bool:
    """True when the faces induce a connected subgraph of the dual."""
    A = set(faces)
    if len(A) <= 1:
        return True
    adj, _ = dual_adjacency(d)
    start = next(iter(A))
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g in A and g not in seen:
                seen.add(g)
                stack.append(g)
    return len(seen) == len(A)


def _complement_components(
    d: DiskDiagram, A: set[int]
) -> list[tuple[set[int], bool]]:
    """Components of the face complement, flagged for outer contact."""
    adj, touches = dual_adjacency(d)
    rest = [f for f in range(d.num_faces) if f not in A]
    seen: set[int] = set()
    comps = []
    for start in rest:
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        hit = touches[start]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in A and g not in seen:
                    seen.add(g)
                    comp.add(g)
                    stack.append(g)
                    hit = hit or touches[g]
        comps.append((comp, hit))
    return comps


def is_hole_free(d: DiskDiagram, faces: Iterable[int]) -> bool:
    """True when every complement component reaches the outer region."""
    A = set(faces)
    return all(hit for _, hit in _complement_components(d, A))


def hole_fill(d: DiskDiagram, faces: Iterable[int]) -> frozenset[int]:
    """Add every complement component that cannot reach the outer region.

    The result contains the input, is hole-free, stays dual-connected when
    the input was, and its multiboundary never grows.
    """
    A = set(faces)
    for comp, hit in _complement_components(d, A):
        if not hit:
            A |= comp
    return frozenset(A)


# ---------------------------------------------------------------------------
# multiboundary


@dataclass(frozen=True)
class MultiBoundary:
    """Boundary half-edges of a face set, split into rotation-closed loops."""

    loops: tuple[tuple[int, ...], ...]

    @property
    def norm(self) -> int:
        return sum(len(loop) for loop in self.loops)

    @property
    def half_edges(self) -> frozenset[int]:
        return frozenset(h for loop in self.loops for h in loop)


def boundary_half_edges(d: DiskDiagram, faces: Iterable[int]) -> list[int]:
    """Half-edges with the set on their left and its outside on their right."""
    A = set(faces)
    fo = d.face_of()
    out = []
    for h in range(d.num_half_edges):
        if fo[d.twin[h]] in A and fo[h] not in A:
            out.append(h)
    return out


def multiboundary(d: DiskDiagram, faces: Iterable[int]) -> MultiBoundary:
    A = set(faces)
    members = boundary_half_edges(d, A)
    member_set = set(members)
    fo = d.face_of()

    def successor(e: int) -> int:
        g = d.next_rotation[d.twin[e]]
        steps = 0
        while g not in member_set:
            g = d.next_rotation[g]
            steps += 1
            if steps > d.num_half_edges:
                raise RuntimeError(f"boundary successor search did not close at {e}")
        return g

    loops = []
    visited: set[int] = set()
    for e in members:  # members are sorted by id, so loop order is stable
        if e in visited:
            continue
        loop = []
        cur = e
        while cur not in visited:
            visited.add(cur)
            loop.append(cur)
            cur = successor(cur)
        if cur != e:
            raise RuntimeError("boundary successor is not a permutation")
        loops.append(tuple(loop))
    del fo
    return MultiBoundary(tuple(loops))


# ---------------------------------------------------------------------------
# connected subset enumeration (duplicate-free)


def connected_subsets(
    adj: dict[int, set[int]], nodes: Iterable[int]
) -> Iterator[frozenset[int]]:
    """All nonempty connected subsets of the given induced subgraph.

    Classic anchored enumeration: subsets are grown from their smallest
    member, never adding a smaller vertex, and each branch bans the choices
    its elder siblings made, so every subset appears exactly once.
    """
    universe = sorted(nodes)
    rank = {v: i for i, v in enumerate(universe)}

    def grow(S: set[int], frontier: list[int], banned: set[int], anchor: int):
        yield frozenset(S)
        local_ban = set(banned)
        for u in frontier:
            if u in local_ban:
                continue
            ext = [w for w in frontier if w != u and w not in local_ban]
            known = set(ext) | S | local_ban
            for w in adj[u]:
                if w in rank and rank[w] > anchor and w not in known:
                    ext.append(w)
            S.add(u)
            yield from grow(S, ext, local_ban, anchor)
            S.remove(u)
            local_ban.add(u)

    for v in universe:
        start = [w for w in adj[v] if w in rank and rank[w] > rank[v]]
        yield from grow({v}, start, set(), rank[v])


# ---------------------------------------------------------------------------
# Cheeger constants


@dataclass(frozen=True)
class CheegerResult:
    value: ExtendedValue
    ratio: Fraction | None  # exact value when finite
    subset: frozenset[int]
    exhaustive: bool
    subsets_checked: int


def _min_ratio(
    pieces: Iterator[frozenset[int]],
    cut_of,
    mass_of,
) -> tuple[Fraction | None, frozenset[int], int]:
    best: Fraction | None = None
    best_set: frozenset[int] = frozenset()
    checked = 0
    for S in pieces:
        checked += 1
        r = Fraction(cut_of(S), mass_of(S))
        if best is None or r < best:
            best, best_set = r, S
    return best, best_set, checked


def cheeger_primal(d: DiskDiagram, cap: int = 20) -> CheegerResult:
    """Minimum cut-to-volume ratio over interior vertex sets.

    Exact (rational, connected-set enumeration) while the interior has at
    most cap vertices; beyond that a sweep of the bottom eigenvector is
    scored instead and the result is flagged non-exhaustive.
    """
    interior = sorted(d.interior_vertices())
    if not interior:
        return CheegerResult(ExtendedValue.infinity(), None, frozenset(), True, 0)
    deg = d.degrees()
    mult: dict[tuple[int, int], int] = {}
    for h, t in d.edges():
        u, v = d.origin[h], d.origin[t]
        key = (u, v) if u < v else (v, u)
        mult[key] = mult.get(key, 0) + 1

    def cut_of(S: frozenset[int]) -> int:
        vol = sum(deg[v] for v in S)
        inner = sum(
            m for (u, v), m in mult.items() if u in S and v in S
        )
        return vol - 2 * inner

    def mass_of(S: frozenset[int]) -> int:
        return sum(deg[v] for v in S)

    if len(interior) <= cap:
        iset = set(interior)
        adj = {
            v: {w for (a, b), _ in mult.items() if v in (a, b) and (w := a + b - v) in iset}
            for v in interior
        }
        best, best_set, checked = _min_ratio(
            connected_subsets(adj, interior), cut_of, mass_of
        )
        return CheegerResult(
            ExtendedValue.of(float(best)), best, best_set, True, checked
        )

    from .spectra import primal_lambda1

    vec = primal_lambda1(d).eigenvector
    order = sorted(interior, key=lambda v: -vec[v])
    best, best_set, checked = None, frozenset(), 0
    S: set[int] = set()
    for v in order:
        S.add(v)
        checked += 1
        r = Fraction(cut_of(frozenset(S)), mass_of(frozenset(S)))
        if best is None or r < best:
            best, best_set = r, frozenset(S)
    return CheegerResult(ExtendedValue.of(float(best)), best, best_set, False, checked)


def cheeger_dual(d: DiskDiagram, cap: int = 20) -> CheegerResult:
    """Minimum boundary-to-area ratio over face sets (area = face count).

    Same exhaustive/sweep split as the primal constant, with connectivity
    taken in the dual graph.
    """
    nf = d.num_faces
    if nf == 0:
        return CheegerResult(ExtendedValue.infinity(), None, frozenset(), True, 0)
    from .spectra import DualNetwork

    net = DualNetwork.from_diagram(d)

    def cut_of(A: frozenset[int]) -> int:
        total = sum(net.face_degrees[f] - net.self_weights[f] for f in A)
        inner = sum(
            m for (a, b), m in net.pair_weights.items() if a in A and b in A
        )
        return total - 2 * inner

    def mass_of(A: frozenset[int]) -> int:
        return len(A)

    if nf <= cap:
        adj_sets, _ = dual_adjacency(d)
        adj = {f: adj_sets[f] for f in range(nf)}
        best, best_set, checked = _min_ratio(
            connected_subsets(adj, range(nf)), cut_of, mass_of
        )
        return CheegerResult(
            ExtendedValue.of(float(best)), best, best_set, True, checked
        )

    from .spectra import dual_mu1_unweighted

    vec = dual_mu1_unweighted(d).eigenvector
    order = sorted(range(nf), key=lambda f: -vec[f])
    best, best_set, checked = None, frozenset(), 0
    A: set[int] = set()
    for f in order:
        A.add(f)
        checked += 1
        r = Fraction(cut_of(frozenset(A)), mass_of(frozenset(A)))
        if best is None or r < best:
            best, best_set = r, frozenset(A)
    return CheegerResult(ExtendedValue.of(float(best)), best, best_set, False, checked)
