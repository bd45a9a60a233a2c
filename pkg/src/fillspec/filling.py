"""Filling invariants: shelling length, minimal filling area, and
subset quasi-minimality.

Filling length here is the minimax curve length over discrete shellings:
states are the sets of faces and whisker edges not yet swept, the curve is
the boundary of what remains (whiskers doubled), and one move removes an
exposed face or peels a pendant whisker edge.  The initial curve is the
outer boundary, so its length is always a lower bound.

Filling area is computed by iterative deepening over relator insertions
with free and cyclic reduction; admissible lower bounds come from relator
abelianizations and, when every relator projects to a closed plane loop in
a pair of generators, from the signed area of that projection.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .halfedge import DiskDiagram, Letter
from .isoperimetry import (
    connected_subsets,
    dual_adjacency,
    is_hole_free,
    multiboundary,
)
from .presentations import Presentation, Word, cyclic_reduce, free_reduce

__all__ = [
    "FillAreaResult",
    "FillLengthResult",
    "QuasiMinimalityReport",
    "fillarea_oracle",
    "fl_exact",
    "fl_greedy",
    "hfmhqm_check",
    "mhqm_check",
]


# ---------------------------------------------------------------------------
# shelling data


class _Shelling:
    """Incremental boundary-length bookkeeping for face/whisker removal."""

    def __init__(self, d: DiskDiagram):
        self.d = d
        nf = d.num_faces
        fo = d.face_of()
        self.face_len = [len(f.cycle) for f in d.faces]
        self.self_edges = [0] * nf
        self.pair_mult: list[dict[int, int]] = [dict() for _ in range(nf)]
        self.outer_contact = [0] * nf
        self.whiskers: list[int] = []
        for h, t in d.edges():
            a, b = fo[h], fo[t]
            if a == -1 and b == -1:
                self.whiskers.append(h)
            elif a == -1:
                self.outer_contact[b] += 1
            elif b == -1:
                self.outer_contact[a] += 1
            elif a == b:
                self.self_edges[a] += 1
            else:
                self.pair_mult[a][b] = self.pair_mult[a].get(b, 0) + 1
                self.pair_mult[b][a] = self.pair_mult[b].get(a, 0) + 1

    def initial_length(self) -> int:
        return self.d.boundary_length()

    def internal_edges(self, f: int, S: set[int]) -> int:
        return self.self_edges[f] + sum(
            m for g, m in self.pair_mult[f].items() if g in S
        )

    def exposed(self, f: int, S: set[int]) -> bool:
        if self.outer_contact[f]:
            return True
        return any(g not in S for g in self.pair_mult[f]) or (
            self.face_len[f]
            > 2 * self.self_edges[f] + sum(self.pair_mult[f].values())
        )

    def face_delta(self, f: int, S: set[int]) -> int:
        return 2 * self.internal_edges(f, S) - self.face_len[f]


def _whisker_degrees(d: DiskDiagram, S: set[int], W: set[int]) -> dict[int, int]:
    fo = d.face_of()
    deg: dict[int, int] = {}
    for h, t in d.edges():
        a, b = fo[h], fo[t]
        present = h in W or (a >= 0 and a in S) or (b >= 0 and b in S)
        if present:
            for v in (d.origin[h], d.origin[t]):
                deg[v] = deg.get(v, 0) + 1
    return deg


def _peelable(d: DiskDiagram, S: set[int], W: set[int]) -> list[int]:
    if not W:
        return []
    deg = _whisker_degrees(d, S, W)
    out = []
    for h in W:
        u, v = d.origin[h], d.origin[d.twin[h]]
        if deg[u] == 1 or deg[v] == 1:
            out.append(h)
    return sorted(out)


@dataclass(frozen=True)
class FillLengthResult:
    value: int
    exhaustive: bool
    profile: tuple[int, ...]  # curve lengths along the exhibited shelling


def fl_greedy(d: DiskDiagram) -> FillLengthResult:
    """Shelling that always takes the move minimizing the next curve length.

    Ties go to faces over whiskers, then to the smallest id.  The result is
    an upper bound for the exact minimax.
    """
    sh = _Shelling(d)
    S = set(range(d.num_faces))
    W = set(sh.whiskers)
    cur = sh.initial_length()
    profile = [cur]
    heap: list[tuple[int, int, int]] = []
    for f in S:
        if sh.exposed(f, S):
            heapq.heappush(heap, (sh.face_delta(f, S), 0, f))
    while S or W:
        best: tuple[int, int, int] | None = None
        while heap:
            delta, _, f = heap[0]
            if f not in S or not sh.exposed(f, S) or delta != sh.face_delta(f, S):
                heapq.heappop(heap)
                continue
            best = (delta, 0, f)
            break
        for h in _peelable(d, S, W):
            if best is None or (-2, 1, h) < best:
                best = (-2, 1, h)
            break
        if best is None:
            raise RuntimeError("shelling stuck: no exposed face or pendant whisker")
        delta, kind, x = best
        if kind == 0:
            heapq.heappop(heap)
            S.remove(x)
            cur += delta
            for g in sh.pair_mult[x]:
                if g in S and sh.exposed(g, S):
                    heapq.heappush(heap, (sh.face_delta(g, S), 0, g))
        else:
            W.remove(x)
            cur -= 2
        profile.append(cur)
    return FillLengthResult(max(profile), False, tuple(profile))


def fl_exact(
    d: DiskDiagram, basepoint: int | None = None, cap: int = 18
) -> FillLengthResult:
    """Exact minimax curve length over all shellings.

    The initial boundary is a lower bound, so a greedy shelling that never
    exceeds it settles the value without search; otherwise a memoized DFS
    over face/whisker subsets runs when there are at most cap cells.  The
    basepoint does not enter this model of the invariant; the parameter is
    accepted for interface symmetry.
    """
    del basepoint
    sh = _Shelling(d)
    floor = sh.initial_length()
    greedy = fl_greedy(d)
    if greedy.value == floor:
        return FillLengthResult(floor, True, greedy.profile)
    nf = d.num_faces
    wl = sh.whiskers
    if nf + len(wl) > cap:
        return greedy
    wpos = {h: i for i, h in enumerate(wl)}
    memo: dict[tuple[int, int], int] = {}

    def rec(smask: int, wmask: int, cur: int) -> int:
        if smask == 0 and wmask == 0:
            return cur
        key = (smask, wmask)
        if key in memo:
            return max(cur, memo[key])
        S = {f for f in range(nf) if smask >> f & 1}
        W = {h for h in wl if wmask >> wpos[h] & 1}
        best = None
        moves: list[tuple[int, int, int]] = []
        for f in sorted(S):
            if sh.exposed(f, S):
                moves.append((sh.face_delta(f, S), 0, f))
        for h in _peelable(d, S, W):
            moves.append((-2, 1, h))
        moves.sort()
        for delta, kind, x in moves:
            if kind == 0:
                nxt = rec(smask & ~(1 << x), wmask, cur + delta)
            else:
                nxt = rec(smask, wmask & ~(1 << wpos[x]), cur - 2)
            if best is None or nxt < best:
                best = nxt
        if best is None:
            raise RuntimeError("shelling stuck: no exposed face or pendant whisker")
        memo[key] = best  # minimax from this state, independent of cur
        return max(cur, best)

    full_s = (1 << nf) - 1
    full_w = (1 << len(wl)) - 1
    value = rec(full_s, full_w, floor)
    return FillLengthResult(value, True, greedy.profile)


# ---------------------------------------------------------------------------
# filling area oracle


_INF = math.inf


class _LowerBounds:
    """Admissible remaining-insertion bounds from word invariants."""

    def __init__(self, p: Presentation):
        self.gens = list(p.generators)
        gi = {g: i for i, g in enumerate(self.gens)}
        self.gi = gi
        rel_abs = []
        self.moves_src = []
        for r in p.relators:
            letters = free_reduce(r.letters)
            if not letters:
                continue  # bigon relators never lower the area
            self.moves_src.append(r.letters)
            vec = [0] * len(self.gens)
            for g, s in r.letters:
                vec[gi[g]] += s
            rel_abs.append(vec)
        self.coord_max = [
            max((abs(v[i]) for v in rel_abs), default=0)
            for i in range(len(self.gens))
        ]
        self.pairs: list[tuple[int, int, int]] = []
        for i in range(len(self.gens)):
            for j in range(i + 1, len(self.gens)):
                if any(v[i] or v[j] for v in rel_abs):
                    continue  # some relator is not a closed loop in this plane
                rho = max(
                    (abs(_winding(r, i, j, gi)) for r in self.moves_src), default=0
                )
                self.pairs.append((i, j, rho))

    def __call__(self, w: tuple[Letter, ...]) -> float:
        if not w:
            return 0
        best = 0.0
        vec = [0] * len(self.gens)
        for g, s in w:
            vec[self.gi[g]] += s
        for i, m in enumerate(self.coord_max):
            if vec[i] == 0:
                continue
            if m == 0:
                return _INF
            best = max(best, math.ceil(abs(vec[i]) / m))
        for i, j, rho in self.pairs:
            a = _winding(w, i, j, self.gi)
            if a == 0:
                continue
            if rho == 0:
                return _INF
            best = max(best, math.ceil(abs(a) / rho))
        return best


def _winding(w, i: int, j: int, gi: dict[str, int]) -> int:
    """Twice the signed area of w projected to the (i, j) coordinate plane."""
    x = y = 0
    acc = 0
    for g, s in w:
        k = gi[g]
        if k == i:
            acc += -y * s  # dx = s, dy = 0
            x += s
        elif k == j:
            acc += x * s  # dy = s
            y += s
    return acc


def _canon(w: tuple[Letter, ...]) -> tuple[Letter, ...]:
    w = cyclic_reduce(w)
    if not w:
        return ()
    inv = tuple((g, -s) for g, s in reversed(w))
    best = min(w[k:] + w[:k] for k in range(len(w)))
    besti = min(inv[k:] + inv[:k] for k in range(len(inv)))
    return min(best, besti)


@dataclass(frozen=True)
class FillAreaResult:
    """status: exact | at_most | exceeds | unfillable | indeterminate."""

    status: str
    value: int | None
    nodes: int

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"


def fillarea_oracle(
    p: Presentation,
    word,
    max_area: int = 64,
    max_nodes: int = 400_000,
) -> FillAreaResult:
    """Minimal number of relator faces filling the word, by search.

    Iterative deepening over single relator insertions (any rotation of any
    relator or its inverse, at any position) with free and cyclic reduction
    between steps; states are canonicalized up to rotation and inversion.
    Freely trivial relators are never useful moves and are skipped.  The
    answer is exact unless the node budget truncated some deepening pass.
    """
    if isinstance(word, Word):
        word = word.letters
    bounds = _LowerBounds(p)
    moves: set[tuple[Letter, ...]] = set()
    for r in bounds.moves_src:
        for base in (tuple(r), tuple((g, -s) for g, s in reversed(r))):
            for k in range(len(base)):
                moves.add(base[k:] + base[:k])
    move_list = sorted(moves)
    root = _canon(free_reduce(tuple(word)))
    if not root:
        return FillAreaResult("exact", 0, 0)
    h0 = bounds(root)
    if h0 == _INF:
        return FillAreaResult("unfillable", None, 0)
    if not move_list:
        return FillAreaResult("unfillable", None, 0)

    nodes = 0
    truncated_any = False

    def children(state: tuple[Letter, ...]):
        seen: set[tuple[Letter, ...]] = set()
        for mv in move_list:
            for pos in range(len(state) + 1):
                child = _canon(free_reduce(state[:pos] + mv + state[pos:]))
                if child not in seen:
                    seen.add(child)
                    yield child

    for budget in range(int(h0), max_area + 1):
        table: dict[tuple[Letter, ...], int] = {root: 0}
        truncated = False

        def dfs(state: tuple[Letter, ...], g: int) -> bool:
            nonlocal nodes, truncated
            if not state:
                return True
            if nodes >= max_nodes:
                truncated = True
                return False
            nodes += 1
            ranked = []
            for child in children(state):
                h = bounds(child)
                if h == _INF or g + 1 + h > budget:
                    continue
                prev = table.get(child)
                if prev is not None and prev <= g + 1:
                    continue
                ranked.append((h, len(child), child))
            ranked.sort(key=lambda t: (t[0], t[1]))
            for _, _, child in ranked:
                table[child] = g + 1
                if dfs(child, g + 1):
                    return True
            return False

        if dfs(root, 0):
            status = "exact" if not (truncated or truncated_any) else "at_most"
            return FillAreaResult(status, budget, nodes)
        truncated_any = truncated_any or truncated
    if truncated_any:
        return FillAreaResult("indeterminate", None, nodes)
    return FillAreaResult("exceeds", None, nodes)


# ---------------------------------------------------------------------------
# subset quasi-minimality


@dataclass(frozen=True)
class QuasiMinimalityReport:
    status: str  # pass | fail | indeterminate
    kappa: float
    subsets_checked: int
    failures: tuple[tuple[frozenset[int], int, int], ...] = field(default=())
    undecided: tuple[frozenset[int], ...] = field(default=())


def _quasi_minimality(
    d: DiskDiagram,
    p: Presentation,
    kappa: float,
    cap: int,
    hole_free_only: bool,
    max_area: int | None,
    max_nodes: int,
) -> QuasiMinimalityReport:
    nf = d.num_faces
    if nf == 0:
        return QuasiMinimalityReport("pass", kappa, 0)
    if nf > cap:
        raise ValueError(f"{nf} faces exceed the exhaustive cap {cap}")
    budget = max_area if max_area is not None else nf + 4
    adj_sets, _ = dual_adjacency(d)
    adj = {f: adj_sets[f] for f in range(nf)}
    failures = []
    undecided = []
    checked = 0
    cache: dict[tuple[Letter, ...], FillAreaResult] = {}
    for A in connected_subsets(adj, range(nf)):
        if hole_free_only and not is_hole_free(d, A):
            continue
        checked += 1
        total = 0
        exact = True
        for loop in multiboundary(d, A).loops:
            word = _canon(free_reduce(tuple(d.label[h] for h in loop)))
            res = cache.get(word)
            if res is None:
                res = fillarea_oracle(p, word, max_area=budget, max_nodes=max_nodes)
                cache[word] = res
            if not res.is_exact:
                exact = False
                break
            total += res.value
        if not exact:
            undecided.append(frozenset(A))
        elif len(A) > kappa * total:
            failures.append((frozenset(A), len(A), total))
    if failures:
        status = "fail"
    elif undecided:
        status = "indeterminate"
    else:
        status = "pass"
    return QuasiMinimalityReport(
        status, kappa, checked, tuple(failures), tuple(undecided)
    )


def hfmhqm_check(
    d: DiskDiagram,
    p: Presentation,
    kappa: float = 1.0,
    cap: int = 20,
    max_area: int | None = None,
    max_nodes: int = 400_000,
) -> QuasiMinimalityReport:
    """Hole-free subsets must not beat kappa times their boundary's fill.

    Checks |A| <= kappa * sum of FillArea over the multiboundary loop words,
    for every hole-free dual-connected face set A.  An oracle that cannot
    settle a loop word leaves the subset undecided; undecided subsets make
    the whole report indeterminate, never a pass.
    """
    return _quasi_minimality(d, p, kappa, cap, True, max_area, max_nodes)


def mhqm_check(
    d: DiskDiagram,
    p: Presentation,
    kappa: float = 1.0,
    cap: int = 20,
    max_area: int | None = None,
    max_nodes: int = 400_000,
) -> QuasiMinimalityReport:
    """Same bound over all dual-connected subsets, holes allowed."""
    return _quasi_minimality(d, p, kappa, cap, False, max_area, max_nodes)
