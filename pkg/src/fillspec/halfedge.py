"""Planar disk diagrams as half-edge (rotation system) complexes.

A diagram stores half-edges with origin, twin, label and next_rotation
pointers, an explicit list of face cycles, and an explicit outer boundary
walk.  Conventions, fixed once for the whole package:

  * next_rotation(h) is the counterclockwise successor among half-edges
    sharing origin(h).
  * every stored cycle (each face cycle and the outer boundary) is an orbit
    of  h -> next_rotation(twin(h));  face cycles traverse with the face on
    the RIGHT of each half-edge, the outer boundary traverses with the
    diagram on the LEFT.
  * consequently the face to the left of h is face_of(twin(h)).

Diagrams are immutable after construction.  MovieBuilder constructs them
from a boundary word by gluing faces and folding edge pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

Letter = tuple[str, int]  # (generator, +1 | -1)

FACE_KINDS = ("relator", "free_bigon", "path_bigon")


def _inv(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


@dataclass(frozen=True)
class Face:
    kind: str
    cycle: tuple[int, ...]
    relator_id: int | None = None
    rotation: int | None = None
    path_len: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FACE_KINDS:
            raise ValueError(f"unknown face kind {self.kind!r}")


@dataclass(frozen=True)
class ValidationReport:
    """Ordered (check name, passed, detail) triples."""

    entries: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.entries)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, passed, detail in self.entries if not passed]

    def __str__(self) -> str:
        return "\n".join(
            f"[{'ok' if passed else 'FAIL'}] {name}: {detail}"
            for name, passed, detail in self.entries
        )


@dataclass(frozen=True)
class DiskDiagram:
    num_vertices: int
    origin: tuple[int, ...]
    twin: tuple[int, ...]
    label: tuple[Letter, ...]
    next_rotation: tuple[int, ...]
    faces: tuple[Face, ...]
    outer_boundary: tuple[int, ...]
    basepoint: int | None = None

    # ---- construction -------------------------------------------------

    @staticmethod
    def from_cycles(
        num_vertices: int,
        origin: Sequence[int],
        twin: Sequence[int],
        label: Sequence[Letter],
        faces: Sequence[Face],
        outer_boundary: Sequence[int],
        basepoint: int | None = None,
    ) -> "DiskDiagram":
        """Build a diagram deriving next_rotation from the stored cycles.

        Each half-edge must appear in exactly one cycle.  The successor of e
        in its cycle is next_rotation(twin(e)); with a correct cycle family
        this assigns every pointer exactly once.
        """
        n = len(origin)
        rot = [-1] * n
        for cyc in [f.cycle for f in faces] + [tuple(outer_boundary)]:
            for i, e in enumerate(cyc):
                s = cyc[(i + 1) % len(cyc)]
                t = twin[e]
                if rot[t] != -1:
                    raise ValueError(f"half-edge {e} appears in more than one cycle")
                rot[t] = s
        if any(r == -1 for r in rot):
            missing = [h for h, r in enumerate(rot) if r == -1]
            raise ValueError(f"half-edges missing from all cycles: {missing[:8]}")
        return DiskDiagram(
            num_vertices=num_vertices,
            origin=tuple(origin),
            twin=tuple(twin),
            label=tuple(label),
            next_rotation=tuple(rot),
            faces=tuple(faces),
            outer_boundary=tuple(outer_boundary),
            basepoint=basepoint,
        )

    # ---- basic queries -------------------------------------------------

    @property
    def num_half_edges(self) -> int:
        return len(self.origin)

    @property
    def num_edges(self) -> int:
        return len(self.origin) // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def area(self) -> int:
        return len(self.faces)

    def head(self, h: int) -> int:
        return self.origin[self.twin[h]]

    def boundary_length(self) -> int:
        return len(self.outer_boundary)

    def boundary_word(self) -> tuple[Letter, ...]:
        return tuple(self.label[h] for h in self.outer_boundary)

    def face_of(self) -> tuple[int, ...]:
        """Index of the face whose cycle contains h, or -1 for outer."""
        cached = getattr(self, "_face_of", None)
        if cached is None:
            fo = [-1] * self.num_half_edges
            for i, f in enumerate(self.faces):
                for h in f.cycle:
                    fo[h] = i
            cached = tuple(fo)
            object.__setattr__(self, "_face_of", cached)
        return cached

    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(self.origin[h] for h in self.outer_boundary)

    def interior_vertices(self) -> frozenset[int]:
        """Vertices never visited by the outer boundary walk."""
        onb = self.boundary_vertices()
        return frozenset(v for v in range(self.num_vertices) if v not in onb)

    def degree(self, v: int) -> int:
        if not (0 <= v < self.num_vertices):
            raise KeyError(f"unknown vertex id {v}")
        return self.degrees()[v]

    def degrees(self) -> tuple[int, ...]:
        cached = getattr(self, "_degrees", None)
        if cached is None:
            deg = [0] * self.num_vertices
            for v in self.origin:
                deg[v] += 1
            cached = tuple(deg)
            object.__setattr__(self, "_degrees", cached)
        return cached

    def vol(self, vertices: Iterable[int]) -> int:
        deg = self.degrees()
        total = 0
        for v in vertices:
            if not (0 <= v < self.num_vertices):
                raise KeyError(f"unknown vertex id {v}")
            total += deg[v]
        return total

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as (h, twin(h)) with h the smaller id."""
        return [(h, self.twin[h]) for h in range(self.num_half_edges) if h < self.twin[h]]

    def face_free_edges(self) -> list[int]:
        """Representative half-edges of edges bordering no face (whiskers)."""
        fo = self.face_of()
        return [
            h
            for h in range(self.num_half_edges)
            if h < self.twin[h] and fo[h] == -1 and fo[self.twin[h]] == -1
        ]

    def face_boundary_length(self, i: int) -> int:
        return len(self.faces[i].cycle)

    def face_word(self, i: int) -> tuple[Letter, ...]:
        return tuple(self.label[h] for h in self.faces[i].cycle)

    # ---- validation ----------------------------------------------------

    def validate(self, relators: Sequence[Sequence[Letter]] | None = None) -> ValidationReport:
        """Check every representation invariant; failures become entries.

        relators: optional relator table to check face labels against (faces
        carry relator_id indexes into it).  Without it the label check only
        covers bigon shapes.
        """
        entries: list[tuple[str, bool, str]] = []
        n = self.num_half_edges

        # twin is a fixed-point-free involution carrying the inverse letter
        ok = n % 2 == 0 and all(
            0 <= self.twin[h] < n
            and self.twin[h] != h
            and self.twin[self.twin[h]] == h
            and self.label[self.twin[h]] == _inv(self.label[h])
            for h in range(n)
        )
        entries.append(("twin_involution", ok, f"{n} half-edges"))

        # every half-edge in exactly one stored cycle
        seen = [0] * n
        for f in self.faces:
            for h in f.cycle:
                if 0 <= h < n:
                    seen[h] += 1
        for h in self.outer_boundary:
            if 0 <= h < n:
                seen[h] += 1
        ok = all(c == 1 for c in seen)
        bad = [h for h, c in enumerate(seen) if c != 1]
        entries.append(
            ("face_partition", ok, "each half-edge in one cycle" if ok else f"bad: {bad[:8]}")
        )

        # Euler characteristic
        euler = self.num_vertices - self.num_edges + self.num_faces
        entries.append(
            ("euler", euler == 1, f"V-E+F = {self.num_vertices}-{self.num_edges}+{self.num_faces} = {euler}")
        )

        # rotation system: permutation with vertex-star orbits, cycles are
        # orbits of next_rotation . twin, outer is one of them, genus 0
        ok = sorted(self.next_rotation) == list(range(n)) and all(
            self.origin[self.next_rotation[h]] == self.origin[h] for h in range(n)
        )
        rot_orbits = _orbit_count(self.next_rotation) if ok else -1
        ok = ok and rot_orbits == self.num_vertices
        psi = [self.next_rotation[self.twin[h]] for h in range(n)] if ok else []
        cycles_ok = ok
        if ok:
            for cyc in [f.cycle for f in self.faces] + [self.outer_boundary]:
                for i, e in enumerate(cyc):
                    if psi[e] != cyc[(i + 1) % len(cyc)]:
                        cycles_ok = False
            face_orbits = _orbit_count(tuple(psi))
            cycles_ok = cycles_ok and face_orbits == self.num_faces + 1
        entries.append(
            (
                "planarity",
                cycles_ok,
                f"rotation orbits {rot_orbits} (V={self.num_vertices}), "
                f"cycle orbits {self.num_faces + 1} expected",
            )
        )

        # connectivity of the primal skeleton, no loop edges
        ok_conn = self._connected()
        ok_loops = all(self.origin[h] != self.head(h) for h in range(n))
        entries.append(
            (
                "connectivity",
                ok_conn and ok_loops,
                ("connected" if ok_conn else "disconnected")
                + ("; no loop edges" if ok_loops else "; loop edge present"),
            )
        )

        # face labels
        ok, detail = self._check_labels(relators)
        entries.append(("labels", ok, detail))

        # informational: face-free edges are legal but the dual ignores them
        ff = self.face_free_edges()
        entries.append(("face_free_edges", True, f"{len(ff)} face-free edge(s)"))

        # every dual component must reach the boundary (killed network connected)
        entries.append(
            ("killed_dual_connected", self._killed_dual_connected(), "every dual component meets the boundary")
        )

        if self.basepoint is not None:
            ok = self.basepoint in self.boundary_vertices()
            entries.append(("basepoint", ok, f"vertex {self.basepoint} on outer walk"))

        return ValidationReport(tuple(entries))

    def _connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for h in range(self.num_half_edges):
            adj[self.origin[h]].append(self.head(h))
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def _check_labels(self, relators: Sequence[Sequence[Letter]] | None) -> tuple[bool, str]:
        for i, f in enumerate(self.faces):
            word = self.face_word(i)
            if f.kind == "free_bigon":
                if len(word) != 2 or word[1] != _inv(word[0]):
                    return False, f"face {i}: free bigon must spell s s^-1, got {word}"
            elif f.kind == "path_bigon":
                ell = f.path_len or 0
                if ell < 1 or len(word) != 2 * ell:
                    return False, f"face {i}: path bigon length mismatch"
                p, rest = word[:ell], word[ell:]
                if tuple(rest) != tuple(_inv(x) for x in reversed(p)):
                    return False, f"face {i}: path bigon must spell p then reversed inverse of p"
            else:
                if f.relator_id is None:
                    continue
                if relators is None:
                    continue
                if not (0 <= f.relator_id < len(relators)):
                    return False, f"face {i}: relator_id {f.relator_id} out of range"
                r = tuple(relators[f.relator_id])
                if not _is_rotation_of(word, r) and not _is_rotation_of(
                    word, tuple(_inv(x) for x in reversed(r))
                ):
                    return False, f"face {i}: cycle does not spell relator {f.relator_id} or its inverse"
                if f.rotation is not None:
                    if tuple(word) != r[f.rotation :] + r[: f.rotation]:
                        return False, f"face {i}: stored rotation {f.rotation} wrong"
        return True, "all face labels consistent"

    def _killed_dual_connected(self) -> bool:
        if not self.faces:
            return True
        fo = self.face_of()
        nf = len(self.faces)
        adj: list[set[int]] = [set() for _ in range(nf)]
        touches_boundary = [False] * nf
        for h in range(self.num_half_edges):
            if h >= self.twin[h]:
                continue
            a, b = fo[h], fo[self.twin[h]]
            if a >= 0 and b >= 0 and a != b:
                adj[a].add(b)
                adj[b].add(a)
            elif a >= 0 and b == -1:
                touches_boundary[a] = True
            elif b >= 0 and a == -1:
                touches_boundary[b] = True
        seen = [False] * nf
        for start in range(nf):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            stack = [start]
            hit = False
            while stack:
                f = stack.pop()
                hit = hit or touches_boundary[f]
                for g in adj[f]:
                    if not seen[g]:
                        seen[g] = True
                        comp.append(g)
                        stack.append(g)
            if not hit:
                return False
        return True

    # ---- incidence identity ---------------------------------------------

    def edge_face_identity_check(self) -> tuple[int, int, bool, tuple[int, ...]]:
        """2|E| versus sum of face lengths plus |boundary|, on the pure part.

        Returns (lhs, rhs, equal, face_free_edges); a nonempty last component
        signals impurity, in which case both sides exclude those edges.
        """
        ff = tuple(self.face_free_edges())
        lhs = self.num_half_edges - 2 * len(ff)
        rhs = sum(len(f.cycle) for f in self.faces) + len(self.outer_boundary) - 2 * len(ff)
        return lhs, rhs, lhs == rhs, ff

    # ---- serialization ---------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "vertices": self.num_vertices,
            "half_edges": [
                {
                    "id": h,
                    "origin": self.origin[h],
                    "twin": self.twin[h],
                    "next_rotation": self.next_rotation[h],
                    "label": {"generator": self.label[h][0], "sign": self.label[h][1]},
                }
                for h in range(self.num_half_edges)
            ],
            "faces": [_face_to_json(f) for f in self.faces],
            "outer_boundary": list(self.outer_boundary),
        }
        if self.basepoint is not None:
            obj["basepoint"] = self.basepoint
        return json.dumps(obj, indent=1)

    @staticmethod
    def from_json(text: str) -> "DiskDiagram":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"not JSON: {e}") from None
        for key in ("vertices", "half_edges", "faces", "outer_boundary"):
            if key not in obj:
                raise ValueError(f"schema error at $.{key}: missing")
        hes = obj["half_edges"]
        n = len(hes)
        origin = [0] * n
        twin = [0] * n
        rot = [0] * n
        label: list[Letter] = [("", 0)] * n
        for idx, he in enumerate(hes):
            for key in ("id", "origin", "twin", "next_rotation", "label"):
                if key not in he:
                    raise ValueError(f"schema error at $.half_edges[{idx}].{key}: missing")
            h = he["id"]
            if not (0 <= h < n):
                raise ValueError(f"schema error at $.half_edges[{idx}].id: out of range")
            origin[h] = he["origin"]
            twin[h] = he["twin"]
            rot[h] = he["next_rotation"]
            lab = he["label"]
            if "generator" not in lab or lab.get("sign") not in (1, -1):
                raise ValueError(f"schema error at $.half_edges[{idx}].label: bad label")
            label[h] = (lab["generator"], lab["sign"])
        nv = obj["vertices"]
        for h in range(n):
            for name, val, hi in (
                ("origin", origin[h], nv),
                ("twin", twin[h], n),
                ("next_rotation", rot[h], n),
            ):
                if not (isinstance(val, int) and 0 <= val < hi):
                    raise ValueError(f"schema error at $.half_edges[{h}].{name}: out of range")
            if twin[h] == h or twin[twin[h]] != h:
                raise ValueError(f"schema error at $.half_edges[{h}].twin: not an involution")
            g, s = label[h]
            tg, ts = label[twin[h]]
            if tg != g or ts != -s:
                raise ValueError(f"schema error at $.half_edges[{h}].label: twin not inverse")
        faces = []
        for idx, fo in enumerate(obj["faces"]):
            if "kind" not in fo or "cycle" not in fo:
                raise ValueError(f"schema error at $.faces[{idx}]: missing kind or cycle")
            faces.append(
                Face(
                    kind=fo["kind"],
                    cycle=tuple(fo["cycle"]),
                    relator_id=fo.get("relator_id"),
                    rotation=fo.get("rotation"),
                    path_len=fo.get("path_len"),
                )
            )
        return DiskDiagram(
            num_vertices=obj["vertices"],
            origin=tuple(origin),
            twin=tuple(twin),
            label=tuple(label),
            next_rotation=tuple(rot),
            faces=tuple(faces),
            outer_boundary=tuple(obj["outer_boundary"]),
            basepoint=obj.get("basepoint"),
        )

    def to_dot(self, with_dual: bool = False) -> str:
        onb = self.boundary_vertices()
        lines = ["graph diagram {"]
        for v in range(self.num_vertices):
            shape = "box" if v in onb else "circle"
            lines.append(f'  v{v} [shape={shape}, label="{v}"];')
        for h, t in self.edges():
            g, s = self.label[h]
            lab = g if s > 0 else g + "'"
            lines.append(f'  v{self.origin[h]} -- v{self.origin[t]} [label="{lab}"];')
        if with_dual and self.faces:
            fo = self.face_of()
            for i in range(len(self.faces)):
                lines.append(f'  f{i} [shape=point, color=gray, label="f{i}"];')
            for h, t in self.edges():
                a, b = fo[h], fo[t]
                if a >= 0 and b >= 0:
                    lines.append(f"  f{a} -- f{b} [style=dotted, color=gray];")
        lines.append("}")
        return "\n".join(lines)

    # ---- canonical form ---------------------------------------------------

    def canonicalize(self) -> "DiskDiagram":
        """Relabel ids deterministically.

        Vertices in discovery order of a walk starting at the outer boundary;
        half-edges sorted by (new origin, position in the vertex rotation),
        anchoring each rotation at the half-edge with the smallest canonical
        successor reachable; faces keep their order.
        """
        n = self.num_half_edges
        # order half-edges: walk outer first, then face cycles in order
        he_order: list[int] = []
        seen = set()
        for cyc in [self.outer_boundary] + [f.cycle for f in self.faces]:
            for h in cyc:
                if h not in seen:
                    seen.add(h)
                    he_order.append(h)
                t = self.twin[h]
                if t not in seen:
                    seen.add(t)
                    he_order.append(t)
        he_new = {h: i for i, h in enumerate(he_order)}
        v_order: list[int] = []
        v_seen = set()
        for h in he_order:
            v = self.origin[h]
            if v not in v_seen:
                v_seen.add(v)
                v_order.append(v)
        v_new = {v: i for i, v in enumerate(v_order)}

        origin = [0] * n
        twin = [0] * n
        rot = [0] * n
        label: list[Letter] = [("", 0)] * n
        for old, new in he_new.items():
            origin[new] = v_new[self.origin[old]]
            twin[new] = he_new[self.twin[old]]
            rot[new] = he_new[self.next_rotation[old]]
            label[new] = self.label[old]
        faces = tuple(
            replace(f, cycle=tuple(he_new[h] for h in f.cycle)) for f in self.faces
        )
        return DiskDiagram(
            num_vertices=self.num_vertices,
            origin=tuple(origin),
            twin=tuple(twin),
            label=tuple(label),
            next_rotation=tuple(rot),
            faces=faces,
            outer_boundary=tuple(he_new[h] for h in self.outer_boundary),
            basepoint=None if self.basepoint is None else v_new[self.basepoint],
        )


def _orbit_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        h = start
        while not seen[h]:
            seen[h] = True
            h = perm[h]
    return count


def _is_rotation_of(word: Sequence[Letter], rel: Sequence[Letter]) -> bool:
    if len(word) != len(rel):
        return False
    w, r = tuple(word), tuple(rel)
    return any(w == r[k:] + r[:k] for k in range(len(r)))


def _face_to_json(f: Face) -> dict:
    obj: dict = {"kind": f.kind, "cycle": list(f.cycle)}
    if f.relator_id is not None:
        obj["relator_id"] = f.relator_id
    if f.rotation is not None:
        obj["rotation"] = f.rotation
    if f.path_len is not None:
        obj["path_len"] = f.path_len
    return obj


class MovieBuilder:
    """Build a diagram by rewriting its boundary word inward.

    The frontier is the boundary walk of the not-yet-filled region, kept as a
    list of half-edges with the unfilled region on the left.  glue() consumes
    a stretch of the frontier and replaces it with a new path, creating one
    face; fold() cancels two adjacent mutually inverse frontier edges,
    identifying them as one edge.  The original boundary edges become the
    outer walk of the finished diagram.  finalize() requires an empty
    frontier and derives rotations from the accumulated cycles.
    """

    def __init__(self, boundary: Sequence[Letter], basepoint_first: bool = True):
        if not boundary:
            raise ValueError("empty boundary word")
        m = len(boundary)
        self._v_parent = list(range(m))
        self._origin: list[int] = []
        self._label: list[Letter] = []
        self._h_parent: list[int] = []
        self.frontier: list[int] = []
        self._face_specs: list[tuple[str, list[int], int | None, int | None]] = []
        self._outer: list[int] = []
        for i, letter in enumerate(boundary):
            h = self._new_edge(i, (i + 1) % m, letter)
            self.frontier.append(h)
            self._outer.append(h)
        self.basepoint = 0 if basepoint_first else None

    # vertex union-find
    def _v_find(self, v: int) -> int:
        root = v
        while self._v_parent[root] != root:
            root = self._v_parent[root]
        while self._v_parent[v] != root:
            self._v_parent[v], v = root, self._v_parent[v]
        return root

    def _v_union(self, a: int, b: int) -> None:
        ra, rb = self._v_find(a), self._v_find(b)
        if ra != rb:
            self._v_parent[max(ra, rb)] = min(ra, rb)

    def _new_vertex(self) -> int:
        v = len(self._v_parent)
        self._v_parent.append(v)
        return v

    # half-edge aliases from folds
    def _h_find(self, h: int) -> int:
        root = h
        while self._h_parent[root] != root:
            root = self._h_parent[root]
        while self._h_parent[h] != root:
            self._h_parent[h], h = root, self._h_parent[h]
        return root

    def _h_union(self, a: int, b: int) -> None:
        ra, rb = self._h_find(a), self._h_find(b)
        if ra != rb:
            self._h_parent[max(ra, rb)] = min(ra, rb)

    def _new_edge(self, u: int, v: int, letter: Letter) -> int:
        """Create the half-edge pair u->v / v->u; returns the u->v side."""
        h = len(self._origin)
        self._origin.extend([u, v])
        self._label.extend([letter, _inv(letter)])
        self._h_parent.extend([h, h + 1])
        return h

    @staticmethod
    def _twin(h: int) -> int:
        return h ^ 1

    def label_at(self, i: int) -> Letter:
        return self._label[self.frontier[i % len(self.frontier)]]

    def head_of(self, h: int) -> int:
        return self._v_find(self._origin[self._twin(h)])

    def glue(
        self,
        pos: int,
        consume: Sequence[Letter],
        emit: Sequence[Letter],
        relator_id: int | None = None,
        kind: str = "relator",
    ) -> int:
        """Attach one face along frontier[pos : pos+len(consume)].

        consume must match the frontier labels there (checked); emit becomes
        the replacement path.  The face cycle spells consume^-1 . emit, a
        cyclic rotation of the relator or its inverse.  Returns the index the
        face will have in the finished diagram.
        """
        k = len(consume)
        if k == 0 or len(self.frontier) < k:
            raise ValueError("bad glue length")
        if pos + k > len(self.frontier):
            raise ValueError("glue may not wrap the frontier anchor")
        eaten = self.frontier[pos : pos + k]
        got = [self._label[h] for h in eaten]
        if got != list(consume):
            raise ValueError(f"frontier mismatch at {pos}: {got} != {list(consume)}")
        if not emit and k != len(self.frontier):
            raise ValueError("empty emission only allowed on the full frontier")
        a = self._v_find(self._origin[eaten[0]])
        b = self.head_of(eaten[-1])
        new_edges: list[int] = []
        prev = a
        for j, letter in enumerate(emit):
            nxt = b if j == len(emit) - 1 else self._new_vertex()
            new_edges.append(self._new_edge(prev, nxt, letter))
            prev = nxt
        cycle = [self._twin(h) for h in reversed(eaten)] + new_edges
        self._face_specs.append((kind, cycle, relator_id, None))
        self.frontier[pos : pos + k] = new_edges
        return len(self._face_specs) - 1

    def fold(self, pos: int) -> None:
        """Identify frontier[pos] and frontier[pos+1] (mutually inverse)."""
        n = len(self.frontier)
        if n < 2:
            raise ValueError("nothing to fold")
        i, j = pos % n, (pos + 1) % n
        e1, e2 = self.frontier[i], self.frontier[j]
        if self._label[e2] != _inv(self._label[e1]):
            raise ValueError(
                f"fold needs inverse labels, got {self._label[e1]} {self._label[e2]}"
            )
        if e2 == self._twin(e1):
            raise ValueError("refusing to fold an edge onto itself")
        self._h_union(e2, self._twin(e1))
        self._h_union(self._twin(e2), e1)
        self._v_union(self.head_of(e2), self._v_find(self._origin[e1]))
        if i < j:
            del self.frontier[j]
            del self.frontier[i]
        else:  # wrapped pair
            del self.frontier[i]
            del self.frontier[j]

    def finalize(self, presentation_relators: Sequence[Sequence[Letter]] | None = None) -> DiskDiagram:
        if self.frontier:
            raise ValueError(f"movie incomplete: frontier has {len(self.frontier)} edges")
        # canonical half-edge roots, compacted; twin pairing must be preserved
        roots = sorted({self._h_find(h) for h in range(len(self._origin))})
        root_new = {r: i for i, r in enumerate(roots)}

        def resolve(h: int) -> int:
            return root_new[self._h_find(h)]

        v_roots = sorted({self._v_find(v) for v in range(len(self._v_parent))})
        v_new = {r: i for i, r in enumerate(v_roots)}
        n = len(roots)
        origin = [0] * n
        twin = [0] * n
        label: list[Letter] = [("", 0)] * n
        for r in roots:
            origin[root_new[r]] = v_new[self._v_find(self._origin[r])]
            twin[root_new[r]] = resolve(self._twin(r))
            label[root_new[r]] = self._label[r]
        faces = tuple(
            Face(kind=kind, cycle=tuple(resolve(h) for h in cyc), relator_id=rid)
            for kind, cyc, rid, _ in self._face_specs
        )
        outer = tuple(resolve(h) for h in self._outer)
        bp = None if self.basepoint is None else v_new[self._v_find(self.basepoint)]
        diagram = DiskDiagram.from_cycles(
            num_vertices=len(v_roots),
            origin=origin,
            twin=twin,
            label=label,
            faces=faces,
            outer_boundary=outer,
            basepoint=bp,
        )
        return diagram
