"""Stock disk diagrams: rectangles, fans, one-face disks, a collapse test
pair, and the three-stage commutator filling over the integral Heisenberg
presentation."""
from __future__ import annotations

from dataclasses import dataclass

from .halfedge import DiskDiagram, Face, Letter, MovieBuilder
from .presentations import (
    Presentation,
    fan_presentation,
    fixture_presentation,
    heisenberg_presentation,
    z2_presentation,
)

__all__ = [
    "grid",
    "fan",
    "single_relator_disk",
    "collapse_fixture",
    "CollapseFixture",
    "heisenberg_filling",
    "heisenberg_boundary_word",
    "HeisenbergFilling",
    "corridor_test_vector",
    "fixture_zoo",
]


# ---------------------------------------------------------------------------
# rectangle over <a,b | aba'b'>


def grid(p: int, q: int) -> DiskDiagram:
    """p-by-q block of commutator squares; boundary spells a^p b^q a^-p b^-q.

    Vertex (i,j) has id i*(q+1)+j.  Face cycles run clockwise starting with
    the west side, spelling b a b^-1 a^-1.
    """
    if p < 1 or q < 1:
        raise ValueError("grid needs p, q >= 1")
    qq = q + 1
    n_a = p * qq  # horizontal edges

    def v(i: int, j: int) -> int:
        return i * qq + j

    def ha(i: int, j: int) -> int:  # (i,j) -> (i+1,j)
        return 2 * (i * qq + j)

    def hb(i: int, j: int) -> int:  # (i,j) -> (i,j+1)
        return 2 * (n_a + i * q + j)

    origin: list[int] = []
    label: list[Letter] = []
    for i in range(p):
        for j in range(qq):
            origin.extend((v(i, j), v(i + 1, j)))
            label.extend((("a", 1), ("a", -1)))
    for i in range(p + 1):
        for j in range(q):
            origin.extend((v(i, j), v(i, j + 1)))
            label.extend((("b", 1), ("b", -1)))
    n = len(origin)
    twin = [h ^ 1 for h in range(n)]

    faces = tuple(
        Face(
            kind="relator",
            cycle=(hb(i, j), ha(i, j + 1), hb(i + 1, j) ^ 1, ha(i, j) ^ 1),
            relator_id=0,
        )
        for i in range(p)
        for j in range(q)
    )
    outer = (
        [ha(i, 0) for i in range(p)]
        + [hb(p, j) for j in range(q)]
        + [ha(i, q) ^ 1 for i in range(p - 1, -1, -1)]
        + [hb(0, j) ^ 1 for j in range(q - 1, -1, -1)]
    )
    return DiskDiagram.from_cycles(
        num_vertices=(p + 1) * qq,
        origin=origin,
        twin=twin,
        label=label,
        faces=faces,
        outer_boundary=outer,
        basepoint=0,
    )


# ---------------------------------------------------------------------------
# degree-pumping fan over <a,b,t | atb, b't a'>


def fan(m: int) -> DiskDiagram:
    """2m triangles around one hub; boundary spells t^{2m}.

    The hub is the single interior vertex, degree 2m.  Spokes alternate a and
    b^-1 so consecutive triangles carry the two relators alternately.
    """
    if m < 1:
        raise ValueError("fan needs m >= 1")
    k = 2 * m
    origin: list[int] = []
    label: list[Letter] = []
    for j in range(k):  # rim edge w_j -> w_{j+1}
        origin.extend((1 + j, 1 + (j + 1) % k))
        label.extend((("t", 1), ("t", -1)))
    for j in range(k):  # spoke c -> w_j
        origin.extend((0, 1 + j))
        lab: Letter = ("a", 1) if j % 2 == 0 else ("b", -1)
        label.extend((lab, (lab[0], -lab[1])))

    def rim(j: int) -> int:
        return 2 * j

    def spoke(j: int) -> int:
        return 2 * (k + j)

    faces = tuple(
        Face(
            kind="relator",
            cycle=(spoke((j + 1) % k), rim(j) ^ 1, spoke(j) ^ 1),
            relator_id=j % 2,
        )
        for j in range(k)
    )
    outer = [rim(j) for j in range(k)]
    return DiskDiagram.from_cycles(
        num_vertices=k + 1,
        origin=origin,
        twin=[h ^ 1 for h in range(len(origin))],
        label=label,
        faces=faces,
        outer_boundary=outer,
        basepoint=1,
    )


# ---------------------------------------------------------------------------
# one face, boundary = the relator


def single_relator_disk(relator: tuple[Letter, ...], relator_id: int = 0) -> DiskDiagram:
    """The disk with a single face whose boundary spells the given word."""
    L = len(relator)
    if L < 2:
        raise ValueError("relator must have length >= 2")
    origin: list[int] = []
    label: list[Letter] = []
    for i, (g, s) in enumerate(relator):
        origin.extend((i, (i + 1) % L))
        label.extend(((g, s), (g, -s)))
    face = Face(
        kind="relator",
        cycle=tuple(2 * i + 1 for i in range(L - 1, -1, -1)),
        relator_id=relator_id,
    )
    return DiskDiagram.from_cycles(
        num_vertices=L,
        origin=origin,
        twin=[h ^ 1 for h in range(2 * L)],
        label=label,
        faces=(face,),
        outer_boundary=tuple(2 * i for i in range(L)),
        basepoint=0,
    )


# ---------------------------------------------------------------------------
# collapse / unfold fixture


@dataclass(frozen=True)
class CollapseFixture:
    """A five-face disk D, its two-bigon unfolding D2, and the face sets
    whose hole-freeness flips under the collapse map.

    D has a path bigon sigma with sides x->m_p->y and x->m_q->y; D2
    identifies the midpoints and splits sigma into free bigons b1, b2.
    collapse maps both bigons back onto sigma and is the identity on the
    four relator faces.
    """

    base: DiskDiagram
    unfolded: DiskDiagram
    presentation: Presentation
    face_names: tuple[str, ...]
    unfolded_face_names: tuple[str, ...]
    collapse_map: tuple[int, ...]  # unfolded face id -> base face id
    subset_unfolded: frozenset[int]  # hole-free in unfolded

    @property
    def subset_base(self) -> frozenset[int]:
        """Image of subset_unfolded under the collapse map (not hole-free)."""
        return frozenset(self.collapse_map[i] for i in self.subset_unfolded)


def collapse_fixture() -> CollapseFixture:
    # vertices: x=0 m_p=1 y=2 o4=3 o3=4 o2=5 o1=6 n1=7 n2=8 m_q=9
    edges = [
        (0, 1, ("u", 1)),  # 0  x -> m_p
        (1, 2, ("v", 1)),  # 1  m_p -> y
        (2, 3, ("d", 1)),  # 2  y -> o4
        (3, 4, ("f", 1)),  # 3  o4 -> o3
        (4, 5, ("g", 1)),  # 4  o3 -> o2
        (5, 6, ("h", 1)),  # 5  o2 -> o1
        (6, 0, ("i", 1)),  # 6  o1 -> x
        (7, 8, ("a", 1)),  # 7  n1 -> n2
        (8, 2, ("b", 1)),  # 8  n2 -> y
        (9, 2, ("v", 1)),  # 9  m_q -> y
        (9, 7, ("c", 1)),  # 10 m_q -> n1
        (0, 9, ("u", 1)),  # 11 x -> m_q
        (5, 7, ("j", 1)),  # 12 o2 -> n1
        (8, 3, ("k", 1)),  # 13 n2 -> o4
    ]
    origin: list[int] = []
    label: list[Letter] = []
    for a, b, lab in edges:
        origin.extend((a, b))
        label.extend((lab, (lab[0], -lab[1])))
    twin = [h ^ 1 for h in range(28)]

    H = Face("relator", (14, 16, 19, 20), relator_id=0, rotation=0)  # a b v- c
    S = Face("relator", (17, 26, 5), relator_id=1, rotation=0)  # b- k d-
    N = Face("relator", (15, 25, 9, 7, 27), relator_id=2, rotation=0)  # a- j- g- f- k-
    W = Face("relator", (23, 13, 11, 24, 21), relator_id=3, rotation=0)  # u- i- h- j c-
    sigma = Face("path_bigon", (22, 18, 3, 1), path_len=2)  # u v v- u-
    outer = (0, 2, 4, 6, 8, 10, 12)

    base = DiskDiagram.from_cycles(
        num_vertices=10,
        origin=origin,
        twin=twin,
        label=label,
        faces=(H, N, W, S, sigma),
        outer_boundary=outer,
        basepoint=0,
    )

    # unfolded: merge m_p (1) and m_q (9) into one vertex, split sigma
    o2 = [1 if v == 9 else v for v in origin]
    b1 = Face("free_bigon", (22, 1))  # u u-
    b2 = Face("free_bigon", (18, 3))  # v v-
    unfolded = DiskDiagram.from_cycles(
        num_vertices=9,
        origin=o2,
        twin=twin,
        label=label,
        faces=(H, N, W, S, b1, b2),
        outer_boundary=outer,
        basepoint=0,
    )
    return CollapseFixture(
        base=base,
        unfolded=unfolded,
        presentation=fixture_presentation(),
        face_names=("H", "N", "W", "S", "sigma"),
        unfolded_face_names=("H", "N", "W", "S", "b1", "b2"),
        collapse_map=(0, 1, 2, 3, 4, 4),
        subset_unfolded=frozenset({1, 2, 3, 4}),  # N W S b1
    )


# ---------------------------------------------------------------------------
# Heisenberg commutator filling


_X, _Y, _Z = ("x", 1), ("y", 1), ("z", 1)
_Xi, _Yi, _Zi = ("x", -1), ("y", -1), ("z", -1)

# (consume, emit, relator id); each satisfies consume . emit^-1 ~ relator^+-1
_PENT = ((_X, _Y), (_Z, _Y, _X), 0)
_XZ = ((_X, _Z), (_Z, _X), 1)
_YZ = ((_Y, _Z), (_Z, _Y), 2)
_MPENT = ((_Yi, _Xi), (_Xi, _Yi, _Zi), 0)
_MXZ = ((_Zi, _Xi), (_Xi, _Zi), 1)
_MYZ = ((_Zi, _Yi), (_Yi, _Zi), 2)


def heisenberg_boundary_word(n: int) -> tuple[Letter, ...]:
    """x^{2n} y^n x^-n y^-n x^-n y^n x^n y^-n x^-n, length 10n."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(
        [_X] * (2 * n)
        + [_Y] * n
        + [_Xi] * n
        + [_Yi] * n
        + [_Xi] * n
        + [_Y] * n
        + [_X] * n
        + [_Yi] * n
        + [_Xi] * n
    )


@dataclass(frozen=True)
class HeisenbergFilling:
    """Filling of the length-10n commutator boundary word by 3n^3 faces.

    Structure: a right funnel converting x^n y^n ... into a z^{n^2} block,
    an n-by-n^2 corridor of x/z commutator squares pushing that block across
    the remaining x^n, and a mirrored left funnel absorbing it.

    corridor_faces[i][k] is the face id of the corridor square in row i
    (1-based row i+1, of n) and column k+1 (of n^2); rows are ordered by the
    x crossed, columns by position in the z block.
    """

    n: int
    diagram: DiskDiagram
    corridor_faces: tuple[tuple[int, ...], ...]
    move_counts: dict[str, int]


def _sort_block(b: MovieBuilder, lo: int, hi: int, move, counts, name: str) -> None:
    """Bubble the block frontier[lo..hi] until move's consume pattern is gone."""
    first, second = move[0]
    while True:
        for p in range(lo, hi):
            if b.label_at(p) == first and b.label_at(p + 1) == second:
                b.glue(p, move[0], move[1], relator_id=move[2])
                counts[name] += 1
                break
        else:
            return


def heisenberg_filling(n: int) -> HeisenbergFilling:
    b = MovieBuilder(heisenberg_boundary_word(n))
    counts = {k: 0 for k in ("pent", "xz", "yz", "mpent", "mxz", "myz")}
    nn = n * n

    def glue(pos: int, move, name: str) -> int:
        fid = b.glue(pos, move[0], move[1], relator_id=move[2])
        counts[name] += 1
        return fid

    # right funnel: consume x^n y^n x^-n y^-n, leave z^{n^2}
    for r in range(1, n + 1):
        pos = 2 * n - r
        for _ in range((r - 1) * n):
            glue(pos, _XZ, "xz")
            pos += 1
        block_lo = pos
        for _ in range(n):
            glue(pos, _PENT, "pent")
            pos += 2
        b.fold(pos)
        _sort_block(b, block_lo, block_lo + 2 * n - 1, _YZ, counts, "yz")
    for t in range(n):
        b.fold(n + nn + n - 1 - t)

    # corridor: push the z block across the leading x^n
    corridor: list[tuple[int, ...]] = []
    for i in range(1, n + 1):
        pos = n - i
        row = []
        for _ in range(nn):
            row.append(glue(pos, _XZ, "xz"))
            pos += 1
        b.fold(pos)
        corridor.append(tuple(row))

    # left funnel: mirror of the right one, then cancel the two z blocks
    for r in range(1, n + 1):
        pos = nn + 3 * n - r + 1 + (r - 1) * n
        for _ in range((r - 1) * n):
            pos -= 1
            glue(pos, _MXZ, "mxz")
        for _ in range(n):
            pos -= 1
            glue(pos, _MPENT, "mpent")
        b.fold(pos - 1)
        _sort_block(b, pos - 1, pos + 2 * n - 2, _MYZ, counts, "myz")
    for t in range(n):
        b.fold(nn + n - 1 - t)
    for t in range(nn):
        b.fold(nn - 1 - t)

    diagram = b.finalize()
    return HeisenbergFilling(
        n=n,
        diagram=diagram,
        corridor_faces=tuple(corridor),
        move_counts=counts,
    )


def corridor_test_vector(filling: HeisenbergFilling) -> list[float]:
    """Product-of-sines test function on the corridor, zero elsewhere.

    Vanishes on the first and last corridor rows, so its support only meets
    killed or zero faces across its boundary; needs n >= 3 to be nonzero.
    """
    import math

    n = filling.n
    if n < 3:
        raise ValueError("test function needs n >= 3")
    g = [0.0] * filling.diagram.num_faces
    for i in range(2, n):  # rows 2..n-1
        row_amp = math.sin(math.pi * (i - 1) / (n - 1))
        for k in range(1, n * n + 1):
            g[filling.corridor_faces[i - 1][k - 1]] = row_amp * math.sin(
                math.pi * k / (n * n + 1)
            )
    return g


# ---------------------------------------------------------------------------
# assorted small diagrams for cross-checks


def fixture_zoo() -> list[tuple[str, DiskDiagram, Presentation]]:
    """Small named diagrams paired with their presentations."""
    z2 = z2_presentation()
    fan_p = fan_presentation()
    heis = heisenberg_presentation()
    fx = collapse_fixture()
    out = [
        ("Q22", grid(2, 2), z2),
        ("Q23", grid(2, 3), z2),
        ("Q33", grid(3, 3), z2),
        ("Q14", grid(1, 4), z2),
        ("fan1", fan(1), fan_p),
        ("fan2", fan(2), fan_p),
        ("fan3", fan(3), fan_p),
        ("disk_z2", single_relator_disk(z2.relators[0].letters), z2),
        ("collapse", fx.base, fx.presentation),
        ("collapse_unfolded", fx.unfolded, fx.presentation),
        ("heis1", heisenberg_filling(1).diagram, heis),
        ("heis2", heisenberg_filling(2).diagram, heis),
    ]
    return out
