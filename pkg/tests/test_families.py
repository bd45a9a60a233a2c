"""Stock diagram families and the staged commutator filling."""
import math

import pytest

from fillspec.families import (
    collapse_fixture,
    corridor_test_vector,
    fan,
    grid,
    heisenberg_boundary_word,
    heisenberg_filling,
)
from fillspec.isoperimetry import is_hole_free, multiboundary
from fillspec.presentations import parse_word


def _relators(p):
    return {i: r.letters for i, r in enumerate(p.relators)}


def test_zoo_validates_with_relators(zoo):
    for name, (d, p) in zoo.items():
        rep = d.validate(relators=_relators(p))
        assert rep.ok, f"{name}: {rep}"


def test_grid_shape():
    d = grid(3, 4)
    assert d.num_vertices == 4 * 5
    assert d.num_edges == 3 * 5 + 4 * 4
    assert d.num_faces == 12
    assert d.boundary_length() == 14
    assert d.boundary_word() == tuple(parse_word("a a a b b b b a- a- a- b- b- b- b-"))
    assert d.basepoint == 0


def test_grid_rejects_bad_size():
    with pytest.raises(ValueError):
        grid(0, 3)


def test_fan_shape():
    for m in (1, 2, 5, 8):
        d = fan(m)
        assert d.num_faces == 2 * m
        assert d.boundary_word() == tuple(parse_word(" ".join(["t"] * (2 * m))))
        hub = d.interior_vertices()
        assert len(hub) == 1
        assert d.degrees()[next(iter(hub))] == 2 * m


def test_heisenberg_counts():
    for n in (1, 2, 3, 4):
        f = heisenberg_filling(n)
        d = f.diagram
        assert d.num_faces == 3 * n**3
        assert d.num_edges == 6 * n**3 + n * n + 5 * n
        assert d.num_vertices == 3 * n**3 + n * n + 5 * n + 1
        assert d.boundary_length() == 10 * n
        assert d.boundary_word() == heisenberg_boundary_word(n)
        assert sum(len(row) for row in f.corridor_faces) == n**3
        assert len(f.corridor_faces) == n
        assert all(len(row) == n * n for row in f.corridor_faces)


def test_heisenberg_move_counts():
    f = heisenberg_filling(3)
    n = 3
    want_funnel = n * n * (n - 1) // 2
    assert f.move_counts["pent"] == n * n
    assert f.move_counts["mpent"] == n * n
    assert f.move_counts["yz"] == want_funnel
    assert f.move_counts["mxz"] == want_funnel
    assert f.move_counts["myz"] == want_funnel
    assert f.move_counts["xz"] == n**3 + want_funnel
    assert sum(f.move_counts.values()) == 3 * n**3


def test_corridor_vector_support():
    f = heisenberg_filling(4)
    vec = corridor_test_vector(f)
    support = {i for i, v in enumerate(vec) if v != 0.0}
    inner_rows = f.corridor_faces[1:-1]
    expected = {fid for row in inner_rows for fid in row}
    assert support == expected
    top = f.corridor_faces[1][0]
    assert vec[top] == pytest.approx(
        math.sin(math.pi / 3) * math.sin(math.pi / 17)
    )


def test_corridor_vector_needs_three_rows():
    with pytest.raises(ValueError):
        corridor_test_vector(heisenberg_filling(2))


def test_collapse_fixture_shape():
    fx = collapse_fixture()
    assert fx.base.num_vertices == 10
    assert fx.base.num_edges == 14
    assert fx.base.num_faces == 5
    assert fx.unfolded.num_vertices == 9
    assert fx.unfolded.num_faces == 6
    assert fx.face_names == ("H", "N", "W", "S", "sigma")
    assert fx.collapse_map == (0, 1, 2, 3, 4, 4)


def test_collapse_subset_behavior():
    fx = collapse_fixture()
    assert is_hole_free(fx.unfolded, fx.subset_unfolded)
    assert not is_hole_free(fx.base, fx.subset_base)
    loops = multiboundary(fx.base, fx.subset_base).loops
    assert sorted(len(l) for l in loops) == [4, 7]
