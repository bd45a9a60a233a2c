"""Effective resistance, boundary distance, Dirichlet metrics."""
import pytest

from fillspec.families import fan, grid
from fillspec.resistance import (
    dirichlet_metric,
    distance_to_boundary,
    effective_resistance,
    extremal_inversion_check,
)
from fillspec.spectra import primal_lambda1


def test_star_resistance():
    # the fan hub sees 2m parallel unit edges to the grounded rim
    for m in (1, 2, 4, 7):
        d = fan(m)
        hub = next(iter(d.interior_vertices()))
        assert effective_resistance(d, hub) == pytest.approx(1 / (2 * m))


def test_q22_center_resistance_quarter():
    assert effective_resistance(grid(2, 2), 4) == pytest.approx(0.25, abs=1e-12)


def test_boundary_vertex_resistance_zero():
    assert effective_resistance(grid(2, 2), 0) == 0.0


def test_resistance_monotone_in_grid_size():
    # growing the grid around the center only adds material
    vals = []
    for p in (2, 4, 6, 8):
        d = grid(p, p)
        center = (p // 2) * (p + 1) + p // 2
        vals.append(effective_resistance(d, center))
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_distance_to_boundary():
    d = grid(4, 4)
    dist = distance_to_boundary(d)
    assert dist[0] == 0
    center = 2 * 5 + 2
    assert dist[center] == 2
    assert max(dist.values()) == 2


def test_dirichlet_metric_of_ground_state():
    d = grid(3, 4)
    met = dirichlet_metric(d)
    lam = float(primal_lambda1(d))
    assert met.rayleigh == pytest.approx(lam, rel=1e-9)
    assert met.energy > 0
    assert len(met.edge_lengths) == d.num_edges


def test_dirichlet_metric_rejects_boundary_supported():
    d = grid(2, 2)
    f = [1.0] * d.num_vertices
    for v in d.interior_vertices():
        f[v] = 0.0
    with pytest.raises(ValueError):
        dirichlet_metric(d, f)


@pytest.mark.parametrize("p,q", [(2, 2), (3, 3), (4, 6), (7, 7)])
def test_inversion_sandwich_on_grids(p, q):
    rep = extremal_inversion_check(grid(p, q))
    assert rep.ok, rep.lines()
    assert rep.lower_bound <= rep.resistance + 1e-12
    assert rep.resistance <= rep.distance + 1e-12
    assert 2 * rep.distance <= rep.fill_length + 1e-12


def test_inversion_equality_at_q22():
    rep = extremal_inversion_check(grid(2, 2))
    assert rep.resistance == pytest.approx(rep.lower_bound, abs=1e-12)
    assert rep.v0 == 4
    assert rep.vol_interior == 4


def test_inversion_requires_interior():
    with pytest.raises(ValueError):
        extremal_inversion_check(grid(1, 4))
