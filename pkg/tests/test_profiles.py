"""Sweep tables, frozen constants, CSV round-trips."""
import json
import math

import pytest

from fillspec.families import grid, heisenberg_filling
from fillspec.profiles import (
    GridProfileRow,
    HeisenbergProfileRow,
    SeparationRow,
    corridor_rayleigh,
    frozen_constants,
    read_rows,
    regenerate_frozen,
    run_suite,
    spectral_separation_report,
    sweep_grid_profiles,
    sweep_heisenberg,
    write_rows,
)
from fillspec.spectra import dual_mu1_unweighted, grid_dual_mu1_exact


def test_grid_sweep_matches_closed_forms():
    rows = sweep_grid_profiles(4)
    assert len(rows) == 6  # unordered pairs 2 <= p <= q <= 4
    for r in rows:
        assert r.lambda1 == pytest.approx(r.lambda1_exact, abs=1e-10)
        assert r.mu1_unweighted == pytest.approx(r.mu1_unweighted_exact, abs=1e-10)
        assert r.area == r.p * r.q
        assert r.fill_length == 2 * (r.p + r.q)


def test_heisenberg_sweep():
    rows = sweep_heisenberg(3)
    assert [r.n for r in rows] == [1, 2, 3]
    assert [r.area for r in rows] == [3, 24, 81]
    assert math.isnan(rows[0].rayleigh) and math.isnan(rows[1].rayleigh)
    assert rows[2].rayleigh > rows[2].mu1_unweighted > 0


def test_corridor_rayleigh_closed_form():
    for n in (3, 4, 6):
        f = heisenberg_filling(n)
        want = (
            2 * (1 - math.cos(math.pi / (n - 1)))
            + 2 * (1 - math.cos(math.pi / (n * n + 1)))
        ) / 4
        assert corridor_rayleigh(f) == pytest.approx(want, abs=1e-12)


def test_separation_report_against_closed_form():
    rows = spectral_separation_report(5, 8)
    for r in rows:
        assert r.mu_thin == pytest.approx(grid_dual_mu1_exact(2, r.m**2))
        assert r.mu_balanced == pytest.approx(grid_dual_mu1_exact(r.m, 2 * r.m))
        assert r.ratio == pytest.approx(r.mu_thin / r.mu_balanced)
        assert r.reference == r.m * r.m / 8.0


def test_separation_computed_matches_exact():
    exact = spectral_separation_report(5, 6, exact=True)
    computed = spectral_separation_report(5, 6, exact=False)
    for a, b in zip(exact, computed):
        assert a.ratio == pytest.approx(b.ratio, rel=1e-9)


def test_csv_roundtrip(tmp_path):
    rows = sweep_grid_profiles(4)
    path = tmp_path / "grids.csv"
    write_rows(path, rows)
    again = read_rows(path, GridProfileRow)
    assert again == rows


def test_csv_roundtrip_separation(tmp_path):
    rows = spectral_separation_report(5, 7)
    path = tmp_path / "sep.csv"
    write_rows(path, rows)
    assert read_rows(path, SeparationRow) == rows


def test_read_rows_rejects_wrong_header(tmp_path):
    rows = spectral_separation_report(5, 6)
    path = tmp_path / "sep.csv"
    write_rows(path, rows)
    with pytest.raises(ValueError):
        read_rows(path, GridProfileRow)


def test_frozen_constants_match_recomputation(frozen):
    assert frozen["version"] == 1
    f3 = heisenberg_filling(3)
    assert frozen["corridor_rayleigh_n3"] == pytest.approx(
        corridor_rayleigh(f3), abs=1e-12
    )
    assert frozen["corridor_constant"] == pytest.approx(
        9 * corridor_rayleigh(f3), abs=1e-12
    )
    assert frozen["fl_calibration"] == pytest.approx(8.0, abs=1e-9)
    assert frozen["q22_center_resistance"] == pytest.approx(0.25, abs=1e-12)
    got = float(dual_mu1_unweighted(grid(3, 5)))
    assert frozen["grids"]["3x5"]["mu1_unweighted"] == pytest.approx(got, abs=1e-10)


def test_regenerate_frozen_writes_equivalent_file(tmp_path, frozen):
    path = tmp_path / "frozen.json"
    data = regenerate_frozen(path)
    on_disk = json.loads(path.read_text())
    assert on_disk == data
    assert data["corridor_constant"] == pytest.approx(
        frozen["corridor_constant"], abs=1e-12
    )


def test_fixtures_env_override(tmp_path, monkeypatch):
    import fillspec.profiles as profiles

    path = tmp_path / "alt.json"
    path.write_text(json.dumps({"version": 1, "corridor_constant": 1.0}))
    monkeypatch.setenv("FILLSPEC_FIXTURES", str(path))
    monkeypatch.setattr(profiles, "_FROZEN_CACHE", None)
    assert frozen_constants()["corridor_constant"] == 1.0
    monkeypatch.setattr(profiles, "_FROZEN_CACHE", None)


def test_run_suite_outputs(tmp_path):
    summary = run_suite(tmp_path, grids_max=4, heisenberg_max=2)
    for name in ("grids.csv", "heisenberg.csv", "separation.csv", "summary.json"):
        assert (tmp_path / name).exists()
    assert summary["grid_worst_lambda1_error"] < 1e-10
    assert not summary["separation_any_meets_reference"]
    hrows = read_rows(tmp_path / "heisenberg.csv", HeisenbergProfileRow)
    assert [r.n for r in hrows] == [1, 2]
