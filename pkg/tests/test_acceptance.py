"""Acceptance gate: one test per criterion, pinned tolerances.

Run with -v to get one pass/fail line per criterion.  Two criteria assert
stated targets that the closest faithful construction provably cannot
meet (the staged filling's area law in criterion 6, the separation ratio
in criterion 15); those tests fail honestly rather than being weakened,
and their failure messages say what the implementation delivers instead.
"""
import math
import random
import time

import pytest

from fillspec.families import (
    collapse_fixture,
    fan,
    fixture_zoo,
    grid,
    heisenberg_filling,
    single_relator_disk,
)
from fillspec.filling import fillarea_oracle, fl_exact, fl_greedy, hfmhqm_check
from fillspec.isoperimetry import (
    boundary_half_edges,
    cheeger_dual,
    cheeger_primal,
    hole_fill,
    is_dual_connected,
    is_hole_free,
    multiboundary,
)
from fillspec.presentations import (
    fan_presentation,
    parse_word,
    surface_presentation,
    z2_presentation,
)
from fillspec.profiles import corridor_rayleigh, spectral_separation_report
from fillspec.resistance import extremal_inversion_check
from fillspec.spectra import (
    dual_mu1_unweighted,
    dual_mu1_weighted,
    grid_dual_mu1_exact,
    grid_lambda1_exact,
    primal_lambda1,
)

GRID_RANGE = range(2, 51)
_GRID_CACHE: dict | None = None


def _all_grids() -> dict:
    global _GRID_CACHE
    if _GRID_CACHE is None:
        _GRID_CACHE = {
            (p, q): grid(p, q) for p in GRID_RANGE for q in GRID_RANGE
        }
    return _GRID_CACHE


def test_criterion_01_primal_gap_closed_form_all_grids():
    """lambda1 matches the product cosine form on every grid, under 60 s."""
    t0 = time.perf_counter()
    grids = _all_grids()
    worst = 0.0
    for (p, q), d in grids.items():
        got = float(primal_lambda1(d))
        worst = max(worst, abs(got - grid_lambda1_exact(p, q)))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-10, f"worst primal deviation {worst}"
    assert elapsed < 60.0, f"primal sweep took {elapsed:.1f}s"


def test_criterion_02_dual_gap_closed_form_all_grids():
    """unweighted dual gap matches its closed form on every grid, under 60 s."""
    t0 = time.perf_counter()
    grids = _all_grids()
    worst = 0.0
    for (p, q), d in grids.items():
        got = float(dual_mu1_unweighted(d))
        worst = max(worst, abs(got - grid_dual_mu1_exact(p, q)))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-10, f"worst dual deviation {worst}"
    assert elapsed < 60.0, f"dual sweep took {elapsed:.1f}s"


def test_criterion_03_fill_length_of_grids():
    """FL(grid) = 2(p+q): exactly for p,q <= 4, greedily for p,q <= 10."""
    for p in (2, 3, 4):
        for q in (2, 3, 4):
            d = grid(p, q)
            r = fl_exact(d, basepoint=d.basepoint)
            assert r.exhaustive and r.value == 2 * (p + q), (p, q, r.value)
    for p in range(2, 11):
        for q in range(2, 11):
            assert fl_greedy(grid(p, q)).value == 2 * (p + q), (p, q)


def test_criterion_04_fill_area_oracle_values():
    """oracle: pq on commutator rectangles, 2m on fan powers, 0 on trivial."""
    z2 = z2_presentation()
    for p, q in ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (1, 8)):
        w = parse_word(" ".join(["a"] * p + ["b"] * q + ["a-"] * p + ["b-"] * q))
        r = fillarea_oracle(z2, w)
        assert r.status == "exact" and r.value == p * q, (p, q, r)
    fp = fan_presentation()
    for m in (1, 2, 3):
        r = fillarea_oracle(fp, parse_word(" ".join(["t"] * (2 * m))))
        assert r.status == "exact" and r.value == 2 * m, (m, r)
    r = fillarea_oracle(z2, parse_word("a b b- a-"))
    assert r.status == "exact" and r.value == 0


def test_criterion_05_fan_geometry():
    """fans keep one interior vertex of degree 2m and area 2m, m <= 8."""
    for m in range(1, 9):
        d = fan(m)
        interior = d.interior_vertices()
        assert len(interior) == 1, m
        hub = next(iter(interior))
        assert d.degrees()[hub] == 2 * m, m
        assert d.area == 2 * m, m


def test_criterion_06_staged_filling_family():
    """area law, 10n boundary, corridor Rayleigh chain, n = 12 under 5 min.

    The stated area n^3 + 2n^2 is not achievable by any diagram gluing
    counted the way this package counts faces; the closest faithful
    construction realizes 3n^3 (funnel + corridor + mirror funnel) and is
    what everything else here is checked against.  This test asserts the
    stated law and fails honestly on it.
    """
    t0 = time.perf_counter()
    frozen_c = 9.0 * corridor_rayleigh(heisenberg_filling(3))
    area_misses = []
    for n in range(3, 13):
        f = heisenberg_filling(n)
        d = f.diagram
        assert d.boundary_length() == 10 * n, n
        mu = float(dual_mu1_unweighted(d))
        ray = corridor_rayleigh(f)
        assert mu <= ray + 1e-12, (n, mu, ray)
        assert ray <= frozen_c / n**2 + 1e-12, (n, ray, frozen_c)
        if d.area != n**3 + 2 * n**2:
            area_misses.append((n, d.area))
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0, f"sweep took {elapsed:.1f}s"
    assert not area_misses, (
        "stated area law n^3 + 2n^2 unmet; construction yields 3n^3: "
        + ", ".join(f"n={n}: {a}" for n, a in area_misses)
    )


def test_criterion_07_cheeger_lower_bounds():
    """lambda1 >= h^2/2 and mu1 >= h~^2/(2 Lmax^2) on the small fixtures."""
    for name, d, _ in fixture_zoo():
        if d.num_faces == 0 or d.num_faces > 20:
            continue
        if len(d.interior_vertices()) > 20:
            continue
        lmax = max(d.face_boundary_length(i) for i in range(d.num_faces))
        if d.interior_vertices():
            lam = float(primal_lambda1(d))
            h = cheeger_primal(d)
            assert h.exhaustive, name
            hv = h.value.unwrap()
            assert lam >= hv * hv / 2.0 - 1e-9, (name, lam, hv)
        mu = float(dual_mu1_unweighted(d))
        hd = cheeger_dual(d)
        assert hd.exhaustive, name
        hdv = hd.value.unwrap()
        assert mu >= hdv * hdv / (2.0 * lmax * lmax) - 1e-9, (name, mu, hdv)


def test_criterion_08_multiboundary_norm_is_cut_size():
    """loop decomposition covers the boundary set exactly, 200 draws each."""
    rng = random.Random(20260817)
    fixtures = [
        grid(4, 4),
        fan(4),
        heisenberg_filling(3).diagram,
        collapse_fixture().base,
    ]
    for d in fixtures:
        nf = d.num_faces
        for _ in range(200):
            A = frozenset(rng.sample(range(nf), rng.randint(1, nf)))
            cut = boundary_half_edges(d, A)
            mb = multiboundary(d, A)
            assert mb.norm == len(cut)
            assert sorted(h for loop in mb.loops for h in loop) == sorted(cut)


def test_criterion_09_hole_fill_contract():
    """hole_fill grows the set, kills holes, never increases the norm."""
    rng = random.Random(71)
    fixtures = [grid(3, 3), grid(4, 4), collapse_fixture().base, fan(3)]
    for d in fixtures:
        nf = d.num_faces
        for _ in range(100):
            A = frozenset(rng.sample(range(nf), rng.randint(1, nf)))
            filled = hole_fill(d, A)
            assert filled >= A
            assert is_hole_free(d, filled)
            assert multiboundary(d, filled).norm <= multiboundary(d, A).norm
            if is_dual_connected(d, A):
                assert is_dual_connected(d, filled)


def test_criterion_10_collapse_breaks_hole_freeness():
    """the folded subset is hole-free upstairs but not after collapsing."""
    fx = collapse_fixture()
    up = fx.subset_unfolded
    assert is_dual_connected(fx.unfolded, up)
    assert is_hole_free(fx.unfolded, up)
    down = frozenset(fx.collapse_map[f] for f in up)
    assert down == fx.subset_base
    assert is_dual_connected(fx.base, down)
    assert not is_hole_free(fx.base, down)


def test_criterion_11_quasi_minimality_of_grid_subsets():
    """every hole-free dual-connected subset is boundary-minimal, kappa 1."""
    z2c = z2_presentation().free_completion()
    for p, q in ((2, 2), (2, 3), (3, 3)):
        rep = hfmhqm_check(grid(p, q), z2c, kappa=1.0, cap=20)
        assert rep.status == "pass", (p, q, rep.status)
        assert not rep.failures and not rep.undecided


def test_criterion_12_resistance_sandwich():
    """1/(lambda1 vol) <= R_eff <= dist <= FL/2, equality 1/4 on the 2x2."""
    for p, q in ((2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 6), (5, 5), (7, 7)):
        rep = extremal_inversion_check(grid(p, q), tol=1e-9)
        assert rep.ok, (p, q, rep.lines())
    rep = extremal_inversion_check(grid(2, 2), tol=1e-9)
    assert rep.resistance == pytest.approx(0.25, abs=1e-12)
    assert rep.lower_bound == pytest.approx(0.25, abs=1e-12)


def test_criterion_13_fill_length_versus_gap():
    """FL*Area >= (2/Lmax)/lambda1 and FL >= c' / sqrt(lambda1), c' from p=2."""
    lam2 = grid_lambda1_exact(2, 2)
    c_prime = fl_exact(grid(2, 2)).value * math.sqrt(lam2)
    for p in range(2, 51):
        d = grid(p, p)
        r = fl_exact(d)
        assert r.exhaustive, p
        lam = grid_lambda1_exact(p, p)
        assert r.value * d.area >= (2.0 / 4.0) / lam - 1e-9, p
        assert r.value >= c_prime / math.sqrt(lam) - 1e-9, (
            p,
            r.value,
            c_prime / math.sqrt(lam),
        )


def test_criterion_14_area_bounded_by_dual_gap():
    """Area <= boundary / (l_min * mu1) on every fixture with faces."""
    diagrams = [(name, d) for name, d, _ in fixture_zoo() if d.num_faces]
    diagrams.append(("heis3", heisenberg_filling(3).diagram))
    for name, d in diagrams:
        lmin = min(d.face_boundary_length(i) for i in range(d.num_faces))
        mu = float(dual_mu1_unweighted(d))
        bound = d.boundary_length() / (lmin * mu)
        assert d.area <= bound + 1e-9, (name, d.area, bound)


def test_criterion_15_spectral_separation():
    """faceless diagrams report the infinity marker, one face gives gap 1,
    and the thin/balanced rectangle ratio beats m^2/8 for every m in 5..20.

    The first two parts hold.  The stated ratio target is numerically false
    for this family (the true ratio grows like m^2/12.34 and sits below
    m^2/8 throughout 5..20); the assertion is kept as stated and fails.
    """
    from fillspec.halfedge import MovieBuilder

    b = MovieBuilder(parse_word("u u-"))
    b.fold(0)
    faceless = b.finalize()
    assert dual_mu1_unweighted(faceless).value.is_infinite
    assert dual_mu1_weighted(faceless).value.is_infinite
    assert dual_mu1_unweighted(faceless).value.to_json() == "inf"

    genus2 = surface_presentation(2).relators[0]
    disk = single_relator_disk(genus2)
    assert float(dual_mu1_unweighted(disk)) == pytest.approx(1.0, abs=1e-12)

    rows = spectral_separation_report(5, 20)
    misses = [(r.m, r.ratio, r.reference) for r in rows if not r.meets_reference]
    assert not misses, (
        "separation ratio below the stated m^2/8 for all m; "
        "observed ratio ~ m^2/12.34: "
        + ", ".join(f"m={m}: {ratio:.3f} < {ref:.3f}" for m, ratio, ref in misses)
    )
