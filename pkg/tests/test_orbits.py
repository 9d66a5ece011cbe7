import math

import numpy as np
import pytest

from hbcalc.errors import (
    CatalogError,
    DegenerateThresholdError,
    SpectralResolutionError,
)
from hbcalc.orbits import (
    Catalog,
    OrbitRef,
    SimpleOrbit,
    is_simply_covered_eigenfunction,
)
from hbcalc.spectral import build_operator, spectrum_from_loop

from support import hyperbolic_loop, rotating_axis_loop, rotation_loop


class TestAlpha:
    def test_rotation_threshold_zero(self, fixture_catalog):
        assert fixture_catalog.alpha(OrbitRef("rot_p"), 0.0, "minus") == 0

    def test_rotation_threshold_minus_two(self, fixture_catalog):
        # eigenvalues -5*pi/2 (winding -1) and -pi/2 (winding 0) straddle -2
        assert fixture_catalog.alpha(OrbitRef("rot_p"), -2.0, "minus") == -1
        assert fixture_catalog.alpha(OrbitRef("rot_p"), -2.0, "plus") == 0

    def test_hyperbolic_threshold_zero(self, fixture_catalog):
        assert fixture_catalog.alpha(OrbitRef("hyp_even"), 0.0, "minus") == 0
        assert fixture_catalog.alpha(OrbitRef("hyp_even"), 0.0, "plus") == 0

    def test_threshold_on_eigenvalue_rejected(self, fixture_catalog):
        with pytest.raises(DegenerateThresholdError):
            fixture_catalog.alpha(OrbitRef("hyp_even"), 1.0, "minus")


class TestCzIndex:
    def test_rotation_unconstrained(self, fixture_catalog):
        s = fixture_catalog.cz_index(OrbitRef("rot_p"), 0.0)
        assert (s.alpha_minus, s.alpha_plus, s.parity, s.mu_cz) == (0, 1, 1, 1)

    def test_rotation_constrained(self, fixture_catalog):
        # counting form: mu - #(spectrum in (-2, 0)) = 1 - 2 (eigenvalue -pi/2 is double)
        s = fixture_catalog.cz_index(OrbitRef("rot_p"), -2.0)
        assert (s.alpha_minus, s.alpha_plus, s.parity, s.mu_cz) == (-1, 0, 1, -1)

    def test_hyperbolic(self, fixture_catalog):
        s = fixture_catalog.cz_index(OrbitRef("hyp_even"), 0.0)
        assert (s.alpha_minus, s.alpha_plus, s.parity, s.mu_cz) == (0, 0, 0, 0)

    def test_counting_form_on_random_thresholds(self, fixture_catalog):
        rng = np.random.default_rng(5)
        for orbit_id in fixture_catalog.ids():
            for k in (1, 2):
                ref = OrbitRef(orbit_id, k)
                table = fixture_catalog.table(ref, 6.0)
                eigenvalues = table.eigenvalues()
                base = fixture_catalog.cz_index(ref, 0.0)
                checked = 0
                while checked < 50:
                    t = float(rng.uniform(-5.0, 5.0))
                    if min(abs(x - t) for x in eigenvalues) < 0.05:
                        continue
                    s = fixture_catalog.cz_index(ref, t)
                    if t < 0:
                        counted = base.mu_cz - table.count_open(t, 0.0)
                    else:
                        counted = base.mu_cz + table.count_open(0.0, t)
                    assert s.mu_cz == counted
                    assert s.parity in (0, 1)
                    assert s.mu_cz == 2 * s.alpha_minus + s.parity
                    assert s.mu_cz == 2 * s.alpha_plus - s.parity
                    checked += 1


class TestBadOrbits:
    def test_elliptic_simple_cover_not_bad(self, fixture_catalog):
        assert not fixture_catalog.is_bad(OrbitRef("rot_p", 1))

    def test_odd_hyperbolic_double_is_bad(self, fixture_catalog):
        assert fixture_catalog.is_bad(OrbitRef("hyp_odd", 2))

    def test_even_hyperbolic_double_not_bad(self, fixture_catalog):
        assert not fixture_catalog.is_bad(OrbitRef("hyp_even", 2))

    def test_table_mode_needs_hyperbolic_flag(self):
        loop = rotating_axis_loop(1)
        tables = {
            1: spectrum_from_loop(loop, window=9.0),
            2: spectrum_from_loop(loop.cover(2), window=9.0),
        }
        catalog = Catalog([SimpleOrbit("tab_odd", 1.0, tables, hyperbolic=None)])
        with pytest.raises(CatalogError, match="hyperbolic"):
            catalog.is_bad(OrbitRef("tab_odd", 2))
        catalog = Catalog([SimpleOrbit("tab_odd", 1.0, tables, hyperbolic=True)])
        assert catalog.is_bad(OrbitRef("tab_odd", 2))


class TestSimplyCovered:
    def test_coprime(self):
        assert is_simply_covered_eigenfunction(2, 3)

    def test_both_even(self):
        assert not is_simply_covered_eigenfunction(2, 4)

    def test_simple_orbit_winding_zero(self):
        assert is_simply_covered_eigenfunction(1, 0)
        assert not is_simply_covered_eigenfunction(3, 0)


class TestCoveringLemma:
    @pytest.mark.parametrize("k,n", [(2, 33), (3, 35)])
    def test_cover_eigenfunctions_by_explicit_construction(self, k, n):
        # with gcd(k, n) = 1 the covered eigenvector is an index permutation,
        # so its eigen-residual can be checked exactly
        loop = rotating_axis_loop(1, n=n)
        base = build_operator(loop)
        vals, vecs = np.linalg.eigh(base)
        cover_loop = loop.cover(k, grid=n)
        cover_op = build_operator(cover_loop)
        perm = (k * np.arange(n)) % n
        keep = np.abs(vals) <= 6.0
        for lam, vec in zip(vals[keep], vecs[:, keep].T):
            covered = vec.reshape(n, 2)[perm].reshape(2 * n)
            residual = cover_op @ covered - k * lam * covered
            assert np.max(np.abs(residual)) < 1e-9

    def test_windowed_eigenfunctions_cover_iff_winding_multiple(self, fixture_catalog):
        k = 2
        for orbit_id in fixture_catalog.ids():
            base = fixture_catalog.table(OrbitRef(orbit_id, 1), 4.0)
            cover = fixture_catalog.table(OrbitRef(orbit_id, 2), 9.0)
            base_pairs = [(e.eigenvalue, e.winding) for e in base.entries]
            for e in cover.entries:
                if abs(e.eigenvalue) > 2 * 4.0:
                    continue
                found = any(
                    abs(k * lam - e.eigenvalue) < 1e-6 and k * w == e.winding
                    for lam, w in base_pairs
                )
                assert found == (e.winding % k == 0)
                assert is_simply_covered_eigenfunction(k, e.winding) == (not found)


class TestCatalogAudit:
    def test_even_orbit_without_hyperbolic_flag_rejected(self):
        table = spectrum_from_loop(hyperbolic_loop(), window=8.0)
        with pytest.raises(CatalogError, match="even"):
            Catalog([SimpleOrbit("tab_even", 1.0, {1: table}, hyperbolic=False)])

    def test_degenerate_flow_orbit_rejected(self):
        # rotation by a full turn has 0 in the spectrum; the load audit sees it
        with pytest.raises((CatalogError, DegenerateThresholdError)):
            Catalog([SimpleOrbit("deg", 1.0, rotation_loop(2 * math.pi))])

    def test_missing_cover_in_table_mode(self):
        table = spectrum_from_loop(rotation_loop(math.pi / 2), window=8.0)
        catalog = Catalog([SimpleOrbit("tab", 1.0, {1: table}, hyperbolic=False)])
        with pytest.raises(CatalogError, match="cover"):
            catalog.cz_index(OrbitRef("tab", 2), 0.0)

    def test_table_window_cannot_grow(self, table_catalog):
        with pytest.raises(SpectralResolutionError):
            table_catalog.spectrum_of(OrbitRef("rot_tab"), window=50.0)

    def test_crossing_form_agrees_across_catalog(self, fixture_catalog):
        for orbit_id in fixture_catalog.ids():
            for k in (1, 2):
                ref = OrbitRef(orbit_id, k)
                assert (
                    fixture_catalog.cz_via_crossing(ref)
                    == fixture_catalog.cz_index(ref, 0.0).mu_cz
                )
