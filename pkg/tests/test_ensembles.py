import numpy as np
import pytest

from flowlimits import GoeSpec, eigh, sample_goe, sample_goe_pair


class TestSampleGoe:
    def test_real_symmetric(self):
        h = sample_goe(GoeSpec(dim=31, sigma=0.7, seed=5))
        assert np.array_equal(h, h.T)
        assert np.isrealobj(h)

    def test_seed_determinism(self):
        spec = GoeSpec(dim=16, sigma=1.0, seed=42)
        assert np.array_equal(sample_goe(spec), sample_goe(spec))

    def test_distinct_seeds_differ(self):
        a = sample_goe(GoeSpec(dim=16, sigma=1.0, seed=1))
        b = sample_goe(GoeSpec(dim=16, sigma=1.0, seed=2))
        assert not np.array_equal(a, b)

    def test_semicircle_radius(self):
        radii = []
        for seed in range(10):
            h = sample_goe(GoeSpec(dim=200, sigma=1.0, seed=seed))
            e = np.linalg.eigvalsh(h)
            radii.append(max(-e[0], e[-1]))
        assert all(36.0 <= r <= 44.0 for r in radii)

    def test_variance_ratio(self):
        diag, off = [], []
        for seed in range(10):
            h = sample_goe(GoeSpec(dim=200, sigma=1.0, seed=seed))
            diag.append(np.var(np.diag(h)))
            off.append(np.var(h[np.triu_indices(200, k=1)]))
        ratio = np.mean(diag) / np.mean(off)
        assert 1.7 <= ratio <= 2.3

    def test_mean_eigenvalue_small(self):
        for seed in range(5):
            h = sample_goe(GoeSpec(dim=200, sigma=1.0, seed=seed))
            assert abs(np.linalg.eigvalsh(h).mean()) <= 3.0 / np.sqrt(200)

    def test_invalid_spec(self):
        with pytest.raises(ValueError, match="dimension"):
            GoeSpec(dim=1, sigma=1.0, seed=0)
        with pytest.raises(ValueError, match="sigma"):
            GoeSpec(dim=4, sigma=0.0, seed=0)


class TestSampleGoePair:
    def test_independent_draws(self):
        h, o = sample_goe_pair(GoeSpec(dim=20, sigma=1.0, seed=3), seed2=4)
        assert not np.array_equal(h, o)
        assert np.array_equal(o, o.T)

    def test_identical_seed_warns(self):
        with pytest.warns(UserWarning, match="correlated"):
            sample_goe_pair(GoeSpec(dim=8, sigma=1.0, seed=3), seed2=3)

    def test_symmetric_operator_has_zero_mean_gap(self):
        from flowlimits import first_moment, overlap_distribution, to_energy_basis

        h, o = sample_goe_pair(GoeSpec(dim=40, sigma=1.0, seed=6), seed2=7)
        dist = overlap_distribution(to_energy_basis(o, eigh(h)))
        assert first_moment(dist) == pytest.approx(0.0, abs=1e-12)
