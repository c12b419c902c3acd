import math

import numpy as np
import pytest

from dpcounts.sampling import Rng, gaussian, gumbel, gumbel_from_uniform

EULER_GAMMA = 0.5772156649015329


class TestGumbel:
    def test_fixed_point_u_is_one_over_e(self):
        # -beta * ln(-ln(1/e)) = 0
        for beta in (0.5, 1.0, 2000.0):
            assert abs(gumbel_from_uniform(1 / math.e, beta)) < 1e-12

    def test_rejects_unit_interval_boundary(self):
        for u in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                gumbel_from_uniform(u, 1.0)
        with pytest.raises(ValueError):
            gumbel_from_uniform(np.array([0.5, 1.0]), 1.0)

    def test_rejects_nonpositive_beta(self):
        rng = Rng(0)
        for beta in (0.0, -1.0):
            with pytest.raises(ValueError):
                gumbel(beta, rng)
            with pytest.raises(ValueError):
                gumbel_from_uniform(0.5, beta)

    def test_sample_mean_matches_euler_gamma(self):
        rng = Rng(20240601)
        draws = gumbel_from_uniform(rng.uniform_open_array(100_000), 1.0)
        assert abs(float(draws.mean()) - EULER_GAMMA) < 0.02

    def test_beta_scales_the_stream(self):
        rng1, rng2 = Rng(31), Rng(31)
        for _ in range(1000):
            assert gumbel(2.0, rng2) == 2.0 * gumbel(1.0, rng1)


class TestGaussian:
    def test_rejects_nonpositive_sigma(self):
        rng = Rng(0)
        for sigma in (0.0, -2.0):
            with pytest.raises(ValueError):
                gaussian(sigma, rng)

    def test_sample_variance_within_two_percent(self):
        rng = Rng(77)
        draws = rng.standard_normal_array(100_000)
        assert abs(float(draws.var()) - 1.0) < 0.02

    def test_sigma_scales_the_stream(self):
        rng1, rng3 = Rng(5), Rng(5)
        for _ in range(1000):
            assert gaussian(3.0, rng3) == 3.0 * gaussian(1.0, rng1)


class TestRng:
    def test_identical_seed_identical_stream(self):
        a, b = Rng(123456789), Rng(123456789)
        for _ in range(200):
            assert a.uniform_open() == b.uniform_open()
            assert gumbel(1.3, a) == gumbel(1.3, b)
            assert gaussian(2.5, a) == gaussian(2.5, b)

    def test_different_seeds_differ(self):
        assert Rng(1).uniform_open() != Rng(2).uniform_open()

    def test_uniform_open_array_strictly_inside_unit_interval(self):
        u = Rng(9).uniform_open_array(50_000)
        assert u.shape == (50_000,)
        assert float(u.min()) > 0.0
        assert float(u.max()) < 1.0

    def test_seed_wraps_to_64_bits(self):
        assert Rng(2**64 + 5).seed == 5
        assert Rng(-1).seed == 2**64 - 1

    def test_subset_draws_without_replacement(self):
        rng = Rng(4)
        items = list("abcdefgh")
        chosen = rng.subset(items, 5)
        assert len(chosen) == 5
        assert len(set(chosen)) == 5
        assert set(chosen) <= set(items)
        with pytest.raises(ValueError):
            rng.subset(items, 9)
