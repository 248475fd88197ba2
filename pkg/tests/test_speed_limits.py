import math

import numpy as np
import pytest

from flowlimits import (
    SIGMA_X,
    SIGMA_Z,
    alpha_constant,
    char_function,
    crossover_time,
    driven_ml_floor,
    driven_ml_floor_curve,
    driven_overlap,
    eigh,
    max_speed_operator,
    ml_hamiltonian_min_time,
    ml_min_time,
    ml_overlap_floor,
    mt_min_time,
    mt_overlap_floor,
    operator_angle,
    overlap_distribution,
    second_moment,
    tangency_point,
    to_energy_basis,
    trig_ml_min_time,
    trig_mt_min_time,
    velocities_from_distribution,
)
from flowlimits.speed_limits import QslVelocities

from conftest import random_hermitian

ALPHA = alpha_constant()


def _bisection_oracle(lo=2.0, hi=3.0, tol=1e-13):
    # independent root finder for cos x + x sin x = 1
    f = lambda x: math.cos(x) + x * math.sin(x) - 1.0
    assert f(lo) > 0 > f(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sigma_x_velocities() -> QslVelocities:
    dist = overlap_distribution(to_energy_basis(SIGMA_X, eigh(SIGMA_Z)))
    return velocities_from_distribution(dist)


class TestAlphaConstant:
    def test_three_digit_value(self):
        assert 0.7236 <= ALPHA <= 0.7256
        assert abs(ALPHA - 0.724) <= 1e-3

    def test_tangency_property(self):
        x = tangency_point()
        assert math.cos(x) == pytest.approx(1 - ALPHA * x, abs=1e-10)

    def test_against_bisection_oracle(self):
        x_oracle = _bisection_oracle()
        assert x_oracle == pytest.approx(2.3311, abs=1e-3)
        assert tangency_point() == pytest.approx(x_oracle, abs=1e-12)
        assert ALPHA == pytest.approx(math.sin(x_oracle), abs=1e-12)

    def test_reproducible(self):
        assert alpha_constant() == alpha_constant()

    def test_line_sits_below_cosine(self):
        x = np.linspace(0, 20, 20001)
        assert np.all(np.cos(x) >= 1 - ALPHA * x - 1e-12)


class TestOverlapFloors:
    def test_sigma_x_flow_floors(self):
        v = _sigma_x_velocities()
        t = np.linspace(0, 2, 501)
        ml = ml_overlap_floor(v, t)
        mt = mt_overlap_floor(v, t)
        assert np.allclose(ml, 1 - 2 * ALPHA * t)
        assert np.allclose(mt, 1 - 2 * t**2)
        assert np.all(np.cos(2 * t) >= ml - 1e-12)
        assert np.all(np.cos(2 * t) >= mt - 1e-12)

    def test_t_zero(self):
        v = _sigma_x_velocities()
        assert ml_overlap_floor(v, 0.0) == 1.0
        assert mt_overlap_floor(v, 0.0) == 1.0

    def test_frozen_flow_floors_stay_at_one(self):
        v = QslVelocities(abs_liouvillian=0.0, second_moment=0.0, alpha=ALPHA)
        assert ml_overlap_floor(v, 5.0) == 1.0
        assert mt_overlap_floor(v, 5.0) == 1.0

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            ml_overlap_floor(_sigma_x_velocities(), -0.1)

    def test_floor_ordering_random_instances(self, rng):
        # max(ml, mt) never exceeds the realized real overlap
        for _ in range(500):
            d = int(rng.integers(2, 17))
            h = random_hermitian(rng, d)
            o = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            dist = overlap_distribution(to_energy_basis(o, eigh(h)))
            v = velocities_from_distribution(dist)
            t = np.linspace(0, 3, 60)
            re = char_function(dist, t).real
            assert np.all(re >= ml_overlap_floor(v, t) - 1e-9)
            assert np.all(re >= mt_overlap_floor(v, t) - 1e-9)


class TestMinTimes:
    def test_sigma_x_flow_target_zero(self):
        v = _sigma_x_velocities()
        actual = math.pi / 4  # first zero of cos 2t
        assert mt_min_time(v, 0.0) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
        assert ml_min_time(v, 0.0) == pytest.approx(1 / (2 * ALPHA), abs=1e-12)
        assert mt_min_time(v, 0.0) <= actual
        assert ml_min_time(v, 0.0) <= actual

    def test_target_one_is_free(self):
        v = _sigma_x_velocities()
        assert ml_min_time(v, 1.0) == 0.0
        assert mt_min_time(v, 1.0) == 0.0

    def test_frozen_flow_unreachable(self):
        v = QslVelocities(abs_liouvillian=0.0, second_moment=0.0, alpha=ALPHA)
        assert math.isinf(ml_min_time(v, 0.5))
        assert math.isinf(mt_min_time(v, 0.5))

    def test_target_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[-1, 1\]"):
            ml_min_time(_sigma_x_velocities(), 1.5)


class TestCrossover:
    def test_sigma_x_flow(self):
        assert crossover_time(_sigma_x_velocities()) == pytest.approx(ALPHA, abs=1e-12)

    def test_equal_moments(self):
        v = QslVelocities(abs_liouvillian=1.0, second_moment=1.0, alpha=ALPHA)
        assert crossover_time(v) == pytest.approx(2 * ALPHA)

    def test_floor_comparison_flips_exactly_at_crossover(self, rng):
        for _ in range(10):
            d = int(rng.integers(2, 9))
            dist = overlap_distribution(
                to_energy_basis(random_hermitian(rng, d), eigh(random_hermitian(rng, d)))
            )
            v = velocities_from_distribution(dist)
            tc = crossover_time(v)
            eps = 1e-6
            assert mt_overlap_floor(v, tc - eps) > ml_overlap_floor(v, tc - eps)
            assert mt_overlap_floor(v, tc + eps) < ml_overlap_floor(v, tc + eps)

    def test_zero_second_moment_infinite(self):
        v = QslVelocities(abs_liouvillian=0.0, second_moment=0.0, alpha=ALPHA)
        assert math.isinf(crossover_time(v))


class TestHamiltonianFormML:
    def test_sigma_x_symmetric_spectrum_equality(self):
        oe = to_energy_basis(SIGMA_X, eigh(SIGMA_Z))
        v = velocities_from_distribution(overlap_distribution(oe))
        assert ml_hamiltonian_min_time(oe, 0.0) == pytest.approx(1 / (2 * ALPHA), abs=1e-12)
        assert ml_hamiltonian_min_time(oe, 0.0) == pytest.approx(ml_min_time(v, 0.0), abs=1e-12)

    def test_extremal_support_saturates(self, rng):
        # operator living on the (E_0, E_max) pair: anchored gap equals |gap|
        s = eigh(np.diag([0.0, 1.0, 3.0]).astype(complex))
        o = max_speed_operator(s, 1 / math.sqrt(2), 1 / math.sqrt(2))
        oe = to_energy_basis(o, s)
        v = velocities_from_distribution(overlap_distribution(oe))
        assert ml_hamiltonian_min_time(oe, 0.2) == pytest.approx(
            ml_min_time(v, 0.2), abs=1e-12
        )

    def test_never_tighter_than_gap_form(self, rng):
        for _ in range(100):
            h = random_hermitian(rng, 8)
            o = random_hermitian(rng, 8)
            oe = to_energy_basis(o, eigh(h))
            v = velocities_from_distribution(overlap_distribution(oe))
            target = float(rng.uniform(-1, 1))
            assert ml_hamiltonian_min_time(oe, target) <= ml_min_time(v, target) + 1e-12


class TestMaxSpeedOperator:
    def test_single_gap_speeds(self):
        s = eigh(np.diag([0.0, 1.0, 3.0]).astype(complex))
        o = max_speed_operator(s, 1 / math.sqrt(2), 1 / math.sqrt(2))
        dist = overlap_distribution(to_energy_basis(o, s))
        v = velocities_from_distribution(dist)
        assert v.abs_liouvillian == pytest.approx(3.0, abs=1e-12)
        assert math.sqrt(v.second_moment) == pytest.approx(3.0, abs=1e-12)
        assert sorted(set(np.round(dist.deltas, 9))) == [-3.0, 3.0]

    def test_hermitian_choice(self, rng):
        s = eigh(random_hermitian(rng, 5))
        mu = complex(0.3, 0.4)
        o = max_speed_operator(s, mu, np.conj(mu))
        assert np.abs(o - o.conj().T).max() < 1e-12

    def test_maximal_over_random_operators(self, rng):
        s = eigh(random_hermitian(rng, 6))
        width = s.max_energy - s.ground_energy
        for _ in range(1000):
            o = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
            dist = overlap_distribution(to_energy_basis(o, s))
            assert math.sqrt(second_moment(dist)) <= width + 1e-9

    def test_degenerate_extremal_warns(self):
        s = eigh(np.diag([0.0, 0.0, 1.0]).astype(complex))
        with pytest.warns(UserWarning, match="degenerate"):
            max_speed_operator(s, 1.0, 1.0)


class TestTrigVariants:
    def test_sigma_x_flow_values(self):
        v = _sigma_x_velocities()
        assert trig_ml_min_time(v, 0.0) == pytest.approx(math.pi / 8, abs=1e-12)
        assert trig_mt_min_time(v, 0.0) == pytest.approx(math.pi / (2 * math.sqrt(6)), abs=1e-12)

    def test_weaker_than_main_bounds(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 9))
            dist = overlap_distribution(
                to_energy_basis(random_hermitian(rng, d), eigh(random_hermitian(rng, d)))
            )
            v = velocities_from_distribution(dist)
            target = float(rng.uniform(-1, 0.999))
            assert trig_ml_min_time(v, target) < ml_min_time(v, target)
            assert trig_mt_min_time(v, target) < mt_min_time(v, target)

    def test_target_one(self):
        v = _sigma_x_velocities()
        assert trig_ml_min_time(v, 1.0) == 0.0
        assert trig_mt_min_time(v, 1.0) == 0.0


class TestDrivenFloor:
    def test_constant_spectrum_reduces_to_static(self, rng):
        h = random_hermitian(rng, 4)
        s = eigh(h)
        oe = to_energy_basis(random_hermitian(rng, 4), s)
        v = velocities_from_distribution(overlap_distribution(oe))
        grid = np.linspace(0, 2, 101)
        trajectories = np.tile(s.energies, (grid.size, 1))
        for t in (0.0, 0.5, 1.7):
            assert driven_ml_floor(oe, trajectories, grid, t) == pytest.approx(
                ml_overlap_floor(v, t), abs=1e-10
            )

    def test_linear_ramp_qubit(self):
        # H(s) = s * sigma_z drives sigma_x with overlap cos(t^2), floor 1 - alpha t^2
        s = eigh(SIGMA_Z)
        oe = to_energy_basis(SIGMA_X, s)
        grid = np.linspace(0, 1.5, 2000)
        trajectories = np.outer(grid, s.energies)
        for t in (0.35, 0.9, 1.4):
            floor = driven_ml_floor(oe, trajectories, grid, t)
            assert floor == pytest.approx(1 - ALPHA * t**2, abs=1e-6)
            overlap = driven_overlap(oe, trajectories, grid, t)
            assert overlap.real == pytest.approx(math.cos(t**2), abs=1e-6)
            assert overlap.real >= floor - 1e-9

    def test_diagonal_operator_floor_is_one(self, rng):
        s = eigh(random_hermitian(rng, 3))
        oe = to_energy_basis(s.vectors @ np.diag([1.0, 2.0, 3.0]) @ s.vectors.conj().T, s)
        grid = np.linspace(0, 1, 50)
        trajectories = np.outer(grid, s.energies)
        assert driven_ml_floor(oe, trajectories, grid, 0.8) == pytest.approx(1.0, abs=1e-12)

    def test_curve_over_grid(self):
        s = eigh(SIGMA_Z)
        oe = to_energy_basis(SIGMA_X, s)
        grid = np.linspace(0, 1, 200)
        trajectories = np.outer(grid, s.energies)
        curve = driven_ml_floor_curve(oe, trajectories, grid)
        assert curve.kind == "driven_ml"
        assert np.all(np.cos(grid**2) >= curve.values - 1e-6)

    def test_grid_not_covering_rejected(self):
        s = eigh(SIGMA_Z)
        oe = to_energy_basis(SIGMA_X, s)
        grid = np.linspace(0, 1, 10)
        with pytest.raises(ValueError, match="cover"):
            driven_ml_floor(oe, np.outer(grid, s.energies), grid, 2.0)


class TestOperatorAngle:
    @pytest.mark.parametrize("x,expected", [(1.0, 0.0), (0.0, math.pi / 2), (-1.0, math.pi)])
    def test_reference_points(self, x, expected):
        assert operator_angle(x) == pytest.approx(expected)

    def test_roundoff_clamped(self):
        assert operator_angle(1.0 + 5e-10) == 0.0

    def test_large_excursion_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            operator_angle(1.0 + 1e-6)
