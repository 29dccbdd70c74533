"""Quartic-anharmonic oscillator model, overlaps, and adiabatic budget."""

import math

import numpy as np
import pytest

from modetangle import (
    AdiabaticBudget,
    adiabatic_check,
    budget_from_model,
    build_model,
    default_mode_assignment,
    first_order_energy,
    map_modes_to_eigenfunctions,
    mode_overlap,
    perturbation_strength,
    position_operator,
)


class TestPositionOperator:
    def test_x_squared_diagonal_is_n_plus_half(self):
        x = position_operator(20)
        diag = np.diag(x @ x)
        np.testing.assert_allclose(diag[:10], np.arange(10) + 0.5, atol=1e-12)

    def test_quartic_diagonal_matches_the_shift_formula(self):
        # <n|X^4|n> = (3/4)(2n^2 + 2n + 1), exact well below the truncation
        x = position_operator(40)
        diag = np.diag(np.linalg.matrix_power(x, 4))
        n = np.arange(10)
        np.testing.assert_allclose(
            diag[:10], 0.75 * (2 * n * n + 2 * n + 1), atol=1e-10
        )


class TestHarmonicLimit:
    def test_spectrum_is_exact(self):
        model = build_model(0.0, 64)
        np.testing.assert_allclose(
            model.eigenvalues, np.arange(64) + 0.5, atol=1e-10
        )

    def test_eigenvectors_are_the_number_basis(self):
        model = build_model(0.0, 32)
        np.testing.assert_allclose(model.eigenvectors, np.eye(32), atol=1e-10)

    def test_overlaps_are_unity(self):
        model = build_model(0.0, 16)
        for n in range(8):
            assert mode_overlap(model, n) == pytest.approx(1.0, abs=1e-12)

    def test_x_squared_expectation(self):
        model = build_model(0.0, 32)
        for n in range(6):
            assert model.x_squared_expectation(n) == pytest.approx(n + 0.5, abs=1e-10)


class TestFirstOrderOracle:
    def test_frozen_values(self):
        assert first_order_energy(0, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert first_order_energy(0, 0.16) == pytest.approx(0.53, abs=1e-12)
        assert first_order_energy(1, 0.16) == pytest.approx(1.65, abs=1e-12)
        assert first_order_energy(0, 0.04) == pytest.approx(0.5075, abs=1e-12)
        assert first_order_energy(1, 0.04) == pytest.approx(1.5375, abs=1e-12)

    def test_small_coupling_agreement(self):
        # second-order corrections push the true energies slightly below
        # the first-order line; at g = 0.04 the gap is a few 1e-4
        model = build_model(0.04, 64)
        assert model.energy(0) == pytest.approx(0.5075, abs=3e-4)
        assert model.energy(1) == pytest.approx(1.5375, abs=2.5e-3)
        assert model.energy(0) < 0.5075

    def test_quadratic_error_scaling(self):
        # |E_n(g) - first_order| <= C g^2 with C stable across couplings
        ratios = []
        for g in (0.01, 0.02, 0.04):
            model = build_model(g, 64)
            gap = abs(model.energy(0) - first_order_energy(0, g))
            ratios.append(gap / g**2)
        assert max(ratios) < 2.0 * min(ratios)

    def test_perturbation_strength(self):
        assert perturbation_strength(1, 0.16) == pytest.approx(0.15, abs=1e-12)
        assert perturbation_strength(0, 0.0) == 0.0


class TestAnharmonicSpectrum:
    def test_levels_rise_with_coupling(self):
        couplings = (0.0, 0.05, 0.2, 1.0)
        energies = [build_model(g, 64).eigenvalues[:5] for g in couplings]
        for weaker, stronger in zip(energies, energies[1:]):
            assert np.all(stronger > weaker)

    def test_truncation_doubling_drift(self):
        small = build_model(0.5, 64)
        large = build_model(0.5, 128)
        drift = np.max(np.abs(small.eigenvalues[:5] - large.eigenvalues[:5]))
        assert drift < 1e-8

    def test_spatial_narrowing(self):
        model = build_model(0.1, 64)
        reference = build_model(0.0, 64)
        for n in range(3):
            assert model.x_squared_expectation(n) < reference.x_squared_expectation(n)
        assert model.x_squared_expectation(0) < 0.5

    def test_invalid_inputs_rejected(self):
        with pytest.raises(ValueError):
            build_model(-0.1, 64)
        with pytest.raises(ValueError):
            build_model(0.1, 4)
        with pytest.raises(ValueError):
            build_model(0.1, 64).energy(64)


class TestModeOverlap:
    def test_within_unit_interval(self):
        model = build_model(0.3, 64)
        for n in range(6):
            assert 0.0 < mode_overlap(model, n) <= 1.0

    def test_decreases_with_coupling(self):
        weak = build_model(0.1, 64)
        strong = build_model(5.0, 64)
        for n in range(4):
            assert mode_overlap(strong, n) < mode_overlap(weak, n)

    def test_weak_coupling_stays_near_unity(self):
        model = build_model(0.1, 64)
        overlap = mode_overlap(model, 0)
        assert 0.99 < overlap < 1.0 - 1e-12

    def test_out_of_range_level_rejected(self):
        with pytest.raises(ValueError):
            mode_overlap(build_model(0.1, 16), 16)


class TestModeAssignment:
    def test_default_binding(self):
        assignment = default_mode_assignment()
        assert assignment.level_of("photon_1") == 1
        assert assignment.level_of("photon_2") == 2

    def test_round_trip(self):
        assignment = map_modes_to_eigenfunctions({"photon_1": 3, "photon_2": 5})
        inverted = assignment.invert()
        assert inverted == {3: "photon_1", 5: "photon_2"}
        assert {p: n for n, p in inverted.items()} == assignment.levels()

    def test_duplicate_level_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            map_modes_to_eigenfunctions({"photon_1": 2, "photon_2": 2})

    def test_negative_level_rejected(self):
        with pytest.raises(ValueError):
            map_modes_to_eigenfunctions({"photon_1": -1, "photon_2": 2})

    def test_unknown_particle_rejected(self):
        with pytest.raises(KeyError):
            default_mode_assignment().level_of("photon_9")


class TestAdiabaticCheck:
    def test_wide_margins_pass(self):
        check = adiabatic_check(AdiabaticBudget(1.0, 0.01, 1000.0))
        assert check.passed
        assert check.margins[0] == pytest.approx(100.0, abs=1e-12)
        assert check.margins[1] == pytest.approx(10.0, abs=1e-12)

    def test_small_gap_fails(self):
        check = adiabatic_check(AdiabaticBudget(0.02, 0.01, 1000.0))
        assert not check.passed
        assert check.margins[0] == pytest.approx(2.0, abs=1e-12)

    def test_short_measurement_fails(self):
        check = adiabatic_check(AdiabaticBudget(1.0, 0.01, 50.0))
        assert not check.passed
        assert check.margins[1] == pytest.approx(0.5, abs=1e-12)

    def test_threshold_is_configurable(self):
        budget = AdiabaticBudget(1.0, 0.01, 50.0, ratio_threshold=0.25)
        assert adiabatic_check(budget).passed

    def test_non_positive_scales_rejected(self):
        with pytest.raises(ValueError):
            AdiabaticBudget(0.0, 0.01, 10.0)
        with pytest.raises(ValueError):
            AdiabaticBudget(1.0, -0.01, 10.0)
        with pytest.raises(ValueError):
            AdiabaticBudget(1.0, 0.01, math.inf)


class TestBudgetFromModel:
    def test_scales_come_from_the_model(self):
        model = build_model(0.02, 64)
        budget = budget_from_model(model, default_mode_assignment(), 1.0e4)
        gap = model.energy(2) - model.energy(1)
        assert budget.delta_e == pytest.approx(gap, abs=1e-12)
        assert budget.h_tilde == pytest.approx(
            perturbation_strength(2, 0.02), abs=1e-12
        )
        assert adiabatic_check(budget).passed

    def test_zero_coupling_rejected(self):
        model = build_model(0.0, 64)
        with pytest.raises(ValueError):
            budget_from_model(model, default_mode_assignment(), 1.0e4)
