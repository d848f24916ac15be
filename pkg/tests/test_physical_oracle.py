import math

import numpy as np
import pytest

from eqclock.effective_state import (
    ClockScenario,
    PhaseFraction,
    RegisterConfig,
    prepare_final_state,
)
from eqclock.physical_oracle import (
    LeakageError,
    PhysicalState,
    evolve_physical,
    prepare_physical,
    project_to_tilde,
    reduction_deviation,
    register_layout,
    scenario_for_theta,
)

RT2 = math.sqrt(2.0)


class TestPrepare:
    def test_single_pair_is_symmetric_bell_state(self):
        state = prepare_physical(RegisterConfig(1))
        expected = np.zeros(4, dtype=complex)
        expected[0b01] = 1 / RT2
        expected[0b10] = 1 / RT2
        np.testing.assert_allclose(state.entries, expected, atol=1e-15)

    def test_two_group_product_structure(self):
        state = prepare_physical(RegisterConfig(2))
        assert state.num_qubits == 6
        # group of two pairs (AABB) tensored with one base pair (AB)
        big = np.zeros(16, dtype=complex)
        big[0b0011] = 1 / RT2
        big[0b1100] = 1 / RT2
        small = np.zeros(4, dtype=complex)
        small[0b01] = 1 / RT2
        small[0b10] = 1 / RT2
        np.testing.assert_allclose(state.entries, np.kron(big, small), atol=1e-15)

    def test_clock_count_and_norm(self):
        state = prepare_physical(RegisterConfig(3))
        assert state.num_qubits == 14  # 7 pairs
        assert np.sum(np.abs(state.entries) ** 2) == pytest.approx(1.0, abs=1e-13)

    def test_layout_groups_a_before_b(self):
        layout = register_layout(RegisterConfig(2))
        assert [(q.group, q.label) for q in layout] == [
            (1, "A"), (1, "A"), (1, "B"), (1, "B"), (0, "A"), (0, "B"),
        ]

    def test_oracle_cap(self):
        with pytest.raises(ValueError):
            prepare_physical(RegisterConfig(4))


class TestEvolve:
    def test_equal_times_give_pure_global_phase(self):
        state = prepare_physical(RegisterConfig(1))
        evolved = evolve_physical(state, ClockScenario(2.0, 1.5, 1.5))
        np.testing.assert_allclose(
            evolved.entries, np.exp(-1j * 2.0 * 1.5) * state.entries, atol=1e-14
        )

    def test_pi_phase_gives_antisymmetric_bell_state(self):
        state = prepare_physical(RegisterConfig(1))
        evolved = evolve_physical(state, ClockScenario(1.0, 0.0, math.pi))
        # up to the global phase exp(-i*E*t_B) the state is (|01> - |10>)/sqrt(2)
        rel = evolved.entries / np.exp(-1j * math.pi)
        expected = np.zeros(4, dtype=complex)
        expected[0b01] = 1 / RT2
        expected[0b10] = -1 / RT2
        np.testing.assert_allclose(rel, expected, atol=1e-14)

    def test_group_phases_double_with_weight(self):
        """Each group of weight 2**k advances its relative phase 2**k times."""
        config = RegisterConfig(2)
        scenario = ClockScenario(1.0, 0.0, math.pi / 2)  # E*dt = pi/2
        tilde = project_to_tilde(evolve_physical(prepare_physical(config), scenario), config)
        ratios = tilde.entries / tilde.entries[0]
        assert ratios[1] == pytest.approx(np.exp(1j * math.pi / 2), abs=1e-13)  # weight 1
        assert ratios[2] == pytest.approx(np.exp(1j * math.pi), abs=1e-13)  # weight 2
        assert ratios[3] == pytest.approx(np.exp(1j * 3 * math.pi / 2), abs=1e-13)

    def test_norm_preserved(self):
        state = prepare_physical(RegisterConfig(3))
        evolved = evolve_physical(state, ClockScenario(3.7, 0.4, 11.1))
        assert np.sum(np.abs(evolved.entries) ** 2) == pytest.approx(1.0, abs=1e-13)


class TestProject:
    def test_zero_phase_matches_uniform(self):
        config = RegisterConfig(1)
        state = evolve_physical(prepare_physical(config), ClockScenario(1.0, 1.0, 1.0))
        tilde = project_to_tilde(state, config)
        np.testing.assert_allclose(tilde.entries, np.array([1, 1]) / RT2, atol=1e-13)

    def test_quarter_phase_matches_effective_construction(self):
        config = RegisterConfig(2)
        scenario = ClockScenario(1.0, 0.0, math.pi / 2)  # theta = 1/4
        tilde = project_to_tilde(evolve_physical(prepare_physical(config), scenario), config)
        direct = prepare_final_state(config, PhaseFraction(0.25))
        assert np.max(np.abs(tilde.entries - direct.entries)) < 1e-12

    def test_leakage_raises(self):
        config = RegisterConfig(1)
        entries = np.zeros(4, dtype=complex)
        entries[0b01] = 1 / RT2  # valid encoded component
        entries[0b00] = 1 / RT2  # outside the encoded subspace
        bad = PhysicalState(entries, register_layout(config))
        with pytest.raises(LeakageError):
            project_to_tilde(bad, config)

    def test_dimension_mismatch(self):
        state = prepare_physical(RegisterConfig(1))
        with pytest.raises(ValueError):
            project_to_tilde(state, RegisterConfig(2))


class TestReductionTheorem:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_random_scenarios(self, n):
        config = RegisterConfig(n)
        rng = np.random.default_rng(500 + n)
        for _ in range(25):
            scenario = ClockScenario(
                energy_gap=float(rng.uniform(0.1, 10.0)),
                proper_time_a=float(rng.uniform(0.0, 20.0)),
                proper_time_b=float(rng.uniform(0.0, 20.0)),
            )
            assert reduction_deviation(config, scenario) < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_time_shift_invariance(self, n):
        """Only the proper-time difference matters, not the common offset."""
        config = RegisterConfig(n)
        a = ClockScenario(1.3, 2.0, 5.0)
        b = ClockScenario(1.3, 2.0 + 7.7, 5.0 + 7.7)
        ta = project_to_tilde(evolve_physical(prepare_physical(config), a), config)
        tb = project_to_tilde(evolve_physical(prepare_physical(config), b), config)
        assert np.max(np.abs(ta.entries - tb.entries)) < 1e-12

    def test_scenario_for_theta_roundtrip(self):
        theta = PhaseFraction(0.3)
        assert scenario_for_theta(theta).theta.theta == pytest.approx(0.3, abs=1e-15)
