"""
    Aliev-Panfilov kinetics and the membrane station update
"""
import unittest

import numpy as np

from emigdsw.errors import ConfigError, IonicError
from emigdsw.ionic import (IonicParams, MembraneState, aliev_panfilov_rhs,
                           gap_junction_current, membrane_step)

PARAMS = IonicParams()


def phys(phi):
    return PARAMS.v_rest + phi * PARAMS.v_amp


class AlievPanfilovTests(unittest.TestCase):
    def test_rest_is_equilibrium(self):
        i_ion, dw_dt = aliev_panfilov_rhs(PARAMS.v_rest, 0.0, PARAMS)
        assert i_ion == 0.0
        assert dw_dt == 0.0

    def test_threshold_has_no_current(self):
        i_ion, _ = aliev_panfilov_rhs(phys(PARAMS.a), 0.0, PARAMS)
        assert abs(i_ion) < 1e-12

    def test_cubic_by_hand(self):
        """
            phi = 0.5: r = -8 * 0.5 * 0.35 * (-0.5) = 0.7
        """
        i_ion, _ = aliev_panfilov_rhs(phys(0.5), 0.0, PARAMS)
        assert np.isclose(i_ion, -0.7 * PARAMS.i_scale)
        assert PARAMS.i_scale == 100.0

    def test_vectorized(self):
        v = phys(np.array([0.0, 0.5, 1.0]))
        i_ion, dw_dt = aliev_panfilov_rhs(v, np.zeros(3), PARAMS)
        assert i_ion.shape == (3,) and dw_dt.shape == (3,)

    def test_zero_eps_denominator(self):
        # -115 mV is phi = -mu2 exactly
        self.assertRaises(IonicError, aliev_panfilov_rhs, -115.0, 0.1, PARAMS)

    def test_bad_params(self):
        self.assertRaises(ConfigError, IonicParams, v_amp=0.0)
        self.assertRaises(ConfigError, IonicParams, kappa_g=-1.0)
        self.assertRaises(ConfigError, IonicParams, time_scale=0.0)


class GapJunctionTests(unittest.TestCase):
    def test_linear(self):
        assert gap_junction_current(0.0, 2.0) == 0.0
        assert gap_junction_current(1.0, 0.5) == 0.5
        assert np.allclose(gap_junction_current([2.0, -4.0], 0.5), 2 * gap_junction_current([1.0, -2.0], 0.5))


class MembraneStepTests(unittest.TestCase):
    def setUp(self):
        self.is_membrane = np.array([True, True, False])

    def test_rest_is_fixed_point(self):
        state = MembraneState.from_jumps([PARAMS.v_rest, PARAMS.v_rest, 0.0], self.is_membrane)
        stepped, f_nodal = membrane_step(state, 0.05, 0.0, PARAMS)

        assert not np.any(f_nodal)
        assert np.array_equal(stepped.w, state.w)
        assert np.array_equal(stepped.v, state.v)

    def test_zero_step_keeps_gating(self):
        state = MembraneState.from_jumps([phys(0.3), phys(0.6), 1.0], self.is_membrane, w_init=0.2)
        stepped, _ = membrane_step(state, 0.0, 0.0, PARAMS)
        assert np.array_equal(stepped.w, state.w)

    def test_single_euler_step(self):
        """
            phi = 0.3, w = 0.1, tau = 0.05 from a scalar forward Euler step
        """
        state = MembraneState.from_jumps([phys(0.3)], [True], w_init=0.1)
        stepped, _ = membrane_step(state, 0.05, 0.0, PARAMS)
        assert np.isclose(stepped.w[0], 0.10342733, atol=1e-8)

    def test_reaction_samples(self):
        state = MembraneState.from_jumps([phys(0.5), PARAMS.v_rest, 3.0], self.is_membrane)
        _, f_nodal = membrane_step(state, 0.05, np.array([0.0, 50.0, 50.0]), PARAMS)

        assert np.isclose(f_nodal[0], -0.7 * PARAMS.i_scale)
        # Stimulus enters with a minus sign, gap junctions ignore it
        assert np.isclose(f_nodal[1], -50.0)
        assert np.isclose(f_nodal[2], PARAMS.kappa_g * 3.0)

    def test_gap_junction_gating_stays_zero(self):
        state = MembraneState.from_jumps([phys(0.5), phys(0.5), 5.0], self.is_membrane, w_init=0.3)
        stepped, _ = membrane_step(state, 0.05, 0.0, PARAMS)
        assert stepped.w[2] == 0.0

    def test_non_finite(self):
        state = MembraneState.from_jumps([PARAMS.v_rest], [True])
        self.assertRaises(IonicError, membrane_step, state, 0.05, np.inf, PARAMS)


if __name__ == "__main__":
    unittest.main()
