#!/usr/bin/env python3
# -*- coding: UTF-8 -*-
"""Unittest for testing the master equation dynamics of qdmgate"""

import logging
import unittest

import numpy as np

from qdmgate import dynamics
from qdmgate.checks import three_level_config
from qdmgate.common import ConfigurationError, IntegrationError
from qdmgate.config import SimConfig
from qdmgate.pulses import PulseShape
from qdmgate.statespace import BasisState, vec, unvec


def zero_coupling(**changes) -> SimConfig:
    """Configuration without any coupling or decay"""
    config = SimConfig(tau=0.0,
                       gamma1=0.0,
                       gamma2=0.0,
                       pulse1=PulseShape(amplitude=0.0, width_param=0.05),
                       pulse2=PulseShape(amplitude=0.0, width_param=2.0),
                       t_start=-1.0,
                       t_end=1.0,
                       dt=0.01,
                       sample_stride=10)
    return config.replace(**changes)


class TestDynamics(unittest.TestCase):
    def setUp(self) -> None:
        """Run before every test method"""
        # set basic config and level for the logger
        logging.basicConfig(level=logging.INFO)

        # create a logger for this TestSuite
        self.test_logger = logging.getLogger(__name__)

        # set the test logger level
        self.test_logger.setLevel(logging.DEBUG)

        # enable/disable the log output of the device logger for the tests
        # if enabled log data inside this test will be printed
        self.test_logger.disabled = False

        self.rng = np.random.default_rng(2016)

    def _random_density(self) -> np.ndarray:
        a = self.rng.normal(size=(10, 10)) + \
            1j * self.rng.normal(size=(10, 10))
        rho = a @ a.conj().T
        return rho / np.trace(rho)

    def test_assemble_hamiltonian(self) -> None:
        """Test the Hamiltonian of the reference parameters"""
        config = SimConfig()
        hamiltonian = dynamics.assemble_hamiltonian(0.0, config)

        self.assertAlmostEqual(
            hamiltonian[BasisState.T1_d.index, BasisState.G_dd.index].real,
            4.4311, places=4)
        self.assertAlmostEqual(
            hamiltonian[BasisState.T2.index, BasisState.G_ud.index].real,
            3.5449, places=4)
        self.assertAlmostEqual(
            hamiltonian[BasisState.I1_d.index, BasisState.T1_d.index].real,
            config.tau_rad_per_ps)

        for t in (-60.0, -3.2, 0.0, 0.4, 17.0):
            with self.subTest(t=t):
                hamiltonian = dynamics.assemble_hamiltonian(t, config)
                np.testing.assert_array_equal(hamiltonian,
                                              hamiltonian.conj().T)
                np.testing.assert_array_equal(hamiltonian[0, :], 0)
                np.testing.assert_array_equal(hamiltonian[:, 0], 0)

    def test_pulses_off_hamiltonian(self) -> None:
        """Test that only the tunneling remains without pulses"""
        config = SimConfig(pulse1=PulseShape(amplitude=0.0),
                           pulse2=PulseShape(amplitude=0.0))
        hamiltonian = dynamics.assemble_hamiltonian(0.0, config)
        tau = config.tau_rad_per_ps

        # three tunneling couplings and their conjugates
        self.assertEqual(np.count_nonzero(hamiltonian), 6)
        for trion, indirect in ((BasisState.T1_u, BasisState.I1_u),
                                (BasisState.T1_d, BasisState.I1_d),
                                (BasisState.T2, BasisState.I2)):
            self.assertEqual(hamiltonian[indirect.index, trion.index], tau)
            self.assertEqual(hamiltonian[trion.index, indirect.index], tau)

    def test_lindblad_rhs(self) -> None:
        """Test trace and hermiticity of the right hand side"""
        config = SimConfig(gamma1=300.0, gamma2=700.0, gamma_ind=50.0)

        for t in (-5.0, 0.0, 0.3):
            rho = self._random_density()
            with self.subTest(t=t):
                derivative = dynamics.lindblad_rhs(rho, t, config)
                self.assertLess(abs(np.trace(derivative)), 1e-13)
                np.testing.assert_allclose(derivative,
                                           derivative.conj().T,
                                           atol=1e-13)

    def test_lindblad_rhs_decay(self) -> None:
        """Test the T2 decay rate"""
        config = SimConfig(tau=0.0,
                           pulse1=PulseShape(amplitude=0.0),
                           pulse2=PulseShape(amplitude=0.0))
        rho = np.zeros((10, 10), dtype=complex)
        rho[BasisState.T2.index, BasisState.T2.index] = 1.0
        derivative = dynamics.lindblad_rhs(rho, 0.0, config)

        self.assertAlmostEqual(
            derivative[BasisState.T2.index, BasisState.T2.index].real,
            -0.001, places=15)
        self.assertAlmostEqual(
            derivative[BasisState.G_ud.index, BasisState.G_ud.index].real,
            0.001, places=15)

        ground = np.zeros((10, 10), dtype=complex)
        ground[0, 0] = 1.0
        np.testing.assert_array_equal(
            dynamics.lindblad_rhs(ground, 0.0, SimConfig()), 0)

    def test_generator(self) -> None:
        """Test the superoperator against the matrix right hand side"""
        config = SimConfig(gamma1=300.0, gamma2=700.0)
        generator = dynamics.LindbladGenerator(config)

        for t in (-30.0, -0.2, 0.0, 1.1):
            rho = self._random_density()
            with self.subTest(t=t):
                expected = dynamics.lindblad_rhs(rho, t, config)
                np.testing.assert_allclose(unvec(generator(t, vec(rho))),
                                           expected,
                                           atol=1e-12)
                np.testing.assert_allclose(
                    unvec(generator.matrix(t) @ vec(rho)), expected,
                    atol=1e-12)
                self.assertEqual(generator.envelopes(t),
                                 (config.pulse1.value(t),
                                  config.pulse2.value(t)))

    def test_step_plan(self) -> None:
        """Test the step sequence of the fixed step integrator"""
        steps = list(dynamics.step_plan(-1.0, 1.0, 0.001))
        self.assertEqual(len(steps), 2000)
        self.assertAlmostEqual(sum(h for _, h in steps), 2.0, places=10)
        self.assertAlmostEqual(steps[-1][0] + steps[-1][1], 1.0, places=12)

        steps = list(dynamics.step_plan(0.0, 1.0, 0.3))
        self.assertEqual(len(steps), 4)
        self.assertAlmostEqual(steps[-1][1], 0.1, places=12)

        # degenerate window
        steps = list(dynamics.step_plan(0.0, 0.0005, 0.001))
        self.assertEqual(steps, [(0.0, 0.0005)])

    def test_identity_evolution(self) -> None:
        """Test that nothing moves without couplings and rates"""
        config = zero_coupling()
        final, series = dynamics.evolve(config)

        np.testing.assert_allclose(final, config.initial_density(),
                                   atol=1e-14)
        self.assertEqual(len(series), 21)
        self.assertEqual(series.times[0], -1.0)
        self.assertEqual(series.times[-1], 1.0)
        for label, values in series.populations.items():
            with self.subTest(label=label):
                self.assertEqual(len(set(values)), 1)

    def test_degenerate_window(self) -> None:
        """Test a window shorter than one step"""
        config = zero_coupling(t_start=0.0, t_end=0.0005, dt=0.001)
        _, series = dynamics.evolve(config)

        self.assertEqual(series.times, [0.0, 0.0005])

    def test_series(self) -> None:
        """Test the layout of the time series"""
        config = SimConfig(t_start=-2.0, t_end=2.0)
        final, series = dynamics.evolve(config, record_states=True)
        length = len(series.times)

        self.assertEqual(length, 41)
        for name in ('omega1', 'omega2', 'trace_dev', 'purity', 'min_eig',
                     'states'):
            with self.subTest(name=name):
                self.assertEqual(len(getattr(series, name)), length)
        for values in series.populations.values():
            self.assertEqual(len(values), length)
        self.assertTrue(np.all(np.diff(series.times) > 0))
        np.testing.assert_array_equal(series.states[-1], final)
        self.assertAlmostEqual(series.times[20], 0.0, places=12)
        self.assertEqual(series.omega2[20],
                         config.pulse2.value(series.times[20]))

    def test_structural_invariants(self) -> None:
        """Test trace, hermiticity and the untouched G_uu population"""
        config = SimConfig(t_start=-3.0, t_end=3.0)
        final, series = dynamics.evolve(config, record_states=True)

        self.assertLess(series.trace_dev_max, 1e-9)
        self.assertGreater(series.min_eig_min, -1e-8)
        for population in series.population(BasisState.G_uu):
            self.assertAlmostEqual(population, 0.25, delta=1e-12)
        for rho in series.states:
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)

        # the Ω₂ pulse has moved population through T2
        self.assertGreater(max(series.population(BasisState.T2)), 0.01)

    def test_closed_system_purity(self) -> None:
        """Test that a closed system stays pure"""
        config = SimConfig(gamma1=0.0, gamma2=0.0, t_start=-3.0, t_end=3.0)
        _, series = dynamics.evolve(config)

        for purity in series.purity:
            self.assertAlmostEqual(purity, 1.0, delta=1e-9)

    def test_deterministic(self) -> None:
        """Test that a configuration always gives the same result"""
        config = SimConfig(t_start=-1.0, t_end=1.0)
        first, _ = dynamics.evolve(config)
        second, _ = dynamics.evolve(config)

        np.testing.assert_array_equal(first, second)

    def test_staircase_constant_pulse(self) -> None:
        """Test that held envelopes change nothing for constant pulses"""
        config = three_level_config(t_end=0.2, dt=0.001, sample_stride=10)
        smooth, _ = dynamics.evolve(config)
        held, _ = dynamics.evolve(config.replace(staircase=True))

        np.testing.assert_allclose(held, smooth, atol=1e-13)

    def test_adaptive_integrator(self) -> None:
        """Test the adaptive integrator against RK4"""
        config = three_level_config(t_end=0.5, dt=0.00025, sample_stride=40)
        reference, reference_series = dynamics.evolve(config)
        adaptive, series = dynamics.evolve(
            config.replace(integrator='rk45_adaptive'))

        np.testing.assert_allclose(adaptive, reference, atol=1e-7)
        self.assertEqual(series.times[0], 0.0)
        self.assertEqual(series.times[-1], 0.5)
        self.assertTrue(np.all(np.diff(series.times) > 0))
        self.assertLess(series.trace_dev_max, 1e-8)

        # samples and the final state are symmetrized
        final, series = dynamics.evolve(
            config.replace(integrator='rk45_adaptive'), record_states=True)
        for rho in series.states + [final]:
            np.testing.assert_array_equal(rho, rho.conj().T)

    def test_adaptive_underflow(self) -> None:
        """Test the step size underflow of the adaptive integrator"""
        config = zero_coupling(gamma1=1e13,
                               t_start=0.0,
                               t_end=1e-6,
                               dt=1e-7,
                               integrator='rk45_adaptive',
                               initial_state='T1_d')

        with self.assertRaises(IntegrationError) as context:
            dynamics.evolve(config)
        error = context.exception
        self.assertIn('step size', error.message)
        self.assertIn('below 1e-09 ps', error.message)
        self.assertGreater(error.time, 0.0)
        self.assertLess(error.time, 1e-6)
        self.assertEqual(str(error),
                         't = {:.6g} ps: {}'.format(error.time,
                                                    error.message))
        self.assertNotIn('t = 0 ps', str(error))
        self.assertIsNotNone(error.series)
        self.assertEqual(len(error.series), 1)
        self.assertEqual(error.series.times, [0.0])

    def test_propagate(self) -> None:
        """Test batched propagation against single evolutions"""
        config = SimConfig(t_start=-1.0, t_end=1.0, dt=0.002)
        final, _ = dynamics.evolve(config)
        ground = np.zeros((10, 10), dtype=complex)
        ground[BasisState.G_dd.index, BasisState.G_dd.index] = 1.0
        outputs = dynamics.propagate(config,
                                     [config.initial_density(), ground])

        self.assertEqual(len(outputs), 2)
        np.testing.assert_allclose(outputs[0], final, atol=1e-12)
        single, _ = dynamics.evolve(config.replace(initial_state='G_dd'))
        np.testing.assert_allclose(outputs[1], single, atol=1e-12)

    def test_integration_error(self) -> None:
        """Test that a diverging integration is reported"""
        config = zero_coupling(gamma1=1e9,
                               t_start=0.0,
                               t_end=1.0,
                               dt=0.001,
                               initial_state='T1_d')

        with self.assertRaises(IntegrationError) as context:
            dynamics.evolve(config)
        error = context.exception
        self.assertGreater(error.time, 0.0)
        self.assertLessEqual(error.time, 1.0)
        self.assertIsNotNone(error.series)
        self.assertGreaterEqual(len(error.series), 1)
        self.assertEqual(error.series.times[0], 0.0)

    def test_convergence_check(self) -> None:
        """Test the comparison of dt and dt/2"""
        report = dynamics.convergence_check(zero_coupling())
        self.assertEqual(report.max_population_difference, 0.0)
        self.assertEqual(report.fidelity_difference, 0.0)
        self.assertEqual(report.ground_drift, 0.0)
        self.assertTrue(report.converged())

        config = SimConfig(t_start=-3.0, t_end=3.0)
        coarse = dynamics.convergence_check(config.replace(dt=0.05))
        fine = dynamics.convergence_check(config.replace(dt=0.005))
        self.assertIsNotNone(fine.fidelity)
        self.assertGreater(coarse.fidelity_difference,
                           fine.fidelity_difference)

        with self.assertRaises(ConfigurationError):
            dynamics.convergence_check(
                config.replace(integrator='rk45_adaptive'))

    def test_convergence_check_failure(self) -> None:
        """Test the report of a diverging convergence check"""
        report = dynamics.convergence_check(
            zero_coupling(gamma1=1e9, t_start=0.0, t_end=1.0, dt=0.001,
                          initial_state='T1_d'))

        self.assertIsNotNone(report.error)
        self.assertFalse(report.converged())


if __name__ == '__main__':
    unittest.main()
