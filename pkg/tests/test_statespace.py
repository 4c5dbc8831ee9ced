#!/usr/bin/env python3
# -*- coding: UTF-8 -*-
"""Unittest for testing the state space of qdmgate"""

import logging
import unittest

import numpy as np

from qdmgate import statespace
from qdmgate.config import ChannelAttachment, SimConfig
from qdmgate.statespace import BasisState


class TestStatespace(unittest.TestCase):
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

        self.rng = np.random.default_rng(20161104)

    def _random_density(self) -> np.ndarray:
        a = self.rng.normal(size=(10, 10)) + \
            1j * self.rng.normal(size=(10, 10))
        rho = a @ a.conj().T
        return rho / np.trace(rho)

    def test_build_basis(self) -> None:
        """Test order and labels of the basis"""
        basis = statespace.build_basis()
        labels = [state.label for state in basis]

        self.assertEqual(len(basis), 10)
        self.assertEqual(labels, ['G_uu', 'G_ud', 'G_du', 'G_dd',
                                  'T1_u', 'T1_d', 'I1_u', 'I1_d',
                                  'T2', 'I2'])
        self.assertEqual([state.index for state in basis], list(range(10)))
        self.assertEqual([state for state in basis if state.is_ground],
                         list(statespace.GROUND_STATES))
        self.assertEqual(BasisState.G_ud.ket, '|↑,↓⟩')
        self.assertEqual(BasisState.T2.ket, '|↑,↓↑⇓⟩')

    def test_basis_state(self) -> None:
        """Test lookup of a level by its label"""
        self.assertEqual(statespace.basis_state('T1_d'), BasisState.T1_d)

        with self.assertRaises(ValueError):
            statespace.basis_state('T3')

    def test_transition_op(self) -> None:
        """Test the elementary operators"""
        op = statespace.transition_op(BasisState.T2, BasisState.G_ud)

        self.assertEqual(op[BasisState.G_ud.index, BasisState.T2.index], 1)
        self.assertEqual(np.count_nonzero(op), 1)
        np.testing.assert_array_equal(
            op @ statespace.ket(BasisState.T2),
            statespace.ket(BasisState.G_ud))

        projector = statespace.projector(BasisState.I2)
        np.testing.assert_array_equal(projector @ projector, projector)

    def test_states(self) -> None:
        """Test construction of state vectors and density matrices"""
        psi = statespace.psi0()

        np.testing.assert_allclose(psi[:4], 0.5)
        np.testing.assert_array_equal(psi[4:], 0)
        self.assertTrue(statespace.is_normalized(psi))
        self.assertFalse(statespace.is_normalized(2 * psi))

        rho = statespace.density_matrix(psi)
        self.assertEqual(rho[0, 0], 0.25)
        self.assertAlmostEqual(np.trace(rho).real, 1.0, places=15)

        superposed = statespace.superposition({BasisState.G_uu: 1,
                                               BasisState.G_ud: -1})
        np.testing.assert_allclose(superposed[:2],
                                   np.array([1, -1]) / np.sqrt(2))

        with self.assertRaises(ValueError):
            statespace.superposition({BasisState.G_uu: 0})

    def test_decay_ops(self) -> None:
        """Test the jump operators"""
        c1 = statespace.trion_decay_op()
        self.assertEqual(c1[BasisState.G_du.index, BasisState.T1_u.index], 1)
        self.assertEqual(c1[BasisState.G_dd.index, BasisState.T1_d.index], 1)
        self.assertEqual(np.count_nonzero(c1), 2)

        c2 = statespace.dot2_decay_op()
        self.assertEqual(c2[BasisState.G_ud.index, BasisState.T2.index], 1)
        self.assertEqual(np.count_nonzero(c2), 1)

        # no channel ends in or starts from G_uu
        for op in (c1, c2, statespace.indirect1_decay_op(),
                   statespace.indirect2_decay_op()):
            np.testing.assert_array_equal(op[0, :], 0)
            np.testing.assert_array_equal(op[:, 0], 0)

    def test_collapse_ops(self) -> None:
        """Test channel selection of a configuration"""
        channels = statespace.collapse_ops(SimConfig())

        self.assertEqual(len(channels), 2)
        self.assertAlmostEqual(channels[0][0], 0.001)
        self.assertAlmostEqual(channels[1][0], 0.001)
        np.testing.assert_array_equal(channels[1][1],
                                      statespace.dot2_decay_op())

        indirect = SimConfig(channel_attachment=ChannelAttachment.INDIRECT,
                             gamma2=1.25,
                             gamma_ind=0.5)
        channels = statespace.collapse_ops(indirect)
        self.assertEqual(len(channels), 3)
        self.assertAlmostEqual(channels[1][0], 0.00125)
        np.testing.assert_array_equal(channels[1][1],
                                      statespace.indirect1_decay_op())
        np.testing.assert_array_equal(channels[2][1],
                                      statespace.indirect2_decay_op())

        channels = statespace.collapse_ops(SimConfig(gamma_ind=0.5))
        self.assertEqual(len(channels), 4)

    def test_vec_unvec(self) -> None:
        """Test column stacking"""
        matrix = np.arange(9, dtype=np.complex128).reshape(3, 3)
        vector = statespace.vec(matrix)

        np.testing.assert_array_equal(vector[:3], matrix[:, 0])
        np.testing.assert_array_equal(statespace.unvec(vector), matrix)

    def test_liouvillian(self) -> None:
        """Test the superoperator against the matrix form"""
        config = SimConfig(gamma1=300.0, gamma2=700.0, gamma_ind=100.0)
        channels = statespace.collapse_ops(config)
        a = self.rng.normal(size=(10, 10)) + \
            1j * self.rng.normal(size=(10, 10))
        hamiltonian = a + a.conj().T
        generator = statespace.liouvillian(hamiltonian, channels)

        self.assertEqual(generator.shape, (100, 100))
        for _ in range(3):
            rho = self._random_density()
            expected = -1j * (hamiltonian @ rho - rho @ hamiltonian)
            for rate, op in channels:
                loss = op.conj().T @ op
                expected += rate * (op @ rho @ op.conj().T -
                                    0.5 * (loss @ rho + rho @ loss))
            result = statespace.unvec(generator @ statespace.vec(rho))
            np.testing.assert_allclose(result, expected, atol=1e-12)
            self.assertLess(abs(np.trace(result)), 1e-12)


if __name__ == '__main__':
    unittest.main()
