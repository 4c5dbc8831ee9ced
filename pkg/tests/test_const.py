#!/usr/bin/env python3
# -*- coding: UTF-8 -*-
"""Unittest for testing const definitions of qdmgate"""

import logging
import math
import unittest

from qdmgate import const as Const


class TestConst(unittest.TestCase):
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

    def test_units(self) -> None:
        """Test unit conversion constants"""
        self.assertEqual(Const.HBAR_MEV_PS, 0.6582119569)
        self.assertEqual(Const.PER_NS_TO_PER_PS, 1e-3)
        self.assertEqual(Const.DIMENSION, 10)
        self.assertEqual(Const.GROUND_DIMENSION, 4)

    def test_pulse_defaults(self) -> None:
        """Test the reference pulse parameters"""
        self.assertAlmostEqual(Const.OMEGA1_AMPLITUDE_FACTOR, 4.4311, places=4)
        self.assertAlmostEqual(Const.OMEGA2_AMPLITUDE_FACTOR, 3.5449, places=4)
        self.assertEqual(Const.OMEGA1_WIDTH_PARAM, 0.05)
        self.assertEqual(Const.OMEGA2_WIDTH_PARAM, 2.0)

        # area of the Ω₂ Gaussian is peak·√π/width
        area = Const.OMEGA2_AMPLITUDE_FACTOR * math.sqrt(math.pi) / \
            Const.OMEGA2_WIDTH_PARAM
        self.assertAlmostEqual(area, math.pi, places=12)

    def test_gate_defaults(self) -> None:
        """Test the reference gate parameters"""
        self.assertEqual(Const.DEFAULT_T0_PS, 1.0)
        self.assertEqual(Const.DEFAULT_TAU, 2.0)
        self.assertEqual(Const.DEFAULT_GAMMA1_PER_NS, 1.0)
        self.assertEqual(Const.DEFAULT_GAMMA2_PER_NS, 1.0)
        self.assertEqual(Const.DEFAULT_GAMMA_IND_PER_NS, 0.0)
        self.assertEqual(Const.DEFAULT_T_START_PS, -60.0)
        self.assertEqual(Const.DEFAULT_T_END_PS, 60.0)
        self.assertEqual(Const.DEFAULT_DT_PS, 0.001)
        self.assertEqual(Const.DEFAULT_SAMPLE_STRIDE, 100)

    def test_tolerances(self) -> None:
        """Test monitor and metric tolerances"""
        self.assertEqual(Const.TRACE_TOLERANCE, 1e-9)
        self.assertEqual(Const.POSITIVITY_TOLERANCE, -1e-8)
        self.assertEqual(Const.FIDELITY_IMAG_TOLERANCE, 1e-12)
        self.assertEqual(Const.FIDELITY_DRIFT_TOLERANCE, 1e-6)
        self.assertEqual(Const.MONOTONICITY_TOLERANCE, 1e-9)
        self.assertEqual(Const.DEFAULT_GATE_TIME_THRESHOLD, 0.01)
        self.assertLess(Const.MIN_ADAPTIVE_STEP_PS, Const.DEFAULT_DT_PS)
        self.assertLess(Const.DEFAULT_DT_PS, Const.MAX_ADAPTIVE_STEP_PS)

    def test_quoted_values(self) -> None:
        """Test the quoted fidelities"""
        self.assertEqual(Const.REFERENCE_FIDELITY, 0.98)
        self.assertEqual(Const.CAVITY_FIDELITY, 0.998)
        self.assertEqual(Const.CAVITY_GAMMA2_PER_NS, 1.25)
        self.assertEqual(Const.REPRODUCTION_FIDELITY_BOUND, 0.96)


if __name__ == '__main__':
    unittest.main()
