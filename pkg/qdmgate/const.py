#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Physical constants, reference defaults and numerical tolerances

Internal units are picoseconds for time, rad/ps for angular frequencies and
ps⁻¹ for rates. Values quoted in other units carry the unit in their name.
"""

# system packages
import math

# physical constants
#: Reduced Planck constant in meV·ps (CODATA 2018)
HBAR_MEV_PS = 0.6582119569
#: Conversion of a rate given in ns⁻¹ to ps⁻¹
PER_NS_TO_PER_PS = 1e-3

# effective Hilbert space
#: Number of levels of the effective quantum dot molecule model
DIMENSION = 10
#: Number of computational (ground) states
GROUND_DIMENSION = 4

# gate defaults
#: Pulse time unit t₀ in ps
DEFAULT_T0_PS = 1.0
#: Hole tunneling coupling τ as quoted, meV in physical unit mode
DEFAULT_TAU = 2.0
#: Radiative decay rate of the dot 1 trions in ns⁻¹
DEFAULT_GAMMA1_PER_NS = 1.0
#: Radiative decay rate of the dot 2 trion in ns⁻¹
DEFAULT_GAMMA2_PER_NS = 1.0
#: Decay rate of the indirect excitons in ns⁻¹, disabled by default
DEFAULT_GAMMA_IND_PER_NS = 0.0
#: Peak of the slow CW envelope Ω₁ in units of 1/t₀
OMEGA1_AMPLITUDE_FACTOR = 5.0 * math.sqrt(math.pi) / 2.0
#: Factor multiplying t inside the Gaussian exponent of Ω₁
OMEGA1_WIDTH_PARAM = 0.05
#: Peak of the fast pulse Ω₂ in units of 1/t₀, gives a pulse area of π
OMEGA2_AMPLITUDE_FACTOR = 2.0 * math.sqrt(math.pi)
#: Factor multiplying t inside the Gaussian exponent of Ω₂
OMEGA2_WIDTH_PARAM = 2.0
#: Start of the gate window in ps
DEFAULT_T_START_PS = -60.0
#: End of the gate window in ps
DEFAULT_T_END_PS = 60.0
#: Fixed integration step in ps
DEFAULT_DT_PS = 0.001
#: Per step error tolerance of the adaptive integrator
DEFAULT_ADAPTIVE_TOL = 1e-10
#: Record one sample every this many integration steps
DEFAULT_SAMPLE_STRIDE = 100

# integrator limits
#: Smallest adaptive step before the integration is declared failed, in ps
MIN_ADAPTIVE_STEP_PS = 1e-9
#: Largest adaptive step in ps, keeps the narrow Ω₂ pulse from being skipped
MAX_ADAPTIVE_STEP_PS = 0.05

# monitors
#: Largest tolerated deviation of tr ρ from 1
TRACE_TOLERANCE = 1e-9
#: Most negative tolerated eigenvalue of ρ
POSITIVITY_TOLERANCE = -1e-8
#: Largest tolerated norm deviation of a normalized state vector
NORM_TOLERANCE = 1e-12
#: Largest discarded imaginary residue of a fidelity
FIDELITY_IMAG_TOLERANCE = 1e-12

# metrics
#: Fraction of the pulse peak that opens and closes the gate window
DEFAULT_GATE_TIME_THRESHOLD = 0.01
#: Gate fidelity quoted for the reference parameters
REFERENCE_FIDELITY = 0.98
#: Gate fidelity quoted for the cavity-modified γ₂
CAVITY_FIDELITY = 0.998
#: Cavity-modified γ₂ in ns⁻¹
CAVITY_GAMMA2_PER_NS = 1.25
#: Lower fidelity bound accepted as a reproduction of the reference value
REPRODUCTION_FIDELITY_BOUND = 0.96
#: Largest fidelity drift between dt and dt/2 accepted as converged
FIDELITY_DRIFT_TOLERANCE = 1e-6
#: Tolerance of the monotonicity checks of a sweep
MONOTONICITY_TOLERANCE = 1e-9

# quadrature
#: Absolute tolerance of the pulse area quadrature
QUADRATURE_TOLERANCE = 1e-12
#: Maximum number of subintervals of the pulse area quadrature
QUADRATURE_LIMIT = 500
