#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Reference solutions of the gate dynamics

Closed form results for the dark state of the adiabatic passage, the three
level Rabi oscillation of the phase flip and the amplitude damping of an
isolated channel, together with brute force propagators built from the
matrix exponential of the Lindblad superoperator.

Three level sector vectors are ordered (ground, trion, indirect exciton),
e.g. (G_ud, T2, I2) for the phase flip sector.
"""

# system packages
from dataclasses import dataclass
import logging
import math

# external packages
import numpy as np
from scipy.linalg import eigh, expm
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

# custom packages
from .common import DomainError
from .config import SimConfig
from .dynamics import LindbladGenerator, TimeSeries
from .dynamics import sample_time, step_plan
from .statespace import BasisState, Channel, ComplexMatrix, DensityMatrix
from .statespace import StateVector, liouvillian, unvec, vec

# typing
from typing import List, Sequence, Tuple

logger = logging.getLogger(__name__)

#: Held steps exponentiated in one batch by the staircase
STAIRCASE_BATCH_STEPS = 2000

#: Basis levels of the two adiabatic passage sectors
DARK_SECTORS = {
    'u': (BasisState.G_du, BasisState.T1_u, BasisState.I1_u),
    'd': (BasisState.G_dd, BasisState.T1_d, BasisState.I1_d),
}


@dataclass(frozen=True)
class ThreeLevelParams(object):
    """
    Constant coupling three level problem

    :param      tau:    The tunneling coupling in rad/ps
    :type       tau:    float
    :param      omega:  The constant Rabi frequency in rad/ps
    :type       omega:  float
    :param      t:      The evolution time in ps
    :type       t:      float
    """
    tau: float
    omega: float
    t: float = 0.0

    @property
    def frequency(self) -> float:
        """Oscillation frequency √(τ² + Ω²) in rad/ps"""
        return math.hypot(self.tau, self.omega)


def resonance_time(params: ThreeLevelParams) -> float:
    """
    Time t₁ of the phase flip, t₁√(τ² + Ω²) = π.

    :param      params:  The coupling parameters, t is ignored
    :type       params:  ThreeLevelParams

    :returns:   t₁ in ps
    :rtype:     float

    :raises     DomainError:  If τ and Ω are both zero
    """
    if params.frequency == 0:
        raise DomainError('resonance time needs τ² + Ω² > 0')

    return math.pi / params.frequency


def sector_hamiltonian(omega: float, tau: float) -> ComplexMatrix:
    """
    Hamiltonian of a three level sector.

    :param      omega:  The Rabi frequency coupling ground and trion
    :type       omega:  float
    :param      tau:    The tunneling coupling of trion and indirect exciton
    :type       tau:    float

    :returns:   3×3 matrix in (ground, trion, indirect) order
    :rtype:     ComplexMatrix
    """
    return np.array([[0, omega, 0],
                     [omega, 0, tau],
                     [0, tau, 0]], dtype=np.complex128)


def dark_state(omega1: float, tau: float) -> StateVector:
    """
    Zero energy eigenvector of the adiabatic passage sector.

    :param      omega1:  The Rabi frequency Ω₁ in rad/ps
    :type       omega1:  float
    :param      tau:     The tunneling coupling in rad/ps
    :type       tau:     float

    :returns:   Normalized (τ, -Ω₁) in the (ground, indirect) subspace
    :rtype:     StateVector

    :raises     DomainError:  If both couplings are zero
    """
    norm = math.hypot(omega1, tau)
    if norm == 0:
        raise DomainError('dark state direction undefined for Ω₁ = τ = 0')

    return np.array([tau / norm, -omega1 / norm], dtype=np.complex128)


def embed_dark_state(omega1: float, tau: float) -> StateVector:
    """
    Dark state as a three level sector vector with empty trion.

    :param      omega1:  The Rabi frequency Ω₁ in rad/ps
    :type       omega1:  float
    :param      tau:     The tunneling coupling in rad/ps
    :type       tau:     float

    :returns:   (ground, 0, indirect) amplitudes
    :rtype:     StateVector
    """
    ground, indirect = dark_state(omega1, tau)

    return np.array([ground, 0, indirect], dtype=np.complex128)


def dark_state_ket(omega1: float,
                   tau: float,
                   sector: str = 'd') -> StateVector:
    """
    Dark state of a dot 2 spin sector in the full basis.

    :param      omega1:  The Rabi frequency Ω₁ in rad/ps
    :type       omega1:  float
    :param      tau:     The tunneling coupling in rad/ps
    :type       tau:     float
    :param      sector:  The dot 2 spin, 'u' or 'd'
    :type       sector:  str

    :returns:   Ten component state vector
    :rtype:     StateVector

    :raises     DomainError:  If the sector is unknown
    """
    if sector not in DARK_SECTORS:
        raise DomainError('unknown dark state sector {!r}'.format(sector))

    ground, _, indirect = DARK_SECTORS[sector]
    amplitudes = dark_state(omega1, tau)
    state = np.zeros(len(BasisState), dtype=np.complex128)
    state[ground.index] = amplitudes[0]
    state[indirect.index] = amplitudes[1]

    return state


def dark_state_population(rho: DensityMatrix,
                          omega1: float,
                          tau: float,
                          sector: str = 'd') -> float:
    """
    Overlap ⟨D|ρ|D⟩ of a state with the instantaneous dark state.

    Stays close to the initial ground population of the sector while the
    passage is adiabatic.

    :param      rho:     The density matrix
    :type       rho:     DensityMatrix
    :param      omega1:  The Rabi frequency Ω₁ in rad/ps
    :type       omega1:  float
    :param      tau:     The tunneling coupling in rad/ps
    :type       tau:     float
    :param      sector:  The dot 2 spin, 'u' or 'd'
    :type       sector:  str

    :returns:   The dark state population
    :rtype:     float
    """
    state = dark_state_ket(omega1, tau, sector)

    return float(np.real(np.vdot(state, np.asarray(rho) @ state)))


def three_level_rabi(p: ThreeLevelParams) -> StateVector:
    """
    Amplitudes of the three level sector started in its ground level.

    With ω² = τ² + Ω² the amplitudes are
    g = (τ² + Ω² cos ωt)/ω², e = -i(Ω/ω) sin ωt and t = τΩ(cos ωt - 1)/ω².
    Zero coupling leaves the ground level untouched.

    :param      p:    The parameters
    :type       p:    ThreeLevelParams

    :returns:   (g, e, t) amplitudes
    :rtype:     StateVector
    """
    frequency = p.frequency
    if frequency == 0:
        return np.array([1, 0, 0], dtype=np.complex128)

    phase = frequency * p.t
    cosine = math.cos(phase)
    square = frequency * frequency

    return np.array([(p.tau ** 2 + p.omega ** 2 * cosine) / square,
                     -1j * p.omega / frequency * math.sin(phase),
                     p.tau * p.omega * (cosine - 1) / square],
                    dtype=np.complex128)


def eigen_propagate(hamiltonian: ComplexMatrix,
                    state: StateVector,
                    t: float) -> StateVector:
    """
    Propagate a state under a constant Hamiltonian by diagonalization.

    :param      hamiltonian:  The Hermitian Hamiltonian in rad/ps
    :type       hamiltonian:  ComplexMatrix
    :param      state:        The initial state
    :type       state:        StateVector
    :param      t:            The time in ps
    :type       t:            float

    :returns:   exp(-iHt)|ψ⟩
    :rtype:     StateVector
    """
    energies, vectors = eigh(np.asarray(hamiltonian, dtype=np.complex128))
    coefficients = vectors.conj().T @ np.asarray(state, dtype=np.complex128)

    return vectors @ (np.exp(-1j * energies * t) * coefficients)


def damped_two_level(gamma: float, t: float) -> float:
    """
    Excited population of an isolated decay channel.

    :param      gamma:  The decay rate in ps⁻¹
    :type       gamma:  float
    :param      t:      The time in ps
    :type       t:      float

    :returns:   exp(-γt)
    :rtype:     float

    :raises     DomainError:  If γ or t is negative
    """
    if gamma < 0 or t < 0:
        raise DomainError('damping needs γ ≥ 0 and t ≥ 0')

    return math.exp(-gamma * t)


def expm_propagate(rho0: DensityMatrix,
                   H: ComplexMatrix,
                   channels: Sequence[Channel],
                   dt: float) -> DensityMatrix:
    """
    Propagate a density matrix under a constant Lindblad generator.

    :param      rho0:      The initial density matrix
    :type       rho0:      DensityMatrix
    :param      H:         The Hamiltonian in rad/ps
    :type       H:         ComplexMatrix
    :param      channels:  The decay channels
    :type       channels:  Sequence[Channel]
    :param      dt:        The time in ps
    :type       dt:        float

    :returns:   The propagated density matrix
    :rtype:     DensityMatrix
    """
    if dt == 0:
        return np.array(rho0, dtype=np.complex128)

    propagator = expm(liouvillian(H, channels) * dt)

    return unvec(propagator @ vec(rho0))


@dataclass(frozen=True)
class GeneratorBlock(object):
    """
    Invariant block of a Lindblad generator

    Each row of ``members`` holds the column-stacked indices of one copy of
    the block, all copies share the three generator parts.

    :param      members:  Index sets of the copies, shape (copies, m)
    :type       members:  np.ndarray
    :param      static:   Block of G₀
    :type       static:   ComplexMatrix
    :param      drive1:   Block of G₁
    :type       drive1:   ComplexMatrix
    :param      drive2:   Block of G₂
    :type       drive2:   ComplexMatrix
    """
    members: np.ndarray
    static: ComplexMatrix
    drive1: ComplexMatrix
    drive2: ComplexMatrix

    def propagators(self,
                    omega1: np.ndarray,
                    omega2: np.ndarray,
                    h: np.ndarray) -> np.ndarray:
        """
        Exponentials of the block held at the given envelopes.

        Steps sharing the envelopes the block depends on and the step size
        share one exponential.

        :param      omega1:  Held Ω₁ of every step in rad/ps
        :type       omega1:  np.ndarray
        :param      omega2:  Held Ω₂ of every step in rad/ps
        :type       omega2:  np.ndarray
        :param      h:       Size of every step in ps
        :type       h:       np.ndarray

        :returns:   exp(h G) of every step, shape (steps, m, m)
        :rtype:     np.ndarray
        """
        held = np.stack([omega1 if self.drive1.any() else np.zeros_like(h),
                         omega2 if self.drive2.any() else np.zeros_like(h),
                         h], axis=1)
        unique, inverse = np.unique(held, axis=0, return_inverse=True)

        generators = (self.static[None] +
                      unique[:, 0, None, None] * self.drive1[None] +
                      unique[:, 1, None, None] * self.drive2[None])

        return expm(generators * unique[:, 2, None, None])[inverse.ravel()]


def split_generator(generator: LindbladGenerator) -> List[GeneratorBlock]:
    """
    Split a generator into independent blocks.

    The blocks are the connected components of the joint sparsity pattern
    of G₀, G₁ and G₂. Components with identical parts are merged into one
    block with several copies.

    :param      generator:  The generator
    :type       generator:  LindbladGenerator

    :returns:   The blocks, together covering every index once
    :rtype:     List[GeneratorBlock]
    """
    parts = generator.parts
    pattern = np.zeros(parts[0].shape, dtype=bool)
    for part in parts:
        pattern |= part != 0

    count, labels = connected_components(csr_matrix(pattern),
                                         directed=True,
                                         connection='weak')

    shared = dict()
    for label in range(count):
        members = np.flatnonzero(labels == label)
        index = np.ix_(members, members)
        # adding +0 turns -0.0 into 0.0, equal blocks get equal bytes
        block = tuple(part[index] + (0.0 + 0.0j) for part in parts)
        key = (len(members), ) + tuple(entry.tobytes() for entry in block)
        shared.setdefault(key, (block, []))[1].append(members)

    blocks = [GeneratorBlock(np.array(copies), *block)
              for block, copies in shared.values()]
    logger.debug('Generator split into {} components, {} distinct blocks of '
                 'size {}'.format(count,
                                  len(blocks),
                                  sorted(block.static.shape[0]
                                         for block in blocks)))

    return blocks


def _ordered_product(factors: np.ndarray) -> np.ndarray:
    """Product factors[n-1] ⋯ factors[1] factors[0] of a matrix stack"""
    while len(factors) > 1:
        tail = factors[len(factors) - len(factors) % 2:]
        head = factors[:len(factors) - len(tail)]
        factors = np.concatenate([head[1::2] @ head[0::2], tail])

    return factors[0]


def staircase_evolve(config: SimConfig) -> Tuple[DensityMatrix, TimeSeries]:
    """
    Evolve with envelopes held at their step midpoints.

    Every step of size dt applies the exact exponential of the generator
    frozen at the step center. The exponentials are taken per invariant
    block of the generator and in batches of steps, the steps between two
    samples are multiplied up before they act on the state. Sampling
    follows the integrator, every ``sample_stride`` steps and at
    ``t_end``, with the states recorded.

    :param      config:  The configuration
    :type       config:  SimConfig

    :returns:   Final density matrix and time series
    :rtype:     Tuple[DensityMatrix, TimeSeries]
    """
    generator = LindbladGenerator(config)
    blocks = split_generator(generator)
    series = TimeSeries()
    y = vec(config.initial_density())

    def sample(t: float) -> None:
        omega1, omega2 = generator.envelopes(t)
        series.append(t, omega1, omega2, unvec(y), keep_state=True)

    sample(config.t_start)
    steps = list(step_plan(config.t_start, config.t_end, config.dt))
    stride = config.sample_stride
    batch = stride * max(1, STAIRCASE_BATCH_STEPS // stride)

    for first in range(0, len(steps), batch):
        t = np.array([step[0] for step in steps[first:first + batch]])
        h = np.array([step[1] for step in steps[first:first + batch]])
        held = np.array([generator.envelopes(middle)
                         for middle in t + 0.5 * h])
        propagators = [block.propagators(held[:, 0], held[:, 1], h)
                       for block in blocks]

        for start in range(0, len(t), stride):
            stop = min(start + stride, len(t))
            for block, stack in zip(blocks, propagators):
                product = _ordered_product(stack[start:stop])
                y[block.members] = y[block.members] @ product.T

            if stop - start == stride:
                sample(sample_time(float(t[stop - 1]), float(h[stop - 1]),
                                   config.t_end, config.dt))
            else:
                sample(config.t_end)

    logger.debug('Staircase of {} steps over [{}, {}] ps'.
                 format(len(steps), config.t_start, config.t_end))

    return unvec(y), series
