#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Effective Hilbert space of the quantum dot molecule

Ten levels are enough to describe the gate: the four two-electron spin
ground states, the dot 1 trions and their hole tunneled partners for both
dot 2 spins, and the single dot 2 trion with its hole tunneled partner.

Ket notation, left of the comma is dot 1, right of the comma is dot 2:

========  =============  ================================================
label     ket            description
========  =============  ================================================
G_uu      |↑,↑⟩          ground state, never coupled
G_ud      |↑,↓⟩          ground state, receives the phase flip
G_du      |↓,↑⟩          ground state, adiabatic passage
G_dd      |↓,↓⟩          ground state, adiabatic passage
T1_u      |↓↑⇓,↑⟩        dot 1 trion, dot 2 spin up
T1_d      |↓↑⇓,↓⟩        dot 1 trion, dot 2 spin down
I1_u      |↓↑,⇓↑⟩        hole tunneled to dot 2, dot 2 spin up
I1_d      |↓↑,⇓↓⟩        hole tunneled to dot 2, dot 2 spin down
T2        |↑,↓↑⇓⟩        dot 2 trion
I2        |↑⇓,↓↑⟩        hole tunneled to dot 1
========  =============  ================================================

The Pauli blocked transition out of I1_d has no target level in this basis.

Matrices are dense ``numpy`` arrays. Superoperators act on column-stacked
density matrices, ``vec(rho) = rho.flatten(order='F')``.
"""

# system packages
from enum import IntEnum
import math

# external packages
import numpy as np

# custom packages
from . import const as Const
from .common import ConfigurationError

# typing
from typing import List, Sequence, Tuple, TYPE_CHECKING
from numpy.typing import NDArray

if TYPE_CHECKING:   # pragma: no cover
    from .config import SimConfig

#: Dense complex matrix, a Hamiltonian, a density matrix or an operator
ComplexMatrix = NDArray[np.complex128]
#: Dense complex vector, a state or a column-stacked density matrix
StateVector = NDArray[np.complex128]
#: Density matrix of the effective system
DensityMatrix = NDArray[np.complex128]
#: Decay channel as (rate in ps⁻¹, jump operator)
Channel = Tuple[float, ComplexMatrix]


class BasisState(IntEnum):
    """Levels of the effective model, the value is the matrix index"""
    G_uu = 0
    G_ud = 1
    G_du = 2
    G_dd = 3
    T1_u = 4
    T1_d = 5
    I1_u = 6
    I1_d = 7
    T2 = 8
    I2 = 9

    @property
    def label(self) -> str:
        """
        Get the label of the level.

        :returns:   The label, e.g. "G_ud"
        :rtype:     str
        """
        return self.name

    @property
    def index(self) -> int:
        """
        Get the matrix index of the level.

        :returns:   The index in 0..9
        :rtype:     int
        """
        return int(self.value)

    @property
    def ket(self) -> str:
        """
        Get the ket notation of the level.

        :returns:   Ket in spin notation
        :rtype:     str
        """
        return KETS[self]

    @property
    def is_ground(self) -> bool:
        """
        Check whether this is one of the four computational states.

        :returns:   True for G_uu, G_ud, G_du and G_dd
        :rtype:     bool
        """
        return self.value < Const.GROUND_DIMENSION


KETS = {
    BasisState.G_uu: '|↑,↑⟩',
    BasisState.G_ud: '|↑,↓⟩',
    BasisState.G_du: '|↓,↑⟩',
    BasisState.G_dd: '|↓,↓⟩',
    BasisState.T1_u: '|↓↑⇓,↑⟩',
    BasisState.T1_d: '|↓↑⇓,↓⟩',
    BasisState.I1_u: '|↓↑,⇓↑⟩',
    BasisState.I1_d: '|↓↑,⇓↓⟩',
    BasisState.T2: '|↑,↓↑⇓⟩',
    BasisState.I2: '|↑⇓,↓↑⟩',
}

#: The computational states in index order
GROUND_STATES = (BasisState.G_uu, BasisState.G_ud,
                 BasisState.G_du, BasisState.G_dd)


def build_basis() -> List[BasisState]:
    """
    Get the ordered basis of the effective model.

    :returns:   The ten levels ordered by matrix index
    :rtype:     List[BasisState]
    """
    return sorted(BasisState, key=lambda state: state.index)


def basis_state(label: str) -> BasisState:
    """
    Look up a level by its label.

    :param      label:  The label, e.g. "T1_d"
    :type       label:  str

    :returns:   The level
    :rtype:     BasisState

    :raises     ValueError:  If the label is unknown
    """
    try:
        return BasisState[label]
    except KeyError:
        raise ValueError('Unknown basis state label {!r}'.format(label))


def transition_op(from_state: BasisState,
                  to_state: BasisState) -> ComplexMatrix:
    """
    Build the elementary operator |to⟩⟨from|.

    :param      from_state:  The source level
    :type       from_state:  BasisState
    :param      to_state:    The target level
    :type       to_state:    BasisState

    :returns:   Matrix with a single 1 at (to, from)
    :rtype:     ComplexMatrix
    """
    op = np.zeros((Const.DIMENSION, Const.DIMENSION), dtype=np.complex128)
    op[BasisState(to_state).index, BasisState(from_state).index] = 1.0

    return op


def projector(state: BasisState) -> ComplexMatrix:
    """
    Build the projector |state⟩⟨state|.

    :param      state:  The level
    :type       state:  BasisState

    :returns:   The projector
    :rtype:     ComplexMatrix
    """
    return transition_op(state, state)


def ket(state: BasisState) -> StateVector:
    """
    Build the basis vector of a level.

    :param      state:  The level
    :type       state:  BasisState

    :returns:   Unit vector of length 10
    :rtype:     StateVector
    """
    vector = np.zeros(Const.DIMENSION, dtype=np.complex128)
    vector[BasisState(state).index] = 1.0

    return vector


def superposition(amplitudes: dict) -> StateVector:
    """
    Build a normalized superposition of levels.

    :param      amplitudes:  Mapping of level to (unnormalized) amplitude
    :type       amplitudes:  dict

    :returns:   The normalized state
    :rtype:     StateVector

    :raises     ValueError:  If all amplitudes are zero
    """
    vector = np.zeros(Const.DIMENSION, dtype=np.complex128)
    for state, amplitude in amplitudes.items():
        vector[BasisState(state).index] += amplitude

    norm = np.linalg.norm(vector)
    if norm == 0:
        raise ValueError('Superposition of zero amplitudes')

    return vector / norm


def psi0() -> StateVector:
    """
    Equal superposition ½(|↑,↑⟩ + |↑,↓⟩ + |↓,↑⟩ + |↓,↓⟩) of the ground states.

    :returns:   The gate input used for the fidelity
    :rtype:     StateVector
    """
    return superposition({state: 1.0 for state in GROUND_STATES})


def density_matrix(state: StateVector) -> DensityMatrix:
    """
    Build the pure state density matrix |ψ⟩⟨ψ|.

    :param      state:  The state
    :type       state:  StateVector

    :returns:   The density matrix
    :rtype:     DensityMatrix
    """
    state = np.asarray(state, dtype=np.complex128)

    return np.outer(state, state.conj())


def dagger(op: ComplexMatrix) -> ComplexMatrix:
    """
    Hermitian conjugate of an operator.

    :param      op:   The operator
    :type       op:   ComplexMatrix

    :returns:   The conjugate transpose
    :rtype:     ComplexMatrix
    """
    return np.conj(op).T


def is_normalized(state: StateVector,
                  tolerance: float = Const.NORM_TOLERANCE) -> bool:
    """
    Check the norm of a state vector.

    :param      state:      The state
    :type       state:      StateVector
    :param      tolerance:  The tolerance
    :type       tolerance:  float

    :returns:   True if the norm is within the tolerance of 1
    :rtype:     bool
    """
    return abs(np.linalg.norm(state) - 1.0) <= tolerance


def trion_decay_op() -> ComplexMatrix:
    """c₁ = |G_du⟩⟨T1_u| + |G_dd⟩⟨T1_d|, radiative decay of dot 1"""
    return (transition_op(BasisState.T1_u, BasisState.G_du) +
            transition_op(BasisState.T1_d, BasisState.G_dd))


def dot2_decay_op() -> ComplexMatrix:
    """c₂ = |G_ud⟩⟨T2|, radiative decay of dot 2"""
    return transition_op(BasisState.T2, BasisState.G_ud)


def indirect1_decay_op() -> ComplexMatrix:
    """c_ind1 = |G_du⟩⟨I1_u| + |G_dd⟩⟨I1_d|"""
    return (transition_op(BasisState.I1_u, BasisState.G_du) +
            transition_op(BasisState.I1_d, BasisState.G_dd))


def indirect2_decay_op() -> ComplexMatrix:
    """c_ind2 = |G_ud⟩⟨I2|"""
    return transition_op(BasisState.I2, BasisState.G_ud)


def _checked_rate(name: str, rate: float) -> float:
    if rate < 0:
        raise ConfigurationError(name, 'decay rate must not be negative')

    return float(rate)


def collapse_ops(config: 'SimConfig') -> List[Channel]:
    """
    Build the radiative decay channels of a configuration.

    With trion attachment γ₂ acts on T2, with indirect attachment it acts
    on the indirect dot 1 excitons and T2 is stable. Indirect exciton
    channels with rate γ_ind are only added for γ_ind > 0.

    :param      config:  The configuration
    :type       config:  SimConfig

    :returns:   List of (rate in ps⁻¹, jump operator)
    :rtype:     List[Channel]

    :raises     ConfigurationError:  If a rate is negative
    """
    gamma1 = _checked_rate('gamma1', config.gamma1_per_ps)
    gamma2 = _checked_rate('gamma2', config.gamma2_per_ps)
    gamma_ind = _checked_rate('gamma_ind', config.gamma_ind_per_ps)

    channels = [(gamma1, trion_decay_op())]

    if config.channel_attachment.value == 'indirect':
        channels.append((gamma2, indirect1_decay_op()))
        if gamma_ind > 0:
            channels.append((gamma_ind, indirect2_decay_op()))
    else:
        channels.append((gamma2, dot2_decay_op()))
        if gamma_ind > 0:
            channels.append((gamma_ind, indirect1_decay_op()))
            channels.append((gamma_ind, indirect2_decay_op()))

    return channels


def vec(rho: DensityMatrix) -> StateVector:
    """
    Column-stack a matrix.

    :param      rho:  The matrix
    :type       rho:  DensityMatrix

    :returns:   Vector of length n², columns one after the other
    :rtype:     StateVector
    """
    return np.asarray(rho, dtype=np.complex128).flatten(order='F')


def unvec(vector: StateVector) -> DensityMatrix:
    """
    Undo the column stacking of :py:func:`vec`.

    :param      vector:  The vector of length n²
    :type       vector:  StateVector

    :returns:   The n×n matrix
    :rtype:     DensityMatrix
    """
    n = int(round(math.sqrt(len(vector))))

    return np.asarray(vector).reshape((n, n), order='F')


def liouvillian(hamiltonian: ComplexMatrix,
                channels: Sequence[Channel]) -> ComplexMatrix:
    """
    Build the Lindblad superoperator acting on column-stacked matrices.

    Uses vec(AρB) = (Bᵀ ⊗ A) vec(ρ), so that
    vec(dρ/dt) = liouvillian(H, channels) @ vec(ρ) for
    dρ/dt = -i[H, ρ] + Σ γ (cρc† - ½{c†c, ρ}).

    :param      hamiltonian:  The Hamiltonian in rad/ps
    :type       hamiltonian:  ComplexMatrix
    :param      channels:     The decay channels
    :type       channels:     Sequence[Channel]

    :returns:   The n²×n² superoperator in ps⁻¹
    :rtype:     ComplexMatrix
    """
    hamiltonian = np.asarray(hamiltonian, dtype=np.complex128)
    n = hamiltonian.shape[0]
    identity = np.eye(n, dtype=np.complex128)

    generator = -1j * (np.kron(identity, hamiltonian) -
                       np.kron(hamiltonian.T, identity))

    for rate, op in channels:
        if rate == 0:
            continue
        op = np.asarray(op, dtype=np.complex128)
        loss = dagger(op) @ op
        generator = generator + rate * (np.kron(op.conj(), op) -
                                        0.5 * np.kron(identity, loss) -
                                        0.5 * np.kron(loss.T, identity))

    return generator
