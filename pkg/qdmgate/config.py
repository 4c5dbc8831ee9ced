#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Simulation configuration

All physical and numerical parameters of one gate simulation. Rates are
stored as quoted in ns⁻¹ and τ as quoted in meV (or rad/ps in the ħ = 1
unit mode), the ``*_per_ps`` and ``tau_rad_per_ps`` properties provide the
internal units.

The JSON layout uses unit suffixed keys, e.g.

.. code-block:: json

    {
        "tau": 2.0,
        "unit_mode": "physical",
        "gamma1_per_ns": 1.0,
        "gamma2_per_ns": 1.0,
        "pulse2": {"amplitude": 3.5449},
        "initial_state": "psi0"
    }

Keys which are not given take the reference defaults.
"""

# system packages
from dataclasses import dataclass, field, fields, replace
from enum import Enum
import math

# external packages
import numpy as np

# custom packages
from . import const as Const
from .common import ConfigurationError
from .pulses import PulseShape, UnitMode
from .pulses import default_pulse1, default_pulse2
from .pulses import energy_to_angular_frequency
from . import statespace

# typing
from typing import Any, Optional, Tuple, Union


class ChannelAttachment(Enum):
    """Level whose radiative decay is governed by γ₂"""
    #: γ₂ is the decay rate of the dot 2 trion T2
    TRION = 'trion'
    #: γ₂ is the decay rate of the indirect dot 1 excitons I1_u, I1_d
    INDIRECT = 'indirect'


class Integrator(Enum):
    """Available time integrators"""
    #: Classic fourth order Runge-Kutta with fixed step dt
    RK4_FIXED = 'rk4_fixed'
    #: Embedded Runge-Kutta 4(5) with error control
    RK45_ADAPTIVE = 'rk45_adaptive'


#: JSON key to attribute name of the plain fields
JSON_FIELDS = {
    'tau': 'tau',
    'unit_mode': 'unit_mode',
    'gamma1_per_ns': 'gamma1',
    'gamma2_per_ns': 'gamma2',
    'gamma_ind_per_ns': 'gamma_ind',
    'channel_attachment': 'channel_attachment',
    't_start_ps': 't_start',
    't_end_ps': 't_end',
    'dt_ps': 'dt',
    'integrator': 'integrator',
    'adaptive_tol': 'adaptive_tol',
    'sample_stride': 'sample_stride',
    'initial_state': 'initial_state',
    'staircase': 'staircase',
}

#: Attributes holding plain real numbers
NUMERIC_FIELDS = ('tau', 'gamma1', 'gamma2', 'gamma_ind',
                  't_start', 't_end', 'dt', 'adaptive_tol')

#: Label of the equal ground state superposition
PSI0_LABEL = 'psi0'


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_amplitude(value: Any, name: str) -> complex:
    if _is_number(value):
        return complex(value)
    if isinstance(value, complex):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2 and \
            all(_is_number(part) for part in value):
        return complex(value[0], value[1])

    raise ConfigurationError(name,
                             'amplitude {!r} is neither a number nor a '
                             '[re, im] pair'.format(value))


def _dump_amplitude(value: complex) -> list:
    return [value.real, value.imag]


@dataclass(frozen=True)
class SimConfig(object):
    """
    Physical and numerical parameters of a gate simulation

    :param      tau:                 Hole tunneling coupling, meV or rad/ps
    :type       tau:                 float
    :param      unit_mode:           Interpretation of tau
    :type       unit_mode:           UnitMode
    :param      gamma1:              Dot 1 trion decay rate in ns⁻¹
    :type       gamma1:              float
    :param      gamma2:              Rate of the γ₂ channel in ns⁻¹
    :type       gamma2:              float
    :param      gamma_ind:           Indirect exciton decay rate in ns⁻¹
    :type       gamma_ind:           float
    :param      channel_attachment:  Level decaying with γ₂
    :type       channel_attachment:  ChannelAttachment
    :param      pulse1:              Slow CW envelope Ω₁
    :type       pulse1:              PulseShape
    :param      pulse2:              Fast phase pulse Ω₂
    :type       pulse2:              PulseShape
    :param      t_start:             Start of the gate window in ps
    :type       t_start:             float
    :param      t_end:               End of the gate window in ps
    :type       t_end:               float
    :param      dt:                  Integration step (first step if adaptive)
    :type       dt:                  float
    :param      integrator:          The integrator
    :type       integrator:          Integrator
    :param      adaptive_tol:        Error tolerance of the adaptive integrator
    :type       adaptive_tol:        float
    :param      sample_stride:       Steps between two recorded samples
    :type       sample_stride:       int
    :param      initial_state:       Label, amplitudes or density matrix
    :type       initial_state:       Union[str, tuple]
    :param      staircase:           Hold pulses constant over each step
    :type       staircase:           bool
    """
    tau: float = Const.DEFAULT_TAU
    unit_mode: UnitMode = UnitMode.PHYSICAL
    gamma1: float = Const.DEFAULT_GAMMA1_PER_NS
    gamma2: float = Const.DEFAULT_GAMMA2_PER_NS
    gamma_ind: float = Const.DEFAULT_GAMMA_IND_PER_NS
    channel_attachment: ChannelAttachment = ChannelAttachment.TRION
    pulse1: PulseShape = field(default_factory=default_pulse1)
    pulse2: PulseShape = field(default_factory=default_pulse2)
    t_start: float = Const.DEFAULT_T_START_PS
    t_end: float = Const.DEFAULT_T_END_PS
    dt: float = Const.DEFAULT_DT_PS
    integrator: Integrator = Integrator.RK4_FIXED
    adaptive_tol: float = Const.DEFAULT_ADAPTIVE_TOL
    sample_stride: int = Const.DEFAULT_SAMPLE_STRIDE
    initial_state: Union[str, Tuple] = PSI0_LABEL
    staircase: bool = False

    def __post_init__(self) -> None:
        self._coerce_enum('unit_mode', UnitMode)
        self._coerce_enum('channel_attachment', ChannelAttachment)
        self._coerce_enum('integrator', Integrator)

        for name in NUMERIC_FIELDS:
            value = getattr(self, name)
            if not _is_number(value):
                raise ConfigurationError(name,
                                         'expected a number, got {!r}'.
                                         format(value))
            if not math.isfinite(value):
                raise ConfigurationError(name, 'must be finite')
            object.__setattr__(self, name, float(value))

        for name in ('gamma1', 'gamma2', 'gamma_ind'):
            if getattr(self, name) < 0:
                raise ConfigurationError(name,
                                         'decay rate must not be negative')

        for name in ('pulse1', 'pulse2'):
            if not isinstance(getattr(self, name), PulseShape):
                raise ConfigurationError(name, 'expected a PulseShape')

        if not self.t_start < self.t_end:
            raise ConfigurationError('t_end', 't_start must be below t_end')
        if not self.dt > 0:
            raise ConfigurationError('dt', 'must be positive')
        if not self.adaptive_tol > 0:
            raise ConfigurationError('adaptive_tol', 'must be positive')
        if isinstance(self.sample_stride, bool) or \
                not isinstance(self.sample_stride, int) or \
                self.sample_stride < 1:
            raise ConfigurationError('sample_stride',
                                     'must be an integer of at least 1')
        if not isinstance(self.staircase, bool):
            raise ConfigurationError('staircase', 'expected true or false')

        object.__setattr__(self,
                           'initial_state',
                           self._normalized_initial_state(self.initial_state))

    def _coerce_enum(self, name: str, enum_type: type) -> None:
        value = getattr(self, name)
        if isinstance(value, enum_type):
            return
        try:
            object.__setattr__(self, name, enum_type(value))
        except ValueError:
            choices = ', '.join(member.value for member in enum_type)
            raise ConfigurationError(name,
                                     '{!r} is not one of {}'.
                                     format(value, choices))

    @staticmethod
    def _normalized_initial_state(value: Any) -> Union[str, Tuple]:
        if isinstance(value, str):
            known = statespace.BasisState.__members__
            if value != PSI0_LABEL and value not in known:
                raise ConfigurationError('initial_state',
                                         'unknown state label {!r}'.
                                         format(value))
            return value

        try:
            array = np.asarray(value, dtype=np.complex128)
        except (TypeError, ValueError):
            raise ConfigurationError('initial_state',
                                     'cannot interpret {!r} as a state'.
                                     format(value))

        if array.shape == (Const.DIMENSION,):
            if not statespace.is_normalized(array):
                raise ConfigurationError('initial_state',
                                         'state vector is not normalized')
            return tuple(complex(x) for x in array)

        if array.shape == (Const.DIMENSION, Const.DIMENSION):
            if abs(np.trace(array) - 1.0) > Const.TRACE_TOLERANCE:
                raise ConfigurationError('initial_state',
                                         'density matrix trace is not 1')
            if np.max(np.abs(array - array.conj().T)) > 1e-12:
                raise ConfigurationError('initial_state',
                                         'density matrix is not Hermitian')
            return tuple(tuple(complex(x) for x in row) for row in array)

        raise ConfigurationError('initial_state',
                                 'expected {} amplitudes or a {}x{} density '
                                 'matrix, got shape {}'.
                                 format(Const.DIMENSION,
                                        Const.DIMENSION,
                                        Const.DIMENSION,
                                        array.shape))

    @property
    def tau_rad_per_ps(self) -> float:
        """
        Get τ in the internal unit.

        :returns:   Tunneling coupling in rad/ps
        :rtype:     float
        """
        return energy_to_angular_frequency(self.tau, self.unit_mode)

    @property
    def gamma1_per_ps(self) -> float:
        """Dot 1 trion decay rate in ps⁻¹"""
        return self.gamma1 * Const.PER_NS_TO_PER_PS

    @property
    def gamma2_per_ps(self) -> float:
        """Rate of the γ₂ channel in ps⁻¹"""
        return self.gamma2 * Const.PER_NS_TO_PER_PS

    @property
    def gamma_ind_per_ps(self) -> float:
        """Indirect exciton decay rate in ps⁻¹"""
        return self.gamma_ind * Const.PER_NS_TO_PER_PS

    @property
    def initial_is_pure(self) -> bool:
        """
        Check whether the initial state was given as a state vector.

        :returns:   False for an explicit density matrix
        :rtype:     bool
        """
        if isinstance(self.initial_state, str):
            return True

        return not isinstance(self.initial_state[0], tuple)

    def initial_vector(self) -> Optional[statespace.StateVector]:
        """
        Get the initial state vector.

        :returns:   The state, None if given as a density matrix
        :rtype:     Optional[StateVector]
        """
        if isinstance(self.initial_state, str):
            if self.initial_state == PSI0_LABEL:
                return statespace.psi0()
            return statespace.ket(statespace.basis_state(self.initial_state))
        if not self.initial_is_pure:
            return None

        return np.array(self.initial_state, dtype=np.complex128)

    def initial_density(self) -> statespace.DensityMatrix:
        """
        Get the initial density matrix ρ₀.

        :returns:   The density matrix
        :rtype:     DensityMatrix
        """
        vector = self.initial_vector()
        if vector is None:
            return np.array(self.initial_state, dtype=np.complex128)

        return statespace.density_matrix(vector)

    def replace(self, **changes: Any) -> 'SimConfig':
        """
        Create a copy with some attributes changed.

        :param      changes:  Attribute names and new values
        :type       changes:  Any

        :returns:   The validated copy
        :rtype:     SimConfig
        """
        return replace(self, **changes)

    def to_dict(self) -> dict:
        """
        Serialize to the JSON configuration layout.

        :returns:   Dictionary which :py:meth:`from_dict` accepts
        :rtype:     dict
        """
        data = dict()
        for key, name in JSON_FIELDS.items():
            value = getattr(self, name)
            if isinstance(value, Enum):
                value = value.value
            data[key] = value

        if isinstance(self.initial_state, str):
            data['initial_state'] = self.initial_state
        elif self.initial_is_pure:
            data['initial_state'] = [_dump_amplitude(x)
                                     for x in self.initial_state]
        else:
            data['initial_state'] = {
                'density': [[_dump_amplitude(x) for x in row]
                            for row in self.initial_state]
            }

        data['pulse1'] = self.pulse1.to_dict()
        data['pulse2'] = self.pulse2.to_dict()

        return data

    def resolved(self) -> dict:
        """
        Get all parameters in internal units.

        :returns:   Dictionary with rad/ps and ps⁻¹ values
        :rtype:     dict
        """
        return {
            'unit_mode': self.unit_mode.value,
            'tau_rad_per_ps': self.tau_rad_per_ps,
            'gamma1_per_ps': self.gamma1_per_ps,
            'gamma2_per_ps': self.gamma2_per_ps,
            'gamma_ind_per_ps': self.gamma_ind_per_ps,
            'channel_attachment': self.channel_attachment.value,
            'pulse1': self.pulse1.to_dict(),
            'pulse2': self.pulse2.to_dict(),
            't_start_ps': self.t_start,
            't_end_ps': self.t_end,
            'dt_ps': self.dt,
            'integrator': self.integrator.value,
            'adaptive_tol': self.adaptive_tol,
            'sample_stride': self.sample_stride,
            'staircase': self.staircase,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'SimConfig':
        """
        Create a configuration from its JSON layout.

        :param      data:  The parsed JSON object
        :type       data:  dict

        :returns:   The validated configuration
        :rtype:     SimConfig

        :raises     ConfigurationError:  On unknown keys or invalid values
        """
        if not isinstance(data, dict):
            raise ConfigurationError(None, 'configuration must be a JSON '
                                           'object')

        known = set(JSON_FIELDS) | {'t0_ps', 'pulse1', 'pulse2'}
        for key in data:
            if key not in known:
                raise ConfigurationError(key, 'unknown field')

        t0 = data.get('t0_ps', Const.DEFAULT_T0_PS)
        if not _is_number(t0) or not t0 > 0:
            raise ConfigurationError('t0', 'must be a positive number')

        kwargs = dict()
        for key, name in JSON_FIELDS.items():
            if key in data:
                kwargs[name] = data[key]

        if 'initial_state' in kwargs:
            kwargs['initial_state'] = _parse_initial_state(
                kwargs['initial_state'])

        kwargs['pulse1'] = _parse_pulse('pulse1',
                                        data.get('pulse1', dict()),
                                        default_pulse1(t0))
        kwargs['pulse2'] = _parse_pulse('pulse2',
                                        data.get('pulse2', dict()),
                                        default_pulse2(t0))

        return cls(**kwargs)


def _parse_initial_state(value: Any) -> Any:
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        if set(value) != {'density'}:
            raise ConfigurationError('initial_state',
                                     'expected {"density": [[...], ...]}')
        rows = value['density']
        if not isinstance(rows, list):
            raise ConfigurationError('initial_state',
                                     'density must be a list of rows')
        return [[_parse_amplitude(x, 'initial_state') for x in row]
                for row in rows]
    if isinstance(value, list):
        return [_parse_amplitude(x, 'initial_state') for x in value]

    raise ConfigurationError('initial_state',
                             'expected a label, amplitudes or a density')


def _parse_pulse(name: str, data: Any, default: PulseShape) -> PulseShape:
    if not isinstance(data, dict):
        raise ConfigurationError(name, 'pulse must be a JSON object')

    merged = default.to_dict()
    for key, value in data.items():
        if key not in merged:
            raise ConfigurationError('{}.{}'.format(name, key),
                                     'unknown field')
        merged[key] = value

    try:
        return PulseShape(**merged)
    except ConfigurationError as e:
        raise ConfigurationError('{}.{}'.format(name, e.field), e.message)


def reference_config() -> SimConfig:
    """
    Get the reference parameter set.

    t₀ = 1 ps, τ = 2 meV, γ₁ = γ₂ = 1 ns⁻¹, the two Gaussian pulses, gate
    window [-60, 60] ps, dt = 0.001 ps, physical unit mode, input |Ψ⁰⟩.

    :returns:   The default configuration
    :rtype:     SimConfig
    """
    return SimConfig()


def config_fields() -> Tuple[str, ...]:
    """
    Get the attribute names of :py:class:`SimConfig`.

    :returns:   The names in declaration order
    :rtype:     Tuple[str, ...]
    """
    return tuple(f.name for f in fields(SimConfig))
