#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Laser pulse envelopes

Time dependent Rabi frequencies of the two lasers, their pulse areas and the
conversion of energies quoted in meV to angular frequencies in rad/ps.
"""

# system packages
from dataclasses import dataclass
from enum import Enum
import math

# external packages
from scipy.integrate import quad

# custom packages
from . import const as Const
from .common import ConfigurationError, DomainError


class UnitMode(Enum):
    """Interpretation of parameters quoted in meV"""
    #: Divide by ħ = 0.6582119569 meV·ps
    PHYSICAL = 'physical'
    #: Use the number as rad/ps (ħ = 1)
    HBAR_UNITY = 'hbar_unity'


class PulseKind(Enum):
    """Available envelope shapes"""
    GAUSSIAN = 'gaussian'
    CONSTANT = 'constant'


@dataclass(frozen=True)
class PulseShape(object):
    """
    Parametric Rabi frequency envelope

    A Gaussian envelope evaluates to
    ``amplitude * exp(-(width_param * (t - center))**2 / t0**2)``, a constant
    envelope to ``amplitude`` for all times.

    :param      kind:         The envelope shape
    :type       kind:         PulseKind
    :param      amplitude:    The peak value in rad/ps
    :type       amplitude:    float
    :param      width_param:  Factor multiplying t inside the exponent
    :type       width_param:  float
    :param      center:       The peak position in ps
    :type       center:       float
    :param      t0:           The time unit of the envelope in ps
    :type       t0:           float
    """
    kind: PulseKind = PulseKind.GAUSSIAN
    amplitude: float = 0.0
    width_param: float = 1.0
    center: float = 0.0
    t0: float = Const.DEFAULT_T0_PS

    def __post_init__(self) -> None:
        if not isinstance(self.kind, PulseKind):
            try:
                object.__setattr__(self, 'kind', PulseKind(self.kind))
            except ValueError:
                raise ConfigurationError('kind',
                                         'unknown pulse kind {!r}'.
                                         format(self.kind))
        for name in ('amplitude', 'width_param', 'center', 't0'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigurationError(name, 'expected a number, got {!r}'.
                                         format(value))
            if not math.isfinite(value):
                raise ConfigurationError(name, 'must be finite')
            object.__setattr__(self, name, float(value))

        if self.amplitude < 0:
            raise ConfigurationError('amplitude', 'must not be negative')
        if self.t0 <= 0:
            raise ConfigurationError('t0', 'must be positive')
        if self.kind == PulseKind.GAUSSIAN and self.width_param <= 0:
            raise ConfigurationError('width_param',
                                     'must be positive for a gaussian pulse')

    def value(self, t: float) -> float:
        """
        Evaluate the envelope.

        :param      t:    The time in ps
        :type       t:    float

        :returns:   Rabi frequency in rad/ps
        :rtype:     float
        """
        if self.kind == PulseKind.CONSTANT:
            return self.amplitude

        x = self.width_param * (t - self.center) / self.t0
        return self.amplitude * math.exp(-x * x)

    @property
    def analytic_area(self) -> float:
        """
        Area of the envelope over the whole time axis.

        :returns:   Pulse area in rad, infinite for a nonzero constant pulse
        :rtype:     float
        """
        if self.kind == PulseKind.CONSTANT:
            return math.inf if self.amplitude > 0 else 0.0

        return self.amplitude * self.t0 * math.sqrt(math.pi) / self.width_param

    def half_window(self, widths: float = 4.0) -> float:
        """
        Distance from the center beyond which the envelope is negligible.

        At ``widths`` = 4 the Gaussian has dropped below 1.2e-7 of its peak.

        :param      widths:  The number of 1/e half widths
        :type       widths:  float

        :returns:   Half width of the window in ps
        :rtype:     float
        """
        if self.kind == PulseKind.CONSTANT:
            return math.inf

        return widths * self.t0 / self.width_param

    def to_dict(self) -> dict:
        """
        Serialize to the JSON configuration layout.

        :returns:   Dictionary of this pulse
        :rtype:     dict
        """
        return {
            'kind': self.kind.value,
            'amplitude': self.amplitude,
            'width_param': self.width_param,
            'center': self.center,
            't0': self.t0,
        }


def default_pulse1(t0: float = Const.DEFAULT_T0_PS) -> PulseShape:
    """
    Slow CW envelope Ω₁ of the reference parameter set.

    :param      t0:   The time unit in ps
    :type       t0:   float

    :returns:   Gaussian of peak 5√π/(2t₀) and width parameter 0.05
    :rtype:     PulseShape
    """
    return PulseShape(kind=PulseKind.GAUSSIAN,
                      amplitude=Const.OMEGA1_AMPLITUDE_FACTOR / t0,
                      width_param=Const.OMEGA1_WIDTH_PARAM,
                      center=0.0,
                      t0=t0)


def default_pulse2(t0: float = Const.DEFAULT_T0_PS) -> PulseShape:
    """
    Fast phase flip pulse Ω₂ of the reference parameter set.

    :param      t0:   The time unit in ps
    :type       t0:   float

    :returns:   Gaussian of peak 2√π/t₀ and width parameter 2, area π
    :rtype:     PulseShape
    """
    return PulseShape(kind=PulseKind.GAUSSIAN,
                      amplitude=Const.OMEGA2_AMPLITUDE_FACTOR / t0,
                      width_param=Const.OMEGA2_WIDTH_PARAM,
                      center=0.0,
                      t0=t0)


def pulse_value(p: PulseShape, t: float) -> float:
    """
    Evaluate a pulse envelope.

    :param      p:    The pulse
    :type       p:    PulseShape
    :param      t:    The time in ps
    :type       t:    float

    :returns:   Rabi frequency in rad/ps
    :rtype:     float
    """
    return p.value(t)


def pulse_area(p: PulseShape, t_start: float, t_end: float) -> float:
    """
    Integrate a pulse envelope numerically.

    :param      p:        The pulse
    :type       p:        PulseShape
    :param      t_start:  The lower limit in ps
    :type       t_start:  float
    :param      t_end:    The upper limit in ps
    :type       t_end:    float

    :returns:   Pulse area in rad
    :rtype:     float

    :raises     DomainError:  If the interval is reversed
    """
    if t_end < t_start:
        raise DomainError('pulse area interval [{}, {}] is reversed'.
                          format(t_start, t_end))
    if t_end == t_start:
        return 0.0
    if p.kind == PulseKind.CONSTANT:
        return p.amplitude * (t_end - t_start)

    # a narrow peak inside a wide interval needs a breakpoint
    points = None
    if t_start < p.center < t_end:
        points = [p.center]

    area, _ = quad(p.value,
                   t_start,
                   t_end,
                   points=points,
                   epsabs=Const.QUADRATURE_TOLERANCE,
                   epsrel=Const.QUADRATURE_TOLERANCE,
                   limit=Const.QUADRATURE_LIMIT)

    return area


def energy_to_angular_frequency(value: float, mode: UnitMode) -> float:
    """
    Convert an energy quoted in meV to an angular frequency.

    :param      value:  The energy, meV
    :type       value:  float
    :param      mode:   The unit mode
    :type       mode:   UnitMode

    :returns:   Angular frequency in rad/ps
    :rtype:     float
    """
    if UnitMode(mode) == UnitMode.HBAR_UNITY:
        return float(value)

    return value / Const.HBAR_MEV_PS
