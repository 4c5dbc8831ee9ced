#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Master equation dynamics of the gate

Assembles H(t) = H₁(t) + H₂(t), the Lindblad right hand side and integrates
ρ(t) over the gate window, either with classic fixed step RK4 or with the
adaptive Runge-Kutta 4(5) stepper of scipy.

The two lasers and the tunneling act as one continuous evolution with
overlapping envelopes, no stopping time is imposed for the Ω₂ pulse.
"""

# system packages
from dataclasses import dataclass, field
import logging
import math

# external packages
import numpy as np
from scipy.integrate import RK45

# custom packages
from . import const as Const
from .common import ConfigurationError, IntegrationError
from .config import Integrator, SimConfig
from .statespace import BasisState, ComplexMatrix, DensityMatrix
from .statespace import build_basis, collapse_ops, dagger, liouvillian
from .statespace import transition_op, unvec, vec

# typing
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    'SimConfig',
    'TimeSeries',
    'ConvergenceReport',
    'LindbladGenerator',
    'assemble_hamiltonian',
    'lindblad_rhs',
    'evolve',
    'propagate',
    'convergence_check',
]

logger = logging.getLogger(__name__)

SampleCallback = Callable[[float, np.ndarray], None]


def _hermitian(op: ComplexMatrix) -> ComplexMatrix:
    return op + dagger(op)


def drive1_coupling() -> ComplexMatrix:
    """
    Coupling of the Ω₁ laser, |T1_u⟩⟨G_du| + |T1_d⟩⟨G_dd| + H.c.

    :returns:   The coupling matrix
    :rtype:     ComplexMatrix
    """
    return _hermitian(transition_op(BasisState.G_du, BasisState.T1_u) +
                      transition_op(BasisState.G_dd, BasisState.T1_d))


def drive2_coupling() -> ComplexMatrix:
    """
    Coupling of the Ω₂ laser, |T2⟩⟨G_ud| + H.c.

    :returns:   The coupling matrix
    :rtype:     ComplexMatrix
    """
    return _hermitian(transition_op(BasisState.G_ud, BasisState.T2))


def tunneling_coupling() -> ComplexMatrix:
    """
    Hole tunneling, |I1_s⟩⟨T1_s| for both dot 2 spins and |I2⟩⟨T2|, + H.c.

    :returns:   The coupling matrix
    :rtype:     ComplexMatrix
    """
    return _hermitian(transition_op(BasisState.T1_u, BasisState.I1_u) +
                      transition_op(BasisState.T1_d, BasisState.I1_d) +
                      transition_op(BasisState.T2, BasisState.I2))


def assemble_hamiltonian(t: float, config: SimConfig) -> ComplexMatrix:
    """
    Assemble the Hamiltonian H₁(t) + H₂(t).

    :param      t:       The time in ps
    :type       t:       float
    :param      config:  The configuration
    :type       config:  SimConfig

    :returns:   Hermitian matrix in rad/ps
    :rtype:     ComplexMatrix
    """
    return (config.pulse1.value(t) * drive1_coupling() +
            config.tau_rad_per_ps * tunneling_coupling() +
            config.pulse2.value(t) * drive2_coupling())


def lindblad_rhs(rho: DensityMatrix,
                 t: float,
                 config: SimConfig) -> DensityMatrix:
    """
    Evaluate dρ/dt = -i[H(t), ρ] + ½Σᵢ(2LᵢρLᵢ† - Lᵢ†Lᵢρ - ρLᵢ†Lᵢ).

    :param      rho:     The density matrix
    :type       rho:     DensityMatrix
    :param      t:       The time in ps
    :type       t:       float
    :param      config:  The configuration
    :type       config:  SimConfig

    :returns:   The derivative in ps⁻¹
    :rtype:     DensityMatrix
    """
    rho = np.asarray(rho, dtype=np.complex128)
    hamiltonian = assemble_hamiltonian(t, config)
    derivative = -1j * (hamiltonian @ rho - rho @ hamiltonian)

    for rate, op in collapse_ops(config):
        if rate == 0:
            continue
        jump = math.sqrt(rate) * op
        loss = dagger(jump) @ jump
        derivative += 0.5 * (2 * jump @ rho @ dagger(jump) -
                             loss @ rho -
                             rho @ loss)

    return derivative


class LindbladGenerator(object):
    """
    Superoperator form of the master equation of a configuration

    The generator is affine in the two envelopes,
    G(t) = G₀ + Ω₁(t) G₁ + Ω₂(t) G₂, with G₀ holding the tunneling and all
    decay channels. All parts act on column-stacked density matrices.

    :param      config:  The configuration
    :type       config:  SimConfig
    """
    def __init__(self, config: SimConfig) -> None:
        self._pulse1 = config.pulse1
        self._pulse2 = config.pulse2

        tunneling = config.tau_rad_per_ps * tunneling_coupling()
        self._static = liouvillian(tunneling, collapse_ops(config))
        self._drive1 = liouvillian(drive1_coupling(), [])
        self._drive2 = liouvillian(drive2_coupling(), [])

    def envelopes(self, t: float) -> Tuple[float, float]:
        """
        Evaluate both envelopes.

        :param      t:    The time in ps
        :type       t:    float

        :returns:   Ω₁(t) and Ω₂(t) in rad/ps
        :rtype:     Tuple[float, float]
        """
        return self._pulse1.value(t), self._pulse2.value(t)

    @property
    def parts(self) -> Tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
        """G₀, G₁ and G₂ in ps⁻¹, G₁ and G₂ per rad/ps of envelope"""
        return self._static, self._drive1, self._drive2

    def matrix(self, t: float) -> ComplexMatrix:
        """
        Get the generator at a time.

        :param      t:    The time in ps
        :type       t:    float

        :returns:   The 100×100 superoperator in ps⁻¹
        :rtype:     ComplexMatrix
        """
        omega1, omega2 = self.envelopes(t)

        return self._static + omega1 * self._drive1 + omega2 * self._drive2

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        omega1, omega2 = self.envelopes(t)
        derivative = self._static @ y
        if omega1 != 0:
            derivative = derivative + omega1 * (self._drive1 @ y)
        if omega2 != 0:
            derivative = derivative + omega2 * (self._drive2 @ y)

        return derivative


@dataclass
class TimeSeries(object):
    """
    Samples of a gate evolution

    :param      times:        Sample times in ps, strictly increasing
    :type       times:        List[float]
    :param      omega1:       Ω₁ at the sample times in rad/ps
    :type       omega1:       List[float]
    :param      omega2:       Ω₂ at the sample times in rad/ps
    :type       omega2:       List[float]
    :param      populations:  Diagonal of ρ per basis label
    :type       populations:  Dict[str, List[float]]
    :param      trace_dev:    |tr ρ - 1| at the sample times
    :type       trace_dev:    List[float]
    :param      purity:       tr ρ² at the sample times
    :type       purity:       List[float]
    :param      min_eig:      Smallest eigenvalue of ρ at the sample times
    :type       min_eig:      List[float]
    :param      states:       Full density matrices if recorded
    :type       states:       List[DensityMatrix]
    """
    times: List[float] = field(default_factory=list)
    omega1: List[float] = field(default_factory=list)
    omega2: List[float] = field(default_factory=list)
    populations: Dict[str, List[float]] = field(
        default_factory=lambda: {state.label: [] for state in build_basis()})
    trace_dev: List[float] = field(default_factory=list)
    purity: List[float] = field(default_factory=list)
    min_eig: List[float] = field(default_factory=list)
    states: List[DensityMatrix] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.times)

    def append(self,
               t: float,
               omega1: float,
               omega2: float,
               rho: DensityMatrix,
               keep_state: bool = False) -> None:
        """
        Record one sample.

        :param      t:           The time in ps
        :type       t:           float
        :param      omega1:      Ω₁(t) in rad/ps
        :type       omega1:      float
        :param      omega2:      Ω₂(t) in rad/ps
        :type       omega2:      float
        :param      rho:         The density matrix
        :type       rho:         DensityMatrix
        :param      keep_state:  Flag to store the full matrix
        :type       keep_state:  bool
        """
        self.times.append(t)
        self.omega1.append(omega1)
        self.omega2.append(omega2)

        diagonal = np.real(np.diag(rho))
        for state in build_basis():
            self.populations[state.label].append(float(diagonal[state.index]))

        self.trace_dev.append(float(abs(np.trace(rho) - 1.0)))
        self.purity.append(float(np.sum(np.abs(rho) ** 2)))
        self.min_eig.append(float(np.linalg.eigvalsh(rho)[0]))

        if keep_state:
            self.states.append(np.array(rho))

    def population(self, state: BasisState) -> List[float]:
        """
        Get the population samples of a level.

        :param      state:  The level
        :type       state:  BasisState

        :returns:   ρ_kk at the sample times
        :rtype:     List[float]
        """
        return self.populations[BasisState(state).label]

    @property
    def trace_dev_max(self) -> float:
        """Largest sampled trace deviation"""
        return max(self.trace_dev) if self.trace_dev else 0.0

    @property
    def min_eig_min(self) -> float:
        """Most negative sampled eigenvalue"""
        return min(self.min_eig) if self.min_eig else 0.0


@dataclass(frozen=True)
class ConvergenceReport(object):
    """
    Comparison of an evolution at dt with the same evolution at dt/2

    :param      dt:                         The coarse step in ps
    :type       dt:                         float
    :param      max_population_difference:  Largest population difference
    :type       max_population_difference:  float
    :param      fidelity_difference:        Difference of the gate fidelities
    :type       fidelity_difference:        Optional[float]
    :param      fidelity:                   Gate fidelity at dt
    :type       fidelity:                   Optional[float]
    :param      fidelity_fine:              Gate fidelity at dt/2
    :type       fidelity_fine:              Optional[float]
    :param      trace_dev_max:              Largest trace deviation at dt
    :type       trace_dev_max:              float
    :param      min_eig:                    Most negative eigenvalue at dt
    :type       min_eig:                    float
    :param      ground_drift:               Largest change of G_uu population
    :type       ground_drift:               float
    :param      error:                      Integration failure, if any
    :type       error:                      Optional[str]
    """
    dt: float
    max_population_difference: float
    fidelity_difference: Optional[float]
    fidelity: Optional[float] = None
    fidelity_fine: Optional[float] = None
    trace_dev_max: float = 0.0
    min_eig: float = 0.0
    ground_drift: float = 0.0
    error: Optional[str] = None

    def converged(self,
                  tolerance: float = Const.FIDELITY_DRIFT_TOLERANCE) -> bool:
        """
        Check the fidelity drift.

        :param      tolerance:  The largest accepted drift
        :type       tolerance:  float

        :returns:   True if both runs succeeded and agree within tolerance
        :rtype:     bool
        """
        if self.error is not None:
            return False
        drift = self.fidelity_difference
        if drift is None:
            drift = self.max_population_difference

        return drift < tolerance


def step_plan(t_start: float,
              t_end: float,
              dt: float) -> Iterator[Tuple[float, float]]:
    """Yield (t, h) of every step, a shorter last step lands on t_end"""
    ratio = (t_end - t_start) / dt
    n_full = int(round(ratio))
    if abs(ratio - n_full) > 1e-9 * max(1.0, ratio):
        n_full = int(math.floor(ratio))

    for k in range(n_full):
        t = t_start + k * dt
        if k == n_full - 1 and t_end - (t + dt) <= 1e-9 * dt:
            yield t, t_end - t
            return
        yield t, dt

    t = t_start + n_full * dt
    if t_end - t > 0:
        yield t, t_end - t


def sample_time(t: float, h: float, t_end: float, dt: float) -> float:
    """End of the step (t, h), snapped to t_end on the last step"""
    t_next = t + h
    if t_end - t_next <= 1e-9 * dt:
        return t_end

    return t_next


def _hermitize(y: np.ndarray, n: int) -> np.ndarray:
    """Replace every column-stacked ρ of y by (ρ + ρ†)/2"""
    count = y.shape[1]
    # each block holds ρᵀ, the symmetrization is transpose invariant
    blocks = y.T.reshape(count, n, n)
    blocks = 0.5 * (blocks + blocks.conj().transpose(0, 2, 1))

    return blocks.reshape(count, n * n).T


def _rk4_step(rhs: Callable[[float, np.ndarray], np.ndarray],
              t: float,
              y: np.ndarray,
              h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1)
    k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2)
    k4 = rhs(t + h, y + h * k3)

    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate_rk4(generator: LindbladGenerator,
                   config: SimConfig,
                   y: np.ndarray,
                   on_sample: SampleCallback) -> np.ndarray:
    n = Const.DIMENSION
    steps = 0
    last_sampled = 0

    for t, h in step_plan(config.t_start, config.t_end, config.dt):
        if config.staircase:
            held = generator.matrix(t + 0.5 * h)

            def rhs(_t: float, z: np.ndarray) -> np.ndarray:
                return held @ z
        else:
            rhs = generator

        y = _hermitize(_rk4_step(rhs, t, y, h), n)
        steps += 1

        if steps % config.sample_stride == 0:
            on_sample(sample_time(t, h, config.t_end, config.dt), y)
            last_sampled = steps

    if last_sampled != steps:
        on_sample(config.t_end, y)

    return y


def _integrate_rk45(generator: LindbladGenerator,
                    config: SimConfig,
                    y: np.ndarray,
                    on_sample: SampleCallback) -> np.ndarray:
    n = Const.DIMENSION
    span = config.t_end - config.t_start
    stride = config.sample_stride * config.dt
    sample_times = [config.t_start + j * stride
                    for j in range(1, int(math.floor(span / stride)) + 1)
                    if config.t_start + j * stride < config.t_end - 1e-12]
    sample_times.append(config.t_end)

    columns = []
    for column in range(y.shape[1]):
        solver = RK45(generator,
                      config.t_start,
                      y[:, column],
                      config.t_end,
                      max_step=min(Const.MAX_ADAPTIVE_STEP_PS, span),
                      rtol=config.adaptive_tol,
                      atol=config.adaptive_tol,
                      first_step=min(config.dt, span))
        pending = list(sample_times)

        while solver.status == 'running':
            message = solver.step()
            if solver.status == 'failed':
                raise IntegrationError(solver.t, message or 'solver failed')
            if solver.status == 'running' and \
                    solver.step_size < Const.MIN_ADAPTIVE_STEP_PS:
                raise IntegrationError(solver.t,
                                       'step size {:.3e} ps below {:.0e} ps'.
                                       format(solver.step_size,
                                              Const.MIN_ADAPTIVE_STEP_PS))

            if y.shape[1] == 1 and pending and pending[0] <= solver.t:
                dense = solver.dense_output()
                while pending and pending[0] <= solver.t:
                    t_sample = pending.pop(0)
                    if t_sample == solver.t:
                        sample = solver.y
                    else:
                        sample = dense(t_sample)
                    on_sample(t_sample, _hermitize(sample[:, None], n))

        columns.append(_hermitize(solver.y[:, None], n)[:, 0])

    return np.stack(columns, axis=1)


def _integrate(config: SimConfig,
               y: np.ndarray,
               on_sample: SampleCallback) -> np.ndarray:
    generator = LindbladGenerator(config)
    if config.integrator == Integrator.RK45_ADAPTIVE:
        return _integrate_rk45(generator, config, y, on_sample)

    return _integrate_rk4(generator, config, y, on_sample)


def evolve(config: SimConfig,
           record_states: bool = False) -> Tuple[DensityMatrix, TimeSeries]:
    """
    Integrate the master equation over the gate window.

    The fixed step integrator symmetrizes the state to (ρ + ρ†)/2 after
    every step. The adaptive integrator keeps the solver state untouched,
    as the solver reuses its last derivative, and symmetrizes the samples
    and the final state only. The trace is never renormalized, its
    deviation is recorded in the time series.

    :param      config:         The configuration
    :type       config:         SimConfig
    :param      record_states:  Flag to keep the full ρ of every sample
    :type       record_states:  bool

    :returns:   Final density matrix and the sampled time series
    :rtype:     Tuple[DensityMatrix, TimeSeries]

    :raises     IntegrationError:  If the state becomes non finite or the
                                   adaptive step size underflows
    """
    series = TimeSeries()
    generator_pulses = (config.pulse1, config.pulse2)
    warned = set()

    def on_sample(t: float, y: np.ndarray) -> None:
        if not np.all(np.isfinite(y)):
            raise IntegrationError(t, 'state is no longer finite', series)
        rho = unvec(y[:, 0])
        series.append(t,
                      generator_pulses[0].value(t),
                      generator_pulses[1].value(t),
                      rho,
                      keep_state=record_states)

        if series.trace_dev[-1] > Const.TRACE_TOLERANCE and \
                'trace' not in warned:
            warned.add('trace')
            logger.warning('Trace deviation {:.3e} at t = {:.3f} ps'.
                           format(series.trace_dev[-1], t))
        if series.min_eig[-1] < Const.POSITIVITY_TOLERANCE and \
                'positivity' not in warned:
            warned.add('positivity')
            logger.warning('Negative eigenvalue {:.3e} at t = {:.3f} ps'.
                           format(series.min_eig[-1], t))

    rho0 = config.initial_density()
    y = vec(rho0)[:, None]
    on_sample(config.t_start, y)

    logger.debug('Evolving [{}, {}] ps with {} at dt = {} ps'.
                 format(config.t_start,
                        config.t_end,
                        config.integrator.value,
                        config.dt))
    try:
        y = _integrate(config, y, on_sample)
    except IntegrationError as e:
        if e.series is None:
            e.series = series
        raise

    return unvec(y[:, 0]), series


def propagate(config: SimConfig,
              inputs: Sequence[DensityMatrix]) -> List[DensityMatrix]:
    """
    Apply the gate evolution to several Hermitian input operators at once.

    The map ρ₀ → ρ(t_end) is linear, so the inputs need not be states, e.g.
    Pauli operators for process characterization. The initial state of the
    configuration is ignored.

    :param      config:  The configuration
    :type       config:  SimConfig
    :param      inputs:  Hermitian 10×10 matrices
    :type       inputs:  Sequence[DensityMatrix]

    :returns:   The propagated matrices in input order
    :rtype:     List[DensityMatrix]

    :raises     IntegrationError:  If the result is not finite
    """
    y = np.stack([vec(op) for op in inputs], axis=1)
    y = _integrate(config, y, lambda t, z: None)

    if not np.all(np.isfinite(y)):
        raise IntegrationError(config.t_end, 'propagated operators are not '
                                             'finite')

    return [unvec(y[:, column]) for column in range(y.shape[1])]


def convergence_check(config: SimConfig) -> ConvergenceReport:
    """
    Compare an evolution at dt with the same evolution at dt/2.

    Samples are taken at identical times in both runs. The fidelity is the
    gate fidelity against the ideal output of the initial state, it is None
    for initial states outside the ground manifold.

    :param      config:  The configuration, must use the fixed step RK4
    :type       config:  SimConfig

    :returns:   The convergence report
    :rtype:     ConvergenceReport

    :raises     ConfigurationError:  If an adaptive integrator is selected
    """
    # metrics builds on this module
    from .metrics import gate_target, state_fidelity

    if config.integrator != Integrator.RK4_FIXED:
        raise ConfigurationError('integrator',
                                 'convergence check needs the fixed step '
                                 'integrator')

    fine_config = config.replace(dt=config.dt / 2,
                                 sample_stride=2 * config.sample_stride)
    try:
        final, series = evolve(config)
        final_fine, series_fine = evolve(fine_config)
    except IntegrationError as e:
        logger.warning('Convergence check failed: {}'.format(e))
        return ConvergenceReport(dt=config.dt,
                                 max_population_difference=math.inf,
                                 fidelity_difference=math.inf,
                                 error=str(e))

    difference = 0.0
    for state in build_basis():
        coarse = np.array(series.population(state))
        fine = np.array(series_fine.population(state))
        count = min(len(coarse), len(fine))
        if count:
            difference = max(difference,
                             float(np.max(np.abs(coarse[:count] -
                                                 fine[:count]))))

    target = gate_target(config)
    fidelity = fidelity_fine = drift = None
    if target is not None:
        fidelity = state_fidelity(final, target)
        fidelity_fine = state_fidelity(final_fine, target)
        drift = abs(fidelity - fidelity_fine)

    ground = np.array(series.population(BasisState.G_uu))

    report = ConvergenceReport(
        dt=config.dt,
        max_population_difference=difference,
        fidelity_difference=drift,
        fidelity=fidelity,
        fidelity_fine=fidelity_fine,
        trace_dev_max=series.trace_dev_max,
        min_eig=series.min_eig_min,
        ground_drift=float(np.max(np.abs(ground - ground[0]))))
    logger.info('Convergence at dt = {} ps: population {:.3e}, fidelity {}'.
                format(config.dt, difference, drift))

    return report
