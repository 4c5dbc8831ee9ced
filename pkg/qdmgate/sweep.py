#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Parameter scans over gate configurations

One full gate simulation per value of a single configuration parameter.
Points run in worker processes, results keep the order of the values.
"""

# system packages
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, replace
from enum import Enum
import logging
import math
from pathlib import Path

# custom packages
from . import const as Const
from .common import ConfigurationError, QdmGateException
from .config import JSON_FIELDS, NUMERIC_FIELDS, SimConfig
from .functions import write_csv
from .metrics import GateReport, simulate

# typing
from typing import Any, List, Optional, Sequence, Union

logger = logging.getLogger(__name__)

#: Parameters holding an enumeration instead of a number
ENUM_PARAMETERS = ('unit_mode', 'channel_attachment')
#: Numeric pulse attributes reachable as ``pulse1.<name>``
PULSE_PARAMETERS = ('amplitude', 'width_param', 'center', 't0')
#: Outputs a sweep may request
SWEEP_OUTPUTS = ('fidelity', 'phase_table', 'average_fidelity', 'gate_time')
#: Header of the sweep CSV
SWEEP_CSV_HEADER = ('value', 'fidelity', 'trace_dev_max', 'min_eig')
#: Parameters the decay rate checks of the summary apply to
RATE_PARAMETERS = ('gamma1', 'gamma2', 'gamma_ind')


def resolve_parameter(parameter: str) -> str:
    """
    Map a parameter name to its attribute path.

    JSON keys like ``gamma2_per_ns`` and attribute names like ``gamma2``
    are both accepted, pulse attributes use ``pulse1.amplitude``.

    :param      parameter:  The parameter name
    :type       parameter:  str

    :returns:   The attribute path
    :rtype:     str

    :raises     ConfigurationError:  If the parameter is not sweepable
    """
    if not isinstance(parameter, str):
        raise ConfigurationError('parameter', 'expected a name, got {!r}'.
                                 format(parameter))

    name = JSON_FIELDS.get(parameter, parameter)
    if name in NUMERIC_FIELDS or name in ENUM_PARAMETERS:
        return name

    if '.' in name:
        pulse, attribute = name.split('.', 1)
        if pulse in ('pulse1', 'pulse2') and attribute in PULSE_PARAMETERS:
            return name

    raise ConfigurationError('parameter', '{!r} is not a sweepable field'.
                             format(parameter))


def apply_parameter(config: SimConfig,
                    parameter: str,
                    value: Any) -> SimConfig:
    """
    Set one parameter of a configuration.

    :param      config:     The base configuration
    :type       config:     SimConfig
    :param      parameter:  The parameter name
    :type       parameter:  str
    :param      value:      The new value
    :type       value:      Any

    :returns:   The validated copy
    :rtype:     SimConfig

    :raises     ConfigurationError:  If the value is invalid
    """
    path = resolve_parameter(parameter)

    if '.' in path:
        pulse, attribute = path.split('.', 1)
        try:
            shape = replace(getattr(config, pulse), **{attribute: value})
        except ConfigurationError as e:
            raise ConfigurationError(path, e.message)
        return config.replace(**{pulse: shape})

    return config.replace(**{path: value})


@dataclass(frozen=True)
class SweepSpec(object):
    """
    Scan of one configuration parameter

    :param      base:       The configuration all points start from
    :type       base:       SimConfig
    :param      parameter:  The parameter, e.g. ``gamma2`` or
                            ``pulse2.amplitude``
    :type       parameter:  str
    :param      values:     The values in output order
    :type       values:     Sequence[Any]
    :param      outputs:    Requested outputs besides the monitors
    :type       outputs:    Sequence[str]
    :param      workers:    Number of worker processes, 1 runs inline
    :type       workers:    int
    """
    base: SimConfig
    parameter: str
    values: Sequence[Any]
    outputs: Sequence[str] = ('fidelity', )
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.base, SimConfig):
            raise ConfigurationError('base', 'expected a SimConfig')

        path = resolve_parameter(self.parameter)
        object.__setattr__(self, 'parameter', path)

        if isinstance(self.values, (str, bytes)) or \
                not isinstance(self.values, Sequence) or not len(self.values):
            raise ConfigurationError('values', 'must be a non-empty list')
        object.__setattr__(self, 'values', tuple(self.values))
        for value in self.values:
            apply_parameter(self.base, path, value)

        for output in self.outputs:
            if output not in SWEEP_OUTPUTS:
                raise ConfigurationError('outputs', 'unknown output {!r}'.
                                         format(output))
        object.__setattr__(self, 'outputs', tuple(self.outputs))

        if isinstance(self.workers, bool) or \
                not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigurationError('workers', 'must be a positive integer')

    def configs(self) -> List[SimConfig]:
        """
        Get the configuration of every point.

        :returns:   One configuration per value, in order
        :rtype:     List[SimConfig]
        """
        return [apply_parameter(self.base, self.parameter, value)
                for value in self.values]

    def to_dict(self) -> dict:
        values = [value.value if isinstance(value, Enum) else value
                  for value in self.values]

        return {
            'base': self.base.to_dict(),
            'parameter': self.parameter,
            'values': values,
            'outputs': list(self.outputs),
            'workers': self.workers,
        }

    @classmethod
    def from_dict(cls,
                  data: dict,
                  base: Optional[SimConfig] = None) -> 'SweepSpec':
        """
        Create a sweep specification from its JSON layout.

        ``base`` is an inline configuration object. A base configuration
        given as argument takes precedence, e.g. one loaded from a path.

        :param      data:  The parsed JSON object
        :type       data:  dict
        :param      base:  The base configuration
        :type       base:  Optional[SimConfig]

        :returns:   The validated specification
        :rtype:     SweepSpec

        :raises     ConfigurationError:  On unknown keys or invalid values
        """
        if not isinstance(data, dict):
            raise ConfigurationError(None, 'sweep spec must be a JSON object')

        known = ('base', 'parameter', 'values', 'outputs', 'workers')
        for key in data:
            if key not in known:
                raise ConfigurationError(key, 'unknown field')
        if 'parameter' not in data:
            raise ConfigurationError('parameter', 'missing')

        if base is None:
            base_data = data.get('base', dict())
            if not isinstance(base_data, dict):
                raise ConfigurationError('base', 'expected a configuration '
                                                 'object')
            base = SimConfig.from_dict(base_data)

        return cls(base=base,
                   parameter=data['parameter'],
                   values=data.get('values', []),
                   outputs=data.get('outputs', ('fidelity', )),
                   workers=data.get('workers', 1))


@dataclass
class SweepPoint(object):
    """
    Result of one sweep value

    :param      index:   Position in the value list
    :type       index:   int
    :param      value:   The parameter value
    :type       value:   Any
    :param      report:  The gate report, None if the point failed
    :type       report:  Optional[GateReport]
    :param      error:   The failure, None if the point succeeded
    :type       error:   Optional[str]
    """
    index: int
    value: Any
    report: Optional[GateReport] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def fidelity(self) -> Optional[float]:
        if self.report is None:
            return None
        return self.report.fidelity

    def to_dict(self) -> dict:
        value = self.value.value if isinstance(self.value, Enum) else \
            self.value

        return {
            'index': self.index,
            'value': value,
            'report': None if self.report is None else self.report.to_dict(),
            'error': self.error,
        }


def run_point(config: SimConfig, outputs: Sequence[str]) -> GateReport:
    """
    Simulate one sweep point.

    :param      config:   The configuration of the point
    :type       config:   SimConfig
    :param      outputs:  The requested outputs
    :type       outputs:  Sequence[str]

    :returns:   The gate report
    :rtype:     GateReport
    """
    run = simulate(config,
                   with_phase_table='phase_table' in outputs,
                   with_average_fidelity='average_fidelity' in outputs)

    return run.report


def run_sweep(spec: SweepSpec) -> List[SweepPoint]:
    """
    Run every point of a sweep.

    A failing point is recorded with its error, the others still run.

    :param      spec:  The sweep specification
    :type       spec:  SweepSpec

    :returns:   One result per value, in value order
    :rtype:     List[SweepPoint]
    """
    configs = spec.configs()
    points = [SweepPoint(index=index, value=value)
              for index, value in enumerate(spec.values)]

    logger.info('Sweeping {} over {} values with {} worker(s)'.
                format(spec.parameter, len(configs), spec.workers))

    if spec.workers == 1:
        for point, config in zip(points, configs):
            try:
                point.report = run_point(config, spec.outputs)
            except QdmGateException as e:
                point.error = str(e)
                logger.warning('Point {} = {} failed: {}'.
                               format(spec.parameter, point.value, e))
        return points

    with ProcessPoolExecutor(max_workers=spec.workers) as executor:
        future_to_index = {
            executor.submit(run_point, config, spec.outputs): index
            for index, config in enumerate(configs)
        }
        for future in as_completed(future_to_index):
            point = points[future_to_index[future]]
            try:
                point.report = future.result()
            except QdmGateException as e:
                point.error = str(e)
                logger.warning('Point {} = {} failed: {}'.
                               format(spec.parameter, point.value, e))

    return points


def _numeric_points(points: Sequence[SweepPoint]) -> List[SweepPoint]:
    return sorted((point for point in points
                   if point.fidelity is not None and
                   isinstance(point.value, (int, float)) and
                   not isinstance(point.value, bool)),
                  key=lambda point: point.value)


def summarize(spec: SweepSpec,
              points: Sequence[SweepPoint],
              tolerance: float = Const.MONOTONICITY_TOLERANCE) -> dict:
    """
    Summarize a sweep.

    For decay rate sweeps the summary tells whether the fidelity is non
    increasing in the rate and whether the zero rate point dominates. A γ₂
    sweep containing the cavity value compares it with the quoted cavity
    fidelity. The checks are reported, not enforced.

    :param      spec:       The sweep specification
    :type       spec:       SweepSpec
    :param      points:     The sweep results
    :type       points:     Sequence[SweepPoint]
    :param      tolerance:  Slack of the monotonicity comparisons
    :type       tolerance:  float

    :returns:   JSON compatible summary
    :rtype:     dict
    """
    summary = {
        'parameter': spec.parameter,
        'points': [point.to_dict() for point in points],
        'failed': [point.index for point in points if not point.ok],
        'monotonic_non_increasing': None,
        'violations': [],
        'zero_rate_dominates': None,
        'cavity': None,
    }

    numeric = _numeric_points(points)
    if spec.parameter in RATE_PARAMETERS and len(numeric) > 1:
        violations = []
        for lower, higher in zip(numeric, numeric[1:]):
            if higher.fidelity > lower.fidelity + tolerance:
                violations.append({'from': lower.value,
                                   'to': higher.value,
                                   'increase': higher.fidelity -
                                   lower.fidelity})
        summary['violations'] = violations
        summary['monotonic_non_increasing'] = not violations

        zero = [point for point in numeric if point.value == 0]
        if zero:
            best = max(point.fidelity for point in numeric)
            summary['zero_rate_dominates'] = \
                zero[0].fidelity >= best - tolerance

    if spec.parameter == 'gamma2':
        cavity = [point for point in numeric
                  if math.isclose(point.value, Const.CAVITY_GAMMA2_PER_NS)]
        if cavity:
            summary['cavity'] = {
                'gamma2_per_ns': cavity[0].value,
                'fidelity': cavity[0].fidelity,
                'quoted_fidelity': Const.CAVITY_FIDELITY,
                'difference': cavity[0].fidelity - Const.CAVITY_FIDELITY,
            }

    if summary['monotonic_non_increasing'] is False:
        logger.warning('Fidelity increases with {} at {} pair(s)'.
                       format(spec.parameter, len(summary['violations'])))

    return summary


def sweep_rows(points: Sequence[SweepPoint]) -> List[List[Any]]:
    """
    Build the CSV rows of a sweep.

    Failed points keep their value, the other fields stay empty.

    :param      points:  The sweep results
    :type       points:  Sequence[SweepPoint]

    :returns:   Rows matching :py:data:`SWEEP_CSV_HEADER`
    :rtype:     List[List[Any]]
    """
    rows: List[List[Any]] = []
    for point in points:
        value: Union[str, float] = point.value
        if isinstance(value, Enum):
            value = value.value
        if point.report is None:
            rows.append([value, None, None, None])
            continue
        rows.append([value,
                     point.report.fidelity,
                     point.report.trace_dev_max,
                     point.report.min_eig])

    return rows


def write_sweep_csv(points: Sequence[SweepPoint],
                    path: Union[str, Path]) -> Path:
    """
    Write the sweep CSV.

    :param      points:  The sweep results
    :type       points:  Sequence[SweepPoint]
    :param      path:    The path
    :type       path:    Union[str, Path]

    :returns:   The written path
    :rtype:     Path
    """
    return write_csv(path, SWEEP_CSV_HEADER, sweep_rows(points))

