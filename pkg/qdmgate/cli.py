#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Command line front end

Subcommands ``simulate``, ``verify``, ``gate-table`` and ``sweep``. Every
command writes a run manifest next to its outputs, the manifest echoes the
full configuration and can be passed back as ``--config``.

Exit status 0 means all requested work succeeded, 1 a failed integration,
check or sweep point, 2 an invalid configuration.
"""

# system packages
import argparse
from dataclasses import dataclass, field
import json
import logging
from pathlib import Path
import sys

# custom packages
from .checks import CHECK_NAMES, DEFAULT_ORACLE_WINDOW_PS, run_checks
from .common import ConfigurationError, IntegrationError
from .config import SimConfig
from .dynamics import TimeSeries, evolve
from .functions import FAILED_MARKER, complex_to_dict, read_json, write_csv
from .functions import write_json
from .metrics import gate_target, ideal_phase_table, phase_table, simulate
from .metrics import state_fidelity
from .pulses import UnitMode
from .statespace import build_basis
from .sweep import SweepSpec, run_sweep, summarize, write_sweep_csv
from .version import __version__

# typing
from typing import List, Optional, Sequence, Union

logger = logging.getLogger(__name__)

#: Header of the time series CSV
SERIES_CSV_HEADER = ['t_ps', 'omega1', 'omega2'] + \
    ['pop_{}'.format(state.label) for state in build_basis()] + \
    ['trace_dev', 'purity']

#: Log format of the command line front end
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


@dataclass
class RunManifest(object):
    """
    Provenance record of one command

    :param      config_echo:   Input level and resolved configuration
    :type       config_echo:   dict
    :param      tool_version:  Version of this package
    :type       tool_version:  str
    :param      command:       The command line
    :type       command:       str
    :param      output_paths:  Files written by the command
    :type       output_paths:  List[str]
    :param      unit_modes:    Unit modes the command ran
    :type       unit_modes:    List[str]
    """
    config_echo: dict
    tool_version: str = __version__
    command: str = ''
    output_paths: List[str] = field(default_factory=list)
    unit_modes: List[str] = field(default_factory=list)

    @classmethod
    def for_config(cls,
                   config: SimConfig,
                   command: str,
                   output_paths: Sequence[Union[str, Path]] = (),
                   unit_modes: Optional[Sequence[UnitMode]] = None
                   ) -> 'RunManifest':
        """
        Create the manifest of a run.

        :param      config:        The configuration
        :type       config:        SimConfig
        :param      command:       The command line
        :type       command:       str
        :param      output_paths:  Files written by the command
        :type       output_paths:  Sequence[Union[str, Path]]
        :param      unit_modes:    Unit modes run, None for the one of config
        :type       unit_modes:    Optional[Sequence[UnitMode]]

        :returns:   The manifest
        :rtype:     RunManifest
        """
        if unit_modes is None:
            unit_modes = [config.unit_mode]

        return cls(config_echo={'config': config.to_dict(),
                                'resolved': config.resolved()},
                   command=command,
                   output_paths=[str(path) for path in output_paths],
                   unit_modes=[UnitMode(mode).value for mode in unit_modes])

    def to_dict(self) -> dict:
        return {
            'config_echo': self.config_echo,
            'tool_version': self.tool_version,
            'command': self.command,
            'output_paths': self.output_paths,
            'unit_modes': self.unit_modes,
        }

    def write(self, path: Union[str, Path]) -> Path:
        """
        Write the manifest as JSON.

        :param      path:  The path
        :type       path:  Union[str, Path]

        :returns:   The written path
        :rtype:     Path
        """
        return write_json(path, self.to_dict())


def manifest_path(output: Union[str, Path]) -> Path:
    """
    Get the manifest path belonging to an output file.

    :param      output:  The output path, e.g. ``run.csv``
    :type       output:  Union[str, Path]

    :returns:   The manifest path, e.g. ``run.manifest.json``
    :rtype:     Path
    """
    return Path(output).with_suffix('.manifest.json')


def load_config(path: Union[str, Path]) -> SimConfig:
    """
    Load a configuration file.

    Missing keys take the reference defaults. A run manifest is accepted
    as well, its echoed configuration is used.

    :param      path:  The path of a JSON configuration or manifest
    :type       path:  Union[str, Path]

    :returns:   The validated configuration
    :rtype:     SimConfig

    :raises     ConfigurationError:  If the file cannot be read or parsed or
                                     holds an invalid configuration
    """
    try:
        data = read_json(path)
    except OSError as e:
        raise ConfigurationError(None, 'cannot read {}: {}'.format(path, e))
    except json.JSONDecodeError as e:
        raise ConfigurationError(None, 'invalid JSON in {}: {}'.format(path,
                                                                      e))

    if isinstance(data, dict) and 'config_echo' in data:
        echo = data['config_echo']
        if not isinstance(echo, dict) or 'config' not in echo:
            raise ConfigurationError('config_echo', 'manifest holds no '
                                                    'configuration')
        data = echo['config']

    return SimConfig.from_dict(data)


def _with_unit_mode(config: SimConfig,
                    unit_mode: Optional[str]) -> SimConfig:
    if unit_mode is None:
        return config

    return config.replace(unit_mode=unit_mode)


def series_rows(series: TimeSeries) -> List[list]:
    """
    Build the CSV rows of a time series.

    :param      series:  The time series
    :type       series:  TimeSeries

    :returns:   Rows matching :py:data:`SERIES_CSV_HEADER`
    :rtype:     List[list]
    """
    labels = [state.label for state in build_basis()]
    rows = []
    for index, t in enumerate(series.times):
        row = [t, series.omega1[index], series.omega2[index]]
        row += [series.populations[label][index] for label in labels]
        row += [series.trace_dev[index], series.purity[index]]
        rows.append(row)

    return rows


def _failure_row(error: IntegrationError) -> list:
    row = [FAILED_MARKER, error.time, error.message]

    return row + [''] * (len(SERIES_CSV_HEADER) - len(row))


def cmd_simulate(config_path: Union[str, Path],
                 out_csv: Union[str, Path],
                 out_json: Optional[Union[str, Path]] = None,
                 unit_mode: Optional[str] = None,
                 with_phase_table: bool = True,
                 command: str = 'simulate') -> int:
    """
    Simulate a gate and write its time series and report.

    On an integration failure the samples recorded so far are written,
    followed by a row starting with ``FAILED``.

    :param      config_path:       The configuration file
    :type       config_path:       Union[str, Path]
    :param      out_csv:           The time series CSV
    :type       out_csv:           Union[str, Path]
    :param      out_json:          The report JSON, None for
                                   ``<out_csv>.json``
    :type       out_json:          Optional[Union[str, Path]]
    :param      unit_mode:         Unit mode override
    :type       unit_mode:         Optional[str]
    :param      with_phase_table:  Flag to measure the phase table
    :type       with_phase_table:  bool
    :param      command:           The command line for the manifest
    :type       command:           str

    :returns:   Exit status
    :rtype:     int
    """
    config = _with_unit_mode(load_config(config_path), unit_mode)
    out_csv = Path(out_csv)
    out_json = Path(out_json) if out_json else out_csv.with_suffix('.json')
    outputs = [out_csv, out_json]

    status = 0
    try:
        run = simulate(config, with_phase_table=with_phase_table)
    except IntegrationError as e:
        logger.error('Simulation failed: {}'.format(e))
        rows = series_rows(e.series) if e.series is not None else []
        write_csv(out_csv, SERIES_CSV_HEADER, rows + [_failure_row(e)])
        write_json(out_json, {'error': str(e), 'time_ps': e.time})
        status = 1
    else:
        write_csv(out_csv, SERIES_CSV_HEADER, series_rows(run.series))
        write_json(out_json, run.report.to_dict())
        print('F = {}, T_g = {} ps'.format(run.report.fidelity,
                                           run.report.gate_time))

    manifest = RunManifest.for_config(config, command, outputs)
    manifest.write(manifest_path(out_csv))

    return status


def cmd_verify(config_path: Optional[Union[str, Path]] = None,
               only: Optional[Sequence[str]] = None,
               dt: Optional[float] = None,
               oracle_window: Optional[float] = DEFAULT_ORACLE_WINDOW_PS,
               corrupt_tau_sign: bool = False,
               out_json: Union[str, Path] = 'verify.json',
               unit_mode: Optional[str] = None,
               command: str = 'verify') -> int:
    """
    Run the oracle suite and print one line per check.

    :param      config_path:       Base configuration, None for defaults
    :type       config_path:       Optional[Union[str, Path]]
    :param      only:              Names of the checks to run
    :type       only:              Optional[Sequence[str]]
    :param      dt:                Step of the convergence check
    :type       dt:                Optional[float]
    :param      oracle_window:     Half width of the staircase and
                                   convergence window, None for all
    :type       oracle_window:     Optional[float]
    :param      corrupt_tau_sign:  Integrate the Rabi check with -τ
    :type       corrupt_tau_sign:  bool
    :param      out_json:          The results JSON
    :type       out_json:          Union[str, Path]
    :param      unit_mode:         Unit mode override
    :type       unit_mode:         Optional[str]
    :param      command:           The command line for the manifest
    :type       command:           str

    :returns:   0 if every check passed, 1 otherwise
    :rtype:     int
    """
    config = SimConfig() if config_path is None else load_config(config_path)
    config = _with_unit_mode(config, unit_mode)

    results = run_checks(config,
                         only=only,
                         dt=dt,
                         half_width=oracle_window,
                         tau_sign=-1.0 if corrupt_tau_sign else 1.0)
    for result in results:
        print(result)

    passed = all(result.passed for result in results)
    out_json = Path(out_json)
    write_json(out_json, {'passed': passed,
                          'checks': [result.to_dict() for result in results]})
    RunManifest.for_config(config, command, [out_json]).write(
        manifest_path(out_json))

    return 0 if passed else 1


def cmd_gate_table(config_path: Union[str, Path],
                   out_json: Union[str, Path],
                   unit_mode: Optional[str] = None,
                   analytic: bool = False,
                   command: str = 'gate-table') -> int:
    """
    Emit the phase table and fidelity of a gate.

    Both unit modes are run unless one is pinned. The analytic mode prints
    the ideal table without running the dynamics.

    :param      config_path:  The configuration file
    :type       config_path:  Union[str, Path]
    :param      out_json:     The table JSON
    :type       out_json:     Union[str, Path]
    :param      unit_mode:    Pinned unit mode
    :type       unit_mode:    Optional[str]
    :param      analytic:     Flag to skip the dynamics
    :type       analytic:     bool
    :param      command:      The command line for the manifest
    :type       command:      str

    :returns:   Exit status
    :rtype:     int
    """
    config = load_config(config_path)
    out_json = Path(out_json)

    if analytic:
        table = ideal_phase_table()
        print('ideal: ' + ', '.join('{:+.6f}'.format(entry.real)
                                    for entry in table))
        write_json(out_json, {'analytic': [complex_to_dict(entry)
                                           for entry in table]})
        RunManifest.for_config(config, command, [out_json], []).write(
            manifest_path(out_json))
        return 0

    modes = list(UnitMode) if unit_mode is None else [UnitMode(unit_mode)]
    results = dict()
    status = 0

    for mode in modes:
        mode_config = config.replace(unit_mode=mode)
        try:
            table = phase_table(mode_config)
            target = gate_target(mode_config)
            fidelity = None
            if target is not None:
                final, _ = evolve(mode_config)
                fidelity = state_fidelity(final, target)
        except IntegrationError as e:
            logger.error('Gate table in {} mode failed: {}'.
                         format(mode.value, e))
            results[mode.value] = {'error': str(e)}
            status = 1
            continue

        results[mode.value] = {
            'phase_table': [complex_to_dict(entry) for entry in table],
            'fidelity': fidelity,
        }
        print('{}: F = {}, table = {}'.format(
            mode.value,
            fidelity,
            ', '.join('{:+.6f}{:+.6f}j'.format(entry.real, entry.imag)
                      for entry in table)))

    write_json(out_json, results)
    RunManifest.for_config(config, command, [out_json], modes).write(
        manifest_path(out_json))

    return status


def load_sweep_spec(path: Union[str, Path],
                    unit_mode: Optional[str] = None,
                    workers: Optional[int] = None) -> SweepSpec:
    """
    Load a sweep specification file.

    ``base`` is either an inline configuration object or the path of a
    configuration file relative to the specification.

    :param      path:       The sweep specification file
    :type       path:       Union[str, Path]
    :param      unit_mode:  Unit mode override of the base configuration
    :type       unit_mode:  Optional[str]
    :param      workers:    Worker count override
    :type       workers:    Optional[int]

    :returns:   The validated specification
    :rtype:     SweepSpec

    :raises     ConfigurationError:  If the file or its content is invalid
    """
    try:
        data = read_json(path)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(None, 'cannot load sweep spec {}: {}'.
                                 format(path, e))
    if not isinstance(data, dict):
        raise ConfigurationError(None, 'sweep spec must be a JSON object')

    data = dict(data)
    base_data = data.pop('base', dict())
    if isinstance(base_data, str):
        base = load_config(Path(path).parent / base_data)
    elif isinstance(base_data, dict):
        base = SimConfig.from_dict(base_data)
    else:
        raise ConfigurationError('base', 'expected a path or a '
                                         'configuration object')

    base = _with_unit_mode(base, unit_mode)
    if workers is not None:
        data['workers'] = workers

    return SweepSpec.from_dict(data, base=base)


def cmd_sweep(spec_path: Union[str, Path],
              out_csv: Union[str, Path],
              out_json: Optional[Union[str, Path]] = None,
              unit_mode: Optional[str] = None,
              workers: Optional[int] = None,
              command: str = 'sweep') -> int:
    """
    Run a parameter sweep and write its CSV and JSON summary.

    :param      spec_path:  The sweep specification file
    :type       spec_path:  Union[str, Path]
    :param      out_csv:    The sweep CSV
    :type       out_csv:    Union[str, Path]
    :param      out_json:   The summary, None for ``<out_csv>.summary.json``
    :type       out_json:   Optional[Union[str, Path]]
    :param      unit_mode:  Unit mode override of the base configuration
    :type       unit_mode:  Optional[str]
    :param      workers:    Worker count override
    :type       workers:    Optional[int]
    :param      command:    The command line for the manifest
    :type       command:    str

    :returns:   0 if every point succeeded, 1 otherwise
    :rtype:     int
    """
    spec = load_sweep_spec(spec_path, unit_mode=unit_mode, workers=workers)
    out_csv = Path(out_csv)
    out_json = Path(out_json) if out_json else \
        out_csv.with_suffix('.summary.json')

    points = run_sweep(spec)
    write_sweep_csv(points, out_csv)
    summary = summarize(spec, points)
    summary['spec'] = spec.to_dict()
    write_json(out_json, summary)

    for point in points:
        if point.ok:
            print('{} = {}: F = {}'.format(spec.parameter,
                                           point.to_dict()['value'],
                                           point.fidelity))
        else:
            print('{} = {}: FAILED {}'.format(spec.parameter,
                                              point.to_dict()['value'],
                                              point.error))

    modes = list(dict.fromkeys(config.unit_mode for config in spec.configs()))
    manifest = RunManifest.for_config(spec.base, command, [out_csv, out_json],
                                      modes)
    manifest.write(manifest_path(out_csv))

    return 0 if all(point.ok for point in points) else 1


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    :returns:   The parser with all subcommands
    :rtype:     argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog='qdmgate',
        description='Master equation simulation of an all optical '
                    'controlled phase gate in a quantum dot molecule')
    parser.add_argument('--version',
                        action='version',
                        version='%(prog)s {}'.format(__version__))
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose',
                           action='store_true',
                           help='Log debug messages')
    verbosity.add_argument('-q', '--quiet',
                           action='store_true',
                           help='Log warnings and errors only')

    unit_modes = [mode.value for mode in UnitMode]
    subparsers = parser.add_subparsers(dest='command', required=True)

    simulate = subparsers.add_parser('simulate',
                                     help='Simulate a gate, write the time '
                                          'series and report')
    simulate.add_argument('--config', required=True,
                          help='Configuration or manifest JSON')
    simulate.add_argument('--out', default='simulate.csv',
                          help='Time series CSV')
    simulate.add_argument('--report',
                          help='Report JSON, default <out>.json')
    simulate.add_argument('--unit-mode', choices=unit_modes)
    simulate.add_argument('--no-phase-table', action='store_true',
                          help='Skip the phase table of the report')

    verify = subparsers.add_parser('verify',
                                   help='Run the oracle suite')
    verify.add_argument('--config',
                        help='Base configuration of the staircase and '
                             'convergence checks')
    verify.add_argument('--only', nargs='+', choices=CHECK_NAMES,
                        help='Run the named checks only')
    verify.add_argument('--dt', type=float,
                        help='Step of the convergence check in ps')
    verify.add_argument('--oracle-window', type=float,
                        default=DEFAULT_ORACLE_WINDOW_PS,
                        help='Half width in ps around the Ω₂ peak, 0 for '
                             'the full gate window')
    verify.add_argument('--corrupt-tau-sign', action='store_true',
                        help='Integrate the three level check with -τ')
    verify.add_argument('--out', default='verify.json',
                        help='Results JSON')
    verify.add_argument('--unit-mode', choices=unit_modes)

    gate_table = subparsers.add_parser('gate-table',
                                       help='Phase table and fidelity')
    gate_table.add_argument('--config', required=True,
                            help='Configuration or manifest JSON')
    gate_table.add_argument('--out', default='gate-table.json',
                            help='Table JSON')
    gate_table.add_argument('--analytic', action='store_true',
                            help='Print the ideal table only')
    gate_table.add_argument('--unit-mode', choices=unit_modes,
                            help='Run this unit mode only')

    sweep = subparsers.add_parser('sweep', help='Run a parameter sweep')
    sweep.add_argument('--spec', required=True,
                       help='Sweep specification JSON')
    sweep.add_argument('--out', default='sweep.csv', help='Sweep CSV')
    sweep.add_argument('--summary',
                       help='Summary JSON, default <out>.summary.json')
    sweep.add_argument('--workers', type=int,
                       help='Worker processes, overrides the spec')
    sweep.add_argument('--unit-mode', choices=unit_modes)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """
    Configure the root logger of a command line run.

    :param      verbose:  Flag to log debug messages
    :type       verbose:  bool
    :param      quiet:    Flag to log warnings and errors only
    :type       quiet:    bool
    """
    level = logging.INFO
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING

    logging.basicConfig(level=level, format=LOG_FORMAT)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line front end.

    :param      argv:  The arguments, None for ``sys.argv[1:]``
    :type       argv:  Optional[Sequence[str]]

    :returns:   Exit status
    :rtype:     int
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    command = ' '.join(['qdmgate'] +
                       list(sys.argv[1:] if argv is None else argv))

    try:
        if args.command == 'simulate':
            return cmd_simulate(args.config,
                                args.out,
                                args.report,
                                unit_mode=args.unit_mode,
                                with_phase_table=not args.no_phase_table,
                                command=command)
        if args.command == 'verify':
            window = args.oracle_window if args.oracle_window else None
            return cmd_verify(args.config,
                              only=args.only,
                              dt=args.dt,
                              oracle_window=window,
                              corrupt_tau_sign=args.corrupt_tau_sign,
                              out_json=args.out,
                              unit_mode=args.unit_mode,
                              command=command)
        if args.command == 'gate-table':
            return cmd_gate_table(args.config,
                                  args.out,
                                  unit_mode=args.unit_mode,
                                  analytic=args.analytic,
                                  command=command)
        return cmd_sweep(args.spec,
                         args.out,
                         args.summary,
                         unit_mode=args.unit_mode,
                         workers=args.workers,
                         command=command)
    except ConfigurationError as e:
        logger.error('Invalid configuration: {}'.format(e))
        return 2


if __name__ == '__main__':
    sys.exit(main())
