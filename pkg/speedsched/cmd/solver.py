#    Copyright (c) 2026 Speedsched Developers
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

"""speedsched command line: solve, mbal, verify and oracle."""

import sys

from oslo_config import cfg
from oslo_log import log as logging

from speedsched.certify import exceptions as certify_exceptions
from speedsched.certify import oracle
from speedsched.certify import verify
from speedsched.common import config
from speedsched.common import consts
from speedsched.common import exception
from speedsched.common import gantt
from speedsched.common import serializer
from speedsched.engine import bal
from speedsched.engine import flownet
from speedsched.engine import mbal
from speedsched.engine import timetable
from speedsched.model import instance as model
from speedsched.model import load_utils
from speedsched.model import schemas

CONF = config.CONF
LOG = logging.getLogger(__name__)

PROG = 'speedsched'


def _solver_config():
    return model.SolverConfig.from_conf(
        speed_tolerance=CONF.command.tol_speed,
        flow_tolerance=CONF.command.tol_flow)


def _emit(text):
    # 'output' names an option group
    path = CONF.command.output_path
    if path:
        with open(path, 'w') as stream:
            stream.write(text + '\n')
        LOG.info('Result written to {0}'.format(path))
    else:
        sys.stdout.write(text + '\n')


def _render(schedule, machines, document):
    if CONF.command.format == 'gantt':
        return gantt.render(schedule, machines)
    return serializer.dumps(document)


def do_solve():
    instance = load_utils.load_instance(CONF.command.instance,
                                        alpha=CONF.command.alpha,
                                        machines=CONF.command.machines)
    solver_config = _solver_config()
    speeds, trace = bal.bal_solve(instance, solver_config)
    schedule = timetable.build_schedule(instance, speeds, solver_config)

    if CONF.command.dump_network:
        _grid, network, flow = timetable.assignment_flow(
            instance, speeds, solver_config)
        sys.stderr.write(flownet.dump_network(network, flow) + '\n')

    document = serializer.schedule_to_dict(schedule)
    if CONF.command.trace:
        document['trace'] = serializer.trace_to_list(trace)
    _emit(_render(schedule, instance.machines, document))
    return consts.EXIT_OK


def do_mbal():
    problem = mbal.load_budget_problem(CONF.command.instance,
                                       alpha=CONF.command.alpha,
                                       machines=CONF.command.machines,
                                       energy=CONF.command.energy)
    makespan, schedule = mbal.mbal_solve(problem, _solver_config())
    document = serializer.schedule_to_dict(schedule, makespan=makespan)
    _emit(_render(schedule, problem.machines, document))
    return consts.EXIT_OK


def _split_verify_inputs(first, second):
    documents = [(path, load_utils.load_document(path, None))
                 for path in (first, second)]
    schedules = [item for item in documents
                 if isinstance(item[1], dict) and 'segments' in item[1]]
    if len(schedules) != 1:
        raise exception.InvalidInput(
            reason='exactly one of the inputs must be a schedule')
    schedule = schedules[0]
    instance = [item for item in documents if item is not schedule][0]
    return instance, schedule


def do_verify():
    (instance_path, instance_doc), (schedule_path, schedule_doc) = \
        _split_verify_inputs(CONF.command.instance, CONF.command.schedule)
    load_utils.validate_document(instance_doc, schemas.INSTANCE_SCHEMA,
                                 instance_path)
    instance = load_utils.instance_from_document(instance_doc)
    schedule = serializer.schedule_from_dict(schedule_doc, instance.alpha,
                                             schedule_path)

    feasibility = verify.check_feasibility(schedule, instance)
    grid = model.build_interval_grid(instance.jobs, instance.machines)
    times = verify.schedule_time_matrix(schedule, grid)
    speeds = verify.schedule_speeds(schedule)
    kkt = verify.check_kkt_properties(instance, speeds, times,
                                      tol=CONF.command.tol,
                                      segments=schedule.segments)
    energy = None
    if all(job.id in speeds for job in instance.jobs):
        energy = verify.energy_of(speeds, instance.jobs, instance.alpha,
                                  times)
    document = serializer.verification_to_dict(feasibility, kkt, energy)
    _emit(serializer.dumps(document))
    if feasibility.passed and kkt.passed:
        return consts.EXIT_OK
    LOG.warning('Schedule {0} failed verification'.format(schedule_path))
    return consts.EXIT_VERIFICATION_FAILED


def do_oracle():
    instance = load_utils.load_instance(CONF.command.instance)
    if CONF.command.method == oracle.YDS:
        if instance.machines != 1:
            raise certify_exceptions.SingleMachineOnly(
                machines=instance.machines)
        result = oracle.yds_energy(instance.jobs, instance.alpha)
    else:
        result = oracle.brute_force_energy(instance)
    _emit(serializer.dumps(serializer.oracle_to_dict(result)))
    return consts.EXIT_OK


def _add_instance_overrides(parser):
    parser.add_argument('--alpha', type=float, default=None,
                        help='Override the power exponent of the instance.')
    parser.add_argument('--machines', type=int, default=None,
                        help='Override the machine count of the instance.')
    parser.add_argument('--tol-speed', type=float, default=None,
                        help='Relative termination gap of speed searches.')
    parser.add_argument('--tol-flow', type=float, default=None,
                        help='Relative flow saturation tolerance.')
    parser.add_argument('--format', choices=consts.OUTPUT_FORMATS,
                        default='json',
                        help='Print the schedule as JSON or as a chart.')
    parser.add_argument('-o', '--output', dest='output_path', default=None,
                        help='Write the result to this file instead of '
                             'stdout.')


def add_command_parsers(subparsers):
    parser = subparsers.add_parser(
        'solve', help='Energy optimal schedule of a deadline instance.')
    parser.set_defaults(func=do_solve)
    parser.add_argument('instance', help='Instance file (JSON or YAML).')
    _add_instance_overrides(parser)
    parser.add_argument('--trace', action='store_true', default=False,
                        help='Include the per step solver trace.')
    parser.add_argument('--dump-network', action='store_true',
                        default=False,
                        help='Print the timetable flow network to stderr.')

    parser = subparsers.add_parser(
        'mbal', help='Minimum makespan within an energy budget.')
    parser.set_defaults(func=do_mbal)
    parser.add_argument('instance', help='Instance file without deadlines.')
    parser.add_argument('--energy', type=float, default=None,
                        help='Energy budget; overrides the "energy" field '
                             'of the instance.')
    _add_instance_overrides(parser)

    parser = subparsers.add_parser(
        'verify', help='Check feasibility and optimality of a schedule.')
    parser.set_defaults(func=do_verify)
    parser.add_argument('instance', help='Instance file.')
    parser.add_argument('schedule', help='Schedule file.')
    parser.add_argument('--tol', type=float, default=None,
                        help='Relative tolerance of the optimality check.')
    parser.add_argument('-o', '--output', dest='output_path', default=None,
                        help='Write the verdict to this file.')

    # debugging aid, deliberately left out of the help listing
    parser = subparsers.add_parser('oracle')
    parser.set_defaults(func=do_oracle)
    parser.add_argument('method', choices=consts.ORACLE_METHODS)
    parser.add_argument('instance')
    parser.add_argument('-o', '--output', dest='output_path', default=None)


command_opt = cfg.SubCommandOpt('command',
                                title='Commands',
                                help='Show available commands.',
                                handler=add_command_parsers)


def _report(error, exit_code):
    LOG.error('{0}: {1}'.format(error.code, error.detail))
    sys.stderr.write(serializer.dumps(serializer.error_to_dict(error),
                                      pretty=False) + '\n')
    return exit_code


def run(argv):
    """Runs one command and returns its exit code."""
    CONF.clear()
    CONF.register_cli_opt(command_opt)
    try:
        config.parse_args(argv, prog=PROG)
    except SystemExit as ex:
        # argparse already printed usage or help
        return consts.EXIT_OK if not ex.code else consts.EXIT_INVALID_INPUT
    except cfg.Error as ex:
        return _report(exception.InvalidInput(reason=str(ex)),
                       consts.EXIT_INVALID_INPUT)
    if not CONF.command.name:
        return _report(exception.InvalidInput(reason='no command given'),
                       consts.EXIT_INVALID_INPUT)
    config.setup_logging()

    try:
        return CONF.command.func()
    except exception.InvalidInput as ex:
        return _report(ex, consts.EXIT_INVALID_INPUT)
    except exception.SolverInvariantError as ex:
        return _report(ex, consts.EXIT_INTERNAL_ERROR)
    except Exception as ex:
        LOG.exception('speedsched command failed')
        return _report(exception.SpeedschedException(str(ex)),
                       consts.EXIT_INTERNAL_ERROR)


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
