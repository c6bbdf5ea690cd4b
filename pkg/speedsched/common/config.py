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

from oslo_config import cfg
from oslo_log import log as logging

from speedsched.i18n import _
from speedsched import version

solver_opts = [
    cfg.FloatOpt('speed_tolerance', default=1e-12, min=0.0,
                 help=_('Termination gap of the critical speed binary '
                        'search, relative to the upper speed bound of the '
                        'first step.')),
    cfg.FloatOpt('flow_tolerance', default=1e-9, min=0.0,
                 help=_('Relative tolerance used to decide arc saturation '
                        'and work assignment feasibility.')),
    cfg.IntOpt('max_iterations_guard', default=500, min=1,
               help=_('Maximum number of probes a single binary search '
                      'may perform before the solver gives up.')),
    cfg.FloatOpt('makespan_tolerance', default=1e-9, min=0.0,
                 help=_('Termination gap of the makespan binary search, '
                        'relative to the makespan upper bound.')),
]

verify_opts = [
    cfg.FloatOpt('kkt_tolerance', default=1e-6, min=0.0,
                 help=_('Relative tolerance of the optimality certificate '
                        'speed and time comparisons.')),
    cfg.FloatOpt('feasibility_tolerance', default=1e-9, min=0.0,
                 help=_('Tolerance of the schedule feasibility check.')),
]

output_opts = [
    cfg.IntOpt('gantt_width', default=72, min=8,
               help=_('Number of terminal columns used to draw the time '
                      'axis of Gantt charts.')),
]

CONF = cfg.CONF
CONF.register_opts(solver_opts, group='solver')
CONF.register_opts(verify_opts, group='verify')
CONF.register_opts(output_opts, group='output')
logging.register_options(CONF)


def parse_args(args=None, usage=None, default_config_files=None,
               prog=None):
    CONF(args=args,
         project='speedsched',
         prog=prog,
         version=version.version_string,
         usage=usage,
         default_config_files=default_config_files or [],
         use_env=False)


def setup_logging():
    """Sets up logging so that stdout stays free for results."""
    CONF.set_override('use_stderr', True)
    logging.setup(CONF, 'speedsched')
