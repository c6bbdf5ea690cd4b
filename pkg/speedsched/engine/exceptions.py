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

from speedsched.common import exception as e
from speedsched.i18n import _


class NonPositiveSpeed(e.InvalidInput):
    msg_fmt = _("Speed must be positive, got %(speed)r")


class UnknownNode(e.SolverInvariantError):
    msg_fmt = _("Node %(node)r is not part of the flow network")


class FlowNotMaximum(e.SolverInvariantError):
    msg_fmt = _("The sink is reachable in the residual graph, the flow of "
                "value %(value)r is not maximum")


class InfeasibleAtUpperBound(e.SolverInvariantError):
    msg_fmt = _("Work assignment is infeasible at the upper speed bound "
                "%(speed)r (flow %(value)r of %(demand)r)")


class NoCriticalJobFound(e.SolverInvariantError):
    msg_fmt = _("No critical job found at speed %(speed)r; the flow "
                "tolerance is too loose for the instance scale")


class NegativeCapacity(e.SolverInvariantError):
    msg_fmt = _("Interval %(interval)s would be left with %(machines)r "
                "machines")


class RetirementInvariantViolated(e.SolverInvariantError):
    msg_fmt = _("Critical job %(job)s runs %(time)r of the %(length)r long "
                "non-tight interval %(interval)s")


class IterationGuardExceeded(e.SolverInvariantError):
    msg_fmt = _("%(search)s did not converge within %(limit)d iterations")


class SchedulingError(e.SolverInvariantError):
    msg_fmt = _("Unable to build a timetable: %(reason)s")


class InfeasibleSpeeds(SchedulingError):
    msg_fmt = _("Speeds admit no feasible timetable: processing time "
                "%(value)r of %(demand)r fits")


class OverfullInterval(SchedulingError):
    msg_fmt = _("Interval [%(start)r, %(end)r] holds %(total)r units of "
                "time on %(machines)d machines")


class OversizeJobTime(SchedulingError):
    msg_fmt = _("Job %(job)s needs %(time)r units of time inside an "
                "interval of length %(length)r")
