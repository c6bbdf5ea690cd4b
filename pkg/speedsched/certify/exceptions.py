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


class InstanceTooLarge(e.InvalidInput):
    msg_fmt = _("Instance with %(jobs)d jobs and %(intervals)d intervals "
                "exceeds the brute force limit of %(max_jobs)d jobs and "
                "%(max_intervals)d intervals")


class SingleMachineOnly(e.InvalidInput):
    msg_fmt = _("The YDS oracle needs a single machine, the instance has "
                "%(machines)d")


class OracleDidNotConverge(e.SolverInvariantError):
    msg_fmt = _("Convex program oracle found no feasible optimum: "
                "%(reason)s")
