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


class EmptyInstance(e.InvalidInput):
    msg_fmt = _("Instance contains no jobs")


class NonPositiveWork(e.InvalidInput):
    msg_fmt = _("Job %(job)s has non-positive work %(work)r")


class EmptySpan(e.InvalidInput):
    msg_fmt = _("Job %(job)s has deadline %(deadline)r not after its "
                "release date %(release)r")


class BadAlpha(e.InvalidInput):
    msg_fmt = _("Power exponent alpha must be greater than 1, got %(alpha)r")


class BadMachines(e.InvalidInput):
    msg_fmt = _("Machine count must be a positive integer, got "
                "%(machines)r")


class DuplicateJobId(e.InvalidInput):
    msg_fmt = _("Job id %(job)s is used more than once")


class NonFiniteValue(e.InvalidInput):
    msg_fmt = _("Field %(field)s of job %(job)s is not a finite number")


class BadBudget(e.InvalidInput):
    msg_fmt = _("Energy budget must be positive, got %(budget)r")


class NegativeRelease(e.InvalidInput):
    msg_fmt = _("Job %(job)s is released at %(release)r; makespan "
                "problems measure time from 0")


class BadDeadline(e.InvalidInput):
    msg_fmt = _("Common deadline %(deadline)r does not exceed the release "
                "date %(release)r of job %(job)s")


class BadTolerance(e.InvalidInput):
    msg_fmt = _("Tolerance %(name)s must be positive, got %(value)r")
