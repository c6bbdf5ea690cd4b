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

"""
Exceptions common to all speedsched modules
"""

from oslo_log import log as logging

from speedsched.i18n import _

LOG = logging.getLogger(__name__)

_FATAL_EXCEPTION_FORMAT_ERRORS = False


class SpeedschedException(Exception):
    """Base Exception class.

    To correctly use this class, inherit from it and define
    a 'msg_fmt' property. That message will get printf'd
    with the keyword arguments provided to the constructor.
    """
    msg_fmt = _("An unknown exception occurred")

    def __init__(self, message=None, **kwargs):
        self.kwargs = kwargs
        if message is None:
            try:
                message = self.msg_fmt % kwargs
            except Exception:
                if _FATAL_EXCEPTION_FORMAT_ERRORS:
                    raise
                LOG.exception('Exception in string format operation')
                message = self.msg_fmt
        self._error_string = message
        super(SpeedschedException, self).__init__(message)

    @property
    def code(self):
        return self.__class__.__name__

    @property
    def detail(self):
        return self._error_string

    def __str__(self):
        return self._error_string


class InvalidInput(SpeedschedException):
    """Problem data or user supplied values are not acceptable."""
    msg_fmt = _("Invalid input: %(reason)s")


class MalformedInput(InvalidInput):
    msg_fmt = _("Malformed input document %(source)s: %(reason)s")


class SolverInvariantError(SpeedschedException):
    """A structural property the algorithms rely on does not hold.

    Seeing one of these means a bug or a tolerance setting that is too
    loose for the instance scale, never a problem with the input.
    """
    msg_fmt = _("Internal invariant violated: %(reason)s")
