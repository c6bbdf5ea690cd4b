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

import copy

import speedsched.common.config


# List of *all* options of speedsched.
# Any new option list or option needs to be registered here.
_opt_lists = [
    ('solver', speedsched.common.config.solver_opts),
    ('verify', speedsched.common.config.verify_opts),
    ('output', speedsched.common.config.output_opts),
]


def list_opts():
    """Return a list of oslo.config options available in speedsched.

    Each element of the list is a tuple. The first element is the name of the
    group under which the list of elements in the second element will be
    registered.

    This function is also discoverable via the 'speedsched' entry point
    under the 'oslo.config.opts' namespace.

    :returns: a list of (group_name, opts) tuples
    """
    return [(g, copy.deepcopy(o)) for g, o in _opt_lists]
