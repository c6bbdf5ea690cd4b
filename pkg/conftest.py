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

"""pytest collection wiring for testscenarios.

stestr applies scenarios through each module's ``load_tests``; pytest ignores
that hook, so expand every ``WithScenarios`` class into one subclass per
scenario here instead.
"""

import inspect

from _pytest import unittest as pytest_unittest
import testscenarios


def pytest_pycollect_makeitem(collector, name, obj):
    if not (inspect.isclass(obj) and
            issubclass(obj, testscenarios.WithScenarios) and
            getattr(obj, 'scenarios', None)):
        return None
    items = []
    for scenario_name, params in obj.scenarios:
        attrs = dict(params, scenarios=None)
        attrs['__module__'] = obj.__module__
        cls_name = '{0}[{1}]'.format(name, scenario_name)
        expanded = type(cls_name, (obj,), attrs)
        # pytest resolves a class node by name on its module.
        setattr(collector.obj, cls_name, expanded)
        items.append(pytest_unittest.UnitTestCase.from_parent(
            collector, name=cls_name, obj=expanded))
    return items
