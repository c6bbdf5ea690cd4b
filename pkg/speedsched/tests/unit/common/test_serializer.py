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

from oslo_serialization import jsonutils

from speedsched.certify import oracle
from speedsched.certify import verify
from speedsched.common import exception
from speedsched.common import serializer
from speedsched.engine import bal
from speedsched.engine import timetable
from speedsched.model import instance as model
from speedsched.tests.unit import base
from speedsched.tests.unit import utils

Segment = timetable.Segment


class TestScheduleDocuments(base.SpeedschedTestCase):

    def setUp(self):
        super(TestScheduleDocuments, self).setUp()
        self.schedule = timetable.Schedule(
            [Segment('j1', 1, 0.0, 1.0, 6.0),
             Segment('j2', 2, 0.0, 1.0, 1.0)], 2.0)

    def test_schedule_to_dict(self):
        document = serializer.schedule_to_dict(self.schedule)
        self.assertEqual(['energy', 'makespan', 'segments'], list(document))
        self.assertEqual(37.0, document['energy'])
        self.assertEqual(1.0, document['makespan'])
        self.assertEqual(['job', 'machine', 'start', 'end', 'speed'],
                         list(document['segments'][0]))
        self.assertEqual({'job': 'j2', 'machine': 2, 'start': 0.0,
                          'end': 1.0, 'speed': 1.0},
                         dict(document['segments'][1]))

    def test_explicit_makespan(self):
        document = serializer.schedule_to_dict(self.schedule, makespan=1.5)
        self.assertEqual(1.5, document['makespan'])

    def test_empty_schedule(self):
        document = serializer.schedule_to_dict(timetable.Schedule([], 2.0))
        self.assertEqual(0.0, document['makespan'])
        self.assertEqual([], document['segments'])

    def test_reads_back_exactly(self):
        document = serializer.schedule_to_dict(timetable.Schedule(
            [Segment('j1', 1, 0.1, 0.7, 1 / 3.0)], 3.0))
        text = serializer.dumps(document)
        schedule = serializer.schedule_from_dict(jsonutils.loads(text), 3.0)
        self.assertEqual((Segment('j1', 1, 0.1, 0.7, 1 / 3.0),),
                         schedule.segments)

    def test_malformed_schedule(self):
        self.assertRaises(exception.MalformedInput,
                          serializer.schedule_from_dict,
                          {'segments': [{'job': 'j1'}]}, 2.0)

    def test_output_is_reproducible(self):
        instance = utils.fixture_instance('mixed_steps.json')
        texts = []
        for _ in range(2):
            speeds, _trace = bal.bal_solve(instance)
            schedule = timetable.build_schedule(instance, speeds)
            texts.append(serializer.dumps(
                serializer.schedule_to_dict(schedule)))
        self.assertEqual(texts[0], texts[1])


class TestTrace(base.SpeedschedTestCase):

    def test_two_jobs(self):
        _, trace = bal.bal_solve(utils.fixture_instance('two_jobs.json'))
        steps = serializer.trace_to_list(trace)
        self.assertEqual([
            {'step': 1, 's_crit': 6.0, 'critical_jobs': ['j1'],
             'tight_intervals': [], 'machine_updates': {'0': [2, 1]}},
            {'step': 2, 's_crit': 1.0, 'critical_jobs': ['j2'],
             'tight_intervals': [0], 'machine_updates': {'0': [1, 0]}},
        ], jsonutils.loads(serializer.dumps(steps)))


class TestVerdicts(base.SpeedschedTestCase):

    def test_verification(self):
        instance = utils.fixture_instance('two_jobs.json')
        schedule = serializer.schedule_from_dict(
            utils.load_fixture('bad_schedule.json'), instance.alpha)
        feasibility = verify.check_feasibility(schedule, instance)
        grid = model.build_interval_grid(instance.jobs, instance.machines)
        kkt = verify.check_kkt_properties(
            instance, verify.schedule_speeds(schedule),
            verify.schedule_time_matrix(schedule, grid))
        document = serializer.verification_to_dict(feasibility, kkt)
        self.assertFalse(document['passed'])
        self.assertEqual('parallel_execution',
                         document['feasibility']['violations'][0]['kind'])
        self.assertEqual(['1', '2', '3', '4', '5'],
                         list(document['kkt']['properties']))
        five = document['kkt']['properties']['5']
        self.assertEqual('underloaded_full', five['name'])
        self.assertEqual(['j2', 0], five['witness'])
        self.assertIsNone(document['kkt']['properties']['1']['witness'])

    def test_energy_report(self):
        instance = utils.fixture_instance('two_jobs.json')
        speeds, _ = bal.bal_solve(instance)
        times = timetable.assign_interval_times(instance, speeds)
        document = serializer.energy_report_to_dict(
            verify.energy_of(speeds, instance.jobs, instance.alpha, times))
        self.assertEqual({'total': 37.0, 'per_job': {'j1': 36.0, 'j2': 1.0},
                          'utilization': {'0': 1.0}},
                         jsonutils.loads(serializer.dumps(document)))

    def test_oracle(self):
        instance = utils.fixture_instance('shared_machine.json')
        document = serializer.oracle_to_dict(
            oracle.yds_energy(instance.jobs, instance.alpha))
        self.assertEqual(['method', 'energy', 'speeds'], list(document))
        self.assertEqual('yds', document['method'])

    def test_error(self):
        document = serializer.error_to_dict(
            exception.InvalidInput(reason='no jobs'))
        self.assertEqual({'error': 'InvalidInput',
                          'detail': 'Invalid input: no jobs'}, document)
        self.assertNotIn('\n', serializer.dumps(document, pretty=False))
