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

import numpy as np
import testscenarios

from speedsched.common import exception
from speedsched.engine import bal
from speedsched.engine import exceptions
from speedsched.engine import flownet
from speedsched.model import instance as model
from speedsched.tests.unit import base
from speedsched.tests.unit import utils

load_tests = testscenarios.load_tests_apply_scenarios


def _grid(instance):
    return model.build_interval_grid(instance.jobs, instance.machines)


def _scaled(instance, work=1.0, time=1.0):
    jobs = [job._replace(work=job.work * work, release=job.release * time,
                         deadline=job.deadline * time)
            for job in instance.jobs]
    return instance.replace(jobs=jobs)


class TestSpeedBounds(testscenarios.WithScenarios,
                      base.SpeedschedTestCase):

    scenarios = [
        ('common_span', dict(jobs=[(2, 0, 2), (2, 0, 2)], machines=1,
                             expected=(1.0, 2.0))),
        ('single_job', dict(jobs=[(4, 0, 2)], machines=2,
                            expected=(2.0, 2.0))),
        ('shared_machine', dict(jobs=[(3, 0, 1), (1, 0, 1)], machines=1,
                                expected=(3.0, 4.0))),
    ]

    def test_bounds(self):
        instance = utils.make_instance(self.jobs, machines=self.machines)
        self.assertEqual(self.expected,
                         bal.speed_bounds(_grid(instance), instance.jobs))


class TestFindCriticalSpeed(testscenarios.WithScenarios,
                            base.SpeedschedTestCase):

    scenarios = [
        ('shared_machine', dict(jobs=[(3, 0, 1), (1, 0, 1)], machines=1,
                                expected=4.0)),
        ('single_job', dict(jobs=[(4, 0, 2)], machines=2, expected=2.0)),
        ('dense_job', dict(jobs=[(6, 0, 1), (1, 0, 1)], machines=2,
                           expected=6.0)),
        ('common_span', dict(jobs=[(2, 0, 2), (2, 0, 2)], machines=1,
                             expected=2.0)),
    ]

    def test_critical_speed(self):
        instance = utils.make_instance(self.jobs, machines=self.machines)
        grid = _grid(instance)
        s_lb, s_ub = bal.speed_bounds(grid, instance.jobs)
        speed, flow = bal.find_critical_speed(grid, instance.jobs, s_lb, s_ub)
        self.assertRelativelyClose(self.expected, speed, 1e-9)
        self.assertTrue(flownet.is_saturating(flow.network, flow))


class TestCriticalSearchFailures(base.SpeedschedTestCase):

    def test_infeasible_upper_bound(self):
        instance = utils.fixture_instance('two_jobs.json')
        self.assertRaises(exceptions.InfeasibleAtUpperBound,
                          bal.find_critical_speed, _grid(instance),
                          instance.jobs, 1.0, 2.0)

    def test_unsaturated_flow(self):
        instance = utils.fixture_instance('two_jobs.json')
        grid = _grid(instance)
        flow = flownet.max_flow(
            flownet.build_wap_network(grid, instance.jobs, 5.0))
        self.assertRaises(exception.SolverInvariantError,
                          bal.find_critical_jobs, grid, instance.jobs, 5.0,
                          flow)


class TestFindCriticalJobs(base.SpeedschedTestCase):

    def _critical(self, instance):
        grid = _grid(instance)
        s_lb, s_ub = bal.speed_bounds(grid, instance.jobs)
        speed, flow = bal.find_critical_speed(grid, instance.jobs, s_lb, s_ub)
        critical, tight = bal.find_critical_jobs(grid, instance.jobs, speed,
                                                 flow)
        return [job.id for job in critical], tight

    def test_all_critical_in_tight_interval(self):
        critical, tight = self._critical(
            utils.fixture_instance('shared_machine.json'))
        self.assertEqual(['j1', 'j2'], critical)
        self.assertEqual(set([0]), tight)

    def test_dense_job_alone(self):
        critical, tight = self._critical(
            utils.fixture_instance('two_jobs.json'))
        self.assertEqual(['j1'], critical)
        self.assertEqual(set(), tight)


class TestRetireCriticalJobs(base.SpeedschedTestCase):

    def test_non_tight_interval_loses_machine(self):
        instance = utils.fixture_instance('two_jobs.json')
        grid = _grid(instance)
        speed, flow = bal.find_critical_speed(grid, instance.jobs, 6.0, 7.0)
        critical, tight = bal.find_critical_jobs(grid, instance.jobs, speed,
                                                 flow)
        updated = bal.retire_critical_jobs(grid, critical, tight, flow)
        self.assertEqual(1, updated[0].machines)
        self.assertEqual(('j2',), updated[0].alive)

    def test_tight_interval_closes(self):
        instance = utils.fixture_instance('shared_machine.json')
        grid = _grid(instance)
        speed, flow = bal.find_critical_speed(grid, instance.jobs, 3.0, 4.0)
        critical, tight = bal.find_critical_jobs(grid, instance.jobs, speed,
                                                 flow)
        updated = bal.retire_critical_jobs(grid, critical, tight, flow)
        self.assertEqual(0, updated[0].machines)
        self.assertEqual((), updated[0].alive)

    def test_partial_critical_job_is_rejected(self):
        instance = utils.fixture_instance('two_jobs.json')
        grid = _grid(instance)
        flow = flownet.max_flow(
            flownet.build_wap_network(grid, instance.jobs, 7.0))
        self.assertRaises(exceptions.RetirementInvariantViolated,
                          bal.retire_critical_jobs, grid,
                          [instance.job('j1')], set(), flow)


class TestBalSolve(base.SpeedschedTestCase):

    def test_two_jobs(self):
        speeds, trace = bal.bal_solve(utils.fixture_instance('two_jobs.json'))
        self.assertEqual({'j1': 6.0, 'j2': 1.0}, dict(speeds.speeds))
        self.assertEqual({'j1': 1, 'j2': 2}, speeds.iteration)
        self.assertEqual((6.0, 1.0), speeds.crit_speeds)
        self.assertEqual(2, len(trace))
        first, second = trace.steps
        self.assertEqual(('j1',), first.critical_jobs)
        self.assertEqual((), first.tight_intervals)
        self.assertEqual({0: (2, 1)}, first.machine_updates)
        self.assertEqual(('j2',), second.critical_jobs)
        self.assertEqual((0,), second.tight_intervals)
        self.assertEqual({0: (1, 0)}, second.machine_updates)

    def test_staggered_single_machine(self):
        speeds, trace = bal.bal_solve(utils.fixture_instance('staggered.yaml'))
        self.assertRelativelyClose(2.0, speeds.speed('j1'), 1e-9)
        self.assertRelativelyClose(0.5, speeds.speed('j2'), 1e-9)
        self.assertEqual(2, len(trace))

    def test_one_step_closes_and_decrements(self):
        instance = utils.make_instance(
            [(1.5, 0, 2), (0.75, 0, 1), (0.75, 0, 1)], machines=2)
        speeds, trace = bal.bal_solve(instance)
        self.assertEqual(1, len(trace))
        for job_id in ('j1', 'j2', 'j3'):
            self.assertRelativelyClose(1.0, speeds.speed(job_id), 1e-9)
        self.assertEqual((0,), trace.steps[0].tight_intervals)
        self.assertEqual({0: (2, 0), 1: (2, 1)},
                         trace.steps[0].machine_updates)

    def test_fewer_jobs_than_machines(self):
        instance = utils.make_instance([(2, 0, 4)] * 3, machines=3)
        speeds, trace = bal.bal_solve(instance)
        self.assertEqual(1, len(trace))
        self.assertEqual([0.5, 0.5, 0.5], list(speeds.speeds.values()))

    def test_work_scaling(self):
        instance = utils.fixture_instance('mixed_steps.json')
        speeds, _ = bal.bal_solve(instance)
        scaled, _ = bal.bal_solve(_scaled(instance, work=3.0))
        for job_id, speed in speeds.speeds.items():
            self.assertRelativelyClose(3 * speed, scaled.speed(job_id), 1e-9)

    def test_time_scaling(self):
        instance = utils.fixture_instance('mixed_steps.json')
        speeds, _ = bal.bal_solve(instance)
        scaled, _ = bal.bal_solve(_scaled(instance, time=2.0))
        for job_id, speed in speeds.speeds.items():
            self.assertRelativelyClose(speed / 2, scaled.speed(job_id), 1e-9)

    def test_trace_consistency(self):
        for instance in utils.random_instances(15, seed=21, max_jobs=8,
                                               max_machines=3):
            speeds, trace = bal.bal_solve(instance)
            self.assertEqual(sorted(job.id for job in instance.jobs),
                             list(speeds.speeds))
            crit = [step.s_crit for step in trace]
            for earlier, later in zip(crit, crit[1:]):
                self.assertLessEqual(later, earlier * (1 + 1e-9))
            retired = [job_id for step in trace
                       for job_id in step.critical_jobs]
            self.assertEqual(sorted(retired), sorted(set(retired)))
            for step in trace:
                for job_id in step.critical_jobs:
                    self.assertEqual(step.step, speeds.iteration[job_id])
                    self.assertEqual(step.s_crit, speeds.speed(job_id))
                for old, new in step.machine_updates.values():
                    self.assertLess(new, old)
                    self.assertGreaterEqual(new, 0)

    def test_speeds_at_least_density(self):
        rng = np.random.RandomState(2)
        for _ in range(10):
            instance = utils.random_instance(rng, max_jobs=8, max_machines=3)
            speeds, _ = bal.bal_solve(instance)
            for job in instance.jobs:
                self.assertGreaterEqual(speeds.speed(job.id) * (1 + 1e-9),
                                        job.density)

    def test_logs_steps(self):
        bal.bal_solve(utils.fixture_instance('two_jobs.json'))
        self.assertIn('Step 1: critical speed 6.0, retired j1',
                      self.logger.output)
