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

"""Independent checks of schedules and speed assignments.

Nothing in here calls the solver: feasibility is measured on the
segments, energy comes from the closed form and optimality is certified
by the five structural properties every optimal schedule has (and only
optimal schedules have) in terms of the per-interval times.
"""

import bisect
import collections
import itertools
import math

from oslo_log import log as logging

from speedsched.common import config
from speedsched.engine import exceptions
from speedsched.engine import timetable

CONF = config.CONF
LOG = logging.getLogger(__name__)

MACHINE_OVERLAP = 'machine_overlap'
PARALLEL_EXECUTION = 'parallel_execution'
SPAN_VIOLATION = 'span_violation'
INCOMPLETE_WORK = 'incomplete_work'
MACHINE_RANGE = 'machine_range'
UNKNOWN_JOB = 'unknown_job'
BAD_SEGMENT = 'bad_segment'

KKT_PROPERTIES = collections.OrderedDict([
    (1, 'constant_speed'),
    (2, 'idle_not_faster'),
    (3, 'full_not_slower'),
    (4, 'partial_equal_speed'),
    (5, 'underloaded_full'),
])


Violation = collections.namedtuple('Violation', 'kind job machine detail')


class FeasibilityVerdict(object):
    def __init__(self, violations, tolerance):
        self._violations = tuple(violations)
        self._tolerance = tolerance

    @property
    def passed(self):
        return not self._violations

    @property
    def violations(self):
        return self._violations

    @property
    def tolerance(self):
        return self._tolerance

    def kinds(self):
        return set(v.kind for v in self._violations)


class EnergyReport(object):
    def __init__(self, per_job, utilization=None):
        self._per_job = collections.OrderedDict(sorted(per_job.items()))
        self._total = math.fsum(self._per_job.values())
        self._utilization = collections.OrderedDict(
            sorted((utilization or {}).items()))

    @property
    def per_job(self):
        return self._per_job

    @property
    def total(self):
        return self._total

    @property
    def utilization(self):
        """Busy machine time over m * |I_j| per interval index."""
        return self._utilization


PropertyResult = collections.namedtuple(
    'PropertyResult', 'number name passed witness margin')


class KktVerdict(object):
    def __init__(self, results, tolerance):
        self._results = collections.OrderedDict(
            (result.number, result) for result in results)
        self._tolerance = tolerance

    @property
    def passed(self):
        return all(result.passed for result in self._results.values())

    @property
    def properties(self):
        return self._results

    @property
    def tolerance(self):
        return self._tolerance

    def failed(self):
        return [number for number, result in self._results.items()
                if not result.passed]

    def __getitem__(self, number):
        return self._results[number]


def _slack(value, tol):
    return tol * max(1.0, abs(value))


def _overlaps(segments, tol):
    ordered = sorted(segments, key=lambda s: (s.start, s.end))
    for first, second in zip(ordered, ordered[1:]):
        if second.start < first.end - _slack(first.end, tol):
            yield first, second


def check_feasibility(schedule, instance, tol=None):
    if tol is None:
        tol = CONF.verify.feasibility_tolerance
    violations = []
    jobs = dict((job.id, job) for job in instance.jobs)
    by_machine = collections.defaultdict(list)
    by_job = collections.defaultdict(list)

    for segment in schedule.segments:
        if segment.job not in jobs:
            violations.append(Violation(UNKNOWN_JOB, segment.job,
                                        segment.machine, None))
            continue
        if not (segment.end > segment.start and segment.speed > 0):
            violations.append(Violation(
                BAD_SEGMENT, segment.job, segment.machine,
                'empty interval or non-positive speed'))
            continue
        if not 1 <= segment.machine <= instance.machines:
            violations.append(Violation(
                MACHINE_RANGE, segment.job, segment.machine,
                'machine outside 1..{0}'.format(instance.machines)))
        job = jobs[segment.job]
        if (segment.start < job.release - _slack(job.release, tol) or
                segment.end > job.deadline + _slack(job.deadline, tol)):
            violations.append(Violation(
                SPAN_VIOLATION, segment.job, segment.machine,
                '[{0!r}, {1!r}] not inside [{2!r}, {3!r}]'.format(
                    segment.start, segment.end, job.release,
                    job.deadline)))
        by_machine[segment.machine].append(segment)
        by_job[segment.job].append(segment)

    for machine, segments in sorted(by_machine.items()):
        for first, second in _overlaps(segments, tol):
            violations.append(Violation(
                MACHINE_OVERLAP, second.job, machine,
                'overlaps job {0} at {1!r}'.format(first.job,
                                                   second.start)))
    for job_id, segments in sorted(by_job.items()):
        for first, second in _overlaps(segments, tol):
            violations.append(Violation(
                PARALLEL_EXECUTION, job_id, second.machine,
                'runs on machines {0} and {1} at {2!r}'.format(
                    first.machine, second.machine, second.start)))

    for job in sorted(instance.jobs, key=lambda j: j.id):
        done = math.fsum((s.end - s.start) * s.speed
                         for s in by_job.get(job.id, ()))
        if abs(done - job.work) > tol * job.work:
            violations.append(Violation(
                INCOMPLETE_WORK, job.id, None,
                'work {0!r} of {1!r} completed'.format(done, job.work)))

    verdict = FeasibilityVerdict(violations, tol)
    if not verdict.passed:
        LOG.debug('Schedule infeasible: {0}'.format(
            ', '.join(sorted(verdict.kinds()))))
    return verdict


def _speed_map(speeds):
    return getattr(speeds, 'speeds', speeds)


def energy_of(speeds, jobs, alpha, times=None):
    speeds = _speed_map(speeds)
    per_job = {}
    for job in jobs:
        speed = speeds.get(job.id)
        if speed is None or not speed > 0:
            raise exceptions.NonPositiveSpeed(speed=speed)
        per_job[job.id] = job.work * speed ** (alpha - 1)

    utilization = {}
    if times is not None:
        for interval in times.grid.intervals:
            capacity = interval.machines * (interval.end - interval.start)
            utilization[interval.index] = (
                times.interval_total(interval.index) / capacity)
    return EnergyReport(per_job, utilization)


def schedule_time_matrix(schedule, grid):
    """Measures t_{i,j} of a schedule on the given interval grid."""
    breakpoints = grid.breakpoints
    entries = collections.defaultdict(float)
    for segment in schedule.segments:
        first = max(bisect.bisect_right(breakpoints, segment.start) - 1, 0)
        for index in range(first, len(grid)):
            interval = grid[index]
            if interval.start >= segment.end:
                break
            overlap = (min(interval.end, segment.end) -
                       max(interval.start, segment.start))
            if overlap > 0:
                entries[segment.job, index] += overlap
    return timetable.TimeMatrix(grid, entries)


def schedule_speeds(schedule):
    """Per job speed as completed work over busy time."""
    busy = collections.defaultdict(list)
    work = collections.defaultdict(list)
    for segment in schedule.segments:
        busy[segment.job].append(segment.end - segment.start)
        work[segment.job].append((segment.end - segment.start) *
                                 segment.speed)
    return dict((job_id, math.fsum(work[job_id]) / math.fsum(durations))
                for job_id, durations in busy.items()
                if math.fsum(durations) > 0)


class _PropertyCheck(object):
    """Keeps the worst violation seen for one property."""

    def __init__(self, number):
        self.number = number
        self.witness = None
        self.margin = 0.0

    def violated(self, job_id, interval_index, margin):
        if self.witness is None or margin > self.margin:
            self.witness = (job_id, interval_index)
            self.margin = margin

    def result(self):
        return PropertyResult(self.number, KKT_PROPERTIES[self.number],
                              self.witness is None, self.witness,
                              self.margin)


def _faster(s_i, s_k, tol):
    """Relative excess of s_i over s_k beyond tolerance, else None."""
    scale = max(s_i, s_k)
    if s_i - s_k > tol * scale:
        return (s_i - s_k) / scale
    return None


def check_kkt_properties(instance, speeds, times, tol=None, segments=None):
    """Certifies the optimality conditions on per-interval times.

    :param instance: the problem instance
    :param speeds: SpeedAssignment or a mapping job id -> speed
    :param times: TimeMatrix on the full interval grid of the instance
    :param tol: relative tolerance for speed and |I_j| comparisons
    :param segments: optional schedule segments, whose individual speeds
                     are compared against the job speed (property 1)
    """
    if tol is None:
        tol = CONF.verify.kkt_tolerance
    speeds = _speed_map(speeds)
    checks = dict((number, _PropertyCheck(number))
                  for number in KKT_PROPERTIES)
    grid = times.grid

    for segment in segments or ():
        speed = speeds.get(segment.job)
        if speed is None:
            continue
        deviation = abs(segment.speed - speed) / max(speed, segment.speed)
        if deviation > tol:
            index = max(bisect.bisect_right(grid.breakpoints,
                                            segment.start) - 1, 0)
            checks[1].violated(segment.job, min(index, len(grid) - 1),
                               deviation)

    for interval in grid.intervals:
        length = interval.end - interval.start
        alive = [i for i in interval.alive if i in speeds]
        t = dict((job_id, times.time(job_id, interval.index))
                 for job_id in alive)
        idle = [i for i in alive if t[i] <= tol * length]
        full = [i for i in alive if t[i] >= length * (1.0 - tol)]
        running = [i for i in alive if i not in idle]
        short = [i for i in alive if i not in full]
        partial = [i for i in running if i not in full]

        for i, k in itertools.product(idle, running):
            margin = _faster(speeds[i], speeds[k], tol)
            if margin is not None:
                checks[2].violated(i, interval.index, margin)
        for i, k in itertools.product(full, short):
            margin = _faster(speeds[k], speeds[i], tol)
            if margin is not None:
                checks[3].violated(i, interval.index, margin)
        if partial:
            fastest = max(partial, key=lambda i: (speeds[i], i))
            slowest = min(partial, key=lambda i: (speeds[i], i))
            margin = _faster(speeds[fastest], speeds[slowest], tol)
            if margin is not None:
                checks[4].violated(fastest, interval.index, margin)
        if len(alive) <= instance.machines:
            for i in short:
                checks[5].violated(i, interval.index,
                                   (length - t[i]) / length)

    verdict = KktVerdict([checks[n].result() for n in KKT_PROPERTIES], tol)
    if not verdict.passed:
        LOG.debug('Optimality properties violated: {0}'.format(
            verdict.failed()))
    return verdict
