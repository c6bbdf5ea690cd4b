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

import bisect
import collections
import math

from oslo_log import log as logging

from speedsched.common import config
from speedsched.model import exceptions

CONF = config.CONF
LOG = logging.getLogger(__name__)


class Job(collections.namedtuple('Job', 'id work release deadline')):
    """A job with a work amount that must run inside [release, deadline]."""
    __slots__ = ()

    @property
    def span(self):
        return self.release, self.deadline

    @property
    def density(self):
        return job_density(self)


class Instance(object):
    def __init__(self, jobs, machines, alpha):
        self._jobs = tuple(jobs)
        self._machines = machines
        self._alpha = alpha
        self._index = dict((job.id, job) for job in self._jobs)

    @property
    def jobs(self):
        return self._jobs

    @property
    def machines(self):
        return self._machines

    @property
    def alpha(self):
        return self._alpha

    @property
    def total_work(self):
        return math.fsum(job.work for job in self._jobs)

    def job(self, job_id):
        return self._index[job_id]

    def replace(self, jobs=None, machines=None, alpha=None):
        return Instance(self._jobs if jobs is None else jobs,
                        self._machines if machines is None else machines,
                        self._alpha if alpha is None else alpha)

    def __repr__(self):
        return 'Instance(n={0}, machines={1}, alpha={2!r})'.format(
            len(self._jobs), self._machines, self._alpha)


Interval = collections.namedtuple(
    'Interval', 'index start end alive machines')


class IntervalGrid(object):
    """Breakpoint decomposition of the time horizon.

    Within one interval the set of alive jobs is constant. Each interval
    carries the number of machines still available to the jobs that have
    not been assigned a speed yet.
    """

    def __init__(self, breakpoints, intervals):
        self._breakpoints = tuple(breakpoints)
        self._intervals = tuple(intervals)
        self._job_intervals = collections.defaultdict(list)
        for interval in self._intervals:
            for job_id in interval.alive:
                self._job_intervals[job_id].append(interval.index)

    @property
    def breakpoints(self):
        return self._breakpoints

    @property
    def intervals(self):
        return self._intervals

    def __len__(self):
        return len(self._intervals)

    def __getitem__(self, index):
        return self._intervals[index]

    @staticmethod
    def length(interval):
        return interval.end - interval.start

    def intervals_of(self, job_id):
        """Indices of the intervals the job is alive in."""
        return tuple(self._job_intervals.get(job_id, ()))

    def active_intervals(self):
        """Intervals that still offer machine time to some alive job."""
        return [interval for interval in self._intervals
                if interval.machines > 0 and interval.alive]

    def with_updates(self, retired, machines):
        """Returns a grid without the retired jobs and with new m_j values.

        :param retired: iterable of job ids to remove from all alive sets
        :param machines: dict interval index -> new available machines
        """
        retired = frozenset(retired)
        intervals = []
        for interval in self._intervals:
            alive = tuple(job_id for job_id in interval.alive
                          if job_id not in retired)
            intervals.append(interval._replace(
                alive=alive,
                machines=machines.get(interval.index, interval.machines)))
        return IntervalGrid(self._breakpoints, intervals)


class SolverConfig(object):
    """Numerical parameters of the solver, immutable once built."""

    def __init__(self, speed_tolerance=1e-12, flow_tolerance=1e-9,
                 max_iterations_guard=500, makespan_tolerance=1e-9):
        for name, value in (('speed_tolerance', speed_tolerance),
                            ('flow_tolerance', flow_tolerance),
                            ('makespan_tolerance', makespan_tolerance)):
            if not value > 0:
                raise exceptions.BadTolerance(name=name, value=value)
        if max_iterations_guard < 1:
            raise exceptions.BadTolerance(name='max_iterations_guard',
                                          value=max_iterations_guard)
        self._speed_tolerance = float(speed_tolerance)
        self._flow_tolerance = float(flow_tolerance)
        self._max_iterations_guard = int(max_iterations_guard)
        self._makespan_tolerance = float(makespan_tolerance)

    @classmethod
    def from_conf(cls, conf=None, **overrides):
        conf = conf or CONF
        values = {
            'speed_tolerance': conf.solver.speed_tolerance,
            'flow_tolerance': conf.solver.flow_tolerance,
            'max_iterations_guard': conf.solver.max_iterations_guard,
            'makespan_tolerance': conf.solver.makespan_tolerance,
        }
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**values)

    @property
    def speed_tolerance(self):
        return self._speed_tolerance

    @property
    def flow_tolerance(self):
        return self._flow_tolerance

    @property
    def max_iterations_guard(self):
        return self._max_iterations_guard

    @property
    def makespan_tolerance(self):
        return self._makespan_tolerance

    def saturated(self, capacity, flow):
        return capacity - flow <= self._flow_tolerance * max(1.0, capacity)

    def __repr__(self):
        return ('SolverConfig(speed_tolerance={0!r}, flow_tolerance={1!r}, '
                'max_iterations_guard={2!r}, makespan_tolerance={3!r})'
                .format(self._speed_tolerance, self._flow_tolerance,
                        self._max_iterations_guard,
                        self._makespan_tolerance))


def _is_finite_number(value):
    return (isinstance(value, (int, float)) and not isinstance(value, bool)
            and math.isfinite(value))


def validate_instance(raw):
    if not raw.jobs:
        raise exceptions.EmptyInstance()
    if (isinstance(raw.machines, bool) or not isinstance(raw.machines, int)
            or raw.machines < 1):
        raise exceptions.BadMachines(machines=raw.machines)
    if not _is_finite_number(raw.alpha) or raw.alpha <= 1:
        raise exceptions.BadAlpha(alpha=raw.alpha)

    seen = set()
    for job in raw.jobs:
        for field in ('work', 'release', 'deadline'):
            if not _is_finite_number(getattr(job, field)):
                raise exceptions.NonFiniteValue(job=job.id, field=field)
        if job.work <= 0:
            raise exceptions.NonPositiveWork(job=job.id, work=job.work)
        if job.deadline <= job.release:
            raise exceptions.EmptySpan(job=job.id, release=job.release,
                                       deadline=job.deadline)
        if job.id in seen:
            raise exceptions.DuplicateJobId(job=job.id)
        seen.add(job.id)
    return raw


def build_interval_grid(jobs, machines):
    breakpoints = sorted(set(job.release for job in jobs) |
                         set(job.deadline for job in jobs))
    alive = [[] for _ in range(max(len(breakpoints) - 1, 0))]
    for job in sorted(jobs, key=lambda j: j.id):
        first = bisect.bisect_left(breakpoints, job.release)
        last = bisect.bisect_left(breakpoints, job.deadline)
        for index in range(first, last):
            alive[index].append(job.id)

    intervals = [Interval(index, breakpoints[index], breakpoints[index + 1],
                          tuple(alive[index]), machines)
                 for index in range(len(alive))]
    LOG.debug('Built interval grid with {0} breakpoints for {1} jobs'
              .format(len(breakpoints), len(jobs)))
    return IntervalGrid(breakpoints, intervals)


def job_density(job):
    return job.work / (job.deadline - job.release)
