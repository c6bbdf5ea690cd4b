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

"""Energy optimal speeds by repeated critical speed searches.

Every step lowers a common speed for all unassigned jobs until the work
assignment instance becomes critical, fixes the jobs that cannot go any
slower and hands their machine time over: fully used intervals are
closed, every other interval loses one machine per retired alive job.
"""

import collections
import math

from oslo_log import log as logging
from oslo_utils import timeutils

from speedsched.common import exception
from speedsched.engine import exceptions
from speedsched.engine import flownet
from speedsched.model import instance as model

LOG = logging.getLogger(__name__)


class SpeedAssignment(object):
    def __init__(self, speeds, iteration, crit_speeds):
        self._speeds = collections.OrderedDict(sorted(speeds.items()))
        self._iteration = dict(iteration)
        self._crit_speeds = tuple(crit_speeds)

    @property
    def speeds(self):
        return self._speeds

    @property
    def iteration(self):
        return self._iteration

    @property
    def crit_speeds(self):
        return self._crit_speeds

    def speed(self, job_id):
        return self._speeds[job_id]

    def __len__(self):
        return len(self._speeds)

    def __repr__(self):
        return 'SpeedAssignment({0!r})'.format(dict(self._speeds))


BalStep = collections.namedtuple(
    'BalStep', 'step s_crit critical_jobs tight_intervals machine_updates')


class BalTrace(object):
    def __init__(self):
        self._steps = []

    @property
    def steps(self):
        return tuple(self._steps)

    def record(self, s_crit, critical_jobs, tight_intervals,
               machine_updates):
        step = BalStep(len(self._steps) + 1, s_crit, tuple(critical_jobs),
                       tuple(sorted(tight_intervals)), dict(machine_updates))
        self._steps.append(step)
        return step

    def __len__(self):
        return len(self._steps)

    def __iter__(self):
        return iter(self._steps)


def speed_bounds(grid, jobs):
    s_lb = max(model.job_density(job) for job in jobs)
    works = dict((job.id, job.work) for job in jobs)
    s_ub = s_lb
    for interval in grid.active_intervals():
        load = math.fsum(works[job_id] for job_id in interval.alive
                         if job_id in works)
        s_ub = max(s_ub, load / model.IntervalGrid.length(interval))
    return s_lb, s_ub


def _cut_bound(network, flow):
    """Smallest speed the minimum cut of an infeasible probe allows.

    With X the source side, feasibility at v needs
    sum(w_i / v for x_i in X) <= capacity of the other cut arcs.
    """
    source_side = flownet.minimum_cut_source_side(network, flow)
    work = math.fsum(job.work for job in network.jobs
                     if flownet.job_node(job.id) in source_side)
    rest = math.fsum(network.capacity(arc)
                     for arc in flownet.cut_arcs(network, source_side)
                     if network.tail(arc) != flownet.SOURCE)
    if work <= 0:
        return None
    if rest <= 0:
        return float('inf')
    return work / rest


def find_critical_speed(grid, jobs, s_lb, s_ub, config=None, tolerance=None):
    """Minimum common speed at which the work assignment is feasible.

    Bisection on [s_lb, s_ub] keeping the feasible endpoint; the minimum
    cut of every infeasible probe tightens the lower end (and that bound
    is probed next), which typically lands on the critical speed after a
    handful of max flow computations.
    """
    config = config or model.SolverConfig.from_conf()
    if tolerance is None:
        tolerance = config.speed_tolerance * s_ub

    network = flownet.build_wap_network(grid, jobs, s_ub, config)
    hi, hi_flow = s_ub, flownet.max_flow(network)
    if not flownet.is_saturating(network, hi_flow):
        raise exceptions.InfeasibleAtUpperBound(
            speed=s_ub, value=hi_flow.value, demand=network.demand)

    lo = min(s_lb, hi)
    candidate = lo
    probes = 0
    while hi - lo > tolerance:
        probes += 1
        if probes > config.max_iterations_guard:
            raise exceptions.IterationGuardExceeded(
                search='Critical speed search',
                limit=config.max_iterations_guard)
        speed = candidate if candidate is not None else (lo + hi) / 2.0
        candidate = None
        probe = network.with_speed(speed)
        flow = flownet.max_flow(probe)
        if flownet.is_saturating(probe, flow):
            hi, hi_flow = speed, flow
            LOG.debug('Speed {0!r} feasible'.format(speed))
            continue
        lo = max(lo, speed)
        bound = _cut_bound(probe, flow)
        LOG.debug('Speed {0!r} infeasible, cut bound {1!r}'.format(
            speed, bound))
        if bound is not None and bound > lo:
            lo = min(bound, hi)
            if lo < hi:
                candidate = lo
    LOG.debug('Critical speed {0!r} after {1} probes'.format(hi, probes))
    return hi, hi_flow


def find_critical_jobs(grid, jobs, s_crit, flow):
    """Critical jobs and tight intervals of a critical instance.

    Both are read off the minimum cut closest to the sink: a job is
    critical iff x_i has no residual path to t, an interval is tight iff
    y_j has none.
    """
    network = flow.network
    if not flownet.is_saturating(network, flow):
        raise exception.SolverInvariantError(
            reason='flow at speed {0!r} does not carry the whole demand'
            .format(s_crit))
    reaching = flownet.residual_reaching_sink(network, flow)
    critical = [job for job in sorted(jobs, key=lambda j: j.id)
                if flownet.job_node(job.id) not in reaching]
    tight = set(interval.index for interval in network.intervals
                if flownet.interval_node(interval.index) not in reaching)
    if not critical:
        raise exceptions.NoCriticalJobFound(speed=s_crit)
    return critical, tight


def retire_critical_jobs(grid, critical_jobs, tight_intervals, flow):
    network = flow.network
    critical_ids = frozenset(job.id for job in critical_jobs)
    machines = {}
    for interval in grid.intervals:
        if interval.machines == 0:
            continue
        retiring = [job_id for job_id in interval.alive
                    if job_id in critical_ids]
        if interval.index in tight_intervals:
            machines[interval.index] = 0
            continue
        if not retiring:
            continue
        length = model.IntervalGrid.length(interval)
        for job_id in retiring:
            time = flow.job_time(job_id, interval.index)
            if abs(time - length) > network.tolerance * max(1.0, length):
                raise exceptions.RetirementInvariantViolated(
                    job=job_id, time=time, length=length,
                    interval=interval.index)
        left = interval.machines - len(retiring)
        if left < 0:
            raise exceptions.NegativeCapacity(interval=interval.index,
                                              machines=left)
        machines[interval.index] = left
    return grid.with_updates(critical_ids, machines)


def _orphans(grid, jobs):
    open_jobs = set()
    for interval in grid.active_intervals():
        open_jobs.update(interval.alive)
    return [job.id for job in jobs if job.id not in open_jobs]


def bal_solve(instance, config=None):
    config = config or model.SolverConfig.from_conf()
    watch = timeutils.StopWatch()
    watch.start()

    grid = model.build_interval_grid(instance.jobs, instance.machines)
    remaining = sorted(instance.jobs, key=lambda j: j.id)
    s_lb, s_ub = speed_bounds(grid, remaining)
    tolerance = config.speed_tolerance * s_ub

    speeds, iteration, crit_speeds = {}, {}, []
    trace = BalTrace()
    while remaining:
        if len(trace) >= len(instance.jobs):
            raise exceptions.IterationGuardExceeded(
                search='BAL', limit=len(instance.jobs))
        orphans = _orphans(grid, remaining)
        if orphans:
            raise exception.SolverInvariantError(
                reason='jobs {0} have no machine time left'.format(orphans))

        s_crit, flow = find_critical_speed(grid, remaining, s_lb, s_ub,
                                           config, tolerance=tolerance)
        critical, tight = find_critical_jobs(grid, remaining, s_crit, flow)
        updated = retire_critical_jobs(grid, critical, tight, flow)
        updates = dict((old.index, (old.machines, new.machines))
                       for old, new in zip(grid.intervals, updated.intervals)
                       if old.machines != new.machines)
        step = trace.record(s_crit, [job.id for job in critical], tight,
                            updates)
        LOG.info('Step {0}: critical speed {1!r}, retired {2}'.format(
            step.step, s_crit, ', '.join(str(j) for j in
                                         step.critical_jobs)))

        for job in critical:
            speeds[job.id] = s_crit
            iteration[job.id] = step.step
        crit_speeds.append(s_crit)

        retired = frozenset(step.critical_jobs)
        remaining = [job for job in remaining if job.id not in retired]
        grid = updated
        if remaining:
            s_ub = s_crit
            s_lb = max(model.job_density(job) for job in remaining)

    LOG.info('Assigned speeds to {0} jobs in {1} steps ({2:.3f}s)'.format(
        len(speeds), len(trace), watch.elapsed()))
    return SpeedAssignment(speeds, iteration, crit_speeds), trace
