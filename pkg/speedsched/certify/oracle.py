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

"""Reference optima computed without the flow based solver."""

import collections
import math

import numpy as np
from oslo_log import log as logging
from scipy import optimize

from speedsched.certify import exceptions
from speedsched.engine import flownet
from speedsched.model import instance as model

LOG = logging.getLogger(__name__)

YDS = 'yds'
BRUTE = 'brute'

MAX_BRUTE_JOBS = 6
MAX_BRUTE_INTERVALS = 12
BRUTE_STARTS = 3

# Residual threshold of the explicit perturbed cut; well below any epsilon
# a caller would pick and well above round-off.
_CUT_THRESHOLD = 1e-12

# Relative interval overload an optimizer result may carry before repair.
_FEASIBILITY_SLACK = 1e-6


class OracleResult(object):
    def __init__(self, speeds, energy, method):
        self._speeds = collections.OrderedDict(sorted(speeds.items()))
        self._energy = energy
        self._method = method

    @property
    def speeds(self):
        return self._speeds

    @property
    def energy(self):
        return self._energy

    @property
    def method(self):
        return self._method

    def __repr__(self):
        return 'OracleResult({0}, energy={1!r})'.format(self._method,
                                                        self._energy)


def _result(speeds, jobs, alpha, method):
    energy = math.fsum(job.work * speeds[job.id] ** (alpha - 1)
                       for job in jobs)
    return OracleResult(speeds, energy, method)


def _densest_interval(jobs):
    """Interval [a, b] of maximum work density and the jobs inside it."""
    times = sorted(set(t for job in jobs for t in (job.release,
                                                   job.deadline)))
    best = None
    for a_index, a in enumerate(times):
        for b in times[a_index + 1:]:
            inside = [job for job in jobs
                      if a <= job.release and job.deadline <= b]
            if not inside:
                continue
            density = math.fsum(job.work for job in inside) / (b - a)
            if best is None or density > best[0]:
                best = (density, a, b, inside)
    return best


def _contract(time, a, b):
    if time <= a:
        return time
    if time >= b:
        return time - (b - a)
    return a


def yds_energy(jobs, alpha):
    """Single machine optimum by repeatedly peeling the densest interval.

    The jobs of the densest interval run at its density; the interval is
    then cut out of the time line and the rest is solved recursively.
    """
    remaining = list(jobs)
    speeds = {}
    rounds = 0
    while remaining:
        rounds += 1
        density, a, b, inside = _densest_interval(remaining)
        for job in inside:
            speeds[job.id] = density
        peeled = set(job.id for job in inside)
        remaining = [job._replace(release=_contract(job.release, a, b),
                                  deadline=_contract(job.deadline, a, b))
                     for job in remaining if job.id not in peeled]
    LOG.debug('YDS finished after {0} rounds'.format(rounds))
    return _result(speeds, jobs, alpha, YDS)


class _ConvexProgram(object):
    """Energy as a function of the per-interval times t_{i,j}.

    With T_i = sum_j t_{i,j} the energy of job i is w_i^alpha T_i^(1-alpha);
    the feasible set is 0 <= t_{i,j} <= |I_j| and
    sum_i t_{i,j} <= min(m, a_j) |I_j| for every interval.

    The program is solved in scaled units: times over the horizon, works
    over the largest work, each variable as a fraction u of its interval
    length and the energy relative to its value at the first start.
    Below the floor T_i < w_i |I|_min / (10 sum w) the energy continues
    along its tangent, which keeps it finite without moving the optimum.
    """

    def __init__(self, instance, grid):
        self.alpha = instance.alpha
        self.job_ids = sorted(job.id for job in instance.jobs)
        position = dict((job_id, k) for k, job_id in enumerate(self.job_ids))
        horizon = grid.breakpoints[-1] - grid.breakpoints[0]
        self.work_unit = max(job.work for job in instance.jobs)
        self.time_unit = horizon
        self.works = np.array([instance.job(job_id).work / self.work_unit
                               for job_id in self.job_ids])
        self.pairs = [(job_id, interval.index)
                      for interval in grid.intervals
                      for job_id in interval.alive]
        self.owner = np.array([position[job_id] for job_id, _ in self.pairs])
        lengths = dict((interval.index,
                        (interval.end - interval.start) / horizon)
                       for interval in grid.intervals)
        self.upper = np.array([lengths[index] for _, index in self.pairs])

        loaded = [interval for interval in grid.intervals if interval.alive]
        self.matrix = np.zeros((len(loaded), len(self.pairs)))
        self.capacity = np.zeros(len(loaded))
        row_of = dict((interval.index, row)
                      for row, interval in enumerate(loaded))
        for column, (_, index) in enumerate(self.pairs):
            self.matrix[row_of[index], column] = 1.0
        for row, interval in enumerate(loaded):
            self.capacity[row] = (min(instance.machines, len(interval.alive)) *
                                  lengths[interval.index])
        # rows in units of their capacity, columns in units of u
        self.rows = self.matrix * self.upper / self.capacity[:, None]
        self.share = np.array([
            min(1.0, instance.machines / float(len(grid[index].alive)))
            for _, index in self.pairs])

        shortest = min(lengths[i.index] for i in loaded)
        self.floor = self.works * shortest / (10.0 * self.works.sum())
        self.scale = 1.0
        self.scale = self.energy(self.share)

    def totals(self, u):
        return np.bincount(self.owner, weights=self.upper * u,
                           minlength=len(self.job_ids))

    def _terms(self, u):
        totals = self.totals(u)
        clamped = np.maximum(totals, self.floor)
        value = self.works ** self.alpha * clamped ** (1.0 - self.alpha)
        slope = ((1.0 - self.alpha) * self.works ** self.alpha *
                 clamped ** (-self.alpha))
        return value + slope * (totals - clamped), slope

    def energy(self, u):
        return float(np.sum(self._terms(u)[0])) / self.scale

    def gradient(self, u):
        return self._terms(u)[1][self.owner] * self.upper / self.scale

    def violation(self, u):
        """Largest overload of an interval relative to its capacity."""
        return max(0.0, float(np.max(self.rows.dot(u))) - 1.0)

    def repair(self, u):
        """Clips u and scales every overloaded interval down to capacity."""
        u = np.clip(u, 0.0, 1.0)
        load = self.rows.dot(u)
        factor = np.minimum(1.0, 1.0 / np.maximum(load, 1e-300))
        return u * factor[np.argmax(self.rows > 0, axis=0)]

    def speeds(self, u):
        totals = self.totals(u)
        unit = self.work_unit / self.time_unit
        return dict((job_id, self.works[k] / totals[k] * unit)
                    for k, job_id in enumerate(self.job_ids))

    def starts(self, count, seed=0):
        yield self.share
        rng = np.random.RandomState(seed)
        for _ in range(count - 1):
            yield self.share * rng.uniform(0.5, 1.0, size=self.share.shape)


def _slsqp(program, start, resolution):
    return optimize.minimize(
        program.energy, start, method='SLSQP', jac=program.gradient,
        bounds=optimize.Bounds(np.zeros_like(start), np.ones_like(start)),
        constraints=[{'type': 'ineq',
                      'fun': lambda u: 1.0 - program.rows.dot(u),
                      'jac': lambda u: -program.rows}],
        options={'ftol': resolution, 'maxiter': 1000})


def _trust_constr(program, start, resolution):
    return optimize.minimize(
        program.energy, start, method='trust-constr', jac=program.gradient,
        hess=optimize.BFGS(),
        bounds=optimize.Bounds(np.zeros_like(start), np.ones_like(start)),
        constraints=[optimize.LinearConstraint(
            program.rows, -np.inf, np.ones(len(program.rows)))],
        options={'gtol': resolution, 'xtol': resolution, 'maxiter': 5000})


def brute_force_energy(instance, resolution=1e-10):
    """Solves the convex program over per-interval times.

    SLSQP runs from several starts; trust-constr takes over when none of
    them ends inside the feasible set.
    """
    grid = model.build_interval_grid(instance.jobs, instance.machines)
    if (len(instance.jobs) > MAX_BRUTE_JOBS or
            len(grid) > MAX_BRUTE_INTERVALS):
        raise exceptions.InstanceTooLarge(
            jobs=len(instance.jobs), intervals=len(grid),
            max_jobs=MAX_BRUTE_JOBS, max_intervals=MAX_BRUTE_INTERVALS)

    program = _ConvexProgram(instance, grid)
    best = None
    attempts = [(_slsqp, start) for start in program.starts(BRUTE_STARTS)]
    attempts.append((_trust_constr, program.share))
    for method, start in attempts:
        if best is not None and method is _trust_constr:
            break
        result = method(program, start, resolution)
        u = np.clip(result.x, 0.0, 1.0)
        if (not np.all(np.isfinite(u)) or
                program.violation(u) > _FEASIBILITY_SLACK):
            LOG.debug('{0} ended outside the feasible set: {1}'.format(
                method.__name__.strip('_'), result.message))
            continue
        u = program.repair(u)
        value = program.energy(u)
        if best is None or value < best[0]:
            best = (value, u)
    if best is None:
        raise exceptions.OracleDidNotConverge(
            reason='every start ended outside the feasible set')
    return _result(program.speeds(best[1]), instance.jobs, instance.alpha,
                   BRUTE)


def perturbed_critical_jobs(grid, jobs, speed, epsilon, config=None):
    """Critical jobs read off the explicit perturbed network.

    At speed - epsilon the instance is infeasible; for epsilon below the
    gap to the next critical speed the minimum cut crosses every path
    x_i, y_j, t of a critical job exactly once and the source arc of
    every other job, so the critical jobs are the job nodes on the source
    side of that cut.
    """
    network = flownet.build_wap_network(grid, jobs, speed - epsilon, config)
    flow = flownet.max_flow(network)
    reaching = flownet.residual_reaching_sink(network, flow,
                                              threshold=_CUT_THRESHOLD)
    return sorted(job.id for job in jobs
                  if flownet.job_node(job.id) not in reaching)
