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

"""Minimum makespan under an energy budget.

The smallest common deadline X whose minimum energy E*(X) fits into the
budget is found by bisection; E*(X) is the energy of the BAL solution of
the instance in which every job gets deadline X.
"""

import math

from oslo_log import log as logging
from oslo_utils import timeutils

from speedsched.engine import bal
from speedsched.engine import exceptions
from speedsched.engine import timetable
from speedsched.model import exceptions as model_exceptions
from speedsched.model import instance as model
from speedsched.model import load_utils
from speedsched.model import schemas

LOG = logging.getLogger(__name__)


class EnergyBudgetProblem(object):
    def __init__(self, jobs, machines, alpha, budget):
        self._jobs = tuple(jobs)
        self._machines = machines
        self._alpha = alpha
        self._budget = budget

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
    def budget(self):
        return self._budget

    @property
    def total_work(self):
        return math.fsum(job.work for job in self._jobs)

    @property
    def max_release(self):
        return max(job.release for job in self._jobs)

    def with_deadline(self, deadline):
        """The deadline scheduling instance with common deadline X."""
        for job in self._jobs:
            if not deadline > job.release:
                raise model_exceptions.BadDeadline(
                    deadline=deadline, release=job.release, job=job.id)
        jobs = [job._replace(deadline=deadline) for job in self._jobs]
        return model.validate_instance(
            model.Instance(jobs, self._machines, self._alpha))

    def __repr__(self):
        return ('EnergyBudgetProblem(n={0}, machines={1}, alpha={2!r}, '
                'budget={3!r})'.format(len(self._jobs), self._machines,
                                       self._alpha, self._budget))


def validate_problem(problem):
    budget = problem.budget
    if (isinstance(budget, bool) or not isinstance(budget, (int, float))
            or not math.isfinite(budget) or budget <= 0):
        raise model_exceptions.BadBudget(budget=budget)
    # Deadlines are irrelevant here; a unit span past every release lets
    # the instance validation check everything else.
    releases = [job.release for job in problem.jobs
                if isinstance(job.release, (int, float))
                and math.isfinite(job.release)]
    deadline = max(releases) + 1.0 if releases else 1.0
    jobs = [job._replace(deadline=deadline) for job in problem.jobs]
    model.validate_instance(
        model.Instance(jobs, problem.machines, problem.alpha))
    for job in problem.jobs:
        if job.release < 0:
            raise model_exceptions.NegativeRelease(job=job.id,
                                                   release=job.release)
    return problem


def makespan_bounds(problem):
    """Bracket [X_LB, X_UB] of the optimal makespan.

    Running the total work W within time c = (W^alpha / E)^(1/(alpha-1))
    on one machine spends exactly the budget, which gives
    X_UB = r_max + c; spreading W evenly over all machines gives
    X_LB = c / m.
    """
    alpha = problem.alpha
    span = math.exp((alpha * math.log(problem.total_work) -
                     math.log(problem.budget)) / (alpha - 1.0))
    return span / problem.machines, problem.max_release + span


def min_energy_for_makespan(problem, makespan, config=None):
    instance = problem.with_deadline(makespan)
    speeds, _trace = bal.bal_solve(instance, config)
    schedule = timetable.build_schedule(instance, speeds, config)
    energy = math.fsum(job.work * speeds.speed(job.id) ** (problem.alpha - 1)
                       for job in instance.jobs)
    return energy, speeds, schedule


def mbal_solve(problem, config=None):
    config = config or model.SolverConfig.from_conf()
    watch = timeutils.StopWatch()
    watch.start()

    x_lb, x_ub = makespan_bounds(problem)
    budget = problem.budget * (1.0 + config.flow_tolerance)
    tolerance = config.makespan_tolerance * x_ub

    hi = x_ub
    energy, _speeds, schedule = min_energy_for_makespan(problem, hi, config)
    if energy > budget:
        LOG.warning('Energy {0!r} at the makespan upper bound {1!r} exceeds '
                    'the budget {2!r}'.format(energy, hi, problem.budget))
    lo = max(x_lb, problem.max_release)

    probes = 0
    while hi - lo > tolerance:
        probes += 1
        if probes > config.max_iterations_guard:
            raise exceptions.IterationGuardExceeded(
                search='Makespan search', limit=config.max_iterations_guard)
        middle = (lo + hi) / 2.0
        energy, _speeds, candidate = min_energy_for_makespan(
            problem, middle, config)
        LOG.debug('Makespan {0!r} needs energy {1!r}'.format(middle, energy))
        if energy <= budget:
            hi, schedule = middle, candidate
        else:
            lo = middle

    LOG.info('Makespan {0!r} within budget {1!r} after {2} probes '
             '({3:.3f}s)'.format(hi, problem.budget, probes, watch.elapsed()))
    return hi, schedule


def budget_problem_from_document(document, alpha=None, machines=None,
                                 energy=None):
    load_utils.validate_document(document, schemas.BUDGET_INSTANCE_SCHEMA)
    jobs = [model.Job(item['id'], item['work'], item['release'], None)
            for item in document['jobs']]
    if energy is None:
        energy = document.get('energy')
    problem = EnergyBudgetProblem(
        jobs,
        document['machines'] if machines is None else machines,
        document['alpha'] if alpha is None else alpha,
        energy)
    return validate_problem(problem)


def load_budget_problem(path, alpha=None, machines=None, energy=None):
    document = load_utils.load_document(path, schemas.BUDGET_INSTANCE_SCHEMA)
    return budget_problem_from_document(document, alpha=alpha,
                                        machines=machines, energy=energy)
