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

import os

import numpy as np
from oslo_serialization import jsonutils

from speedsched.model import instance as model
from speedsched.model import load_utils

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURES_DIR, name)


def load_fixture(name):
    with open(fixture_path(name)) as stream:
        return jsonutils.loads(stream.read())


def fixture_instance(name):
    return load_utils.load_instance(fixture_path(name))


def make_instance(jobs, machines=1, alpha=2.0):
    """Instance from (work, release, deadline) triples, ids j1, j2, ..."""
    return model.validate_instance(model.Instance(
        [model.Job('j{0}'.format(k + 1), w, r, d)
         for k, (w, r, d) in enumerate(jobs)], machines, alpha))


def random_instance(rng, max_jobs=8, max_machines=1, max_work=10,
                    horizon=20, alphas=(2.0, 3.0)):
    """Random instance with integer works and integer times."""
    n = rng.randint(1, max_jobs + 1)
    jobs = []
    for k in range(n):
        release = int(rng.randint(0, horizon))
        deadline = int(rng.randint(release + 1, horizon + 1))
        work = int(rng.randint(1, max_work + 1))
        jobs.append(model.Job('j{0:03d}'.format(k + 1), float(work),
                              float(release), float(deadline)))
    machines = int(rng.randint(1, max_machines + 1))
    alpha = float(alphas[rng.randint(0, len(alphas))])
    return model.validate_instance(model.Instance(jobs, machines, alpha))


def random_instances(count, seed, **kwargs):
    rng = np.random.RandomState(seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]
