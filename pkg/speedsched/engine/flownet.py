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

"""Work assignment networks and their maximum flows.

A work assignment instance (jobs, intervals with available machine counts
and a common speed v) maps to a four layer network::

    s --w_i/v--> x_i --|I_j|--> y_j --m_j*|I_j|--> t

The instance is feasible iff the maximum flow saturates every source arc;
the flow on (x_i, y_j) is then the time job i runs inside interval j.
"""

import collections
import math

from oslo_log import log as logging

from speedsched.common import consts
from speedsched.engine import exceptions
from speedsched.model import instance as model

LOG = logging.getLogger(__name__)

SOURCE = consts.SOURCE
SINK = consts.SINK

# Residual capacity below this fraction of the arc capacity is treated as
# zero while augmenting; it only absorbs floating point round-off.
_AUGMENT_EPSILON = 1e-14


def job_node(job_id):
    return 'x', job_id


def interval_node(index):
    return 'y', index


def node_label(node):
    if node in (SOURCE, SINK):
        return node
    return '{0}:{1}'.format(*node)


class FlowNetwork(object):
    """Layered network with deterministic arc order.

    Arcs are ordered source arcs (by job id), middle arcs (by job id, then
    interval index) and sink arcs (by interval index).
    """

    def __init__(self, jobs, intervals, demands, speed=None, tolerance=1e-9):
        self._jobs = tuple(sorted(jobs, key=lambda j: j.id))
        self._intervals = tuple(intervals)
        self._speed = speed
        self._tolerance = tolerance

        self._nodes = [SOURCE]
        self._nodes.extend(job_node(job.id) for job in self._jobs)
        self._nodes.extend(interval_node(i.index) for i in self._intervals)
        self._nodes.append(SINK)
        self._index = dict((node, k) for k, node in enumerate(self._nodes))

        tails, heads, capacities = [], [], []

        def add_arc(tail, head, capacity):
            tails.append(self._index[tail])
            heads.append(self._index[head])
            capacities.append(float(capacity))

        self._job_arcs = collections.OrderedDict()
        for job in self._jobs:
            self._job_arcs[job.id] = len(tails)
            add_arc(SOURCE, job_node(job.id), demands[job.id])

        job_ids = frozenset(self._job_arcs)
        self._middle_arcs = collections.OrderedDict()
        by_job = collections.defaultdict(list)
        for interval in self._intervals:
            for job_id in interval.alive:
                if job_id in job_ids:
                    by_job[job_id].append(interval)
        for job in self._jobs:
            for interval in by_job[job.id]:
                self._middle_arcs[job.id, interval.index] = len(tails)
                add_arc(job_node(job.id), interval_node(interval.index),
                        model.IntervalGrid.length(interval))

        self._sink_arcs = collections.OrderedDict()
        for interval in self._intervals:
            self._sink_arcs[interval.index] = len(tails)
            add_arc(interval_node(interval.index), SINK,
                    interval.machines * model.IntervalGrid.length(interval))

        self._tails = tails
        self._heads = heads
        self._capacities = capacities
        self._adjacency = [[] for _ in self._nodes]
        self._incoming = [[] for _ in self._nodes]
        for arc, (tail, head) in enumerate(zip(tails, heads)):
            self._adjacency[tail].append(arc)
            self._incoming[head].append(arc)

    @property
    def speed(self):
        return self._speed

    @property
    def tolerance(self):
        return self._tolerance

    @property
    def jobs(self):
        return self._jobs

    @property
    def intervals(self):
        return self._intervals

    @property
    def nodes(self):
        return tuple(self._nodes)

    @property
    def arcs(self):
        """Tuples (tail node, head node, capacity) in arc order."""
        return tuple((self._nodes[t], self._nodes[h], c) for t, h, c in
                     zip(self._tails, self._heads, self._capacities))

    @property
    def demand(self):
        return math.fsum(self._capacities[a]
                         for a in self._job_arcs.values())

    def capacity(self, arc):
        return self._capacities[arc]

    def tail(self, arc):
        return self._nodes[self._tails[arc]]

    def head(self, arc):
        return self._nodes[self._heads[arc]]

    def job_arc(self, job_id):
        return self._job_arcs[job_id]

    def middle_arc(self, job_id, interval_index):
        return self._middle_arcs.get((job_id, interval_index))

    def middle_arcs(self):
        return self._middle_arcs.items()

    def sink_arc(self, interval_index):
        return self._sink_arcs[interval_index]

    def node_id(self, node):
        try:
            return self._index[node]
        except (KeyError, TypeError):
            raise exceptions.UnknownNode(node=node)

    def with_speed(self, speed):
        """Same topology, source capacities recomputed for a new speed."""
        if not speed > 0:
            raise exceptions.NonPositiveSpeed(speed=speed)
        network = object.__new__(FlowNetwork)
        network.__dict__.update(self.__dict__)
        network._speed = speed
        network._capacities = list(self._capacities)
        for job in self._jobs:
            network._capacities[self._job_arcs[job.id]] = job.work / speed
        return network

    def _usable(self, arc, forward, flows, threshold):
        capacity = self._capacities[arc]
        if forward:
            residual = capacity - flows[arc]
        else:
            residual = flows[arc]
        return residual > threshold * max(1.0, capacity)

    def _neighbours(self, node, flows, threshold):
        for arc in self._adjacency[node]:
            if self._usable(arc, True, flows, threshold):
                yield self._heads[arc]
        for arc in self._incoming[node]:
            if self._usable(arc, False, flows, threshold):
                yield self._tails[arc]

    def _predecessors(self, node, flows, threshold):
        for arc in self._incoming[node]:
            if self._usable(arc, True, flows, threshold):
                yield self._tails[arc]
        for arc in self._adjacency[node]:
            if self._usable(arc, False, flows, threshold):
                yield self._heads[arc]


class FlowResult(object):
    def __init__(self, network, arc_flows):
        self._network = network
        self._arc_flows = tuple(arc_flows)
        self._value = math.fsum(self._arc_flows[network.job_arc(job.id)]
                                for job in network.jobs)
        tolerance = network.tolerance
        self._saturated = tuple(
            c - f <= tolerance * max(1.0, c)
            for c, f in zip(network._capacities, self._arc_flows))

    @property
    def network(self):
        return self._network

    @property
    def value(self):
        return self._value

    @property
    def arc_flows(self):
        return self._arc_flows

    @property
    def saturated(self):
        return self._saturated

    def job_time(self, job_id, interval_index):
        arc = self._network.middle_arc(job_id, interval_index)
        return 0.0 if arc is None else self._arc_flows[arc]

    def interval_load(self, interval_index):
        return self._arc_flows[self._network.sink_arc(interval_index)]


def _build(grid, jobs, demands, speed, config):
    config = config or model.SolverConfig.from_conf()
    job_ids = frozenset(job.id for job in jobs)
    intervals = [interval for interval in grid.active_intervals()
                 if job_ids.intersection(interval.alive)]
    return FlowNetwork(jobs, intervals, demands, speed=speed,
                       tolerance=config.flow_tolerance)


def build_wap_network(grid, jobs, speed, config=None):
    """Corresponding network of the work assignment instance at speed.

    Intervals without available machines are left out.
    """
    if not speed > 0:
        raise exceptions.NonPositiveSpeed(speed=speed)
    demands = dict((job.id, job.work / speed) for job in jobs)
    return _build(grid, jobs, demands, speed, config)


def build_assignment_network(grid, jobs, processing_times, config=None):
    """Network whose source arcs carry individual processing times."""
    return _build(grid, jobs, processing_times, None, config)


def max_flow(network):
    """Dinic's blocking flow algorithm on the layered network."""
    flows = [0.0] * len(network._capacities)
    source = network.node_id(SOURCE)
    sink = network.node_id(SINK)
    capacities = network._capacities
    heads = network._heads
    tails = network._tails

    # (arc, forward) pairs per node: own out-arcs, then reverses of in-arcs
    edges = [[(arc, True) for arc in network._adjacency[node]] +
             [(arc, False) for arc in network._incoming[node]]
             for node in range(len(network._nodes))]

    def residual(arc, forward):
        return capacities[arc] - flows[arc] if forward else flows[arc]

    def usable(arc, forward):
        return residual(arc, forward) > (_AUGMENT_EPSILON *
                                         max(1.0, capacities[arc]))

    phases = 0
    while True:
        level = _levels(network, flows, source, _AUGMENT_EPSILON)
        if level[sink] < 0:
            break
        phases += 1
        pointer = [0] * len(level)
        path = []
        node = source
        while True:
            if node == sink:
                pushed = min(residual(arc, forward) for arc, forward in path)
                for arc, forward in path:
                    if forward:
                        flows[arc] = min(capacities[arc], flows[arc] + pushed)
                    else:
                        flows[arc] = max(0.0, flows[arc] - pushed)
                path = []
                node = source
                continue
            node_edges = edges[node]
            while pointer[node] < len(node_edges):
                arc, forward = node_edges[pointer[node]]
                target = heads[arc] if forward else tails[arc]
                if level[target] == level[node] + 1 and usable(arc, forward):
                    break
                pointer[node] += 1
            if pointer[node] < len(node_edges):
                path.append(node_edges[pointer[node]])
                node = target
                continue
            if node == source:
                break
            level[node] = -1
            arc, forward = path.pop()
            node = tails[arc] if forward else heads[arc]
            pointer[node] += 1

    result = FlowResult(network, flows)
    LOG.debug('Max flow {0!r} of demand {1!r} after {2} phases'.format(
        result.value, network.demand, phases))
    return result


def _levels(network, flows, start, threshold):
    level = [-1] * len(network._nodes)
    level[start] = 0
    queue = collections.deque([start])
    while queue:
        node = queue.popleft()
        for target in network._neighbours(node, flows, threshold):
            if level[target] < 0:
                level[target] = level[node] + 1
                queue.append(target)
    return level


def wap_feasible(grid, jobs, speed, config=None):
    config = config or model.SolverConfig.from_conf()
    network = build_wap_network(grid, jobs, speed, config)
    flow = max_flow(network)
    return is_saturating(network, flow), flow


def is_saturating(network, flow):
    """True when the flow carries the whole demand within tolerance."""
    demand = network.demand
    return abs(flow.value - demand) <= network.tolerance * demand


def _reachable(network, flow, start, backwards=False, threshold=None):
    step = network._predecessors if backwards else network._neighbours
    if threshold is None:
        threshold = network.tolerance
    seen = set([start])
    queue = collections.deque([start])
    while queue:
        node = queue.popleft()
        for target in step(node, flow.arc_flows, threshold):
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return seen


def residual_reachable_from_source(network, flow):
    """Source side X of the minimum cut closest to the source."""
    reached = _reachable(network, flow, network.node_id(SOURCE))
    if network.node_id(SINK) in reached:
        raise exceptions.FlowNotMaximum(value=flow.value)
    return frozenset(network._nodes[k] for k in reached)


def minimum_cut_source_side(network, flow):
    """Source side of the cut certified by the augmentation threshold.

    Unlike residual_reachable_from_source this ignores the saturation
    tolerance, so the cut capacity equals the flow value up to round-off.
    """
    reached = _reachable(network, flow, network.node_id(SOURCE),
                         threshold=_AUGMENT_EPSILON)
    return frozenset(network._nodes[k] for k in reached)


def residual_reaching_sink(network, flow, threshold=None):
    """Nodes with a residual path to the sink.

    Their complement is the source side of the minimum cut closest to
    the sink. The saturation tolerance of the network applies unless a
    threshold is given.
    """
    reached = _reachable(network, flow, network.node_id(SINK),
                         backwards=True, threshold=threshold)
    if network.node_id(SOURCE) in reached:
        raise exceptions.FlowNotMaximum(value=flow.value)
    return frozenset(network._nodes[k] for k in reached)


def residual_path_exists(network, flow, from_node, to_node):
    start = network.node_id(from_node)
    goal = network.node_id(to_node)
    return goal in _reachable(network, flow, start)


def cut_arcs(network, source_side):
    """Arcs leaving the given source side node set."""
    inside = set(network.node_id(node) for node in source_side)
    return [arc for arc, (tail, head) in
            enumerate(zip(network._tails, network._heads))
            if tail in inside and head not in inside]


def cut_capacity(network, source_side):
    return math.fsum(network.capacity(arc)
                     for arc in cut_arcs(network, source_side))


def dump_network(network, flow=None):
    """One line per arc: ``tail head capacity flow``."""
    lines = []
    for arc, (tail, head, capacity) in enumerate(network.arcs):
        value = flow.arc_flows[arc] if flow is not None else 0.0
        lines.append('{0} {1} {2!r} {3!r}'.format(
            node_label(tail), node_label(head), capacity, value))
    return '\n'.join(lines)
