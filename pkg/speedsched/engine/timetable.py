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

import collections
import math

from oslo_log import log as logging

from speedsched.common import consts
from speedsched.engine import exceptions
from speedsched.engine import flownet
from speedsched.model import instance as model

LOG = logging.getLogger(__name__)


Segment = collections.namedtuple('Segment', 'job machine start end speed')


class TimeMatrix(object):
    """Time t_{i,j} every job spends inside every interval of a grid."""

    def __init__(self, grid, entries):
        self._grid = grid
        self._entries = dict(((job_id, index), time)
                             for (job_id, index), time in entries.items()
                             if time > 0)

    @property
    def grid(self):
        return self._grid

    def time(self, job_id, interval_index):
        return self._entries.get((job_id, interval_index), 0.0)

    def items(self):
        return sorted(self._entries.items())

    def job_total(self, job_id):
        return math.fsum(self.time(job_id, index)
                         for index in self._grid.intervals_of(job_id))

    def interval_total(self, interval_index):
        interval = self._grid[interval_index]
        return math.fsum(self.time(job_id, interval_index)
                         for job_id in interval.alive)

    def interval_times(self, interval_index):
        interval = self._grid[interval_index]
        return collections.OrderedDict(
            (job_id, self.time(job_id, interval_index))
            for job_id in interval.alive
            if self.time(job_id, interval_index) > 0)


class Schedule(object):
    def __init__(self, segments, alpha):
        self._segments = tuple(sorted(
            segments, key=lambda s: (s.start, s.machine, s.job)))
        self._alpha = alpha

    @property
    def segments(self):
        return self._segments

    @property
    def alpha(self):
        return self._alpha

    @property
    def makespan(self):
        return max(segment.end for segment in self._segments)

    @property
    def energy(self):
        return math.fsum((s.end - s.start) * s.speed ** self._alpha
                         for s in self._segments)

    @property
    def machines_used(self):
        return len(set(segment.machine for segment in self._segments))

    def segments_of(self, job_id):
        return [s for s in self._segments if s.job == job_id]

    def work_done(self, job_id):
        return math.fsum((s.end - s.start) * s.speed
                         for s in self.segments_of(job_id))


def assignment_flow(instance, speeds, config=None):
    """Max flow of the network with source capacities w_i / s_i."""
    grid = model.build_interval_grid(instance.jobs, instance.machines)
    processing = dict((job.id, job.work / speeds.speed(job.id))
                      for job in instance.jobs)
    network = flownet.build_assignment_network(grid, instance.jobs,
                                               processing, config)
    return grid, network, flownet.max_flow(network)


def assign_interval_times(instance, speeds, config=None):
    grid, network, flow = assignment_flow(instance, speeds, config)
    if not flownet.is_saturating(network, flow):
        raise exceptions.InfeasibleSpeeds(value=flow.value,
                                          demand=network.demand)
    entries = dict(((job_id, index), flow.arc_flows[arc])
                   for (job_id, index), arc in network.middle_arcs())
    return TimeMatrix(grid, entries)


def pack_interval(times, machines, interval, speeds=None):
    """Wrap-around packing of per-job times into one interval.

    Jobs are laid out by decreasing time (ties by id) filling machine 1
    from the interval start, then continuing on machine 2 and so on. A
    job that wraps occupies a suffix of machine k and a prefix of machine
    k + 1; the two never overlap as no job time exceeds the length.
    """
    start, end = interval
    length = end - start
    slack = consts.MIN_SEGMENT_LENGTH * max(1.0, length)
    total = math.fsum(times.values())
    if total > machines * length + slack * (len(times) + 1):
        raise exceptions.OverfullInterval(start=start, end=end, total=total,
                                          machines=machines)

    speeds = speeds or {}
    segments = []
    machine, offset = 1, 0.0
    for job_id, time in sorted(times.items(), key=lambda kv: (-kv[1], kv[0])):
        if time > length + slack:
            raise exceptions.OversizeJobTime(job=job_id, time=time,
                                             length=length)
        left = min(time, length)
        while left > slack:
            if machine > machines:
                # only round-off can get here, the total was checked
                break
            room = length - offset
            piece = min(left, room)
            if piece > slack:
                piece_end = end if piece == room else start + offset + piece
                segments.append(Segment(job_id, machine, start + offset,
                                        piece_end, speeds.get(job_id)))
            offset += piece
            left -= piece
            if length - offset <= slack:
                machine, offset = machine + 1, 0.0
    return segments


def build_schedule(instance, speeds, config=None):
    times = assign_interval_times(instance, speeds, config)
    segments = []
    for interval in times.grid.intervals:
        interval_times = times.interval_times(interval.index)
        if not interval_times:
            continue
        segments.extend(pack_interval(
            interval_times, instance.machines,
            (interval.start, interval.end), speeds.speeds))
    schedule = Schedule(segments, instance.alpha)
    LOG.debug('Timetable with {0} segments on {1} machines'.format(
        len(schedule.segments), schedule.machines_used))
    return schedule
