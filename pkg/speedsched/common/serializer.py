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

"""JSON views of solver results.

Floats are written with their shortest repr, which reads back to the
very same double, and keys keep a fixed order so output is byte for byte
reproducible.
"""

import collections

from oslo_serialization import jsonutils

from speedsched.engine import timetable
from speedsched.model import load_utils
from speedsched.model import schemas


def segment_to_dict(segment):
    return collections.OrderedDict([
        ('job', segment.job),
        ('machine', segment.machine),
        ('start', segment.start),
        ('end', segment.end),
        ('speed', segment.speed),
    ])


def schedule_to_dict(schedule, makespan=None):
    segments = [segment_to_dict(s) for s in schedule.segments]
    if makespan is None:
        makespan = schedule.makespan if segments else 0.0
    return collections.OrderedDict([
        ('energy', schedule.energy),
        ('makespan', makespan),
        ('segments', segments),
    ])


def schedule_from_dict(document, alpha, source='<schedule>'):
    load_utils.validate_document(document, schemas.SCHEDULE_SCHEMA, source)
    segments = [timetable.Segment(item['job'], item['machine'],
                                  item['start'], item['end'], item['speed'])
                for item in document['segments']]
    return timetable.Schedule(segments, alpha)


def trace_to_list(trace):
    steps = []
    for step in trace:
        updates = collections.OrderedDict(
            (str(index), list(change))
            for index, change in sorted(step.machine_updates.items()))
        steps.append(collections.OrderedDict([
            ('step', step.step),
            ('s_crit', step.s_crit),
            ('critical_jobs', list(step.critical_jobs)),
            ('tight_intervals', list(step.tight_intervals)),
            ('machine_updates', updates),
        ]))
    return steps


def feasibility_to_dict(verdict):
    return collections.OrderedDict([
        ('passed', verdict.passed),
        ('tolerance', verdict.tolerance),
        ('violations', [collections.OrderedDict([
            ('kind', v.kind),
            ('job', v.job),
            ('machine', v.machine),
            ('detail', v.detail),
        ]) for v in verdict.violations]),
    ])


def kkt_to_dict(verdict):
    properties = collections.OrderedDict()
    for number, result in verdict.properties.items():
        properties[str(number)] = collections.OrderedDict([
            ('name', result.name),
            ('passed', result.passed),
            ('witness', list(result.witness) if result.witness else None),
            ('margin', result.margin),
        ])
    return collections.OrderedDict([
        ('passed', verdict.passed),
        ('tolerance', verdict.tolerance),
        ('properties', properties),
    ])


def verification_to_dict(feasibility, kkt, energy=None):
    document = collections.OrderedDict([
        ('passed', feasibility.passed and kkt.passed),
        ('feasibility', feasibility_to_dict(feasibility)),
        ('kkt', kkt_to_dict(kkt)),
    ])
    if energy is not None:
        document['energy'] = energy_report_to_dict(energy)
    return document


def energy_report_to_dict(report):
    return collections.OrderedDict([
        ('total', report.total),
        ('per_job', report.per_job),
        ('utilization', collections.OrderedDict(
            (str(k), v) for k, v in report.utilization.items())),
    ])


def oracle_to_dict(result):
    return collections.OrderedDict([
        ('method', result.method),
        ('energy', result.energy),
        ('speeds', result.speeds),
    ])


def error_to_dict(error):
    return collections.OrderedDict([
        ('error', error.code),
        ('detail', error.detail),
    ])


def dumps(document, pretty=True):
    if pretty:
        return jsonutils.dumps(document, indent=2, separators=(',', ': '))
    return jsonutils.dumps(document)
