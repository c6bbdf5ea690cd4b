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
import string

from speedsched.common import config

CONF = config.CONF

IDLE = '.'
OVERFLOW = '#'
SYMBOLS = string.ascii_uppercase + string.ascii_lowercase + string.digits


def job_symbols(schedule):
    symbols = collections.OrderedDict()
    for k, job_id in enumerate(sorted(set(s.job for s in schedule.segments))):
        symbols[job_id] = SYMBOLS[k] if k < len(SYMBOLS) else OVERFLOW
    return symbols


def render(schedule, machines=None, width=None):
    """Text chart with one row per machine.

    Every column shows the job holding the largest share of that column's
    time slice on the machine. The chart is quantized and meant for
    reading only.
    """
    width = width or CONF.output.gantt_width
    if not schedule.segments:
        return '(empty schedule)'
    machines = machines or max(s.machine for s in schedule.segments)
    begin = min(s.start for s in schedule.segments)
    end = max(s.end for s in schedule.segments)
    step = (end - begin) / width
    symbols = job_symbols(schedule)

    rows = dict((machine, [{} for _ in range(width)])
                for machine in range(1, machines + 1))
    for segment in schedule.segments:
        row = rows.get(segment.machine)
        if row is None:
            continue
        first = int((segment.start - begin) / step)
        last = min(int((segment.end - begin) / step), width - 1)
        for column in range(max(first, 0), last + 1):
            low = begin + column * step
            share = min(segment.end, low + step) - max(segment.start, low)
            if share > 0:
                cell = row[column]
                cell[segment.job] = cell.get(segment.job, 0.0) + share

    label = len('M{0}'.format(machines))
    lines = ['{0} {1!r} .. {2!r}'.format(' ' * label, begin, end)]
    for machine in range(1, machines + 1):
        cells = []
        for cell in rows[machine]:
            if cell:
                job_id = max(sorted(cell), key=lambda j: cell[j])
                cells.append(symbols[job_id])
            else:
                cells.append(IDLE)
        lines.append('{0:<{1}}|{2}|'.format('M{0}'.format(machine), label,
                                            ''.join(cells)))
    speeds = dict((s.job, s.speed) for s in schedule.segments)
    for job_id, symbol in symbols.items():
        lines.append('  {0} = {1} (speed {2!r})'.format(symbol, job_id,
                                                         speeds[job_id]))
    return '\n'.join(lines)
