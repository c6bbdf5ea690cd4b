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

_NUMBER = {"type": "number"}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "work": _NUMBER,
        "release": _NUMBER,
        "deadline": _NUMBER
    },
    "required": ["id", "work", "release", "deadline"]
}

INSTANCE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-04/schema#",

    "type": "object",
    "properties": {
        "alpha": _NUMBER,
        "machines": {"type": "integer"},
        "jobs": {
            "type": "array",
            "items": JOB_SCHEMA
        }
    },
    "required": ["alpha", "machines", "jobs"]
}

# Makespan problems carry no deadlines; a deadline, if present, is ignored.
BUDGET_INSTANCE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-04/schema#",

    "type": "object",
    "properties": {
        "alpha": _NUMBER,
        "machines": {"type": "integer"},
        "energy": _NUMBER,
        "jobs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "work": _NUMBER,
                    "release": _NUMBER
                },
                "required": ["id", "work", "release"]
            }
        }
    },
    "required": ["alpha", "machines", "jobs"]
}

SCHEDULE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-04/schema#",

    "type": "object",
    "properties": {
        "energy": _NUMBER,
        "makespan": _NUMBER,
        "segments": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "job": {"type": "string"},
                    "machine": {"type": "integer", "minimum": 1},
                    "start": _NUMBER,
                    "end": _NUMBER,
                    "speed": _NUMBER
                },
                "required": ["job", "machine", "start", "end", "speed"]
            }
        }
    },
    "required": ["segments"]
}
