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

import jsonschema
from oslo_log import log as logging
from oslo_serialization import jsonutils
import yaml

from speedsched.common import exception
from speedsched.model import instance
from speedsched.model import schemas

LOG = logging.getLogger(__name__)

YAML_EXTENSIONS = ('.yaml', '.yml')


def load_document(path, schema):
    """Reads a JSON or YAML document and validates it against schema."""
    if not os.path.isfile(path):
        raise exception.MalformedInput(source=path,
                                       reason='file does not exist')
    try:
        with open(path, encoding='utf-8') as stream:
            text = stream.read()
        if os.path.splitext(path)[1].lower() in YAML_EXTENSIONS:
            document = yaml.safe_load(text)
        else:
            document = jsonutils.loads(text)
    except (ValueError, yaml.YAMLError) as ex:
        raise exception.MalformedInput(source=path, reason=str(ex)) from ex
    if schema is not None:
        validate_document(document, schema, source=path)
    LOG.debug('Loaded document {0}'.format(path))
    return document


def validate_document(document, schema, source='<document>'):
    try:
        jsonschema.validate(document, schema)
    except jsonschema.ValidationError as ex:
        raise exception.MalformedInput(source=source,
                                       reason=ex.message) from ex
    return document


def jobs_from_document(document, common_deadline=None):
    jobs = []
    for item in document['jobs']:
        deadline = (item.get('deadline') if common_deadline is None
                    else common_deadline)
        jobs.append(instance.Job(item['id'], item['work'], item['release'],
                                 deadline))
    return jobs


def instance_from_document(document, alpha=None, machines=None):
    validate_document(document, schemas.INSTANCE_SCHEMA)
    raw = instance.Instance(
        jobs_from_document(document),
        document['machines'] if machines is None else machines,
        document['alpha'] if alpha is None else alpha)
    return instance.validate_instance(raw)


def load_instance(path, alpha=None, machines=None):
    document = load_document(path, schemas.INSTANCE_SCHEMA)
    return instance_from_document(document, alpha=alpha, machines=machines)
