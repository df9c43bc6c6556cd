#!/usr/bin/env python3
# Copyright 2026 The cogdist Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates CLI JSON output against the schemas in schema/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load(path):
    return json.loads(path.read_text())


def main():
    cli, source = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = source / "schema"
    data = source / "tests" / "data"
    registry = Registry()
    for p in schemas.glob("*.schema.json"):
        doc = load(p)
        registry = registry.with_resource(p.name, Resource.from_contents(doc))
        registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))

    def validator(name):
        schema = load(schemas / name)
        cls = jsonschema.validators.validator_for(schema)
        cls.check_schema(schema)
        return cls(schema, registry=registry)

    def run(*args):
        out = subprocess.run([cli, *args], check=True, capture_output=True, text=True)
        return out.stdout

    model = str(data / "fixture_model")
    texts = str(data / "fixture_texts.txt")
    checked = 0

    result = validator("recognition-result.schema.json")
    for line in run("recognize", "-m", model, "-i", texts, "--json").splitlines():
        result.validate(json.loads(line))
        checked += 1

    spans = validator("highlight.schema.json")
    for line in run("highlight", "-m", model, "-i", texts, "--json", "--all").splitlines():
        spans.validate(json.loads(line))
        checked += 1

    with tempfile.TemporaryDirectory() as tmp:
        corpus = ["-d", str(data / "mini.csv"), "-c", str(source / "config" / "dataset1.colmap")]
        report = pathlib.Path(tmp) / "report.json"
        run("evaluate", *corpus, "--json-out", str(report))
        validator("eval-report.schema.json").validate(load(report))
        checked += 1

        summary = pathlib.Path(tmp) / "grid.json"
        run("grid", *corpus, "--nm", "1,2", "--sm", "FCR,NLMI", "--json", str(summary))
        validator("grid-summary.schema.json").validate(load(summary))
        checked += 1

    api = load(schemas / "audit-api.openapi.json")
    assert api["openapi"].startswith("3."), "not an OpenAPI 3 document"
    for route in ("/recognize", "/model", "/model/entries", "/model/undo", "/model/save",
                  "/model/diff"):
        assert route in api["paths"], route

    print(f"validated {checked} documents")


if __name__ == "__main__":
    main()
