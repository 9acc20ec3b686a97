"""Runs each CLI command once and validates the emitted JSON against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

cli, schema_dir, data_dir = (pathlib.Path(a) for a in sys.argv[1:4])

resources = []
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validator(name):
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema, registry=registry)


RUNS = [
    ("transform", ["transform", "--u", "delta(1)", "--zeta", "2", "--zeta", "1+i"]),
    ("transform", ["transform", "--u", "0", "--zeta", "2"]),
    ("transform", ["--config", str(data_dir / "transform.json"), "transform"]),
    ("inverse", ["inverse", "--f", "1/zeta1", "--K", "[0,inf)"]),
    ("inverse", ["inverse", "--f", "0"]),
    ("inverse", ["--config", str(data_dir / "inverse.json"), "inverse"]),
    ("roundtrip", ["roundtrip", "--f", "1/(zeta-1)", "--smax", "1"]),
    ("roundtrip", ["roundtrip", "--u", "d(delta(0.5))"]),
    ("solve", ["solve", "--P", "D1 - 1", "--f", "delta(0)"]),
    ("solve", ["--config", str(data_dir / "solve.json"), "solve"]),
    ("char", ["char", "--P", "D1^2 + D2^2"]),
    ("char", ["char", "--P", "D1*D2", "--K", "orthant(0,0)", "--mesh", "0.05"]),
    ("pair", ["pair", "--u", "tensor(delta(1), Y(0))"]),
    ("verify", ["verify", "anchors", "derivative"]),
]

failures = 0
config_validator = validator("config")
for path in sorted(data_dir.glob("*.json")):
    errors = list(config_validator.iter_errors(json.loads(path.read_text())))
    print(f"config {path.name}: {'ok' if not errors else errors[0].message}")
    failures += bool(errors)

with tempfile.TemporaryDirectory() as tmp:
    for i, (name, args) in enumerate(RUNS):
        out = pathlib.Path(tmp) / f"{i}.json"
        proc = subprocess.run([str(cli), "--out", str(out), *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"{name} {args}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(out.read_text())
        errors = list(validator(name).iter_errors(doc))
        # the effective config echo must itself be a valid config file
        errors += list(config_validator.iter_errors({"command": name, **{k: v for k, v in doc["config"].items() if v is not None}}))
        print(f"{name} {' '.join(args)}: {'ok' if not errors else errors[0].message}")
        failures += bool(errors)

sys.exit(1 if failures else 0)
