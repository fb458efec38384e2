import json
import pathlib
import sys

import jsonschema

schema_path, golden_dir = map(pathlib.Path, sys.argv[1:3])
schema = json.loads(schema_path.read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
failures = 0
files = sorted(golden_dir.glob("*.json"))
for path in files:
    errors = list(validator.iter_errors(json.loads(path.read_text())))
    status = "ok  " if not errors else "FAIL"
    print(f"{status} {path.name}")
    for e in errors[:3]:
        print(f"     {e.message}")
    failures += bool(errors)
if not files:
    print("no documents found")
    sys.exit(1)
sys.exit(1 if failures else 0)
