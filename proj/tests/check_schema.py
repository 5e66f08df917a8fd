import json
import pathlib
import sys

import jsonschema

schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
files = sorted(pathlib.Path(sys.argv[2]).glob("*.json"))
for path in files:
    jsonschema.validate(json.loads(path.read_text()), schema)
print(f"{len(files)} reports conform")
