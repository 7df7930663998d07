"""Run each `verify` command with --out and validate the JSON reports against the schema.

usage: validate_report.py CLI SCHEMA DATA_DIR
"""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    cli, schema_path, data = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    runs = {
        "thm1_interval": ["--theorem", "1", "--domain", os.path.join(data, "interval.json"), "--t", "log:0.01:10:10"],
        "thm1_arc": ["--theorem", "1", "--domain", os.path.join(data, "arc_half.json"), "--t", "log:0.05:5:8"],
        "thm2_small": ["--theorem", "2", "--m", "2", "--samples", "100000"],
        "thm3_m1": ["--theorem", "3", "--m", "1"],
        "thm4": ["--theorem", "4", "--m", "1", "--alpha", "2"],
        "thm5": ["--theorem", "5", "--domain", os.path.join(data, "half_disc_ball.json")],
    }
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for name, args in runs.items():
            out = os.path.join(tmp, name + ".json")
            proc = subprocess.run([cli, "verify", *args, "--out", out], capture_output=True, text=True)
            if proc.returncode not in (0, 1, 2):
                print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            with open(out) as f:
                report = json.load(f)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if errors:
                failures += 1
                for e in errors:
                    print(f"FAIL {name}: {'/'.join(map(str, e.path))}: {e.message}")
            else:
                print(f"ok   {name}: verdict {report['verdict']}, {len(report['checks'])} checks")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
