"""Runs every report-producing command and validates its JSON against the schema.

Also checks that two runs give byte-identical output.
"""
import json
import subprocess
import sys

import jsonschema

CASES = [
    (["check-triplet", "12", "111", "13"], 0),
    (["check-triplet", "1", "1", "10"], 1),
    (["verify-paper", "--suite", "picard", "--suite", "jacobian", "--suite", "scan"], 0),
    (["verify-paper", "1", "1", "10", "--suite", "scan"], 0),
    (["residue", "(t, t+1)"], 0),
    (["residue", "(1, t^2+3)"], 0),
    (["residue", "--sqrt", "5", "(t - sqrt5, t^2 - 2)", "(t, 3)"], 0),
    (["faddeev", "--at", "t:-1"], 0),
    (["faddeev", "--at", "t:-1", "--at", "inf:1"], 1),
    (["search", "--box", "10..14,109..113,11..15", "--filter", "4,5,6"], 0),
    (["search", "--box", "1..1,1..1,1..1"], 0),
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, want_rc in CASES:
        runs = [subprocess.run([exe, "--json", *args], capture_output=True, text=True) for _ in range(2)]
        p = runs[0]
        problems = []
        if p.returncode != want_rc:
            problems.append(f"exit code {p.returncode}, expected {want_rc}: {p.stderr.strip()}")
        if runs[0].stdout != runs[1].stdout:
            problems.append("output differs between runs")
        try:
            for err in validator.iter_errors(json.loads(p.stdout)):
                problems.append(f"{list(err.absolute_path)}: {err.message}")
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
        print(("ok   " if not problems else "FAIL ") + " ".join(args))
        for m in problems:
            print("     " + m)
        failures += bool(problems)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
