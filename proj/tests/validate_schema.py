"""Runs every spectre subcommand on small graphs and validates the JSON reports."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

GRAPHS = {
    "p3": "3 2\n1 2\n2 3\n",
    "c5": "5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
    "k13": "4 3\n1 2\n1 3\n1 4\n",
    "loop": "2 2\n1 1 0.5\n1 2 -2\n",
    # C5 with P3 hanging from vertex 3 by an end
    "t11": "8 8\n1 2\n2 3\n3 4\n4 5\n5 1\n3 6\n6 7\n7 8\n",
    # K4 with edge 1-2 subdivided by five vertices
    "sub": "9 11\n1 3\n1 4\n2 3\n2 4\n3 4\n1 5\n5 6\n6 7\n7 8\n8 9\n9 2\n",
    # P4 plus v = 5 adjacent to 1, 2, 4 with a pendant P2 at v
    "g44": "7 7\n1 2\n2 3\n3 4\n5 1\n5 2\n5 4\n5 6\n",
    "spider": "7 6\n1 2\n2 3\n1 4\n4 5\n1 6\n6 7\n",
}


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        files = {}
        for name, text in GRAPHS.items():
            files[name] = Path(tmp) / f"{name}.txt"
            files[name].write_text(text)
        runs = [
            ["spectrum", files["p3"]],
            ["spectrum", files["loop"], "--rho", "-0.5"],
            ["multiplicity", files["c5"], "--mu", "4sin2(1,5)"],
            ["multiplicity", files["k13"], "--mu", "1", "--tol", "1e-6"],
            ["star-set", files["k13"], "--mu", "1"],
            ["star-set", files["c5"], "--mu", "4sin2(2,5)", "--rho", "1"],
            ["bounds", files["spider"], "--kmax", "3"],
            ["bounds", files["k13"], "--branch-degree-above-3"],
            ["reduce", files["sub"], "--op", "contract-paths", "--mu", "4sin2(1,5)", "--out", Path(tmp) / "o1.txt"],
            ["reduce", files["t11"], "--op", "detach", "--mu", "1", "--branch", "6,7,8", "--out", Path(tmp) / "o2.txt"],
            ["reduce", files["g44"], "--op", "split", "--mu", "4cos2(1,5)", "--vertex", "5", "--branch", "6,7"],
            ["verify", "--theorem", "all", "--trials", "5", "--seed", "3"],
            ["verify", "--theorem", "PendantBound", "--trials", "0"],
            ["verify", "--theorem", "Split", "--replay", "4"],
        ]
        bad = 0
        for args in runs:
            argv = [cli] + [str(a) for a in args]
            proc = subprocess.run(argv, capture_output=True, text=True)
            label = " ".join(str(a) for a in args[:1] + args[2:])
            if proc.returncode not in (0, 1):
                print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
                bad += 1
                continue
            errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
            if errors:
                print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
                bad += 1
            else:
                print(f"ok   {label}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
