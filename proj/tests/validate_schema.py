"""Runs every subcommand of the ordpat binary and validates its JSON output
and run sidecars against schema/ordpat.schema.json.  CSV outputs are also
parsed with the csv module to check quoting and CRLF record endings."""

import csv
import io
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN, SCHEMA, FIXTURES = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])


def fixture(name):
    return str(FIXTURES / name)


RUNS = [
    ["synth", "logistic", "--n", "500", "--x0", "0.3"],
    ["synth", "random", "--n", "500", "--seed", "4"],
    ["synth", "shuffle", "--input", fixture("logistic.csv"), "--seed", "4"],
    ["analyze", "--input", fixture("logistic.csv"), "--d", "3,4,5", "--members", "3"],
    ["analyze", "--input", fixture("market_like.csv"), "--column", "close", "--date-column", "date",
     "--rolling-window", "300", "--rolling-step", "7", "--members", "3", "--seed", "2"],
    ["analyze", "--input", fixture("constant.csv"), "--d", "3,8", "--members", "2"],
    ["pdf", "--input", fixture("uniform.csv"), "--d", "4"],
    ["pdf", "--input", fixture("constant.csv"), "--d", "3"],
    ["rolling", "--input", fixture("market_like.csv"), "--column", "close", "--date-column", "date", "--step", "50"],
    ["baseline", "--n", "2000", "--d", "4,5", "--members", "4", "--seed", "8"],
    ["baseline", "--kind", "shuffle", "--input", fixture("logistic.csv"), "--d", "4", "--members", "2"],
]


def main():
    schema = json.loads(SCHEMA.read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    failures = 0
    checked = 0

    def validate(doc, label):
        nonlocal failures, checked
        checked += 1
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            failures += 1
            print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")

    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(RUNS):
            label = " ".join(args[:2])
            for fmt in ("json", "csv"):
                out = Path(tmp) / f"run{i}.{fmt}"
                proc = subprocess.run([BIN, *args, "--format", fmt, "--out", str(out)], capture_output=True, text=True)
                if proc.returncode not in (0, 3):
                    print(f"FAIL {label} ({fmt}): exit {proc.returncode}: {proc.stderr.strip()}")
                    failures += 1
                    continue
                if fmt == "json":
                    validate(json.loads(out.read_text()), f"{label} json")
                else:
                    validate(json.loads(Path(str(out) + ".run.json").read_text()), f"{label} sidecar")
                    raw = out.read_bytes()
                    if b"\n" in raw.replace(b"\r\n", b"") or not raw.endswith(b"\r\n"):
                        print(f"FAIL {label} csv: records must end in CRLF")
                        failures += 1
                    rows = list(csv.reader(io.StringIO(raw.decode(), newline="")))
                    if len({len(r) for r in rows}) != 1:
                        print(f"FAIL {label} csv: ragged rows")
                        failures += 1

    print(f"{checked} documents checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
