#!/usr/bin/env python3
"""Convert third-party snippet exports into the JSONL layout vulnlex consumes.

Accepts a JSON array of records, a JSON object mapping ids to records, or a
JSONL file with one record per line. Field names are remappable so exports
from different collection pipelines can be adapted without editing them.

Output: one JSON object per line with the fields id, code, label (0/1),
vuln_class, and optionally origin.
"""

import argparse
import json
import sys

CLASSES = [
    "sql_injection",
    "xss",
    "command_injection",
    "xsrf",
    "remote_code_execution",
    "path_disclosure",
    "open_redirect",
]

TRUE_LABELS = {"1", "true", "yes", "vulnerable", "vuln", "positive"}
FALSE_LABELS = {"0", "false", "no", "not vulnerable", "clean", "safe", "negative"}


def coerce_label(value, where):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, (int, float)):
        if value in (0, 1):
            return int(value)
        raise SystemExit(f"{where}: numeric label must be 0 or 1, got {value!r}")
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in TRUE_LABELS:
            return 1
        if lowered in FALSE_LABELS:
            return 0
    raise SystemExit(f"{where}: cannot interpret label {value!r}")


def load_records(path):
    if path.endswith(".jsonl"):
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                yield f"line {line_no}", None, json.loads(line)
        return
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        for index, record in enumerate(data):
            yield f"record {index}", None, record
    elif isinstance(data, dict):
        for key, record in data.items():
            yield f"record {key!r}", str(key), record
    else:
        raise SystemExit(f"{path}: expected a JSON array or object at the top level")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="input", required=True, help="source file (.json or .jsonl)")
    parser.add_argument("--out", required=True, help="JSONL file to write")
    parser.add_argument("--class", dest="vuln_class", required=True, choices=CLASSES)
    parser.add_argument("--code-field", default="code")
    parser.add_argument("--label-field", default="label")
    parser.add_argument("--origin-field", default=None,
                        help="optional source field recorded as 'origin'")
    parser.add_argument("--id-prefix", default=None,
                        help="prefix for generated ids (default: the class name)")
    args = parser.parse_args()

    prefix = args.id_prefix or args.vuln_class
    written = 0
    seen_ids = set()
    with open(args.out, "w", encoding="utf-8") as out:
        for where, key, record in load_records(args.input):
            if not isinstance(record, dict):
                raise SystemExit(f"{args.input}: {where}: expected an object")
            if args.code_field not in record:
                raise SystemExit(f"{args.input}: {where}: missing field {args.code_field!r}")
            if args.label_field not in record:
                raise SystemExit(f"{args.input}: {where}: missing field {args.label_field!r}")
            code = record[args.code_field]
            if not isinstance(code, str) or not code:
                raise SystemExit(f"{args.input}: {where}: code must be a non-empty string")
            sample_id = key if key is not None else f"{prefix}_{written:06d}"
            if sample_id in seen_ids:
                raise SystemExit(f"{args.input}: {where}: duplicate id {sample_id!r}")
            seen_ids.add(sample_id)
            row = {
                "id": sample_id,
                "code": code,
                "label": coerce_label(record[args.label_field], f"{args.input}: {where}"),
                "vuln_class": args.vuln_class,
            }
            if args.origin_field and args.origin_field in record:
                row["origin"] = str(record[args.origin_field])
            out.write(json.dumps(row, ensure_ascii=False) + "\n")
            written += 1
    if written == 0:
        raise SystemExit(f"{args.input}: no records found")
    print(f"wrote {written} sample(s) to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
