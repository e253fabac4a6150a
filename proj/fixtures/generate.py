#!/usr/bin/env python3
"""Regenerates the synthetic fixture datasets and probe files.

The records are small Flask/DB-API style snippets with a deliberate lexical
signal: the vulnerable variants interpolate request data into SQL or HTML,
the safe variants use parameterized queries or escaping. Output is
deterministic for a fixed seed so the files can stay committed.
"""

import json
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent

TABLES = ["users", "orders", "accounts", "products", "sessions", "invoices"]
COLUMNS = ["name", "email", "status", "owner", "city", "sku"]
FUNCS = ["fetch", "lookup", "find", "load", "select"]
ARGS = ["name", "term", "value", "needle", "key"]
PARAMS = ["q", "user", "target", "page", "item"]


def sql_vulnerable(i, rng):
    table = rng.choice(TABLES)
    column = rng.choice(COLUMNS)
    func = rng.choice(FUNCS)
    arg = rng.choice(ARGS)
    style = rng.randrange(3)
    if style == 0:
        build = f"    query = \"SELECT * FROM {table} WHERE {column} = '\" + {arg} + \"'\""
    elif style == 1:
        build = f"    query = \"SELECT * FROM {table} WHERE {column} = '%s'\" % {arg}"
    else:
        build = f"    query = f\"SELECT * FROM {table} WHERE {column} = '{{{arg}}}'\""
    return "\n".join(
        [
            f"def {func}_{table}_{i}(db, {arg}):",
            "    cursor = db.cursor()",
            build,
            "    cursor.execute(query)",
            "    return cursor.fetchall()",
        ]
    )


def sql_safe(i, rng):
    table = rng.choice(TABLES)
    column = rng.choice(COLUMNS)
    func = rng.choice(FUNCS)
    arg = rng.choice(ARGS)
    style = rng.randrange(2)
    if style == 0:
        build = f"    query = \"SELECT * FROM {table} WHERE {column} = ?\""
        execute = f"    cursor.execute(query, ({arg},))"
    else:
        build = f"    query = \"SELECT * FROM {table} WHERE {column} = :v\""
        execute = f"    cursor.execute(query, {{\"v\": {arg}}})"
    return "\n".join(
        [
            f"def {func}_{table}_{i}(db, {arg}):",
            "    cursor = db.cursor()",
            build,
            execute,
            "    return cursor.fetchall()",
        ]
    )


def xss_vulnerable(i, rng):
    param = rng.choice(PARAMS)
    style = rng.randrange(2)
    if style == 0:
        body = f"    return \"<h1>Hello \" + {param} + \"</h1>\""
    else:
        body = f"    return f\"<p>Results for {{{param}}}</p>\""
    return "\n".join(
        [
            f"def render_{param}_{i}(request):",
            f"    {param} = request.args.get(\"{param}\", \"\")",
            body,
        ]
    )


def xss_safe(i, rng):
    param = rng.choice(PARAMS)
    style = rng.randrange(2)
    if style == 0:
        body = f"    return \"<h1>Hello \" + escape({param}) + \"</h1>\""
    else:
        body = f"    return render_template(\"results.html\", {param}={param})"
    return "\n".join(
        [
            "from markupsafe import escape",
            "",
            f"def render_{param}_{i}(request):",
            f"    {param} = request.args.get(\"{param}\", \"\")",
            body,
        ]
    )


def write_dataset(path, vuln_class, records):
    with open(path, "w") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    print(f"wrote {path} ({len(records)} records)")


def make_records(vuln_class, vulnerable, safe, count, rng):
    records = []
    for i in range(count):
        label = i % 2
        code = vulnerable(i, rng) if label else safe(i, rng)
        records.append(
            {
                "id": f"{vuln_class}-{i:04d}",
                "code": code + "\n",
                "label": label,
                "vuln_class": vuln_class,
                "origin": "synthetic",
            }
        )
    return records


def main():
    rng = random.Random(20240501)
    write_dataset(
        HERE / "sql_injection.jsonl",
        "sql_injection",
        make_records("sql_injection", sql_vulnerable, sql_safe, 200, rng),
    )
    write_dataset(
        HERE / "xss.jsonl",
        "xss",
        make_records("xss", xss_vulnerable, xss_safe, 80, rng),
    )

    mixed = make_records("sql_injection", sql_vulnerable, sql_safe, 6, rng)
    mixed += make_records("xss", xss_vulnerable, xss_safe, 6, rng)
    write_dataset(HERE / "mixed.jsonl", "mixed", mixed)

    probe = HERE / "probe"
    probe.mkdir(exist_ok=True)
    (probe / "unsafe_query.py").write_text(sql_vulnerable(9001, rng) + "\n")
    (probe / "safe_query.py").write_text(sql_safe(9002, rng) + "\n")
    (probe / "broken.py").write_bytes(b"def broken():\n    return '\xff\xfe'\n")
    print(f"wrote {probe}/")


if __name__ == "__main__":
    main()
