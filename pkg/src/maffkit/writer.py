import json
import sys
from pathlib import Path

REPORT_FILES = ("report.json", "checks.csv", "report.md")


def dump_json(obj):
    # NaN and Infinity never reach an output file
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_json(path, obj):
    Path(path).write_text(dump_json(obj), encoding="utf-8")


def emit_json(obj, stream=None):
    (stream or sys.stdout).write(dump_json(obj))


def write_report(out_dir, report, checks, markdown):
    """Write a verify run to ``out_dir``; ``checks`` is the per-check polars frame."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path, csv_path, md_path = (out / name for name in REPORT_FILES)
    write_json(json_path, report)
    checks.write_csv(csv_path)
    md_path.write_text(markdown, encoding="utf-8")
    return out
