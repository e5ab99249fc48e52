import time

import polars as pl

from maffkit.verify import get_suites
from maffkit.writer import write_report

CHECK_COLUMNS = ("suite", "case", "dim", "check", "observed", "limit", "passed")


def select_suites(name):
    suites = get_suites()
    if name == "all":
        return suites
    chosen = [s for s in suites if s.name == name]
    if not chosen:
        raise KeyError(name)
    return chosen


def checks_frame(records):
    rows = [r for rec in records for r in rec.rows]
    if not rows:
        return pl.DataFrame(schema={c: pl.Utf8 for c in CHECK_COLUMNS})
    return pl.DataFrame(rows).select(list(CHECK_COLUMNS)).sort(["suite", "case", "check"])


def summarize(checks):
    if checks.is_empty():
        return []
    out = (
        checks.group_by(["suite", "check"])
        .agg(
            pl.len().alias("cases"),
            (~pl.col("passed")).sum().alias("failed"),
            pl.col("observed").max().alias("worst"),
            pl.col("limit").first().alias("limit"),
        )
        .sort(["suite", "check"])
    )
    return out.to_dicts()


def render_report_md(report, summary, notes):
    md = []
    md.append("# Verification: %s\n" % report["suite"])
    md.append("## Overview\n")
    for k in ["suite", "seed", "cases_run", "wall_time_s"]:
        md.append("- **%s**: %s" % (k, report.get(k)))
    md.append("- **failures**: %d" % len(report["failures"]))

    if summary:
        md.append("\n## Checks\n")
        md.append("| suite | check | cases | failed | worst | limit |")
        md.append("|---|---|---|---|---|---|")
        for row in summary:
            md.append("| %s | %s | %d | %d | %.3e | %.1e |" % (
                row["suite"], row["check"], row["cases"], row["failed"], row["worst"], row["limit"],
            ))

    if notes:
        md.append("\n## Notes\n")
        for n in notes:
            md.append("- %s" % n)

    md.append("")
    return "\n".join(md)


def _case_count(cases, name):
    if isinstance(cases, dict):
        return int(cases[name])
    return int(cases)


def run_verify(suite, seed, cases, dims, tol, output, log, samples=2000):
    """Run the named suites and return (report, exit_code).

    ``cases`` is either one count for every suite or a mapping suite name -> count.
    """
    suites = select_suites(suite)
    log.info("Enabled suites: %s", ", ".join([s.name for s in suites]))

    ctx = {
        "seed": int(seed),
        "dims": [int(d) for d in dims],
        "tol": tol,
        "samples": int(samples),
        "log": log,
    }

    start = time.perf_counter()
    records = []
    notes = []
    for s in suites:
        suite_ctx = dict(ctx, cases=_case_count(cases, s.name))
        log.info("Running suite: %s (%d cases)", s.name, suite_ctx["cases"])
        t0 = time.perf_counter()
        try:
            got = s.run(suite_ctx)
        except Exception as e:
            msg = "Suite '%s' failed: %s" % (s.name, str(e))
            log.exception(msg)
            notes.append(msg)
            continue
        bad = sum(1 for r in got if not r.passed)
        log.info("Suite %s: %d cases, %d failing (%.2fs)", s.name, len(got), bad, time.perf_counter() - t0)
        records.extend(got)

    order = {s.name: i for i, s in enumerate(suites)}
    records.sort(key=lambda r: (order[r.suite], r.index))
    failures = [f for r in records for f in r.failures()]
    failures.extend({"suite": "pipeline", "check": "error", "error": n} for n in notes)

    report = {
        "suite": suite,
        "seed": int(seed),
        "cases_run": len(records),
        "failures": failures,
        "wall_time_s": round(time.perf_counter() - start, 3),
        "tolerance": tol.as_dict(),
    }

    if output is not None:
        checks = checks_frame(records)
        out_dir = write_report(output, report, checks, render_report_md(report, summarize(checks), notes))
        log.info("Output written to: %s", out_dir.resolve())

    if failures:
        log.warning("Verification failed: %d failing checks", len(failures))
        return report, 1
    log.info("Done. Cases run: %d", len(records))
    return report, 0
