"""Runs the CLI in JSON mode and checks reports against the shipped schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

MINIMAL = "bp(p, s, e).\nstart_event(s).\nend_event(e).\nseq(s, e, p).\n"
DEADLOCK = (
    "bp(p, s, e).\nstart_event(s).\nend_event(e).\nexc_branch(x).\npar_merge(m).\n"
    "task(a).\ntask(b).\nseq(s, x, p).\nseq(x, a, p).\nseq(x, b, p).\n"
    "seq(a, m, p).\nseq(b, m, p).\nseq(m, e, p).\n"
)
CLOSED_ORDER = (
    "final(ho) AND tf(O, rdf:type, bro:PurchaseOrder) AND NOT tf(O, rdf:type, bro:ClosedPO)"
)

failures = []


def check(ok, what):
    if not ok:
        failures.append(what)


def main():
    cli, data = sys.argv[1], sys.argv[2]
    with open(os.path.join(data, "schemas", "report.schema.json")) as f:
        validator = jsonschema.Draft202012Validator(json.load(f))
    ho = os.path.join(data, "handle_order")
    ho_args = [
        "--bps", os.path.join(ho, "handle_order.bps"),
        "--triples", os.path.join(ho, "reference.dl"),
        "--ann", os.path.join(ho, "handle_order.ann"),
    ]
    tmp = tempfile.mkdtemp()

    def write(name, text):
        path = os.path.join(tmp, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    minimal = ["--bps", write("minimal.bps", MINIMAL)]
    deadlock = ["--bps", write("deadlock.bps", DEADLOCK)]

    def run(args, expected_code, fmt="json"):
        proc = subprocess.run([cli] + args + ["--format", fmt], capture_output=True, text=True, timeout=120)
        label = " ".join(args)
        check(proc.returncode == expected_code,
              f"{label}: exit {proc.returncode}, expected {expected_code}\n{proc.stdout}{proc.stderr}")
        if fmt != "json":
            return proc.stdout
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            check(False, f"{label}: not JSON ({e})")
            return {}
        for error in validator.iter_errors(report):
            check(False, f"{label}: {error.json_path}: {error.message}")
        check(report.get("exit_code") == proc.returncode, f"{label}: exit_code field disagrees")
        return report

    # Minimal process: every property passes.
    report = run(["verify"] + minimal, 0)
    verdicts = {r["property"]: r["holds"] for r in report.get("results", [])}
    check(verdicts == {"option_to_complete": True, "inconsistency": False,
                       "non_executable_activities": False, "consistency_condition": True},
          f"minimal verify verdicts {verdicts}")
    run(["validate"] + minimal, 0)
    report = run(["trace-gen", "--max-len", "4"] + minimal, 0)
    check(report.get("traces") == [["complete(s)", "complete(e)"]], "minimal trace-gen")
    report = run(["trace-check", "[complete(s), complete(e)]"] + minimal, 0)
    check(report.get("correct") is True, "minimal trace-check")
    run(["trace-check", "[complete(s)]"] + minimal, 1)

    # Handle Order.
    run(["validate"] + ho_args, 0)
    first = run(["space", "--dump"] + ho_args, 0)
    second = run(["space", "--dump"] + ho_args, 0)
    check(first.get("space") == second.get("space"), "space counts differ across runs")
    check(first.get("graph") == second.get("graph"), "state graph differs across runs")
    report = run(["verify"] + ho_args, 0)
    check(all(r["holds"] != (r["property"] in ("inconsistency", "non_executable_activities"))
              for r in report.get("results", [])), "Handle Order verify verdicts")
    report = run(["verify", "--rule", CLOSED_ORDER] + ho_args, 1)
    rule = [r for r in report.get("results", []) if r["property"].startswith("compliance")]
    check(len(rule) == 1 and rule[0]["holds"] is False and rule[0].get("bindings") == [{"O": "o"}],
          f"closed-order rule verdict {rule}")
    text = run(["verify", "--rule", CLOSED_ORDER] + ho_args, 1, fmt="text")
    check("compliance " + CLOSED_ORDER + ": does not hold" in text, "text and JSON disagree on the rule")
    report = run(["query", os.path.join(ho, "queries.qbp")] + ho_args, 0)
    answers = report.get("queries", [])
    check(len(answers) == 4, "query file yields four answers")
    if len(answers) == 4:
        check(answers[0]["rows"] == [["delivering"]], "q1 answer")
        check(["create_order", "ho"] in answers[2]["rows"], "q3 answer")
        check(answers[3]["boolean"] is True, "noncompliance pattern not satisfied")

    # Failing properties and input errors.
    run(["verify"] + deadlock, 1)
    run(["validate", "--bps", os.path.join(tmp, "missing.bps")], 2)
    run(["validate", "--bps", write("bad.bps", "seq(s, e\n")], 2)
    run(["space", "--budget", "3"] + ho_args, 2)
    run(["query", "SELECT ?a WHERE [EU(en(?a, ho), true) | ho] AND NOT task(?a)"] + ho_args, 2)

    for f in failures:
        print("FAIL:", f)
    print(f"{'ok' if not failures else 'failed'}: {len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
