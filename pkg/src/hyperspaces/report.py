"""JSON run reports, their schema, and the human-readable rendering."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

EXIT_PASS, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("hyperspaces").joinpath("report.schema.json").read_text()
    return json.loads(text)


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` breaks the schema."""
    jsonschema.validate(report, schema())


def build(command: str, file, checks: list, elapsed: float, exit_code=None,
          error: str | None = None, **extra) -> dict:
    passed = error is None and all(c["passed"] for c in checks)
    if exit_code is None:
        exit_code = EXIT_PASS if passed else EXIT_VIOLATIONS
    report = {"command": command, "file": None if file is None else str(file),
              "passed": passed and exit_code == EXIT_PASS, "exit_code": exit_code,
              "elapsed_seconds": round(elapsed, 6), "checks": checks}
    if error is not None:
        report["error"] = error
    report.update(extra)
    return report


def _details_lines(details: dict, indent: str) -> list:
    lines = []
    for key, value in details.items():
        if key == "log":
            lines.append(f"{indent}{key}:")
            for step in value:
                lines.append(f"{indent}  step {step['index']}: source {step['source']}")
                if step["correction"] is not None:
                    lines.append(f"{indent}    coefficients [{', '.join(step['coefficients'])}]"
                                 f"  correction {step['correction']}")
                lines.append(f"{indent}    candidates {step['candidates']}"
                             f"  chosen {step['chosen']}")
        elif key == "rows":
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  " + json.dumps(row, sort_keys=False) for row in value]
        else:
            lines.append(f"{indent}{key}: {json.dumps(value)}")
    return lines


def render(report: dict) -> str:
    """Human-readable text carrying every fact in the JSON report."""
    head = f"{report['command']}"
    if report.get("file"):
        head += f" {report['file']}"
    lines = [head]
    for c in report["checks"]:
        lines.append(f"  [{'PASS' if c['passed'] else 'FAIL'}] {c['id']}")
        for key, values in c["bounds"].items():
            lines.append(f"      {key}: {', '.join(values)}")
        for v in c["violations"]:
            lines.append(f"      violation {v['axiom']} at ({', '.join(map(str, v['witness']))}):"
                         f" left {v['left']}, right {v['right']}")
        lines += _details_lines(c["details"], "      ")
    if "search" in report:
        s = report["search"]
        lines.append(f"  {s['kind']} order {s['order']}"
                     f"{' commutative' if s['commutative'] else ''}:"
                     f" {s['classes']} classes from {s['examined']} tables"
                     f"{' (partial: budget reached)' if s['partial'] else ''}")
        lines += [f"    {k}" for k in s["keys"]]
        if s.get("index"):
            lines.append(f"  index: {s['index']}")
    for f in report.get("files", []):
        lines.append(f"  wrote {f}")
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    verdict = "PASS" if report["passed"] else "FAIL"
    lines.append(f"{verdict} (exit {report['exit_code']}, {report['elapsed_seconds']:.3f} s)")
    return "\n".join(lines)
