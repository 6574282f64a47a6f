"""The S/F text format and report rendering (human, json, csv).

S/F format: one set per line as n space-separated 0/1 tokens (leftmost token
is element 1) followed by a marker. An ``S`` row is a family member; the
``F`` row right after it is its partner in the filter.
"""

from __future__ import annotations

import json
import re
from typing import Any, Sequence

from .closure import ClosureResult, SweepRow
from .core import ElementSet, PairedSystem
from .errors import SfParseError
from .verify import VerificationReport

CSV_HEADER = "x,n,family_size,closure_size,formula_value,matches,ratio"
FORMATS = ("human", "json", "csv")

_SPACES = re.compile(" +")
_NUMBER = re.compile(r"-?\d+(\.\d+)?")


def encode_set(s: ElementSet) -> str:
    return " ".join("1" if s.bits >> i & 1 else "0" for i in range(s.universe_size))


def emit_sf(sys: PairedSystem) -> str:
    lines = []
    for small, large in sys:
        lines.append(encode_set(small) + " S")
        lines.append(encode_set(large) + " F")
    return "\n".join(lines) + "\n"


def parse_sf(text: str) -> PairedSystem:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SfParseError(1, "empty document")
    n = None
    rows: list[ElementSet] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        tokens = _SPACES.split(line.strip(" "))
        if tokens == [""]:
            raise SfParseError(lineno, "blank line")
        *bit_tokens, marker = tokens
        expected = "S" if len(rows) % 2 == 0 else "F"
        if marker not in ("S", "F"):
            raise SfParseError(lineno, f"marker must be S or F, got {marker!r}")
        if marker != expected:
            raise SfParseError(lineno, f"expected an {expected} row, got {marker}")
        if n is None:
            n = len(bit_tokens)
            if n == 0:
                raise SfParseError(lineno, "row has no set tokens")
        elif len(bit_tokens) != n:
            raise SfParseError(lineno, f"expected {n} set tokens, got {len(bit_tokens)}")
        bits = 0
        for i, tok in enumerate(bit_tokens):
            if tok == "1":
                bits |= 1 << i
            elif tok != "0":
                raise SfParseError(lineno, f"token {i + 1} is {tok!r}, expected 0 or 1")
        rows.append(ElementSet(n, bits))
    if len(rows) % 2:
        raise SfParseError(len(lines), "odd number of rows; last S row has no F partner")
    pairs = list(zip(rows[::2], rows[1::2]))
    seen_s: dict[int, int] = {}
    seen_f: dict[int, int] = {}
    for i, (s, f) in enumerate(pairs):
        for seen, row, line_no in ((seen_s, s, 2 * i + 1), (seen_f, f, 2 * i + 2)):
            if row.bits in seen:
                raise SfParseError(line_no, f"duplicate set, first seen on line {seen[row.bits]}")
            seen[row.bits] = line_no
    return PairedSystem(n, pairs)


def format_ratio(r, places: int = 6) -> str:
    """Exact half-up decimal rendering of a non-negative fraction."""
    scaled = (r.numerator * 10 ** places * 2 + r.denominator) // (2 * r.denominator)
    whole, frac = divmod(scaled, 10 ** places)
    return f"{whole}.{frac:0{places}d}"


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    numeric = [all(_NUMBER.fullmatch(r[i]) for r in cells[1:]) for i in range(len(header))]
    out = []
    for k, row in enumerate(cells):
        out.append("  ".join(c.rjust(w) if num else c.ljust(w)
                             for c, w, num in zip(row, widths, numeric)).rstrip())
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def system_to_json(sys: PairedSystem) -> dict:
    return {
        "x": min(len(s) for s, _ in sys),
        "n": sys.universe_size,
        "pairs": [{"index": i, "S": s.elements(), "F": f.elements()}
                  for i, (s, f) in enumerate(sys)],
    }


def report_to_json(report: VerificationReport) -> dict:
    checks = {
        "subset_condition": report.subset_ok,
        "non_interference": report.non_interference_ok,
        "filter": report.filter_ok,
    }
    checks.update({lint.name: lint.passed for lint in report.lint_results})
    ab = report.abundance
    return {
        "x": report.min_size,
        "n": report.universe_size,
        "checks": checks,
        "abundance": {"holds": ab.holds, "best_element": ab.best_element,
                      "best_count": ab.best_count, "threshold_count": ab.threshold_count},
        "counterexample": report.is_counterexample,
        "lints": [{"name": l.name, "description": l.description, "passed": l.passed,
                   "witness": l.witness} for l in report.lint_results],
        "witnesses": [{"check": w.check, "indices": list(w.indices),
                       "explanation": w.explanation} for w in report.violation_witnesses],
    }


def closure_to_json(result: ClosureResult, include_sets: bool = False) -> dict:
    out = {
        "x": min(len(g) for g in result.generators),
        "n": result.generators.universe_size,
        "family_size": result.generator_count,
        "closure_size": result.size,
        "ratio": f"{result.ratio.numerator}/{result.ratio.denominator}",
        "ratio_decimal": format_ratio(result.ratio),
        "histogram": {str(k): v for k, v in result.histogram.items()},
    }
    if include_sets:
        out["closure"] = [m.elements() for m in result.closure]
    return out


def sweep_to_json(rows: Sequence[SweepRow]) -> dict:
    return {"rows": [{
        "x": r.x, "n": r.n, "family_size": r.family_size, "closure_size": r.closure_size,
        "formula_value": r.formula_value, "matches": r.matches,
        "ratio": f"{r.ratio.numerator}/{r.ratio.denominator}",
        "ratio_decimal": format_ratio(r.ratio),
    } for r in rows]}


def _sweep_csv(rows: Sequence[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.x},{r.n},{r.family_size},{r.closure_size},{r.formula_value},"
                     f"{str(r.matches).lower()},{format_ratio(r.ratio)}")
    return "\n".join(lines) + "\n"


def _report_human(report: VerificationReport) -> str:
    yes = {True: "pass", False: "FAIL"}
    ab = report.abundance
    rows = [
        ("subset condition", yes[report.subset_ok]),
        ("non-interference", yes[report.non_interference_ok]),
        ("filter", yes[report.filter_ok]),
    ]
    rows += [(f"{l.name} {l.description}", yes[l.passed]) for l in report.lint_results]
    out = [f"n = {report.universe_size}, minimum set size x = {report.min_size}\n",
           _table(("check", "result"), rows),
           f"\nabundance: max frequency {ab.best_count} (element {ab.best_element}), "
           f"threshold {ab.threshold_count} -> {'holds' if ab.holds else 'fails'}\n"]
    if report.violation_witnesses:
        out.append("\nwitnesses:\n")
        for w in report.violation_witnesses:
            idx = ",".join(map(str, w.indices))
            out.append(f"  [{w.check}{' ' + idx if idx else ''}] {w.explanation}\n")
    verdict = "valid counterexample" if report.is_counterexample else "not a counterexample"
    out.append(f"\nverdict: {verdict}\n")
    return "".join(out)


def _closure_human(result: ClosureResult, include_sets: bool) -> str:
    r = result.ratio
    out = [f"n = {result.generators.universe_size}\n",
           f"|S| = {result.generator_count}\n",
           f"|cl(S)| = {result.size}\n",
           f"ratio = {r.numerator}/{r.denominator} = {format_ratio(r)}\n"]
    if result.histogram:
        out.append("\n" + _table(("size", "count"), list(result.histogram.items())))
    if include_sets:
        out.append("\n")
        out.extend(" ".join(map(str, m.elements())) + "\n" for m in result.closure)
    return "".join(out)


def emit_report(obj, fmt: str = "human", *, histogram: bool = True,
                list_sets: bool = False) -> str:
    """Render a VerificationReport, ClosureResult, PairedSystem or list of SweepRows."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, (list, tuple)) and all(isinstance(r, SweepRow) for r in obj):
        if fmt == "csv":
            return _sweep_csv(obj)
        if fmt == "json":
            return json.dumps(sweep_to_json(obj), indent=2) + "\n"
        return _table(("x", "n", "|S|", "|cl(S)|", "formula", "match", "ratio"),
                      [(r.x, r.n, r.family_size, r.closure_size, r.formula_value,
                        "yes" if r.matches else "no", format_ratio(r.ratio)) for r in obj])
    if fmt == "csv":
        raise ValueError("csv output is only available for sweep rows")
    if isinstance(obj, VerificationReport):
        if fmt == "json":
            return json.dumps(report_to_json(obj), indent=2) + "\n"
        return _report_human(obj)
    if isinstance(obj, ClosureResult):
        if fmt == "json":
            data = closure_to_json(obj, include_sets=list_sets)
            if not histogram:
                data.pop("histogram")
            return json.dumps(data, indent=2) + "\n"
        if not histogram:
            obj = ClosureResult(obj.generators, obj.closure, {})
        return _closure_human(obj, list_sets)
    if isinstance(obj, PairedSystem):
        if fmt == "json":
            return json.dumps(system_to_json(obj), indent=2) + "\n"
        return emit_sf(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
