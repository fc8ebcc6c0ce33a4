"""Command-line front end.

Vectors are comma-separated integers with no spaces (``12,-5,17,5``); when a
value starts with a minus sign pass it as ``--k=-1,2,3,4``.  Words use the ASCII
encoding a b g d e (apostrophe = inverse, ``^n`` = power).

Exit codes: 0 for any computed result (NotEquivalent included), 2 for usage and
parse errors, 3 for inputs outside the arithmetic domain of an operation.
"""

from __future__ import annotations

import argparse
import contextlib
import datetime
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from typing import Any, Callable

from . import __version__
from .equivalence import Outcome, Verdict, decide_extended, decide_homological, zero_slope_screen
from .errors import ArithmeticDomainError, GoeritzError, ParseError
from .factorization import factor_block
from .homology import Block2Matrix, HomologyVector, split_product
from .ttk import TtkParams, admissible_qm, family_pair, family_zero_slope, ttk_homology, verify_case
from .words import apply4, epsilon_parity, evaluate, first_block, is_goeritz_form, parse_word, verify_relators

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

THREADS_ENV = "GOERITZ_THREADS"

_INT = re.compile(r"[+-]?\d+")


class UsageError(Exception):
    pass


def load_schema() -> dict:
    text = resources.files("goeritz").joinpath("schemas/report.schema.json").read_text("utf-8")
    return json.loads(text)


# -- input parsing ----------------------------------------------------------


def parse_ints(text: str, count: int, what: str, separators: str = ",") -> list[int]:
    values = []
    pos = 0
    while True:
        match = _INT.match(text, pos)
        if not match:
            raise ParseError(f"expected a signed integer in {what}", text, pos)
        values.append(int(match.group()))
        pos = match.end()
        if pos == len(text):
            break
        if text[pos] not in separators:
            raise ParseError(f"unexpected character {text[pos]!r} in {what}", text, pos)
        pos += 1
    if len(values) != count:
        raise ParseError(f"{what} needs {count} integers, got {len(values)}", text)
    return values


def parse_vector(value: Any) -> HomologyVector:
    if isinstance(value, str):
        return HomologyVector.of(parse_ints(value, 4, "vector"))
    if isinstance(value, (list, tuple)):
        return HomologyVector.of(value)
    raise ParseError(f"cannot read a vector from {value!r}")


def parse_block(value: Any) -> Block2Matrix:
    """``s,t,u,v`` row-major, ``s,t;u,v``, or nested rows from JSON."""
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            try:
                return Block2Matrix.from_rows(json.loads(text))
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed block: {exc.msg}", text, exc.pos) from None
        return Block2Matrix(*parse_ints(text, 4, "block", ",;"))
    if isinstance(value, (list, tuple)) and len(value) == 4 and not isinstance(value[0], list):
        return Block2Matrix(*value)
    return Block2Matrix.from_rows(value)


# -- operations (shared by single commands and batch items) -----------------


def _combined_outcome(verdicts: dict[str, Verdict]) -> Outcome:
    outcomes = [v.outcome for v in verdicts.values()]
    if Outcome.Equivalent in outcomes:
        return Outcome.Equivalent
    if all(o is Outcome.NotEquivalent for o in outcomes):
        return Outcome.NotEquivalent
    return Outcome.Undecidable


def op_decide(k, kp, extended: bool = False, zero_slope: bool = False) -> dict:
    k, kp = parse_vector(k), parse_vector(kp)
    if zero_slope:
        mode, verdicts = "zero-slope-screen", {"screen": zero_slope_screen(k, kp)}
    elif extended:
        plain, swapped = decide_extended(k, kp)
        mode, verdicts = "extended", {"plain": plain, "epsilon": swapped}
    else:
        mode, verdicts = "plain", {"plain": decide_homological(k, kp)}
    return {
        "k": k.to_json(),
        "kp": kp.to_json(),
        "mode": mode,
        "outcome": _combined_outcome(verdicts).value,
        "verdicts": {name: v.to_json() for name, v in verdicts.items()},
    }


def op_sp(vector) -> dict:
    k = parse_vector(vector)
    return {"vector": k.to_json(), "split_product": split_product(k)}


def op_factor(block) -> dict:
    return factor_block(parse_block(block)).to_json()


def op_word_eval(word, vector=None) -> dict:
    w = parse_word(word) if isinstance(word, str) else _word_from_json(word)
    matrix = evaluate(w)
    goeritz = is_goeritz_form(matrix)
    image = apply4(matrix, parse_vector(vector)).to_json() if vector is not None else None
    return {
        "word": w.to_json(),
        "word_ascii": w.ascii(),
        "matrix": [list(row) for row in matrix],
        "epsilon_parity": epsilon_parity(w),
        "goeritz_form": goeritz,
        "block": first_block(matrix).rows() if goeritz else None,
        "image": image,
    }


def _word_from_json(data):
    from .words import GoeritzWord

    return GoeritzWord.from_json(data)


def op_verify_relators() -> dict:
    report = verify_relators()
    passed = sum(c.identity for c in report.checks)
    return {
        "passed": passed,
        "total": len(report.checks),
        "presentations": {
            name: list(report.count(name)) for name in ("extended", "goeritz")
        },
        "failures": [f"{c.presentation}:{c.label}" for c in report.failures],
        "checks": [
            {
                "presentation": c.presentation,
                "label": c.label,
                "word": c.word.ascii(),
                "identity": c.identity,
            }
            for c in report.checks
        ],
    }


def op_ttk(family: str = "general", **params) -> dict:
    if family == "general":
        values = {name: params[name] for name in ("p", "q", "r", "n")}
        k = ttk_homology(TtkParams(**values))
        out = {"family": family, "params": values, "vector": k.to_json()}
    elif family == "zero-slope":
        values = {name: params[name] for name in ("r", "q")}
        k = family_zero_slope(**values)
        out = {"family": family, "params": values, "vector": k.to_json()}
    elif family == "pair":
        values = {name: params[name] for name in ("k", "q", "m")}
        k, k2 = family_pair(**values)
        out = {"family": family, "params": values, "vector": k.to_json(), "vector2": k2.to_json()}
    else:
        raise UsageError(f"unknown family {family!r}")
    for name, value in out["params"].items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise ArithmeticDomainError(f"{name} must be an exact integer, got {value!r}")
    out["split_product"] = split_product(k)
    return out


def op_case(q, m) -> dict:
    return verify_case(q, m).to_json()


def op_sweep(qmax: int, qmin: int = 3) -> dict:
    cases = []
    for q, m in admissible_qm(qmax):
        if q < qmin:
            continue
        report = verify_case(q, m)
        cases.append({"q": q, "m": m, "passed": report.passed, "failures": report.failures})
    return {
        "qmax": qmax,
        "total": len(cases),
        "passed": sum(c["passed"] for c in cases),
        "cases": cases,
    }


BATCH_OPS: dict[str, Callable[..., dict]] = {
    "decide": lambda item: op_decide(
        item["k"], item["kp"], item.get("extended", False), item.get("zero_slope_screen", False)
    ),
    "decide-extended": lambda item: op_decide(item["k"], item["kp"], extended=True),
    "screen": lambda item: op_decide(item["k"], item["kp"], zero_slope=True),
    "factor": lambda item: op_factor(item["block"]),
    "sp": lambda item: op_sp(item["vector"]),
    "ttk": lambda item: op_ttk(
        item.get("family", "general"),
        **{key: value for key, value in item.items() if key not in ("op", "family")},
    ),
    "case": lambda item: op_case(item["q"], item["m"]),
    "verify-relators": lambda item: op_verify_relators(),
}


def _error_record(exc: BaseException) -> dict:
    if isinstance(exc, KeyError):
        return {"type": "MissingField", "message": f"missing field {exc.args[0]!r}"}
    return {"type": type(exc).__name__, "message": str(exc)}


def _run_item(indexed: tuple[int, Any]) -> dict:
    index, item = indexed
    try:
        if not isinstance(item, dict):
            raise ParseError(f"batch item must be an object, got {type(item).__name__}")
        op = item.get("op")
        if op not in BATCH_OPS:
            raise UsageError(f"unknown op {op!r}; expected one of {sorted(BATCH_OPS)}")
        return {"index": index, "input": item, "result": BATCH_OPS[op](item), "error": None}
    except (GoeritzError, UsageError, KeyError, TypeError, ValueError) as exc:
        return {"index": index, "input": item, "result": None, "error": _error_record(exc)}


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None


def run_batch(items: list) -> dict:
    """Run every item independently; the report keeps input order."""
    workers = thread_count()
    indexed = list(enumerate(items))
    if workers > 1 and len(indexed) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_item, indexed))
    else:
        records = [_run_item(pair) for pair in indexed]
    summary = {o.value: 0 for o in Outcome}
    summary.update(computed=0, error=0)
    for record in records:
        if record["error"] is not None:
            summary["error"] += 1
        elif "outcome" in record["result"]:
            summary[record["result"]["outcome"]] += 1
        else:
            summary["computed"] += 1
    return {"items": records, "summary": summary}


def read_batch(source: str, stdin) -> list:
    try:
        if source == "-":
            text = stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"batch input is not JSON: {exc.msg}", "", exc.pos) from None
    if isinstance(data, dict):
        data = data.get("items")
    if not isinstance(data, list):
        raise ParseError("batch input must be a list of items or an object with an 'items' list")
    return data


# -- human-readable rendering -----------------------------------------------


def _render_verdict(name: str, verdict: dict) -> list[str]:
    lines = [f"{name}: {verdict['outcome']}"]
    if verdict["failed_conditions"]:
        lines.append(f"  failed conditions: {', '.join(verdict['failed_conditions'])}")
    for w in verdict["witnesses"]:
        mark = "certified" if w["certified"] else "NOT certified"
        lines.append(f"  witness d={w['d']:+d} block {w['block']} word {w['word_ascii'] or '1'} ({mark})")
    for route in verdict["routes"]:
        systems = ", ".join(f"d={d}: {s}" for d, s in route["systems"].items()) or "gcd mismatch"
        lines.append(f"  route {route['name']} -> {route['target']}: {systems}")
    for note in verdict["notes"]:
        lines.append(f"  note: {note}")
    return lines


def render_human(command: str, result: dict) -> str:
    if command == "sp":
        return str(result["split_product"])
    if command in ("decide", "screen"):
        lines = [f"k = {result['k']}, k' = {result['kp']} ({result['mode']})"]
        for name, verdict in result["verdicts"].items():
            lines += _render_verdict(name, verdict)
        return "\n".join(lines)
    if command == "factor":
        status = "certified" if result["certified"] else "NOT certified"
        return f"{result['word_ascii'] or '1'}\n({status}; R-word {' '.join(result['r_word']) or '1'})"
    if command == "word-eval":
        lines = [" ".join(f"{v:4d}" for v in row) for row in result["matrix"]]
        lines.append(f"epsilon parity: {result['epsilon_parity']}")
        if result["block"] is not None:
            lines.append(f"Goeritz form with first block {result['block']}")
        if result["image"] is not None:
            lines.append(f"image: {result['image']}")
        return "\n".join(lines)
    if command == "verify-relators":
        ok, total = result["presentations"]["extended"]
        lines = [f"{ok}/{total} relators map to identity"]
        ok, total = result["presentations"]["goeritz"]
        lines.append(f"{ok}/{total} relators of the plain presentation map to identity")
        lines += [f"  FAILED {label}" for label in result["failures"]]
        return "\n".join(lines)
    if command == "ttk":
        text = f"{result['vector']} (split product {result['split_product']})"
        if "vector2" in result:
            text += f"\n{result['vector2']}"
        return text
    if command == "case":
        lines = [f"(q, m) = ({result['q']}, {result['m']}): k1 = {result['k1']}, k2 = {result['k2']}"]
        for check in result["checks"]:
            detail = f"  [{check['detail']}]" if check["detail"] else ""
            lines.append(f"  {check['status']:4s} {check['tag']}{detail}")
        lines.append("all checks pass" if result["passed"] else f"failures: {', '.join(result['failures'])}")
        return "\n".join(lines)
    if command == "sweep":
        lines = [f"{result['passed']}/{result['total']} cases pass (q <= {result['qmax']})"]
        lines += [
            f"  ({c['q']}, {c['m']}): {', '.join(c['failures'])}" for c in result["cases"] if not c["passed"]
        ]
        return "\n".join(lines)
    if command == "batch":
        lines = []
        for record in result["items"]:
            op = record["input"].get("op", "?") if isinstance(record["input"], dict) else "?"
            if record["error"]:
                lines.append(f"[{record['index']}] {op}: error {record['error']['type']}: {record['error']['message']}")
            else:
                res = record["result"]
                lines.append(f"[{record['index']}] {op}: {res.get('outcome', 'ok')}")
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in result["summary"].items()))
        return "\n".join(lines)
    return json.dumps(result, indent=2)


# -- argument parsing -------------------------------------------------------


def _int_arg(text: str) -> int:
    try:
        return parse_ints(text, 1, "integer")[0]
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--metadata", action="store_true", default=argparse.SUPPRESS,
                        help="add a timestamp and version to JSON output")

    parser = argparse.ArgumentParser(
        prog="goeritz",
        description="Homological Goeritz equivalence of curves on the genus-2 Heegaard surface.",
        epilog="Values starting with '-' need the --opt=value form, e.g. --k=-1,0,2,3.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--metadata", action="store_true", help="add a timestamp and version to JSON output")
    parser.add_argument("--schema", action="store_true", help="print the JSON report schema and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("sp", parents=[common], help="split product ab + xy")
    p.add_argument("--vector", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide homological Goeritz equivalence")
    p.add_argument("--k", required=True)
    p.add_argument("--kp", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--extended", action="store_true", help="also try the handlebody swap")
    mode.add_argument("--zero-slope-screen", action="store_true",
                      help="obstruction screen for split-orthogonal vectors")

    p = sub.add_parser("screen", parents=[common], help="zero-slope obstruction screen")
    p.add_argument("--k", required=True)
    p.add_argument("--kp", required=True)

    p = sub.add_parser("factor", parents=[common], help="Goeritz word for a unimodular block")
    p.add_argument("--block", required=True, help="s,t,u,v (row-major) or s,t;u,v")

    p = sub.add_parser("word-eval", parents=[common], help="homology action of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--vector", help="also apply the action to this vector")

    sub.add_parser("verify-relators", parents=[common], help="check every relator maps to identity")

    p = sub.add_parser("ttk", parents=[common], help="homology class of a twisted torus knot")
    p.add_argument("--family", choices=["general", "zero-slope", "pair"], default="general")
    for name in ("p", "q", "r", "n", "k", "m"):
        p.add_argument(f"--{name}", type=_int_arg)

    p = sub.add_parser("case", parents=[common], help="full k = 1 report for one (q, m)")
    p.add_argument("--q", type=_int_arg, required=True)
    p.add_argument("--m", type=_int_arg, required=True)

    p = sub.add_parser("sweep", parents=[common], help="verify every admissible (q, m) up to qmax")
    p.add_argument("--qmax", type=_int_arg, required=True)
    p.add_argument("--qmin", type=_int_arg, default=3)

    p = sub.add_parser("batch", parents=[common], help="run a JSON list of requests")
    p.add_argument("source", nargs="?", default="-", help="JSON file, or - for stdin")
    return parser


_TTK_FIELDS = {"general": ("p", "q", "r", "n"), "zero-slope": ("r", "q"), "pair": ("k", "q", "m")}


def _dispatch(args: argparse.Namespace, stdin) -> dict:
    cmd = args.command
    if cmd == "sp":
        return op_sp(args.vector)
    if cmd == "decide":
        return op_decide(args.k, args.kp, args.extended, args.zero_slope_screen)
    if cmd == "screen":
        return op_decide(args.k, args.kp, zero_slope=True)
    if cmd == "factor":
        return op_factor(args.block)
    if cmd == "word-eval":
        return op_word_eval(args.word, args.vector)
    if cmd == "verify-relators":
        return op_verify_relators()
    if cmd == "ttk":
        fields = _TTK_FIELDS[args.family]
        missing = [f"--{f}" for f in fields if getattr(args, f) is None]
        if missing:
            raise UsageError(f"family {args.family} needs {' '.join(missing)}")
        return op_ttk(args.family, **{f: getattr(args, f) for f in fields})
    if cmd == "case":
        return op_case(args.q, args.m)
    if cmd == "sweep":
        return op_sweep(args.qmax, args.qmin)
    if cmd == "batch":
        return run_batch(read_batch(args.source, stdin))
    raise UsageError(f"unknown command {cmd!r}")


def _emit_json(envelope: dict) -> str:
    return json.dumps(envelope, indent=2, sort_keys=False) + "\n"


def run(argv: list[str], stdin=None) -> tuple[int, str, str]:
    """Execute one invocation; returns (exit code, stdout text, stderr text)."""
    stdin = sys.stdin if stdin is None else stdin
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), out.getvalue(), err.getvalue()

    if args.schema:
        return EXIT_OK, json.dumps(load_schema(), indent=2) + "\n", ""
    if args.command is None:
        return EXIT_USAGE, "", parser.format_usage() + "goeritz: error: a command is required\n"

    envelope: dict[str, Any] = {"command": args.command}
    if args.metadata:
        envelope["metadata"] = {
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "version": __version__,
        }
    try:
        result = _dispatch(args, stdin)
    except (ParseError, UsageError) as exc:
        code, error = EXIT_USAGE, exc
    except GoeritzError as exc:
        code, error = EXIT_DOMAIN, exc
    else:
        envelope["result"] = result
        text = _emit_json(envelope) if args.json else render_human(args.command, result) + "\n"
        return EXIT_OK, text, ""

    envelope["error"] = _error_record(error)
    message = f"goeritz {args.command}: {type(error).__name__}: {error}\n"
    return code, (_emit_json(envelope) if args.json else ""), message


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
