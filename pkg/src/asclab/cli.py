"""Command-line interface: apply, witness, gset, verify.

Every invocation writes exactly one JSON (or CSV / Markdown) document to
stdout and human diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import operations as ops
from . import search, witnesses
from .automata import Dfa, asc, minimize, sc
from .errors import (AsclabError, DomainError, InvalidInputError, MagicNumberError,
                     NotFoundError)
from .records import apply_operation
from .textformat import format_automaton, load_automaton, parse_automaton

SCHEMA = "asclab/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_MAGIC, EXIT_NOT_FOUND = 0, 1, 2, 3, 4, 5

APPLY_OPERATIONS = {
    "complement": 1, "star": 1, "plus": 1, "reversal": 1, "reverse_generic": 1,
    "union": 2, "intersection": 2, "difference": 2, "right_quotient": 2,
    "quotient": 2, "left_quotient": 2,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def _read_automaton(spec: str) -> Dfa:
    """A path to an automaton file, or inline text such as ``word:101``."""
    path = Path(spec)
    if path.is_file():
        return load_automaton(path)
    if spec.startswith("word:"):
        return parse_automaton(spec)
    raise InvalidInputError(f"no such automaton file: {spec}")


def _apply(op: str, automata: list[Dfa]) -> Dfa:
    if op == "reverse_generic":
        return ops.reverse_generic(automata[0])
    if op == "left_quotient":
        return ops.left_quotient(automata[0], automata[1])
    if op == "quotient":
        op = "right_quotient"
    return apply_operation(op, *automata)


def cmd_apply(args) -> tuple[dict, int]:
    arity = APPLY_OPERATIONS[args.operation]
    files = [f for f in (args.file_a, args.file_b) if f is not None]
    if len(files) != arity:
        raise InvalidInputError(f"{args.operation} takes {arity} automaton file(s)")
    result = _apply(args.operation, [_read_automaton(f) for f in files])
    if args.minimize:
        result = minimize(result)
    payload = {"automaton": format_automaton(result), "minimized": args.minimize,
               "states": result.state_count, "sc": sc(result), "asc": asc(result)}
    return payload, EXIT_OK


def cmd_witness(args) -> tuple[dict, int]:
    if args.m is None or args.alpha is None:
        raise InvalidInputError("witness needs --m and --alpha")
    cache = witnesses.WitnessCache(args.cache) if args.cache else None
    pair = witnesses.generate(args.operation, args.m, args.n, args.alpha, cache=cache)
    payload = pair.to_dict()
    payload["result"] = format_automaton(minimize(pair.result()))
    return payload, EXIT_OK


def cmd_gset(args) -> tuple[dict, int]:
    if args.m is None:
        raise InvalidInputError("gset needs --m")
    config = search.SweepConfig(
        args.operation, args.m, args.n,
        max_cycle_length=args.max_len if args.max_len is not None else 12,
        max_states=args.states if args.states is not None else 5,
        max_alphabet=args.sigma if args.sigma is not None else 2,
        worker_count=args.workers)
    return search.compute_gset(config).to_dict(), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.list:
        return {"claims": {cid: {"description": spec.description, "defaults": spec.defaults,
                                 "exploratory": spec.exploratory}
                           for cid, spec in search.CLAIMS.items()}}, EXIT_OK
    if args.all == (args.claim_id is not None):
        raise InvalidInputError("verify needs exactly one of CLAIM_ID, --all or --list")
    if args.all:
        ids = [cid for cid, spec in search.CLAIMS.items() if not spec.exploratory]
    else:
        if args.claim_id not in search.CLAIMS:
            raise InvalidInputError(f"unknown claim id {args.claim_id!r}")
        ids = [args.claim_id]
    overrides = {key: getattr(args, key) for key in ("m", "n", "max_len", "states", "sigma")}
    reports = []
    for cid in ids:
        print(f"verifying {cid}", file=sys.stderr)
        reports.append(search.verify_claim(cid, workers=args.workers, **overrides))
    failed = any(r.verdict == "COUNTEREXAMPLE" and not search.CLAIMS[r.claim_id].exploratory
                 for r in reports)
    payload = {"reports": [r.to_dict() for r in reports]}
    return payload, EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"apply": cmd_apply, "witness": cmd_witness, "gset": cmd_gset, "verify": cmd_verify}

# arguments that must not change the document (scheduling, destinations)
_NOT_ECHOED = {"command", "workers", "out", "format", "cache", "timing"}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asclab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, bounds=True):
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        p.add_argument("--out", help="write the document here instead of stdout")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock time (breaks byte stability)")
        if bounds:
            p.add_argument("--m", type=int)
            p.add_argument("--n", type=int)
            p.add_argument("--max-len", dest="max_len", type=int)
            p.add_argument("--states", type=int)
            p.add_argument("--sigma", type=int)
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("apply", help="apply an operation to automaton files")
    p.add_argument("operation", choices=sorted(APPLY_OPERATIONS))
    p.add_argument("file_a")
    p.add_argument("file_b", nargs="?")
    p.add_argument("--minimize", action="store_true")
    common(p, bounds=False)

    p = sub.add_parser("witness", help="build a verified witness pair")
    p.add_argument("operation", choices=sorted(witnesses.GENERATORS))
    p.add_argument("--alpha", type=int)
    p.add_argument("--cache", help="JSON-lines witness cache")
    common(p)

    p = sub.add_parser("gset", help="attained complexities by exhaustive sweep")
    p.add_argument("operation", choices=sorted(search.OPERATION_NAMES))
    common(p)

    p = sub.add_parser("verify", help="check claims within bounds")
    p.add_argument("claim_id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    common(p)
    return parser


def _rows(payload: dict) -> tuple[list[str], list[list]]:
    if "reports" in payload:
        return (["claim_id", "verdict", "bounds"],
                [[r["claim_id"], r["verdict"], json.dumps(r["bounds"], sort_keys=True)]
                 for r in payload["reports"]])
    if "claims" in payload:
        return (["claim_id", "exploratory", "description"],
                [[cid, c["exploratory"], c["description"]]
                 for cid, c in payload["claims"].items()])
    if "attained" in payload:
        return (["alpha", "lemma_id", "provenance", "left", "right"],
                [[alpha, w["lemma_id"], w["provenance"], w["left"], w["right"]]
                 for alpha, w in sorted(payload["witnesses"].items(), key=lambda x: int(x[0]))])
    if "error" in payload:
        return ["error", "message"], [[payload["error"]["kind"], payload["error"]["message"]]]
    keys = sorted(k for k, v in payload.items() if not isinstance(v, dict))
    return keys, [[payload[k] for k in keys]]


def _cell(value) -> str:
    if value is None:
        return ""
    return str(value).replace("\n", "\\n")


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    header, rows = _rows(doc["payload"])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_cell(c) for c in row] for row in rows])
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(_cell(c).replace("|", "\\|") for c in row) + " |"
              for row in rows]
    return "\n".join(lines) + "\n"


def _error(kind: str, exc: Exception) -> dict:
    error = {"kind": kind, "message": str(exc)}
    if isinstance(exc, (MagicNumberError, NotFoundError)):
        error.update(exc.to_dict())
    return {"error": error}


def run(argv=None) -> tuple[str, int, str | None]:
    """Parse ``argv`` and execute; returns (document text, exit code, out path)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt, out, timing = "json", None, False
    echo = {"argv": argv}
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        fmt, out, timing = args.format, args.out, args.timing
        echo = {"name": args.command,
                "args": {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_ECHOED}}
        payload, code = COMMANDS[args.command](args)
    except MagicNumberError as exc:
        payload, code = _error("magic", exc), EXIT_MAGIC
    except NotFoundError as exc:
        payload, code = _error("not-found", exc), EXIT_NOT_FOUND
    except DomainError as exc:
        payload, code = _error("domain", exc), EXIT_DOMAIN
    except InvalidInputError as exc:
        payload, code = _error("usage", exc), EXIT_USAGE
    except AsclabError as exc:
        payload, code = _error("internal", exc), EXIT_FAIL
    if "error" in payload:
        print(f"asclab: {payload['error']['message']}", file=sys.stderr)
    doc = {"schema_version": SCHEMA, "command": echo, "payload": payload}
    if timing:
        doc["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return render(doc, fmt), code, out


def main(argv=None) -> int:
    text, code, out = run(argv)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
