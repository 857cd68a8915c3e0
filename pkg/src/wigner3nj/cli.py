"""Command-line front end.

    wigner <kind> <args...> [--digits N] [--json]
    wigner batch <file|-> [--digits N] [--json] [--jobs N]

Options are scanned by hand: projections such as ``-1/2`` are legal
positional arguments and would be mistaken for flags by argparse.
"""
from __future__ import annotations

import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import highorder
from .coupling import HalfInt, SelectionRuleError, WignerDomainError
from .exact import SurdVec, format_exact, to_decimal
from .highorder import Kind, SymbolSpec, evaluate

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2
MAX_DIGITS = 1000

_TOKEN = re.compile(r"[+-]?(\d+(\.\d+)?|\d+/\d+)")

HELP = """\
usage: wigner <kind> <args...> [--digits N] [--json]
       wigner batch <file|-> [--digits N] [--json] [--jobs N]

Evaluate a Wigner symbol exactly.  Prints the exact value and a decimal
rounded to N significant digits (default 12).

kinds and argument order (rows of the printed symbol, left to right):

  3jm   ( j1 j2 j  )      6j  { j1 j2 j3 }      9j  { j1 j2 j3 }
        ( m1 m2 m  )          { l1 l2 l3 }          { l1 l2 l3 }
                                                    { k1 k2 k3 }
{layouts}
Momenta may be written 4, 3.5 or 7/2.  A batch file holds one
'<kind> <args...>' request per line; text after '#' is ignored.
"""


class UsageError(ValueError):
    """Bad command line or batch input; maps to exit status 2."""


def parse_halfint(token: str) -> HalfInt:
    """Parse ``4``, ``3.5`` or ``7/2`` into a HalfInt."""
    if not _TOKEN.fullmatch(token.strip()):
        raise UsageError(f"cannot parse {token!r} as a multiple of 1/2")
    q = Fraction(token.strip())
    if q.denominator not in (1, 2):
        raise UsageError(f"{token!r} is not a multiple of 1/2")
    return HalfInt(int(2 * q))


@dataclass(frozen=True)
class Request:
    spec: SymbolSpec
    output_mode: str = "text"
    digits: int = 12

    def __post_init__(self):
        if not 1 <= self.digits <= MAX_DIGITS:
            raise UsageError(f"--digits must lie in [1, {MAX_DIGITS}]")
        if self.output_mode not in ("text", "json"):
            raise UsageError(f"unknown output mode {self.output_mode!r}")


@dataclass(frozen=True)
class ResultRecord:
    kind: str
    args: Tuple[str, ...]
    exact: str
    coeff: str
    radicand: str
    decimal: str


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def make_record(spec: SymbolSpec, value, digits: int = 12) -> ResultRecord:
    if isinstance(value, SurdVec):
        # several quadratic fields: coefficient and radicand lists, ';'-separated
        terms = value.terms
        coeff = ";".join(_frac(t.coeff) for t in terms)
        radicand = ";".join(_frac(t.radicand) for t in terms)
    else:
        coeff, radicand = _frac(value.coeff), _frac(value.radicand)
    return ResultRecord(
        kind=spec.kind.label,
        args=tuple(str(a) for a in spec.args),
        exact=format_exact(value),
        coeff=coeff,
        radicand=radicand,
        decimal=to_decimal(value, digits),
    )


def emit_json(record: ResultRecord) -> str:
    return json.dumps(
        {
            "kind": record.kind,
            "args": list(record.args),
            "exact": record.exact,
            "coeff": record.coeff,
            "radicand": record.radicand,
            "decimal": record.decimal,
        },
        separators=(",", ":"),
    )


def emit_text(record: ResultRecord) -> str:
    return f"{record.exact} {record.decimal}"


def parse_request(tokens: Sequence[str], where: str = "") -> SymbolSpec:
    prefix = f"{where}: " if where else ""
    if not tokens:
        raise UsageError(f"{prefix}missing symbol kind")
    label, *rest = tokens
    try:
        kind = Kind.from_label(label)
    except WignerDomainError:
        raise UsageError(f"{prefix}unknown kind {label!r}") from None
    if len(rest) != kind.arity:
        raise UsageError(
            f"{prefix}{label!r} takes {kind.arity} arguments, got {len(rest)}"
        )
    args = []
    for tok in rest:
        try:
            args.append(parse_halfint(tok))
        except UsageError as exc:
            raise UsageError(f"{prefix}token {tok!r}: {exc}") from None
    try:
        return SymbolSpec(kind, tuple(args))
    except WignerDomainError as exc:
        raise UsageError(f"{prefix}{exc}") from None


def _evaluate(spec: SymbolSpec):
    try:
        return evaluate(spec)
    except SelectionRuleError:
        raise
    except WignerDomainError as exc:
        raise UsageError(str(exc)) from None


def _eval_job(job: Tuple[SymbolSpec, int]) -> ResultRecord:
    spec, digits = job
    return make_record(spec, _evaluate(spec), digits)


def _split_options(argv: Sequence[str]):
    opts = {"digits": 12, "json": False, "jobs": 1, "help": False}
    pos: List[str] = []
    it = iter(argv)
    for tok in it:
        name, eq, val = tok.partition("=")
        if tok in ("-h", "--help"):
            opts["help"] = True
        elif tok == "--json":
            opts["json"] = True
        elif name in ("--digits", "--jobs"):
            if not eq:
                val = next(it, None)
                if val is None:
                    raise UsageError(f"{name} needs a value")
            try:
                opts[name[2:]] = int(val)
            except ValueError:
                raise UsageError(f"token {val!r}: {name} needs an integer") from None
        elif tok.startswith("--"):
            raise UsageError(f"unknown option {tok!r}")
        else:
            pos.append(tok)
    return pos, opts


def _read_batch(path: str) -> List[Tuple[int, List[str]]]:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read batch file {path!r}: {exc.strerror}") from None
    lines = []
    for n, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].split()
        if body:
            lines.append((n, body))
    return lines


def _help_text() -> str:
    doc = highorder.__doc__
    start = doc.index("    12j1")
    end = doc.index("Internally")
    return HELP.replace("{layouts}", "\n" + doc[start:end].rstrip() + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pos, opts = _split_options(argv)
        if opts["help"] or not pos:
            out.write(_help_text())
            return EXIT_OK if opts["help"] else EXIT_USAGE
        mode = "json" if opts["json"] else "text"
        emit = emit_json if opts["json"] else emit_text
        if opts["jobs"] < 1:
            raise UsageError("--jobs must be >= 1")

        if pos[0] == "batch":
            if len(pos) != 2:
                raise UsageError("usage: wigner batch <file|->")
            jobs = []
            for n, tokens in _read_batch(pos[1]):
                req = Request(parse_request(tokens, f"line {n}"), mode, opts["digits"])
                jobs.append((req.spec, req.digits))
            if opts["jobs"] > 1 and len(jobs) > 1:
                with ProcessPoolExecutor(opts["jobs"]) as pool:
                    records = list(pool.map(_eval_job, jobs))
            else:
                records = [_eval_job(j) for j in jobs]
            out.write("".join(emit(r) + "\n" for r in records))
            return EXIT_OK

        req = Request(parse_request(pos), mode, opts["digits"])
        record = _eval_job((req.spec, req.digits))
        out.write(emit(record) + "\n")
        return EXIT_OK
    except UsageError as exc:
        err.write(f"wigner: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001  last-resort guard, exit 1
        err.write(f"wigner: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
