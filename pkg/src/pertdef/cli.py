"""Command-line front end.

Every subcommand reads one JSON file (path or ``-`` for stdin) and writes
canonical JSON to stdout or ``--out``.  Failures print
``{"error": {"category": ..., "message": ...}}`` to stderr.

Exit codes: 0 success, 1 assertion failure, 2 parse error, 3 precondition
violation, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import files
from .files import FileFormatError, chart_from_dict, chart_to_dict, dumps, load_problem
from .flows import EndoFamily, FlowError, beta_field, gamma_action, gamma_beta_check
from .morphisms import NotInvariantError, embed_column, retract_column, symmetrize
from .parsing import ParseError
from .polynomial import poly_eval
from .rings import DefRingSpec, PertRingSpec, RingSpecMismatch
from .solver import ChartError, def_chart_build, def_solve, pert_solve, verify_theorem

EXIT_ASSERTION, EXIT_PARSE, EXIT_PRECONDITION, EXIT_IO = 1, 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, category: str, message: str, code: int):
        super().__init__(message)
        self.category = category
        self.code = code


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _json(raw: bytes):
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from None


def _family(prob, gamma: bool) -> EndoFamily:
    fam = prob.family
    if not isinstance(fam, dict):
        raise FileFormatError("this command needs a 'family' block")
    derivative = {int(i): files.parse_tensor(t) for i, t in (fam.get("derivative") or {}).items()}
    if "udot" in fam:
        default_k = prob.k + 1
    else:
        default_k = prob.k + 1 if gamma else prob.k
    ring_k = fam.get("ring_k", default_k)
    if "udot" in fam:
        derivative[ring_k] = files.parse_tensor(fam["udot"])
    return EndoFamily(PertRingSpec(prob.n, ring_k), derivative)


# -- commands ---------------------------------------------------------------


def cmd_pert_solve(data, args, digest):
    prob = load_problem(data)
    chart = pert_solve(prob.hypersurface(), prob.pert_params())
    return chart_to_dict(chart.p, "pert-solve", digest)


def cmd_def_chart(data, args, digest):
    prob = load_problem(data)
    hyp = prob.hypersurface()
    steps = prob.seed_steps(DefRingSpec(prob.n, prob.k))
    if steps is not None:
        chart = def_chart_build(hyp, steps)
    else:
        chart = def_solve(hyp, prob.def_params())
    return chart_to_dict(chart.p, "def-chart", digest)


def cmd_embed(data, args, digest):
    p = chart_from_dict(data)
    if not isinstance(p.spec, PertRingSpec):
        raise ChartError("embed needs a Pert chart")
    return chart_to_dict(embed_column(p), "embed", digest)


def cmd_retract(data, args, digest):
    d = chart_from_dict(data)
    if not isinstance(d.spec, DefRingSpec):
        raise ChartError("retract needs a Def chart")
    return chart_to_dict(retract_column(d), "retract", digest)


def cmd_symmetrize(data, args, digest):
    d = chart_from_dict(data)
    if not isinstance(d.spec, DefRingSpec):
        raise ChartError("symmetrize needs a Def chart")
    if d.spec.k > args.max_k:
        raise ChartError(f"symmetrize over S_{d.spec.k} exceeds --max-k {args.max_k}")
    return chart_to_dict(d.map(symmetrize), "symmetrize", digest)


def cmd_residual(data, args, digest):
    prob = load_problem(data)
    if prob.F is None:
        raise FileFormatError("residual needs 'F'")
    chart = chart_from_dict(_json(_read(args.chart)))
    if len(chart) != prob.N:
        raise ChartError(f"chart has {len(chart)} coordinates but F has {prob.N} variables")
    res = poly_eval(prob.F, chart)
    return {
        "ring": files.element_ring(chart.spec),
        "residual": res.to_map(),
        "is_zero": res.is_zero(),
        "provenance": {"command": "residual", "input_sha256": digest},
    }


def cmd_verify_theorem(data, args, digest):
    prob = load_problem(data)
    report = verify_theorem(prob.hypersurface(), prob.pert_params())
    out = report.to_dict()
    out["provenance"] = {"command": "verify-theorem", "input_sha256": digest}
    return out, report.passed


def cmd_beta(data, args, digest):
    prob = load_problem(data)
    beta = beta_field(_family(prob, gamma=False))
    return {
        "ring": files.element_ring(beta.spec),
        "beta": {f"l{a + 1}": img.to_map() for a, img in enumerate(beta.images)},
        "provenance": {"command": "beta", "input_sha256": digest},
    }


def cmd_gamma(data, args, digest):
    prob = load_problem(data)
    op = gamma_action(_family(prob, gamma=True))
    n = op.figure.source.n
    return {
        "ring": files.element_ring(op.figure.target),
        "gamma": {f"f{a + 1}": {f"f{b + 1}": op.entries[b][a].to_map() for b in range(n)} for a in range(n)},
        "provenance": {"command": "gamma", "input_sha256": digest},
    }


def cmd_gamma_beta_check(data, args, digest):
    prob = load_problem(data)
    report = gamma_beta_check(_family(prob, gamma=True))
    out = report.to_dict()
    out["summary"] = str(report)
    out["provenance"] = {"command": "gamma-beta-check", "input_sha256": digest}
    return out, report.passed


COMMANDS: dict[str, tuple[Callable, str]] = {
    "pert-solve": (cmd_pert_solve, "solve F = 0 over Pert_{n,k} order by order"),
    "def-chart": (cmd_def_chart, "build a Def_{n,k} chart from parameters or raw lift seeds"),
    "embed": (cmd_embed, "embed a Pert chart into Def by lambda -> sum of eps"),
    "retract": (cmd_retract, "retract a slot-invariant Def chart to Pert"),
    "symmetrize": (cmd_symmetrize, "average a Def chart over slot permutations"),
    "verify-theorem": (cmd_verify_theorem, "check the Pert/Def correspondence on one chart"),
    "residual": (cmd_residual, "evaluate F on a chart"),
    "beta": (cmd_beta, "beta derivation of an endomorphism family"),
    "gamma": (cmd_gamma, "gamma operator on the tangent module of the canonical projection"),
    "gamma-beta-check": (cmd_gamma_beta_check, "check gamma = (k+1) beta"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pertdef", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input", help="input JSON file, or - for stdin")
        sp.add_argument("--out", help="write output here instead of stdout")
        if name == "symmetrize":
            sp.add_argument("--max-k", type=int, default=8, help="refuse k above this (cost is k!)")
        if name == "residual":
            sp.add_argument("--chart", required=True, help="chart JSON file")
    return parser


def _classify(exc: Exception) -> CommandFailed:
    if isinstance(exc, CommandFailed):
        return exc
    if isinstance(exc, (ParseError, FileFormatError)):
        return CommandFailed("parse", str(exc), EXIT_PARSE)
    if isinstance(exc, OSError):
        return CommandFailed("io", str(exc), EXIT_IO)
    if isinstance(exc, (ChartError, FlowError, NotInvariantError, RingSpecMismatch, ValueError,
                        ZeroDivisionError, IndexError, TypeError, KeyError)):
        return CommandFailed("precondition", str(exc), EXIT_PRECONDITION)
    raise exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        raw = _read(args.input)
        data = _json(raw)
        result = fn(data, args, files.input_digest(raw))
        ok = True
        if isinstance(result, tuple):
            result, ok = result
        text = dumps(result)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if not ok:
            raise CommandFailed("assertion", "one or more checks failed", EXIT_ASSERTION)
    except Exception as exc:  # noqa: BLE001 - mapped to structured errors
        failure = _classify(exc)
        sys.stderr.write(dumps({"error": {"category": failure.category, "message": str(failure)}}))
        return failure.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
