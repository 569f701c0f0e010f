"""Command-line front-end.

Subcommands: analyze, matrix (conditions/chain/stability/compare/dossier),
quasi (verdict/construct), fourier (harness).  Exit codes: 0 success
(Inconclusive results are still success), 2 parse error, 3 precondition
failure, 4 internal consistency violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, catalogue, serialize
from .errors import RoutesDisagree, TruncationExhausted, WcalcError
from .matrices import (
    CONDITION_NAMES,
    MultiIndexChain,
    WeightMatrix,
    build_gevrey_matrix,
    check_matrix_condition,
    check_omega_stability,
    check_pseudo_mg,
    check_stability_theorem,
    comparison_report,
    integer_step_identity_error,
    multi_index_step,
    relation_matrix,
)
from .quasi import class_nq_verdict, construct_minorant
from .sequences import (
    LogWeightSequence,
    check_beta3,
    check_carleman_consistency,
    check_in_LC,
    check_log_convex,
    check_moderate_growth,
    check_nq,
    relation_approx,
    relation_preceq,
    relation_triangle,
)
from .weightfuncs import WeightFunction, check_omega_conditions

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

SEQ_FAMILIES = {
    "gevrey": catalogue.gevrey,
    "factorial_power": catalogue.factorial_power,
    "power_index": catalogue.power_index,
    "perturbed_gevrey": catalogue.perturbed_gevrey,
    "prefix_only": catalogue.prefix_only,
}


class DescriptorError(ValueError):
    pass


def _params(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError as e:
        raise DescriptorError(str(e)) from None


def parse_sequence(desc: str, pmax: int) -> LogWeightSequence:
    """`family:params` or `file:path` (CSV `p,logM` or JSON descriptor)."""
    if ":" not in desc:
        raise DescriptorError(f"descriptor {desc!r} lacks ':'")
    head, rest = desc.split(":", 1)
    if head == "file":
        if rest.endswith(".json"):
            with open(rest) as fh:
                d = json.load(fh)
            fam = d.pop("family")
            label = d.pop("label", None)
            seq = SEQ_FAMILIES[fam](**d) if fam in SEQ_FAMILIES else None
            if seq is None:
                raise DescriptorError(f"unknown family {fam!r}")
            return seq.with_label(label) if label else seq
        try:
            return serialize.read_sequence_csv(rest)
        except (OSError, ValueError) as e:
            raise DescriptorError(str(e)) from None
    if head not in SEQ_FAMILIES:
        raise DescriptorError(f"unknown sequence family {head!r}")
    try:
        return SEQ_FAMILIES[head](*_params(rest), pmax=pmax)
    except (TypeError, ValueError) as e:
        raise DescriptorError(str(e)) from None


def parse_weight(desc: str) -> WeightFunction:
    if ":" not in desc:
        raise DescriptorError(f"descriptor {desc!r} lacks ':'")
    head, rest = desc.split(":", 1)
    from .weightfuncs import make_power_log_weight, make_root_power_weight

    if head == "powerlog":
        return make_power_log_weight(*_params(rest))
    if head == "rootpower":
        return make_root_power_weight(*_params(rest))
    raise DescriptorError(f"unknown weight family {head!r}")


def parse_matrix(args, pmax: int) -> WeightMatrix:
    if getattr(args, "gevrey", None):
        return build_gevrey_matrix(tuple(_params(args.gevrey)), pmax)
    if getattr(args, "matrix", None):
        desc = args.matrix
        if desc.startswith("file:"):
            with open(desc[5:]) as fh:
                d = json.load(fh)
            labels = tuple(float(x) for x in d["labels"])
            rows = []
            for lbl in d["labels"]:
                rd = dict(d["rows"][str(lbl)])
                fam = rd.pop("family")
                rows.append(SEQ_FAMILIES[fam](**rd))
            return WeightMatrix(labels, tuple(rows), None, desc)
        raise DescriptorError("matrix descriptor must be file:<path>")
    raise DescriptorError("no matrix given (use --gevrey or --matrix)")


def _emit(args, report: dict) -> None:
    report["config"] = {
        "argv": [a for a in sys.argv[1:]],
        "version": __version__,
        "pmax": getattr(args, "pmax", None),
        "tol": getattr(args, "tol", None),
        "seed": getattr(args, "seed", None),
        "threads": int(os.environ.get("WCALC_THREADS", "1")),
    }
    if getattr(args, "format", "json") == "csv":
        if args.out:
            serialize.write_report_csv(args.out, report)
        else:
            for k, v in serialize.flatten_report(report):
                print(f"{k},{v}")
        return
    text = serialize.write_report(args.out, report)
    if not args.out:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    report: dict = {}
    if args.seq:
        seq = parse_sequence(args.seq, args.pmax)
        report["sequence"] = {
            "label": seq.label,
            "P": seq.P,
            "normalized": seq.is_normalized(),
            "lc": check_log_convex(seq).to_json("lc"),
            "LC": check_in_LC(seq).to_json("LC"),
            "mg": check_moderate_growth(seq).to_json("mg"),
            "nq": check_nq(seq).to_json("nq"),
            "beta3": check_beta3(seq).to_json("beta3"),
        }
        if check_log_convex(seq).holds:
            report["sequence"]["carleman_consistency"] = (
                check_carleman_consistency(seq).to_json("carleman")
            )
        report["sequence"]["nq_routes"] = class_nq_verdict(seq).to_json("nq")
    if args.weight:
        w = parse_weight(args.weight)
        report["weight"] = {
            name: v.to_json(name)
            for name, v in check_omega_conditions(w).items()
        }
    if not report:
        raise DescriptorError("analyze needs --seq or --weight")
    _emit(args, report)
    return 0


def cmd_matrix(args) -> int:
    if args.action == "dossier":
        if args.seq:
            obj = parse_sequence(args.seq, args.pmax)
        elif args.weight:
            obj = parse_weight(args.weight)
        else:
            raise DescriptorError("dossier needs --seq or --weight")
        _emit(args, comparison_report(obj))
        return 0
    if args.action == "compare":
        a = parse_sequence(args.left, args.pmax)
        b = parse_sequence(args.right, args.pmax)
        report = {
            "preceq": relation_preceq(a, b).to_json(),
            "preceq_rev": relation_preceq(b, a).to_json(),
            "triangle": relation_triangle(a, b).to_json(),
            "approx": relation_approx(a, b).to_json(),
        }
        _emit(args, report)
        return 0
    M = parse_matrix(args, args.pmax)
    if args.action == "conditions":
        report = {
            name: check_matrix_condition(M, name).to_json(name)
            for name in CONDITION_NAMES
        }
        report["pseudo_mg"] = check_pseudo_mg(M).to_json("pseudo_mg")
        _emit(args, report)
        return 0
    if args.action == "stability":
        _emit(args, {"stability": check_stability_theorem(M).to_json()})
        return 0
    if args.action == "chain":
        chain = MultiIndexChain(M, (), None)
        for l in _params(args.steps):
            chain = multi_index_step(chain, l)
        report = {
            "steps": list(chain.steps),
            "omega_stability": check_omega_stability(chain).to_json(),
        }
        if args.check_identity:
            report["integer_step_identity_error"] = integer_step_identity_error(
                chain
            )
        _emit(args, report)
        return 0
    raise DescriptorError(f"unknown matrix action {args.action!r}")


def _parse_row_pattern(pattern: str) -> list[tuple[float, float]]:
    """`EXPR:q=a..b` -> [(label 1/q, exponent EXPR(q))] for q in a..b."""
    try:
        expr, rng = pattern.rsplit(":q=", 1)
        lo, hi = rng.split("..")
        qs = range(int(lo), int(hi) + 1)
        out = []
        for q in qs:
            s = float(eval(expr, {"__builtins__": {}}, {"q": q}))
            out.append((1.0 / q, s))
        return out
    except (ValueError, SyntaxError, NameError) as e:
        raise DescriptorError(f"bad row pattern {pattern!r}: {e}") from None


def cmd_quasi(args) -> int:
    if args.action == "verdict":
        seq = parse_sequence(args.seq, args.pmax)
        _emit(args, {"nq": class_nq_verdict(seq).to_json("nq")})
        return 0
    if args.action == "construct":
        rows = _parse_row_pattern(args.rows)
        labels = tuple(l for l, _ in rows)
        seqs = tuple(catalogue.gevrey(s, args.pmax) for _, s in rows)
        order = sorted(range(len(rows)), key=lambda i: labels[i])
        M = WeightMatrix(
            tuple(labels[i] for i in order),
            tuple(seqs[i] for i in order),
            None,
            args.rows,
        )
        try:
            trace = construct_minorant(M)
        except TruncationExhausted as e:
            _emit(args, {"status": "partial", "q_reached": e.q_reached})
            return 0
        report = trace.to_json()
        report["status"] = "complete"
        _emit(args, report)
        if args.out and args.out.endswith(".json"):
            serialize.write_sequence_csv(args.out[:-5] + ".csv", trace.N)
        return 0
    raise DescriptorError(f"unknown quasi action {args.action!r}")


def cmd_fourier(args) -> int:
    from .fourier import theorem51_harness

    M = parse_matrix(args, args.pmax)
    report = theorem51_harness(M, bump_depth=args.bump_depth)
    _emit(args, report)
    return 0


def _add_common(p) -> None:
    p.add_argument("--pmax", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--labels", type=str, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wcalc")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze")
    a.add_argument("--seq")
    a.add_argument("--weight")
    _add_common(a)
    a.set_defaults(fn=cmd_analyze)

    m = sub.add_parser("matrix")
    m.add_argument("action", choices=(
        "conditions", "chain", "stability", "compare", "dossier"
    ))
    m.add_argument("--gevrey")
    m.add_argument("--matrix")
    m.add_argument("--seq")
    m.add_argument("--weight")
    m.add_argument("--left")
    m.add_argument("--right")
    m.add_argument("--steps", default="2")
    m.add_argument("--check-identity", action="store_true")
    _add_common(m)
    m.set_defaults(fn=cmd_matrix)

    q = sub.add_parser("quasi")
    q.add_argument("action", choices=("verdict", "construct"))
    q.add_argument("--seq")
    q.add_argument("--rows")
    _add_common(q)
    q.set_defaults(fn=cmd_quasi)

    f = sub.add_parser("fourier")
    f.add_argument("action", choices=("harness",))
    f.add_argument("--gevrey")
    f.add_argument("--matrix")
    f.add_argument("--bump-depth", type=int, default=30)
    _add_common(f)
    f.set_defaults(fn=cmd_fourier)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DescriptorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except RoutesDisagree as e:
        print(f"internal consistency violation: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except WcalcError as e:
        print(f"precondition failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
