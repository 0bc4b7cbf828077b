"""Command-line surface: count, build, weights, verify.

Exit codes: 0 success, 2 parse error, 3 budget exceeded, 4 verification
failure.  The environment variable GRASSCODE_BUDGET overrides the default
point and scan budgets; explicit --budget-* flags win over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .bounds import elambda_length_formula, run_suite
from .codes import (
    DEFAULT_SCAN_BUDGET,
    build_code,
    read_code_file,
    weight_profile,
    write_code_file,
)
from .errors import BudgetExceededError, SpecParseError
from .field import GF, field_for_order
from .grassmann import DEFAULT_POINT_BUDGET
from .indices import is_close_family
from .sections import (
    enumerate_variety,
    gaussian_binomial,
    isotropic_count,
    lagrangian_count,
    parse_variety_spec,
    schubert_count,
    schubert_union_count,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


@dataclass
class RunConfig:
    field: GF | None
    budget_points: int
    budget_scans: int
    workers: int


def _default_budgets() -> tuple[int, int]:
    env = os.environ.get("GRASSCODE_BUDGET")
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise SpecParseError(f"GRASSCODE_BUDGET={env!r} is not an integer") from exc
        if value <= 0:
            raise SpecParseError("GRASSCODE_BUDGET must be positive")
        return value, value
    return DEFAULT_POINT_BUDGET, DEFAULT_SCAN_BUDGET


def _resolve_config(args, need_field: bool) -> RunConfig:
    points_default, scans_default = _default_budgets()
    budget_points = args.budget_points if args.budget_points is not None else points_default
    budget_scans = args.budget_scans if args.budget_scans is not None else scans_default
    if budget_points <= 0 or budget_scans <= 0:
        raise SpecParseError("budgets must be positive")
    workers = getattr(args, "workers", 1)
    if workers < 1:
        raise SpecParseError("worker count must be >= 1")
    field = None
    if need_field:
        q = getattr(args, "q", None)
        p = getattr(args, "p", None)
        try:
            if q is not None:
                field = field_for_order(q)
                if p is not None and field.p != p:
                    raise SpecParseError(f"--q {q} conflicts with --p {p}")
            elif p is not None:
                field = GF(p, getattr(args, "e", None) or 1)
            else:
                raise SpecParseError("a field is required: pass --q or --p/--e")
        except ValueError as exc:
            raise SpecParseError(str(exc)) from exc
    return RunConfig(field, budget_points, budget_scans, workers)


def _spec_from_args(args) -> str:
    positional = getattr(args, "spec_pos", None)
    flag = getattr(args, "spec", None)
    if positional and flag and positional != flag:
        raise SpecParseError("conflicting positional spec and --spec")
    text = positional or flag
    if not text:
        raise SpecParseError("a variety spec is required")
    return text


def _closed_form_count(spec, q: int):
    """Closed-form point count if one is stated for the kind, plus extras."""
    extras = {}
    if spec.kind == "grassmann":
        return gaussian_binomial(spec.m, spec.ell, q), extras
    if spec.kind == "schubert":
        return schubert_count(spec.tuples[0], spec.m, q), extras
    if spec.kind == "union":
        return schubert_union_count(spec.tuples, spec.m, q), extras
    if spec.kind == "elambda":
        if is_close_family(spec.tuples):
            return elambda_length_formula(spec.ell, spec.m, q, len(spec.tuples)), extras
        return None, extras
    if spec.kind == "lagrangian":
        return lagrangian_count(spec.n, q), extras
    if spec.kind == "isotropic":
        return isotropic_count(spec.ell, spec.n, q), extras
    if spec.kind in ("lag-schubert", "lag-union"):
        # no trusted closed form; the Schubert cell sum is reported for comparison only
        extras["cellsum"] = schubert_union_count(spec.tuples, spec.m, q)
        return None, extras
    raise SpecParseError(f"unknown kind {spec.kind!r}")


def cmd_count(args) -> int:
    config = _resolve_config(args, need_field=True)
    spec = parse_variety_spec(_spec_from_args(args))
    system = enumerate_variety(spec, config.field, config.budget_points)
    count = len(system.points)
    formula, extras = _closed_form_count(spec, config.field.q)
    agree = True if formula is None else (count == formula)
    if args.json:
        payload = {"count": count, "formula": formula, "agree": agree, **extras}
        print(json.dumps(payload))
    else:
        line = f"count={count} formula={'none' if formula is None else formula} agree={str(agree).lower()}"
        for key, value in extras.items():
            line += f" {key}={value}"
        print(line)
    return EXIT_OK


def cmd_build(args) -> int:
    config = _resolve_config(args, need_field=True)
    spec = parse_variety_spec(_spec_from_args(args))
    system = enumerate_variety(spec, config.field, config.budget_points)
    code = build_code(system)
    write_code_file(code, args.out)
    print(f"wrote {args.out}: n={code.n} k={code.k}")
    return EXIT_OK


def cmd_weights(args) -> int:
    config = _resolve_config(args, need_field=False)
    code = read_code_file(args.codefile)
    profile = weight_profile(
        code,
        r_max=args.r_max,
        method=args.method,
        workers=config.workers,
        budget=config.budget_scans,
    )
    text = json.dumps(profile.to_json_dict(), indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def _parse_int_list(text: str) -> list[int]:
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    if not text:
        return []
    out = []
    for chunk in text.split(";"):
        parts = [int(x) for x in chunk.split(",")]
        if len(parts) != 2:
            raise SpecParseError(f"bad l,m pair {chunk!r}")
        out.append((parts[0], parts[1]))
    return out


def cmd_verify(args) -> int:
    config = _resolve_config(args, need_field=False)
    try:
        qs = _parse_int_list(args.q or "")
        grassmann = _parse_pairs(args.grassmann or "")
        lagrangian = _parse_int_list(args.lagrangian_n or "")
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc
    reports = run_suite(
        qs,
        grassmann_pairs=grassmann,
        lagrangian_ns=lagrangian,
        budget_points=config.budget_points,
        budget_scans=config.budget_scans,
        workers=config.workers,
    )
    payload = {
        "reports": [rep.to_json_dict() for rep in reports],
        "disputed": [rep.claim for rep in reports if rep.disputed],
    }
    text = json.dumps(payload, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    failed = [rep for rep in reports if rep.holds is False and not rep.disputed]
    return EXIT_VERIFY if failed else EXIT_OK


def _add_field_args(parser):
    parser.add_argument("--q", type=int, help="field order (prime power)")
    parser.add_argument("--p", type=int, help="field characteristic")
    parser.add_argument("--e", type=int, help="field extension degree (with --p)")


def _add_budget_args(parser):
    parser.add_argument("--budget-points", type=int, default=None, help="max points to enumerate")
    parser.add_argument("--budget-scans", type=int, default=None, help="max codeword/subcode scans")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasscode",
        description="Linear codes from linear sections of Grassmannians over GF(q)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="point count of a variety, with closed form")
    p_count.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p_count.add_argument("--spec")
    p_count.add_argument("--json", action="store_true", help="machine-readable output")
    _add_field_args(p_count)
    _add_budget_args(p_count)
    p_count.set_defaults(fn=cmd_count)

    p_build = sub.add_parser("build", help="write a generator matrix file")
    p_build.add_argument("spec_pos", nargs="?", metavar="SPEC")
    p_build.add_argument("--spec")
    p_build.add_argument("--out", required=True)
    _add_field_args(p_build)
    _add_budget_args(p_build)
    p_build.set_defaults(fn=cmd_build)

    p_weights = sub.add_parser("weights", help="distance / higher weights / enumerator")
    p_weights.add_argument("codefile")
    p_weights.add_argument("--r-max", type=int, default=1)
    p_weights.add_argument("--method", choices=("codewords", "hyperplanes"), default="codewords")
    p_weights.add_argument("--workers", type=int, default=1)
    p_weights.add_argument("--out")
    _add_budget_args(p_weights)
    p_weights.set_defaults(fn=cmd_weights)

    p_verify = sub.add_parser("verify", help="run the claim-verification suite")
    p_verify.add_argument("--q", help="comma-separated field orders")
    p_verify.add_argument("--grassmann", help="l,m pairs separated by ';'")
    p_verify.add_argument("--lagrangian-n", help="comma-separated n values")
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--out")
    _add_budget_args(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
