"""Command line front end: one input file per invocation, exit code per outcome."""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .arith import Rat, refinement_cap, to_rat
from .debranges import DeBrangesInput, check_debranges, check_hb_n
from .divisors import colour_decompose, divisor_of, interval_sum, min_interlacing_order
from .errors import (
    EndpointOnSupport,
    HerglotzError,
    IrrationalCoefficients,
    MalformedInput,
    NonRealRoots,
    PoleOnGrid,
    Undecided,
)
from .io import load_json, parse_divisor, parse_interlacing, parse_matrix, parse_poly, parse_ratfn
from .linalg import ratfn_to_json
from .matrix import (
    check_hypotheses,
    factor_determinant,
    sample_criterion_i,
    sample_grid,
    verify_criterion_ii,
    verify_criterion_iii,
)
from .scalar import (
    check_scalar_herglotz,
    classical_hb_check,
    scalar_partial_fractions,
    synth_factored,
    winding_oracle,
)
from .verdict import FAIL, NOT_APPLICABLE, PASS, UNKNOWN, Check, Outcome, Verdict

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_UNDECIDED = 2
EXIT_MALFORMED = 3
EXIT_HYPOTHESIS = 4

_EXIT = {
    Outcome.ACCEPT: EXIT_ACCEPT,
    Outcome.REJECT: EXIT_REJECT,
    Outcome.UNDECIDED: EXIT_UNDECIDED,
    Outcome.CONSISTENT: EXIT_ACCEPT,
}


@dataclass
class RunConfig:
    command: str
    path: str
    criterion: str = "all"
    output: str = "text"
    max_refine: int | None = None
    samples: int = 9
    seed: int = 0
    interval: tuple[Rat, Rat] | None = None
    steps: int = 2048


def _tag(verdict: Verdict, criterion: str) -> list[Check]:
    return [Check(c.condition, c.result, c.index_set, {"criterion": criterion, **c.witness}) for c in verdict.checks]


def _grid(cfg: RunConfig):
    rng = random.Random(cfg.seed)
    xs = [Rat(rng.randint(-40, 40), 4) for _ in range(cfg.samples)]
    return sample_grid(cfg.samples, xs)


def run_check_matrix(cfg: RunConfig) -> Verdict:
    Q = parse_matrix(load_json(cfg.path))
    if cfg.criterion == "ii":
        return verify_criterion_ii(Q)
    if cfg.criterion == "iii":
        return verify_criterion_iii(Q)
    v2, v3 = verify_criterion_ii(Q), verify_criterion_iii(Q)
    checks = _tag(v2, "ii") + _tag(v3, "iii")
    sampled: Verdict | None = None
    if check_hypotheses(Q).accepted:
        try:
            sampled = sample_criterion_i(Q, _grid(cfg))
            checks += _tag(sampled, "i")
        except PoleOnGrid as exc:
            checks.append(Check("imaginary_part_psd", NOT_APPLICABLE, witness={"criterion": "i", "reason": str(exc)}))
    if v2.outcome is not v3.outcome or Outcome.UNDECIDED in (v2.outcome, v3.outcome):
        outcome = Outcome.UNDECIDED
        checks.append(Check("agreement", UNKNOWN, witness={"ii": v2.outcome.value, "iii": v3.outcome.value}))
    elif v2.accepted and sampled is not None and sampled.rejected:
        outcome = Outcome.UNDECIDED
        checks.append(Check("agreement", UNKNOWN, witness={"ii": "accept", "iii": "accept", "i": "reject"}))
    else:
        outcome = v2.outcome
        checks.append(Check("agreement", PASS))
    return Verdict(outcome, checks)


def run_check_scalar(cfg: RunConfig) -> Verdict:
    f = parse_ratfn(load_json(cfg.path))
    v = check_scalar_herglotz(f)
    if v.accepted:
        rep = scalar_partial_fractions(f)
        v.checks.append(Check("representation", PASS, witness=rep.to_json()))
    return v


def run_check_hb(cfg: RunConfig) -> Verdict:
    data = load_json(cfg.path)
    if isinstance(data, dict) and set(data) == {"A", "B"}:
        return classical_hb_check(parse_poly(data["A"]), parse_poly(data["B"]))
    if isinstance(data, dict) and set(data) == {"E"}:
        return check_hb_n(parse_matrix(data["E"]))
    raise MalformedInput('expected {"A": poly, "B": poly} or {"E": matrix}')


def run_check_debranges(cfg: RunConfig) -> Verdict:
    data = load_json(cfg.path)
    if isinstance(data, dict) and set(data) == {"E_minus", "E_plus"}:
        Em, Ep = parse_matrix(data["E_minus"]), parse_matrix(data["E_plus"])
        if Em.n != Ep.n:
            raise MalformedInput("E_minus and E_plus differ in size")
        return check_debranges(DeBrangesInput(Em, Ep))
    if isinstance(data, dict) and set(data) == {"E"}:
        return check_hb_n(parse_matrix(data["E"]))
    raise MalformedInput('expected {"E_minus": matrix, "E_plus": matrix} or {"E": matrix}')


def run_factor_det(cfg: RunConfig) -> Verdict:
    Q = parse_matrix(load_json(cfg.path))
    factors = factor_determinant(Q)
    prod = factors[0]
    for g in factors[1:]:
        prod = prod * g
    checks = []
    for k, g in enumerate(factors):
        # a zero factor only occurs for singular Q and is trivially Herglotz
        ok = g.is_zero() or check_scalar_herglotz(g).accepted
        checks.append(Check("scalar_herglotz", PASS if ok else FAIL, (k + 1,), {"factor": ratfn_to_json(g)}))
    checks.append(Check("product_equals_det", PASS if prod == Q.det() else FAIL))
    return Verdict(Outcome.ACCEPT if all(c.result == PASS for c in checks) else Outcome.REJECT, checks)


def run_colour(cfg: RunConfig) -> Verdict:
    theta = parse_divisor(load_json(cfg.path))
    parts = colour_decompose(theta)
    checks = [Check("order", PASS, witness={"order": min_interlacing_order(theta), "parts": len(parts)})]
    total = None
    for k, part in enumerate(parts):
        ok = min_interlacing_order(part) <= 1
        checks.append(Check("part", PASS if ok else FAIL, (k + 1,), {"divisor": part.to_json()}))
        total = part if total is None else total + part
    same = (total is None and not theta) or total == theta
    checks.append(Check("sum", PASS if same else FAIL))
    return Verdict(Outcome.ACCEPT if all(c.result == PASS for c in checks) else Outcome.REJECT, checks)


def run_synth_scalar(cfg: RunConfig) -> Verdict:
    data = parse_interlacing(load_json(cfg.path))
    g = synth_factored(data)
    witness: dict[str, Any]
    try:
        witness = {"function": ratfn_to_json(g.to_ratfn())}
    except IrrationalCoefficients:
        witness = {"factored": g.to_json()}
    verified = check_scalar_herglotz(g)
    checks = [Check("synthesis", PASS, witness=witness), *verified.checks]
    return Verdict(verified.outcome, checks)


def run_oracle_winding(cfg: RunConfig) -> Verdict:
    f = parse_ratfn(load_json(cfg.path))
    if cfg.interval is None:
        raise MalformedInput("--interval a,b is required")
    a, b = cfg.interval
    if not a < b:
        raise MalformedInput("--interval needs a < b")
    numeric = winding_oracle(f, a, b, cfg.steps)
    witness: dict[str, Any] = {"interval": [str(a), str(b)], "steps": cfg.steps, "numeric": repr(round(numeric, 9))}
    try:
        exact = interval_sum(divisor_of(f), a, b)
    except (NonRealRoots, EndpointOnSupport):
        return Verdict(Outcome.ACCEPT, [Check("winding", PASS, witness=witness)])
    witness["exact"] = exact
    ok = abs(numeric - exact) < 0.1
    return Verdict(Outcome.ACCEPT if ok else Outcome.UNDECIDED, [Check("winding", PASS if ok else UNKNOWN, witness=witness)])


_COMMANDS = {
    ("check", "scalar"): run_check_scalar,
    ("check", "matrix"): run_check_matrix,
    ("check", "hb"): run_check_hb,
    ("check", "debranges"): run_check_debranges,
    ("factor", "det"): run_factor_det,
    ("synth", "scalar"): run_synth_scalar,
    ("oracle", "winding"): run_oracle_winding,
}


def _interval(text: str) -> tuple[Rat, Rat]:
    try:
        a, b = text.split(",")
        return to_rat(a.strip()), to_rat(b.strip())
    except (ValueError, TypeError, MalformedInput) as exc:
        raise argparse.ArgumentTypeError(f"bad interval {text!r}") from exc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("--max-refine", type=_positive, default=None)
    common.add_argument("--samples", type=_positive, default=9)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="herglotz", description="Exact Herglotz-function verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify a property of an input file")
    check_sub = check.add_subparsers(dest="kind", required=True)
    check_sub.add_parser("scalar", parents=[common]).add_argument("path")
    m = check_sub.add_parser("matrix", parents=[common])
    m.add_argument("path")
    m.add_argument("--criterion", choices=["ii", "iii", "all"], default="all")
    check_sub.add_parser("hb", parents=[common]).add_argument("path")
    check_sub.add_parser("debranges", parents=[common]).add_argument("path")

    factor = sub.add_parser("factor", help="factor det Q into scalar Herglotz functions")
    factor.add_subparsers(dest="kind", required=True).add_parser("det", parents=[common]).add_argument("path")

    colour = sub.add_parser("colour", parents=[common], help="split a divisor into 1-interlacing parts")
    colour.add_argument("path")

    synth = sub.add_parser("synth", help="build a Herglotz function from interlacing data")
    synth.add_subparsers(dest="kind", required=True).add_parser("scalar", parents=[common]).add_argument("path")

    oracle = sub.add_parser("oracle", help="numeric cross-checks")
    w = oracle.add_subparsers(dest="kind", required=True).add_parser("winding", parents=[common])
    w.add_argument("path")
    w.add_argument("--interval", type=_interval, required=True)
    w.add_argument("--steps", type=_positive, default=2048)
    return parser


def _emit(verdict: Verdict, output: str) -> None:
    print(verdict.dumps() if output == "json" else verdict.to_text())


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ACCEPT if exc.code == 0 else EXIT_MALFORMED
    cfg = RunConfig(
        command=args.command if args.command == "colour" else f"{args.command} {args.kind}",
        path=args.path,
        criterion=getattr(args, "criterion", "all"),
        output=args.output,
        max_refine=args.max_refine,
        samples=args.samples,
        seed=args.seed,
        interval=getattr(args, "interval", None),
        steps=getattr(args, "steps", 2048),
    )
    handler = run_colour if args.command == "colour" else _COMMANDS[(args.command, args.kind)]
    try:
        if cfg.max_refine is not None:
            with refinement_cap(cfg.max_refine):
                verdict = handler(cfg)
        else:
            verdict = handler(cfg)
    except MalformedInput as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except HerglotzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    _emit(verdict, cfg.output)
    return _EXIT[verdict.outcome]


def main() -> None:
    sys.exit(run())
