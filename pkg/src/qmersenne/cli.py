"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 mathematical precondition failure (e.g. reducible α).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .mersenne import Verdict, classify_alpha, default_alpha, search
from .primality import Primality, PrimalityConfig, is_probable_prime
from .properties import run_all
from .quadform import cornacchia7, structure_check
from .quadint import CLASS_NUMBER_TABLE_BOUND, FieldCtx, parse_quadint
from .tables import ALL_TABLES, load_fixtures, verify_tables
from .units import UnitElem, continued_fraction, fundamental_unit

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _digest_view(record):
    if isinstance(record, dict):
        return {k: v for k, v in record.items() if k != "elapsed_ms"}
    return record


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str
    seed: int
    started: str
    finished: str = ""
    records: list = field(default_factory=list, repr=False)

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        for rec in self.records:
            h.update(canonical_json(_digest_view(rec)).encode())
            h.update(b"\n")
        return h.hexdigest()

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "seed": self.seed,
            "started": self.started,
            "finished": self.finished,
            "digest": self.digest,
        }


class Output:
    def __init__(self, as_json: bool, manifest: RunManifest):
        self.as_json = as_json
        self.manifest = manifest

    def record(self, rec: dict, text: str | None = None) -> None:
        self.manifest.records.append(rec)
        if self.as_json:
            print(canonical_json(rec))
        elif text is not None:
            print(text)

    def text(self, line: str) -> None:
        if not self.as_json:
            print(line)


def _field_arg(text: str) -> FieldCtx:
    try:
        return FieldCtx(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _warn_class_number(field_: FieldCtx) -> None:
    if not field_.class_number_one:
        where = "" if field_.d < CLASS_NUMBER_TABLE_BOUND else f" (table covers d < {CLASS_NUMBER_TABLE_BOUND})"
        print(f"warning: {field_} is not known to have class number 1{where}", file=sys.stderr)


def _cfg(args) -> PrimalityConfig:
    return PrimalityConfig(trial_bound=args.trial_bound, mr_rounds=args.mr_rounds, seed=args.seed)


def cmd_info(args, out: Output) -> int:
    F = args.d
    _warn_class_number(F)
    eps = fundamental_unit(F)
    choice = classify_alpha(F, eps)
    rec = {
        "d": F.d,
        "ring": F.ring_name,
        "half_basis": F.half_basis,
        "class_number_one": F.class_number_one,
        "unit": str(eps.value),
        "unit_norm": eps.norm_sign,
        "alpha": str(choice.alpha),
        "alpha_norm": str(choice.alpha_norm),
        "verdict": choice.verdict.value,
        "case": choice.case.value,
    }
    out.record(rec, "\n".join([
        f"field            {F}",
        f"ring of integers {F.ring_name}",
        f"class number 1   {'yes' if F.class_number_one else 'no / unknown'}",
        f"fundamental unit {eps.value}   N(u) = {eps.norm_sign:+d}",
        f"alpha = 1 + u    {choice.alpha}   N(alpha) = {choice.alpha_norm}",
        f"verdict          {choice.verdict.value} ({choice.explain()})",
    ]))
    return EXIT_OK


def cmd_unit(args, out: Output) -> int:
    F = args.d
    _warn_class_number(F)
    eps = fundamental_unit(F)
    pre, period = continued_fraction(F)
    rec = {
        "d": F.d,
        "unit": str(eps.value),
        "norm": eps.norm_sign,
        "preperiod": pre,
        "period": period,
    }
    cf = "[" + ", ".join(map(str, pre)) + "; " + ", ".join(map(str, period)) + "]"
    omega = f"(1+√{F.d})/2" if F.half_basis else f"√{F.d}"
    out.record(rec, f"u = {eps.value}\nN(u) = {eps.norm_sign:+d}\n{omega} = {cf} (period {len(period)})")
    return EXIT_OK


def cmd_search(args, out: Output) -> int:
    F = args.d
    _warn_class_number(F)
    if args.p_max < 2:
        print("error: --p-max must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.alpha is not None:
        try:
            alpha = parse_quadint(args.alpha, F)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        u = alpha - 1
        if not u.is_unit() or u in (F.one, -F.one):
            print(f"error: α - 1 = {u} is not a unit other than ±1", file=sys.stderr)
            return EXIT_MATH
        choice = classify_alpha(F, UnitElem.of(u))
    else:
        choice = default_alpha(F, args.alpha_power)
    if choice.verdict is not Verdict.IRREDUCIBLE:
        print(
            f"error: α = {choice.alpha} has N(α) = {choice.alpha_norm}, verdict {choice.verdict.value}\n"
            f"  {choice.explain()}",
            file=sys.stderr,
        )
        return EXIT_MATH
    cands = search(choice.alpha, args.p_max, _cfg(args), workers=args.threads,
                   with_element=args.elements)
    width = max(len(str(c.norm_abs)) for c in cands) if args.elements else 0
    out.text(f"{F}, α = {choice.alpha}, N(α) = {choice.alpha_norm}")
    out.text(f"{'p':>5}  {'primality':<15} {'N(M_p,α)':<{width}}" + ("  M_p,α" if args.elements else ""))
    for c in cands:
        rec = c.as_record()
        if args.elements:
            rec["M"] = str(c.m_element)
        text = f"{c.p:>5}  {c.primality.value:<15} {c.norm_abs:<{width}}"
        if args.elements:
            text += f"  {c.m_element}"
        out.record(rec, text)
    hits = [c.p for c in cands if c.primality is Primality.PROBABLE_PRIME]
    summary = {"summary": True, "d": F.d, "alpha": str(choice.alpha), "p_max": args.p_max,
               "probable_prime_exponents": hits}
    out.record(summary, "probable-prime norms at p = " + ", ".join(map(str, hits)))
    return EXIT_OK


def _search_norms(path: str) -> list[int]:
    stream = sys.stdin if path == "-" else open(path, encoding="utf-8")
    norms = []
    with stream:
        for line in stream:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("primality") == Primality.PROBABLE_PRIME.value and "norm" in rec:
                norms.append(int(rec["norm"]))
    return norms


def cmd_represent(args, out: Output) -> int:
    norms = [int(n) for n in args.numbers]
    if args.from_search:
        norms += _search_norms(args.from_search)
    if not norms:
        print("error: give N or --from-search", file=sys.stderr)
        return EXIT_USAGE
    cfg = _cfg(args)
    status = EXIT_OK
    for N in norms:
        if N < 2 or is_probable_prime(N, cfg) is not Primality.PROBABLE_PRIME:
            out.record({"N": str(N), "error": "not a probable prime"}, f"{N}: not a probable prime")
            status = EXIT_MATH
            continue
        rep = cornacchia7(N)
        if rep is None:
            out.record(
                {"N": str(N), "representable": False, "mod28": N % 28},
                f"{N}: not representable as x^2 + 7y^2 ({N} ≡ {N % 28} mod 28)",
            )
            status = EXIT_MATH
            continue
        report = structure_check(rep)
        rec = dict(rep.as_dict(), representable=True, structure=report.as_dict())
        flags = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in vars(report).items())
        out.record(rec, f"{N} = {rep.x}^2 + 7*{rep.y}^2\n  {flags}")
    return status


def cmd_verify_tables(args, out: Output) -> int:
    try:
        fixtures = load_fixtures()
    except (OSError, ValueError) as exc:
        print(f"error: cannot load fixtures: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = verify_tables(args.table or ALL_TABLES, fixtures, _cfg(args))
    for r in results:
        lines = [f"Table {r.table}: {'PASS' if r.passed else 'FAIL'}  {r.title}"]
        lines += [f"  mismatch: {m}" for m in r.mismatches]
        lines += [f"  note: {n}" for n in r.notes]
        out.record(r.as_dict(), "\n".join(lines))
    passed = sum(r.passed for r in results)
    out.text(f"{passed}/{len(results)} tables pass")
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def cmd_properties(args, out: Output) -> int:
    checks = run_all(args.p_max, _cfg(args))
    for c in checks:
        out.record(c.as_dict(), f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    common.add_argument("--seed", type=int, default=0, help="seed for random Miller-Rabin bases")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker processes for search")
    common.add_argument("--trial-bound", type=int, default=10000)
    common.add_argument("--mr-rounds", type=_positive_int, default=24)
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest JSON here")

    parser = argparse.ArgumentParser(
        prog="qmersenne", description="Mersenne primes in real quadratic fields"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="field, unit and α classification")
    p.add_argument("--d", type=_field_arg, required=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("unit", parents=[common], help="fundamental unit and continued fraction")
    p.add_argument("--d", type=_field_arg, required=True)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("search", parents=[common], help="search prime exponents")
    p.add_argument("--d", type=_field_arg, required=True)
    p.add_argument("--p-max", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--alpha-power", type=_positive_int, default=1,
                       help="use α = 1 + ε^k for the fundamental unit ε")
    group.add_argument("--alpha", help="explicit α, e.g. √2 or (5+√13)/2")
    p.add_argument("--elements", action="store_true", help="also print M_p,α")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("represent", parents=[common], help="write primes as x^2 + 7y^2")
    p.add_argument("numbers", nargs="*", help="decimal integers")
    p.add_argument("--from-search", metavar="FILE", help="search --json output ('-' for stdin)")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify-tables", parents=[common], help="recompute the published tables")
    p.add_argument("--table", type=int, action="append", choices=ALL_TABLES)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("properties", parents=[common], help="run the invariant suites")
    p.add_argument("--p-max", type=int, default=201)
    p.set_defaults(func=cmd_properties)
    return parser


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = {
        k: (v.d if isinstance(v, FieldCtx) else v)
        for k, v in vars(args).items()
        if k not in ("func", "manifest", "json")
    }
    manifest = RunManifest(args.command, params, __version__, args.seed, _now())
    try:
        _cfg(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = args.func(args, Output(args.json, manifest))
    manifest.finished = _now()
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(manifest.as_dict()) + "\n")
    return status


def run() -> None:
    sys.exit(main())
