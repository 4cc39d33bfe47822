"""latkit command line: lattice design, bound evaluation, simulation.

Exit codes: 0 success, 2 user/config error, 3 internal invariant violation.
All dB values print with 3 decimals, probabilities in scientific notation
with 4 significant digits.  Machine outputs are CSV or JSON only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import binmat, bound, polar, theta
from .codes import (
    BinaryCode,
    CodeFamily,
    Registry,
    ebch_code,
    load_builtin_registry,
)
from .errors import LatkitError, InvalidParamsError, NotFoundError
from .sim import SimConfig, WEREstimate, simulate_wer

POLAR_DESIGNS_128 = ((4, 120), (4, 100), (8, 99), (16, 64))


def _fmt_pe(p: float) -> str:
    return f"{p:.4e}"


def _fmt_db(v: float) -> str:
    return f"{v:.3f}"


# ---------------------------------------------------------------------------
# Code spec strings
# ---------------------------------------------------------------------------

def load_registry(path: str | None) -> Registry:
    reg = load_builtin_registry()
    path = path or os.environ.get("LATKIT_REGISTRY") or None
    if path:
        with open(path, encoding="utf-8") as fh:
            reg.merge_csv(fh.read(), source_name=os.path.basename(path))
    return reg


def parse_code_spec(text: str, registry: Registry,
                    tau_c: int | None = None, d_c: int | None = None) -> BinaryCode:
    """Resolve a code spec string to a BinaryCode.

    Forms: ebch:<n>:<k> | polar:m=<m>:k=<k>:dc=<d> | polar:m=<m>:info=<i,...>
    | file:<path>.  --tau-c/--d-c override or complete registry knowledge.
    """
    parts = text.split(":")
    kind = parts[0].lower()
    if kind == "ebch":
        if len(parts) != 3:
            raise InvalidParamsError(f"expected ebch:<n>:<k>, got {text!r}")
        code = ebch_code(int(parts[1]), int(parts[2]), registry)
    elif kind == "polar":
        kv = {}
        for p in parts[1:]:
            if "=" not in p:
                raise InvalidParamsError(f"bad polar spec field {p!r} in {text!r}")
            key, val = p.split("=", 1)
            kv[key.strip()] = val.strip()
        if "m" not in kv:
            raise InvalidParamsError(f"polar spec needs m=<m>: {text!r}")
        m = int(kv["m"])
        if "info" in kv:
            spec = polar.PolarSpec.make(m, [int(s) for s in kv["info"].split(",") if s])
        elif "k" in kv and "dc" in kv:
            spec = polar.design_polar(m, int(kv["dc"]), int(kv["k"]))
        else:
            raise InvalidParamsError(
                f"polar spec needs either info=<i,...> or k=<k>:dc=<d>: {text!r}"
            )
        code = polar.polar_generator(spec)
    elif kind == "file":
        path = text.split(":", 1)[1]
        with open(path, encoding="utf-8") as fh:
            gen = binmat.parse_generator_file(fh.read())
        code = BinaryCode(
            name=os.path.basename(path), n=gen.cols, k=gen.rows, gen=gen,
            family=CodeFamily.CUSTOM,
        )
    else:
        raise InvalidParamsError(f"unknown code spec {text!r}")

    new_d = d_c if d_c is not None else code.d_c
    new_tau = tau_c if tau_c is not None else code.tau_c
    # (family, n, k) pins the code for EBCH and for user generator files, but
    # not for polar info sets, so those never inherit registry rows.
    if (new_tau is None or new_d is None) and code.family is not CodeFamily.POLAR:
        try:
            entry = registry.lookup(code.family, code.n, code.k)
            new_d = new_d if new_d is not None else entry.d_c
            new_tau = new_tau if new_tau is not None else entry.tau_c
        except NotFoundError:
            pass
    if (new_d, new_tau) != (code.d_c, code.tau_c):
        code = BinaryCode(name=code.name, n=code.n, k=code.k, gen=code.gen,
                          d_c=new_d, tau_c=new_tau, family=code.family)
    return code


def _require_theta(code: BinaryCode) -> theta.TruncatedTheta:
    if code.d_c is None or code.tau_c is None:
        raise InvalidParamsError(
            f"code {code.name} has unknown (d_c, tau_c); supply --tau-c/--d-c or add a "
            "registry entry (--registry file or LATKIT_REGISTRY)"
        )
    return theta.code_theta(code)


def design_candidates(family: str, registry: Registry) -> list[BinaryCode]:
    """Candidate codes with known tau_c for the design rules."""
    out: list[BinaryCode] = []
    if family in ("ebch", "all"):
        for entry in registry.entries(CodeFamily.EBCH):
            try:
                out.append(parse_code_spec(f"ebch:{entry.n}:{entry.k}", registry))
            except LatkitError:
                continue
    if family in ("polar", "all"):
        for dc, k in POLAR_DESIGNS_128:
            out.append(polar.polar_generator(polar.design_polar(7, dc, k)))
    if not out:
        raise InvalidParamsError(f"no design candidates for family {family!r}")
    return out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_theta(args) -> int:
    registry = load_registry(args.registry)
    if args.spec.lower().startswith("2zn:"):
        n = int(args.spec.split(":")[1])
        if args.dmax2 is None:
            raise InvalidParamsError("2zn:<n> spec needs --dmax2")
        th = theta.theta_2zn(n, args.dmax2)
        print(th.to_json())
        return 0
    code = parse_code_spec(args.spec, registry, args.tau_c, args.d_c)
    th = _require_theta(code)
    if args.dmax2 is not None:
        if args.dmax2 > th.dmax2:
            raise InvalidParamsError(
                f"construction A theta of {code.name} is exact only up to d2={th.dmax2}"
            )
        th = theta.TruncatedTheta(
            n=th.n, dmax2=args.dmax2,
            terms=tuple(t for t in th.terms if t[0] <= args.dmax2),
        )
    print(th.to_json())
    return 0


def _parse_sweep(text: str) -> np.ndarray:
    lo, hi, step = (float(x) for x in text.split(":"))
    if step <= 0 or hi < lo:
        raise InvalidParamsError(f"bad sweep {text!r}, expected lo:hi:step")
    return np.arange(lo, hi + step / 2, step)


def cmd_bound(args) -> int:
    registry = load_registry(args.registry)
    code = parse_code_spec(args.spec, registry, args.tau_c, args.d_c)
    th = _require_theta(code)
    bracket = tuple(float(x) for x in args.bracket_db.split(":"))
    if args.pe is not None:
        vnr = bound.required_vnr(th, code.rate, args.pe, bracket)
        print(_fmt_db(vnr))
        return 0
    if args.vnr_db is None:
        raise InvalidParamsError("bound needs --pe or --vnr-db")
    print("vnr_db,pe_estimate")
    for v in (_parse_sweep(args.vnr_db) if ":" in args.vnr_db else [float(args.vnr_db)]):
        print(f"{_fmt_db(v)},{_fmt_pe(bound.pe_estimate(th, v, code.rate))}")
    return 0


def cmd_design(args) -> int:
    registry = load_registry(args.registry)
    cands = design_candidates(args.family, registry)
    bracket = tuple(float(x) for x in args.bracket_db.split(":"))
    if args.rule == "tub":
        outcome = bound.select_best(cands, args.target_pe, bracket)
    elif args.rule == "balanced":
        outcome = bound.balanced_distance_pick(cands, args.target_pe, bracket)
    else:
        if args.vnr_db is None:
            raise InvalidParamsError("--rule eep needs an operating --vnr-db")
        outcome = bound.equal_error_probability_pick(
            cands, float(args.vnr_db), args.target_pe, bracket
        )
    out = outcome.to_dict()
    out["required_vnr_db"] = round(out["required_vnr_db"], 3)
    print(json.dumps(out))
    return 0


def cmd_simulate(args) -> int:
    registry = load_registry(args.registry)
    code = parse_code_spec(args.spec, registry, args.tau_c, args.d_c)
    cfg = SimConfig(
        vnr_db=args.vnr_db, seed=args.seed, min_errors=args.min_errors,
        max_trials=args.max_trials, osd_order=args.osd_order, workers=args.workers,
    )
    if not 0 <= args.osd_order <= code.k:
        raise InvalidParamsError(f"--osd-order must be in [0, {code.k}]")
    est = simulate_wer(code, cfg)
    print(WEREstimate.CSV_HEADER)
    print(est.csv_row())
    return 0


def cmd_table1(args) -> int:
    registry = load_registry(args.registry)
    cands = design_candidates("ebch", registry)
    print("target_pe,required_vnr_db,code,tau_c")
    for exponent in range(4, 9):
        pe = 10.0 ** -exponent
        outcome = bound.select_best(cands, pe)
        print(
            f"1e-{exponent:02d},{_fmt_db(outcome.required_vnr_db)},"
            f"\"{outcome.code.describe()}\",{outcome.code.tau_c}"
        )
    return 0


def cmd_export_fig(args) -> int:
    registry = load_registry(args.registry)
    cands = design_candidates(args.family, registry)
    sweep = _parse_sweep(args.vnr_db)
    lines = ["code,n,k,d_c,vnr_db,pe_estimate"]
    for code in cands:
        th = theta.code_theta(code)
        for v in sweep:
            lines.append(
                f"\"{code.describe()}\",{code.n},{code.k},{code.d_c},"
                f"{_fmt_db(v)},{_fmt_pe(bound.pe_estimate(th, float(v), code.rate))}"
            )
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_polar_search(args) -> int:
    results = polar.search_info_sets(
        args.m, args.dc, args.k, tries=args.tries, seed=args.seed
    )
    print("info_set,d_c,tau_c,partial_order")
    for res in results[: args.top]:
        tau = res.tau_c if res.tau_c is not None else "unknown"
        d = res.d_c if res.d_c is not None else "unknown"
        info = " ".join(str(i) for i in res.spec.info_set)
        print(f"\"{info}\",{d},{tau},{int(res.spec.satisfies_partial_order)}")
    return 0


# ---------------------------------------------------------------------------
# Parser plumbing
# ---------------------------------------------------------------------------

def _add_registry_flag(p):
    p.add_argument("--registry", metavar="CSV",
                   help="merge registry entries from CSV (default: $LATKIT_REGISTRY)")


def _add_code_flags(p):
    p.add_argument("spec", help="ebch:<n>:<k> | polar:m=..:k=..:dc=.. | "
                                "polar:m=..:info=i1,i2,... | file:<path>")
    p.add_argument("--tau-c", type=int, help="minimum-weight codeword count override")
    p.add_argument("--d-c", type=int, help="minimum Hamming distance override")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latkit",
        description="Construction A lattice design and Monte Carlo evaluation",
    )
    parser.add_argument("--config", metavar="FILE",
                        help="key=value defaults, overridden by flags")
    subs = parser.add_subparsers(dest="command", required=True)
    table = {}

    p = subs.add_parser("theta", help="exact truncated theta series (JSON)")
    _add_code_flags(p)
    p.add_argument("--dmax2", type=int, help="truncation bound (2zn:<n> specs, or <= d_c)")
    _add_registry_flag(p)
    p.set_defaults(func=cmd_theta)
    table["theta"] = p

    for name, help_ in (("bound", "union bound sweep or required VNR"),
                        ("required-vnr", "required VNR for a target WER")):
        p = subs.add_parser(name, help=help_)
        _add_code_flags(p)
        p.add_argument("--vnr-db", help="single value or sweep lo:hi:step")
        p.add_argument("--pe", type=float, help="target WER; prints required VNR (dB)")
        p.add_argument("--bracket-db", default="-5:25", help="bisection bracket lo:hi")
        _add_registry_flag(p)
        p.set_defaults(func=cmd_bound)
        table[name] = p

    p = subs.add_parser("design", help="pick the best component code (JSON)")
    p.add_argument("--family", choices=["ebch", "polar", "all"], default="all")
    p.add_argument("--target-pe", type=float, default=1e-5)
    p.add_argument("--rule", choices=["tub", "balanced", "eep"], default="tub")
    p.add_argument("--vnr-db", help="operating VNR for --rule eep")
    p.add_argument("--bracket-db", default="-5:25")
    _add_registry_flag(p)
    p.set_defaults(func=cmd_design)
    table["design"] = p

    p = subs.add_parser("simulate", help="Monte Carlo WER (CSV row)")
    _add_code_flags(p)
    p.add_argument("--vnr-db", type=float, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-trials", type=int, default=1_000_000)
    p.add_argument("--osd-order", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    _add_registry_flag(p)
    p.set_defaults(func=cmd_simulate)
    table["simulate"] = p

    p = subs.add_parser("table1", help="best EBCH designs per target WER")
    _add_registry_flag(p)
    p.set_defaults(func=cmd_table1)
    table["table1"] = p

    p = subs.add_parser("export-fig", help="CSV sweep of bound estimates per candidate")
    p.add_argument("--family", choices=["ebch", "polar", "all"], default="all")
    p.add_argument("--vnr-db", default="1:8:0.25", help="sweep lo:hi:step")
    p.add_argument("--out", help="write CSV here instead of stdout")
    _add_registry_flag(p)
    p.set_defaults(func=cmd_export_fig)
    table["export-fig"] = p

    p = subs.add_parser("polar-search",
                        help="randomized info-set search (tau_c unknown when "
                             "no partial order and k too large to enumerate)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dc", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tries", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_polar_search)
    table["polar-search"] = p

    return parser, table


def _apply_config_defaults(table, path: str):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidParamsError(f"bad config line {line!r}, expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = val
    for sub in table.values():
        for action in sub._actions:
            if action.dest in values:
                raw = values[action.dest]
                sub.set_defaults(**{action.dest: action.type(raw) if action.type else raw})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, table = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            _apply_config_defaults(table, known.config)
        args = parser.parse_args(argv)
        return args.func(args)
    except (LatkitError, OSError, ValueError) as exc:
        print(f"latkit: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - invariant violation
        print(f"latkit: internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
