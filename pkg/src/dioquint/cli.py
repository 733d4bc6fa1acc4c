"""Command line entry point.

Exit status: 0 when every check passes, 1 on a certification failure (the
first failing constant is named), 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .alpha import max_alpha, m_lower_coeff
from .arith import DomainError
from .counting import optimize_eta
from .interval import Interval, precision
from .logforms import CertificationError, DivergenceError
from .params import CASES, ConfigError, RunConfig, load_config
from .primeswap import DEFAULT_LOG10_UD
from .report import (
    Record,
    Report,
    alpha_records,
    aleksentsev_record,
    certify_all,
    count_records,
    dbound_records,
    prime_swap_records,
    smallest_entry_records,
    threshold_records,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _case(text: str) -> str:
    t = text.upper()
    if t != "ALL" and t not in CASES:
        raise argparse.ArgumentTypeError("case must be A, B, C, D or all")
    return t


def _cases(choice: str) -> tuple:
    return CASES if choice == "ALL" else (choice,)


# --- subcommands -------------------------------------------------------------


def cmd_alpha(args, config: RunConfig) -> Report:
    rep = Report("alpha", header=config.overrides())
    rep.extend(alpha_records(config))
    rep.add(aleksentsev_record())
    rows = []
    for tag, p in config.rows.items():
        sol = max_alpha(p)
        coeff, expo = m_lower_coeff(p)
        rows.append({
            "tag": tag, "A0": p.A0, "B0": p.B0, "C0": p.source.get("C0", ""),
            "rho": p.source.get("rho", ""), "beta": p.source.get("beta", ""),
            "tau": str(p.tau), "alpha": p.alpha_text,
            "lambda": sol.lam.format(8), "alpha_max": sol.alpha_max.format(7),
            "binding": sol.binding, "coeff": coeff.format(8), "exponent": str(expo),
        })
    rep.data["rows"] = rows
    return rep


def cmd_dbound(args, config: RunConfig) -> Report:
    rep = Report("dbound", header=config.overrides())
    recs, results = dbound_records(config, _cases(args.case), args.seed)
    rep.extend(recs)
    rep.data["trace"] = {
        c: [{"phase": ph, "log10_in": f"{float(a):.9f}", "log10_out": f"{float(b):.9f}", "binding": row}
            for ph, a, b, row in r.iterations]
        for c, r in results.items()
    }
    if args.trial:
        rep.extend(smallest_entry_records(config))
    return rep


def cmd_sums(args, config: RunConfig) -> Report:
    from .sums import (
        EF_bounds,
        G_bound,
        dH_sum_bound,
        dH_sum_grid,
        exact_sums,
        milk_bound,
    )

    rep = Report("sums")
    if args.grid:
        for k in range(1, args.max_exp + 1):
            x = 10**k
            ex = exact_sums(x)
            E_b, F_b = EF_bounds(x)
            G_b = G_bound(x)
            rep.add(Record(f"E(1e{k})", ex.E, "closed-form bound", "exact <= bound", Interval(ex.E).le(E_b)))
            rep.add(Record(f"F(1e{k})", ex.F, "closed-form bound", "exact <= bound", ex.F.le(F_b)))
            rep.add(Record(f"G(1e{k})", ex.G, "closed-form bound", "exact <= bound", ex.G.le(G_b)))
        Ns = [10**2, 10**3, 10**4, 3 * 10**4, 10**5]
        Hs = [3, 10, 100, 10**3]
        for (N, H), v in sorted(dH_sum_grid(Ns, Hs).items()):
            bound = min(milk_bound(N, H).hi, dH_sum_bound(N, H).hi)
            rep.add(Record(f"dH({N},{H})", v, "min(milk, closed form)", "exact <= bound", Interval(v).le(Interval(bound))))
        return rep
    if args.x is None:
        raise UsageError("sums needs --x or --grid")
    mode = args.mode or "both"
    x = args.x
    if mode in ("exact", "both"):
        ex = exact_sums(x)
        rep.add(Record("E", ex.E, "-", "-", True))
        rep.add(Record("F", ex.F, "-", "-", True))
        rep.add(Record("G", ex.G, "-", "-", True))
    if mode in ("bounds", "both"):
        E_b, F_b = EF_bounds(x)
        G_b = G_bound(x)
        if mode == "both":
            rep.records = [
                Record("E", ex.E, "bound " + E_b.format(10), "exact <= bound", Interval(ex.E).le(E_b)),
                Record("F", ex.F, "bound " + F_b.format(10), "exact <= bound", ex.F.le(F_b)),
                Record("G", ex.G, "bound " + G_b.format(10), "exact <= bound", ex.G.le(G_b)),
            ]
        else:
            rep.add(Record("E_bound", E_b, "-", "-", True))
            rep.add(Record("F_bound", F_b, "-", "-", True))
            rep.add(Record("G_bound", G_b, "-", "-", True))
    return rep


def cmd_counts(args, config: RunConfig) -> Report:
    if args.no_prime_swap:
        config.prime_swap = False
    eta = None
    if args.eta is not None:
        eta = optimize_eta(config.published_d["C"]) if args.eta == "optimize" else _fraction(args.eta)
        config.eta = eta
    if args.m is not None:
        config.m_overrides = [_fraction(t) for t in args.m.split(",")]
    rep = Report("counts", header=config.overrides())
    swap_ok = True
    if config.prime_swap:
        _, swap = prime_swap_records()
        swap_ok = swap.omega_le_22
    recs, reports = count_records(config, swap_ok, eta)
    cases = _cases(args.case)
    if "A" in cases:
        rep.extend(threshold_records(config.published_d["A"]))
    keep = [r for r in recs if r.name == "total" or r.name.split(".")[1] in cases]
    if args.case != "ALL":
        keep = [r for r in keep if r.name != "total"]
    rep.extend(keep)
    rep.data["terms"] = {
        c: [{"name": t.name, "lo": f"{float(t.value.lo):.10g}", "hi": f"{float(t.value.hi):.10g}",
             "provenance": t.provenance} for t in reports[c].detail]
        for c in cases
    }
    return rep


def cmd_prime_swap(args, config: RunConfig) -> Report:
    if args.a == "all":
        a_values = None
    elif args.a.isdigit():
        a_values = [int(args.a)]
    else:
        raise UsageError("--a must be a positive integer or all")
    recs, swap = prime_swap_records(args.ud, a_values)
    rep = Report("prime-swap", header={"log10_UD": str(args.ud)} if args.ud != DEFAULT_LOG10_UD else {})
    rep.extend(recs)
    rep.data["census"] = swap.census()
    if args.census:
        Path(args.census).write_text(swap.census_json())
    return rep


def cmd_oracle(args, config: RunConfig) -> Report:
    from .tuples import (
        check_pair_nonextension,
        classify_triple,
        is_diophantine,
        regular_fourth,
        search_tuples,
    )

    rep = Report("oracle", header={"limit": str(args.limit)})
    if args.classify:
        a, b, c = args.classify
        rep.add(Record("classify", classify_triple(a, b, c).name, "-", "-", True))
        return rep
    if args.extend:
        a, b, c = args.extend
        d = regular_fourth(a, b, c)
        rep.add(Record("regular_fourth", d, "-", "diophantine", is_diophantine((a, b, c, d))))
        return rep
    pairs = search_tuples(args.limit, 2)
    triples = search_tuples(args.limit, 3)
    rep.add(Record("pairs", len(pairs), "-", "-", True))
    rep.add(Record("triples", len(triples), "-", "-", True))
    bad = [t for t in triples if not is_diophantine(t + (regular_fourth(*t),))]
    rep.add(Record("regular_fourth", len(bad), "0", "no failures", not bad))
    d = regular_fourth(1, 3, 8)
    rep.add(Record("regular_fourth(1,3,8)", d, "120", "exact", d == 120))
    low = check_pair_nonextension(4001, 333)
    rep.add(Record("4001a+1 square, a<=333", len(low), "0", "exact", not low))
    hit = check_pair_nonextension(4001, 4000)
    rep.add(Record("4001a+1 square, a<=4000", ",".join(map(str, hit)), "3999", "exact", hit == [3999]))
    if args.size == 4:
        quads = search_tuples(min(args.limit, 10**5), 4)
        rep.add(Record("quadruples", len(quads), "-", "-", True))
    return rep


def cmd_certify_all(args, config: RunConfig) -> Report:
    progress = (lambda s: print(f"[{s}]", file=sys.stderr)) if args.verbose else None
    return certify_all(config, progress)


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="parameter file (defaults to the bundled rows)")
    common.add_argument("--format", choices=("table", "records"), default=argparse.SUPPRESS,
                        help="text table or JSON records")
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="working precision in bits")

    parser = argparse.ArgumentParser(prog="dioquint", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("alpha", parents=[common], help="admissible alpha and m coefficients per row")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("dbound", parents=[common], help="iterate the upper bound on d")
    p.add_argument("--case", type=_case, default="ALL")
    p.add_argument("--seed", type=_fraction, help="starting log10 C1")
    p.add_argument("--trial", action="store_true", help="also run the smallest-entry trial for case A")
    p.set_defaults(func=cmd_dbound)

    p = sub.add_parser("sums", parents=[common], help="divisor sums: exact values and bounds")
    p.add_argument("--x", type=_fraction)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", dest="mode", action="store_const", const="exact")
    g.add_argument("--bounds", dest="mode", action="store_const", const="bounds")
    g.add_argument("--both", dest="mode", action="store_const", const="both")
    p.add_argument("--grid", action="store_true", help="run the domination suite")
    p.add_argument("--max-exp", type=int, default=6, help="grid runs x = 10..10^max_exp")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("counts", parents=[common], help="per-case quintuple counts")
    p.add_argument("--case", type=_case, default="ALL")
    p.add_argument("--no-prime-swap", action="store_true")
    p.add_argument("--eta", help="split point for case C, or 'optimize'")
    p.add_argument("--m", help="comma-separated split points m1..m8")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("prime-swap", parents=[common], help="omega(b) = 23 candidate census")
    p.add_argument("--a", default="all", help="a value (1..7 at the default bound) or all")
    p.add_argument("--ud", type=_fraction, default=DEFAULT_LOG10_UD, help="log10 of the bound on d")
    p.add_argument("--census", help="write the candidate census to this JSON file")
    p.set_defaults(func=cmd_prime_swap)

    p = sub.add_parser("oracle", parents=[common], help="brute-force tuple checks")
    p.add_argument("--limit", type=int, default=10**4)
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.add_argument("--classify", type=int, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--extend", type=int, nargs=3, metavar=("A", "B", "C"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("certify-all", parents=[common], help="run the whole pipeline")
    p.add_argument("-v", "--verbose", action="store_true", help="stage progress on stderr")
    p.set_defaults(func=cmd_certify_all)
    return parser


def _render(rep: Report, fmt: str) -> str:
    if fmt == "records":
        return rep.to_json()
    text = rep.to_table()
    if rep.data.get("rows"):
        keys = list(rep.data["rows"][0])
        table = [keys] + [[str(r[k]) for k in keys] for r in rep.data["rows"]]
        widths = [max(len(row[i]) for row in table) for i in range(len(keys))]
        text += "\n\n" + "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table)
    for case, steps in rep.data.get("trace", {}).items():
        text += f"\n\ntrace {case}: " + " -> ".join(s["log10_out"] for s in steps)
    for case, terms in rep.data.get("terms", {}).items():
        text += f"\n\nterms {case}:\n" + "\n".join(
            f"  {t['name']:<10} {t['hi']:<18} {t['provenance']}" for t in terms
        )
    if "census" in rep.data:
        text += f"\n\ncensus: {len(rep.data['census'])} candidates"
    return text


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    fmt = getattr(args, "format", "table")
    try:
        config = load_config(args.config)
        bits = getattr(args, "precision", config.precision)
        if bits < 64:
            raise UsageError("--precision must be at least 64 bits")
        config.precision = bits
        with precision(bits):
            rep = args.func(args, config)
            out = _render(rep, fmt)
    except (ConfigError, UsageError, DomainError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificationError, DivergenceError, ArithmeticError) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(out)
    bad = rep.first_failure()
    if bad is not None:
        msg = f"FAILED: {bad.name} = {bad.value_text()} (reference {bad.reference}, {bad.tolerance})"
        print(msg, file=sys.stderr if fmt == "records" else sys.stdout)
        return EXIT_FAIL
    if args.command == "certify-all" and fmt == "table":
        print("total ≤ 1.18e27")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
