"""Check records and the full certification pipeline.

A :class:`Record` is one computed constant with its enclosure, the published
value it is compared against, the tolerance and the verdict.  Records are
the unit of both the text tables and the machine-readable output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from . import alpha as alpha_mod
from .counting import (
    PUBLISHED_ETA,
    PUBLISHED_M,
    count_case_A,
    count_case_B,
    count_case_C,
    count_case_D,
    m_split_thresholds,
    total_count,
)
from .interval import Interval, ival
from .logforms import aleksentsev_constant, case_a_max_a, iterate_d_bound
from .params import CASES, RunConfig
from .primeswap import DEFAULT_LOG10_UD, run_prime_swap

Value = Union[Interval, int, str]

DIGITS = 10


@dataclass
class Record:
    name: str
    value: Value
    reference: str
    tolerance: str
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, Interval):
            val = {"lo": _fmt(v.lo), "hi": _fmt(v.hi)}
        else:
            val = str(v)
        return {
            "name": self.name,
            "value": val,
            "reference": self.reference,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "note": self.note,
        }

    def value_text(self) -> str:
        v = self.value
        return v.format(DIGITS) if isinstance(v, Interval) else str(v)


def _fmt(x) -> str:
    from mpmath import mp, nstr

    return nstr(mp.mpf(x), DIGITS + 5)


@dataclass
class Report:
    title: str
    header: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    data: dict = field(default_factory=dict)  # extra structured payload, e.g. a census

    def add(self, rec: Record) -> Record:
        self.records.append(rec)
        return rec

    def extend(self, recs: Iterable[Record]) -> None:
        self.records.extend(recs)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def first_failure(self) -> Optional[Record]:
        return next((r for r in self.records if not r.passed), None)

    def to_json(self) -> str:
        body = {"title": self.title, "header": self.header, "records": [r.to_dict() for r in self.records]}
        if self.data:
            body["data"] = self.data
        return json.dumps(body, indent=2, sort_keys=True)

    def to_table(self) -> str:
        rows = [("name", "value", "reference", "tolerance", "ok")]
        for r in self.records:
            rows.append((r.name, r.value_text(), r.reference, r.tolerance, "pass" if r.passed else "FAIL"))
        widths = [max(len(row[i]) for row in rows) for i in range(5)]
        lines = [f"# {self.title}"]
        lines += [f"# {k}: {v}" for k, v in self.header.items()]
        for i, row in enumerate(rows):
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
            if i == 0:
                lines.append("  ".join("-" * w for w in widths))
        notes = [f"note [{r.name}]: {r.note}" for r in self.records if r.note]
        return "\n".join(lines + notes)


# --- comparison helpers ----------------------------------------------------


def within_rel(value: Interval, ref, rel) -> bool:
    """Certified ``|value - ref| <= rel * ref`` for positive ref."""
    ref = ival(ref)
    lo = ref * (1 - ival(rel))
    hi = ref * (1 + ival(rel))
    return value.ge(lo) and value.le(hi)


def within_abs(value: Interval, ref, tol) -> bool:
    ref, tol = ival(ref), ival(tol)
    return value.ge(ref - tol) and value.le(ref + tol)


def rel_record(name: str, value: Interval, ref_text: str, rel: str, note: str = "") -> Record:
    return Record(name, value, ref_text, f"rel {rel}", within_rel(value, Interval(ref_text), Fraction(rel)), note)


# --- pipeline stages ---------------------------------------------------------


def alpha_records(config: RunConfig) -> list[Record]:
    out = []
    limits = {}
    for tag, row in config.rows.items():
        sol = alpha_mod.max_alpha(row)
        ok = (
            alpha_mod.is_admissible(row, row.alpha)
            and sol.alpha_max.ge(row.alpha)
            and sol.alpha_max.le(sol.limit)
        )
        out.append(Record(f"alpha.{tag}", sol.alpha_max, row.alpha_text, "admissible <= max <= limit", ok,
                          f"binding inequality: {sol.binding}"))
        limits.setdefault("A" if row.case != "D" else "D", sol.limit)
    for fam, ref in (("A", "1.5615528"), ("D", "1.366025")):
        if fam in limits:
            out.append(Record(f"alpha.limit.{fam}", limits[fam], ref, "abs 1e-6",
                              within_abs(limits[fam], Interval(ref), Fraction(1, 10**6))))
    for case, cc in alpha_mod.all_case_coefficients(config).items():
        if cc.published is None:
            continue
        row = cc.published_row or cc.weakest_row
        value = cc.per_row[row]
        ok = cc.published_row is not None
        out.append(Record(f"coeff.{case}", value, config.coefficients_text[case], "4 decimals (truncated)", ok, cc.note()))
    return out


def aleksentsev_record() -> Record:
    v = aleksentsev_constant(3, 4)
    return rel_record("aleksentsev.3.4", v, "1.5013e11", "0.00005", "4 significant figures")


PUBLISHED_LOG10_D = {"A": "67.859", "B": "60.057", "C": "56.528", "D": "51.416"}


def dbound_records(config: RunConfig, cases=CASES, seed=None) -> tuple[list[Record], dict]:
    out, results = [], {}
    for case in cases:
        res = iterate_d_bound(config, case, seed)
        results[case] = res
        v = Interval(res.log10_d_bound)
        ref = PUBLISHED_LOG10_D[case]
        binding = res.iterations[-1][3] if res.iterations else "-"
        out.append(Record(f"dbound.{case}.log10", v, ref, "abs 0.1", within_abs(v, Interval(ref), Fraction(1, 10)),
                          f"{len(res.iterations)} steps, binding row {binding}"))
    return out, results


def smallest_entry_records(config: RunConfig) -> list[Record]:
    r = case_a_max_a(seed_log10_C1=config.seed_log10_C1, c0_offset=config.c0_offset)
    d_log = Interval(r.d_result.log10_d_bound)
    ref = Interval("6.1e50").log10()
    return [
        Record("trial.d.log10", d_log, "log10(6.1e50)", "abs 0.1", within_abs(d_log, ref, Fraction(1, 10))),
        Record("trial.a_bound", r.a_bound, "7.29e7", "upper", r.a_bound.le(Interval("7.29e7")) and r.closes,
               f"trial A0 = {r.A0_trial}"),
    ]


def prime_swap_records(log10_UD=DEFAULT_LOG10_UD, a_values=None):
    rep = run_prime_swap(log10_UD, a_values)
    out = [
        Record("swap.forced", ",".join(map(str, rep.forced)), "2,3,5,7,11", "exact", rep.forced == [2, 3, 5, 7, 11]),
    ]
    v = tuple(rep.v[a] for a in sorted(rep.v))
    if a_values is None:
        out.append(Record("swap.v", ",".join(map(str, v)), "2,3,0,3,0,0,0", "exact", v == (2, 3, 0, 3, 0, 0, 0)))
    out.append(Record("swap.q", rep.q_max, "1", "exact", rep.q_max == 1, "largest multiplier over a = "
                      + ",".join(map(str, sorted(rep.v)))))
    n = sum(len(c) for c in rep.candidates.values())
    surv = sum(len(d.survivors) for d in rep.discharge.values())
    out.append(Record("swap.survivors", surv, "0", "exact", surv == 0, f"{n} candidates checked"))
    return out, rep


def threshold_records(UD_A) -> list[Record]:
    out = []
    for i, (t, pub) in enumerate(zip(m_split_thresholds(UD_A), PUBLISHED_M), start=1):
        if i <= 2:
            out.append(Record(f"m{i}", t.exact, str(pub), "exact", t.exact == pub))
        else:
            out.append(Record(f"m{i}", t.exact, f"{float(pub):.1e}", "2 significant figures (floored)",
                              t.two_sig == pub))
    return out


def count_records(config: RunConfig, prime_swap_ok: bool = True, eta=None):
    UD = config.published_d
    m_values = config.m_overrides
    swap = config.prime_swap and prime_swap_ok
    A = count_case_A(UD["A"], m_values, prime_swap=swap)
    B = count_case_B(UD["B"])
    if eta is None:
        eta = PUBLISHED_ETA if config.eta is None else config.eta
    C = count_case_C(UD["C"], eta)
    D = count_case_D(UD["D"])
    recs = [
        rel_record("count.A.doubles", A.term("doubles"), "4.080e19", "0.01"),
        rel_record("count.A.unrefined", A.term("unrefined"), "8.215e27", "0.01"),
        rel_record("count.A.refined", A.subtotal, "1.177e27", "0.01",
                   f"omega cap {A.omega_cap}" + ("" if swap else " (prime swap disabled)")),
        rel_record("count.B.doubles", B.term("doubles"), "4.91e22", "0.01"),
        rel_record("count.B", B.subtotal, "2.0e23", "0.01"),
        rel_record("count.C", C.subtotal, "2.41e22", "0.01", f"eta = {float(C.term('eta').mid):.4g}"),
        rel_record("count.D", D.subtotal, "2.07e19", "0.01"),
    ]
    tot = total_count({"A": A, "B": B, "C": C, "D": D})
    recs.append(Record("total", tot.total, "1.18e27", "upper", tot.total.le(Interval("1.18e27"))))
    return recs, {"A": A, "B": B, "C": C, "D": D, "total": tot}


def certify_all(config: RunConfig, progress: Optional[Callable[[str], None]] = None) -> Report:
    rep = Report("certify-all", header=config.overrides())
    say = progress or (lambda s: None)
    say("alpha")
    rep.extend(alpha_records(config))
    rep.add(aleksentsev_record())
    say("dbound")
    recs, _ = dbound_records(config)
    rep.extend(recs)
    rep.extend(smallest_entry_records(config))
    say("prime-swap")
    swap_recs, swap = prime_swap_records()
    rep.extend(swap_recs)
    say("counts")
    rep.extend(threshold_records(config.published_d["A"]))
    count_recs, _ = count_records(config, prime_swap_ok=swap.omega_le_22)
    rep.extend(count_recs)
    return rep
