"""Parameter rows (one per subcase) and run configuration.

Rows are data: they are read from an INI file with a ``[case.<tag>]``
section per row.  The bundled file reproduces the published table.
"""

from __future__ import annotations

import ast
import configparser
import operator
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from .interval import Interval

CASES = ("A", "B", "C", "D")


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _evaluate(text: str, literal: Callable[[str], object]):
    """Evaluate an arithmetic expression over decimal literals.

    Literals are handed to ``literal`` as their source text so that decimal
    values stay exact until the number type rounds them.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse expression {text!r}") from exc
    src = text.strip()

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return literal(ast.get_source_segment(src, node))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        raise ConfigError(f"unsupported syntax in {text!r}")

    return walk(tree)


def parse_interval(text: str) -> Interval:
    return _evaluate(text, Interval)


def parse_rational(text: str) -> Fraction:
    value = _evaluate(text, Fraction)
    if not isinstance(value, Fraction):
        raise ConfigError(f"{text!r} is not rational")
    return value


@dataclass(frozen=True)
class CaseParams:
    """One subcase row: lower bounds A0, B0, C0 and the shape parameters."""

    tag: str
    A0: int
    B0: int
    C0: Interval
    rho: Interval
    beta: Interval
    tau: Fraction
    alpha: Interval
    e_choice: Optional[str] = None
    source: dict = field(default_factory=dict, compare=False)

    @property
    def case(self) -> str:
        return self.tag[0]

    @property
    def alpha_text(self) -> str:
        return self.source.get("alpha", self.alpha.format())

    def e_is_C0(self) -> bool:
        if self.e_choice is not None:
            return self.e_choice == "C0"
        if self.beta.lt(4):
            return True
        if self.beta.gt(4):
            return False
        raise ConfigError(f"{self.tag}: cannot decide beta < 4; set e explicitly")

    def f_is_C0(self) -> bool:
        if self.beta.lt(1):
            return True
        if self.beta.gt(1):
            return False
        raise ConfigError(f"{self.tag}: cannot decide beta < 1")

    def validate(self) -> None:
        if self.A0 < 1 or self.B0 < 1:
            raise ConfigError(f"{self.tag}: A0 and B0 must be positive")
        if not (0 < self.tau < 1):
            raise ConfigError(f"{self.tag}: tau must lie in (0, 1)")
        if not self.rho.gt(1):
            raise ConfigError(f"{self.tag}: rho must exceed 1")
        if not (self.beta * self.rho).gt(4):
            raise ConfigError(f"{self.tag}: beta*rho > 4 is not certified")

    def with_(self, **changes) -> "CaseParams":
        return replace(self, **changes)


@dataclass
class RunConfig:
    rows: dict[str, CaseParams]
    coefficients: dict[str, Interval]
    coefficients_text: dict[str, str]
    published_d: dict[str, Interval]
    published_d_text: dict[str, str]
    seed_log10_C1: Fraction = Fraction("72.188")
    c0_offset: Fraction = Fraction("0.01")
    precision: int = 128
    eta: Optional[Fraction] = None
    m_overrides: Optional[list[Fraction]] = None
    prime_swap: bool = True
    source: str = "<bundled>"

    def rows_for(self, case: str) -> list[CaseParams]:
        return [r for r in self.rows.values() if r.case == case]

    def overrides(self) -> dict[str, str]:
        """Settings that differ from the bundled defaults, for report headers."""
        base = default_config()
        out = {}
        if self.source != base.source:
            out["config"] = self.source
        for name in ("seed_log10_C1", "c0_offset", "precision", "prime_swap"):
            if getattr(self, name) != getattr(base, name):
                out[name] = str(getattr(self, name))
        if self.eta is not None:
            out["eta"] = str(self.eta)
        if self.m_overrides is not None:
            out["m"] = ",".join(str(m) for m in self.m_overrides)
        return out


def _row_from_section(tag: str, sec: configparser.SectionProxy) -> CaseParams:
    try:
        e = sec.get("e", "").strip() or None
        if e not in (None, "C0", "C1"):
            raise ConfigError(f"{tag}: e must be C0 or C1")
        row = CaseParams(
            tag=tag,
            A0=int(parse_rational(sec["A0"])),
            B0=int(parse_rational(sec["B0"])),
            C0=parse_interval(sec["C0"]),
            rho=parse_interval(sec["rho"]),
            beta=parse_interval(sec["beta"]),
            tau=parse_rational(sec["tau"]),
            alpha=parse_interval(sec["alpha"]),
            e_choice=e,
            source={k: sec[k].strip() for k in sec},
        )
    except KeyError as exc:
        raise ConfigError(f"[case.{tag}] is missing {exc.args[0]}") from None
    row.validate()
    return row


def parse_config(text: str, source: str = "<string>") -> RunConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.optionxform = str  # keep A0/B0/C0 case
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    rows = {}
    for name in cp.sections():
        if name.startswith("case."):
            tag = name[5:]
            if tag[:1] not in CASES:
                raise ConfigError(f"section {name}: tag must start with A-D")
            rows[tag] = _row_from_section(tag, cp[name])
    if not rows:
        raise ConfigError("no [case.<tag>] sections found")
    for needed in ("coefficients", "published_d"):
        if needed not in cp:
            raise ConfigError(f"missing [{needed}] section")
    coefficients_text = {k: v.strip() for k, v in cp["coefficients"].items()}
    pub_text = {k: v.strip() for k, v in cp["published_d"].items()}
    run = cp["run"] if "run" in cp else {}
    return RunConfig(
        rows=rows,
        coefficients={k: Interval(v) for k, v in coefficients_text.items()},
        coefficients_text=coefficients_text,
        published_d={k: Interval(v) for k, v in pub_text.items()},
        published_d_text=pub_text,
        seed_log10_C1=Fraction(run.get("seed_log10_C1", "72.188")),
        c0_offset=Fraction(run.get("c0_offset", "0.01")),
        precision=int(run.get("precision", "128")),
        source=source,
    )


def bundled_config_text() -> str:
    return resources.files("dioquint.data").joinpath("rows.ini").read_text()


def default_config() -> RunConfig:
    return parse_config(bundled_config_text(), source="<bundled>")


def load_config(path: Optional[str | Path] = None) -> RunConfig:
    if path is None:
        return default_config()
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    return parse_config(text, source=str(p))
