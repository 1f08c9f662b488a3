"""Report containers shared by the bounds and structure checks."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

STATUSES = ("satisfied", "violated", "vacuous", "not-applicable", "not-checked")


def _encode(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def _decode(x):
    if isinstance(x, str) and x in ("inf", "-inf", "nan"):
        return float(x)
    return x


@dataclass
class Constant:
    value: float
    formula: str


@dataclass
class Check:
    """One inequality: its bound, the observed value and the verdict."""

    name: str
    kind: str  # "lower", "strict-lower", "upper", "range" or "identity"
    bound: Any
    observed: Any
    status: str
    formula: str
    note: str = ""
    slack: Optional[float] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.slack is None and _is_number(self.bound) and _is_number(self.observed):
            if self.kind in ("lower", "strict-lower"):
                self.slack = float(self.observed) - float(self.bound)
            elif self.kind == "upper":
                self.slack = float(self.bound) - float(self.observed)

    @property
    def satisfied(self) -> Optional[bool]:
        """True or False for a verdict, None when nothing was checked."""
        if self.status in ("satisfied", "vacuous"):
            return True
        if self.status == "violated":
            return False
        return None

    def to_dict(self) -> dict:
        return {k: _encode(v) for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(**{k: _decode(v) for k, v in d.items()})


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


@dataclass
class BoundsReport:
    """Constants and per-inequality verdicts for one run."""

    params: dict
    constants: dict[str, Constant]
    checks: dict[str, Check]
    summary: Optional[dict] = None
    advisory: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[str]:
        return [name for name, c in self.checks.items() if c.status == "violated"]

    def exit_code(self) -> int:
        """0 if nothing is violated or the run is advisory, else 1."""
        return 1 if self.violations and not self.advisory else 0

    def to_dict(self) -> dict:
        return {
            "params": {k: _encode(v) for k, v in self.params.items()},
            "constants": {k: {"value": _encode(c.value), "formula": c.formula} for k, c in self.constants.items()},
            "checks": {k: c.to_dict() for k, c in self.checks.items()},
            "summary": None if self.summary is None else {k: _encode(v) for k, v in self.summary.items()},
            "advisory": self.advisory,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundsReport":
        return cls(
            params={k: _decode(v) for k, v in d["params"].items()},
            constants={k: Constant(_decode(c["value"]), c["formula"]) for k, c in d["constants"].items()},
            checks={k: Check.from_dict(c) for k, c in d["checks"].items()},
            summary=None if d.get("summary") is None else {k: _decode(v) for k, v in d["summary"].items()},
            advisory=d.get("advisory", False),
            diagnostics=d.get("diagnostics", {}),
        )

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), indent=kw.pop("indent", 2), **kw)

    @classmethod
    def from_json(cls, text: str) -> "BoundsReport":
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        return render_table(self.constants, self.checks, advisory=self.advisory)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.6g}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def render_table(constants: dict[str, Constant], checks: dict[str, Check], advisory: bool = False) -> str:
    """Human-readable aligned table of constants and checks."""
    lines = []
    if constants:
        rows = [["constant", "value", "formula"]]
        rows += [[k, _fmt(c.value), c.formula] for k, c in constants.items()]
        lines += _align(rows)
        lines.append("")
    rows = [["check", "kind", "bound", "observed", "status", "formula"]]
    for c in checks.values():
        status = c.status + (" (advisory)" if advisory and c.status == "violated" else "")
        rows.append([c.name, c.kind, _fmt(c.bound), _fmt(c.observed), status, c.formula])
    lines += _align(rows)
    return "\n".join(lines) + "\n"
