"""Verification records and their text/JSON/CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import __version__
from .modular import Residue

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Case:
    """One checked (id, parameters) pair with both sides kept as witnesses.

    ``lhs``/``rhs`` hold raw values (int, Fraction, Residue, tuples of
    those, or strings); rendering happens only when a report is written.
    """

    kind: str
    id: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    verdict: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict[str, Any]:
        params = dict(self.params)
        if self.note:
            params["note"] = self.note
        return {
            "kind": self.kind,
            "id": self.id,
            "params": {k: _jsonable(v) for k, v in params.items()},
            "lhs": format_value(self.lhs),
            "rhs": format_value(self.rhs),
            "verdict": self.verdict,
        }


def compare(kind: str, id: str, params: dict[str, Any], lhs: Any, rhs: Any, note: str = "") -> Case:
    return Case(kind, id, params, lhs, rhs, PASS if lhs == rhs else FAIL, note)


@dataclass
class Entry:
    """A named group of cases produced by one verification routine."""

    id: str
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict == PASS for c in self.cases)

    @property
    def first_failure(self) -> Case | None:
        for c in self.cases:
            if c.verdict != PASS:
                return c
        return None

    def counts(self) -> dict[str, int]:
        return tally(self.cases)


def tally(cases: Iterable[Case]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for c in cases:
        out[c.verdict] += 1
    return out


def format_value(v: Any) -> str:
    if isinstance(v, Residue):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        if v and all(isinstance(x, Residue) for x in v):
            return ",".join(str(x.value) for x in v) + f" mod {v[0].modulus}"
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return format_value(v)


@dataclass
class VerificationReport:
    config: dict[str, Any]
    cases: list[Case]
    wall_ms: int = 0
    version: str = __version__
    notes: list[str] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        return tally(self.cases)

    @property
    def ok(self) -> bool:
        s = self.summary
        return s[FAIL] == 0 and s[SKIPPED] == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "config": self.config,
            "cases": [c.to_dict() for c in self.cases],
            "summary": self.summary,
            "wall_ms": self.wall_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in self.cases:
            d = c.to_dict()
            params = ";".join(f"{k}={_csv_param(v)}" for k, v in d["params"].items())
            w.writerow([d["kind"], d["id"], params, d["lhs"], d["rhs"], d["verdict"]])
        return buf.getvalue()

    def to_text(self, max_failures: int = 5) -> str:
        lines = []
        groups: dict[str, list[Case]] = {}
        for c in self.cases:
            groups.setdefault(c.id, []).append(c)
        width = max((len(k) for k in groups), default=0)
        for cid, cases in groups.items():
            t = tally(cases)
            status = "ok" if t[FAIL] == 0 and t[SKIPPED] == 0 else "FAILED"
            lines.append(
                f"{cid:<{width}}  {status:<6}  pass={t[PASS]} fail={t[FAIL]} skipped={t[SKIPPED]}"
            )
        bad = [c for c in self.cases if c.verdict != PASS]
        if bad:
            lines.append("")
            lines.append(f"first {min(max_failures, len(bad))} of {len(bad)} non-passing cases:")
            for c in bad[:max_failures]:
                params = ", ".join(f"{k}={format_value(v)}" for k, v in c.params.items())
                extra = f" ({c.note})" if c.note else ""
                lines.append(
                    f"  {c.verdict.upper()} {c.id} [{params}] lhs={_short(format_value(c.lhs))} "
                    f"rhs={_short(format_value(c.rhs))}{extra}"
                )
        lines.extend(self.notes)
        s = self.summary
        lines.append(
            f"summary: {len(self.cases)} cases, pass={s[PASS]} fail={s[FAIL]} skipped={s[SKIPPED]}"
        )
        return "\n".join(lines) + "\n"


CSV_HEADER: Sequence[str] = ("kind", "id", "params", "lhs", "rhs", "verdict")


def _csv_param(v: Any) -> str:
    if isinstance(v, list):
        return "|".join(str(x) for x in v)
    return str(v)


def _short(s: str, limit: int = 80) -> str:
    return s if len(s) <= limit else s[: limit - 3] + "..."
