"""Verification reports and their serializations.

A report is a labelled list of checks.  Two formats are emitted:

* ``text``: an aligned table for people; not meant to be parsed back.
* ``jsonl``: one header object per report followed by one object per
  check.  :func:`parse_reports` inverts it exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

PASS = "pass"
FAIL = "fail"
FLAGGED = "flagged"
STATUSES = (PASS, FAIL, FLAGGED)

# Every check cites one of these anchors, so a failure can be traced back to
# the statement it exercises.
ANCHORS: dict[str, str] = {
    "split": "three-way positive root split",
    "closure": "closed positive systems D, D', D''",
    "grading": "Cartan grading of the Hermitian pair",
    "nc-brackets": "brackets between the two noncompact parts",
    "abelian": "abelian p'_- of the classical structure",
    "nonneg-pairing": "nonnegative pairings on Delta'_nc",
    "non-classical": "non-classical flag domain",
    "injectivity": "injectivity condition (alpha_beta, mu' - beta) < 0",
    "nontrivial": "necessary condition (mu', Delta_c) >= 0",
    "chamber": "chamber Delta_c, Delta_nc1, -Delta_nc2",
    "property-w": "Property W (general and specialized forms)",
    "canonical": "canonical weight mu'_c and divisor k0",
    "threshold": "threshold N for the canonical family",
    "compact-witness": "compact witness for each nc1 root",
    "compact-witness-strong": "compact witness for every noncompact root",
    "cup": "cup-product weights mu0 + lambda0 = rho_nc - rho_c",
    "graded-vanishing": "graded vanishing of structure constants",
    "relative-differential": "relative differential d_pi",
    "omega-closed": "closedness of omega^{nc,1}",
    "mu-j": "vanishing of Gamma(Z_o, L_{mu_j})",
    "bwb": "Borel-Weil-Bott on the base cycle",
    "rho-forms": "closed forms for rho components",
    "rho-balance": "rho_c = rho_nc iff r = s + 1",
}


def anchor(key: str) -> str:
    return ANCHORS[key]


@dataclass(frozen=True)
class Check:
    name: str
    ref: str
    status: str
    witnesses: tuple[str, ...] = ()
    detail: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if not self.ref:
            raise ValueError("a check needs a non-empty ref")
        object.__setattr__(self, "witnesses", tuple(self.witnesses))


@dataclass
class Report:
    group: str
    parameters: dict[str, str] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, key: str, ok: bool | str, witnesses: Iterable[str] = (), detail: str = "") -> Check:
        """Append a check; ``ok`` may be a bool or an explicit status."""
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        chk = Check(name, anchor(key), status, tuple(witnesses), detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ref, c.status, c.witnesses, c.detail))

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def flagged(self) -> list[Check]:
        return [c for c in self.checks if c.status == FLAGGED]

    @property
    def ok(self) -> bool:
        return not self.failed


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def emit_report(report: Report, fmt: str = "text") -> bytes:
    """Serialize deterministically; ``fmt`` is ``"text"`` or ``"jsonl"``."""
    if fmt in ("jsonl", "json-lines"):
        lines = [_dumps({"report": report.group, "parameters": dict(sorted(report.parameters.items()))})]
        for c in report.checks:
            lines.append(
                _dumps(
                    {
                        "name": c.name,
                        "ref": c.ref,
                        "status": c.status,
                        "witnesses": list(c.witnesses),
                        "detail": c.detail,
                    }
                )
            )
        return ("\n".join(lines) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    params = " ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    out = [f"# {report.group}" + (f" [{params}]" if params else "")]
    if report.checks:
        wn = max(len(c.name) for c in report.checks)
        for c in report.checks:
            line = f"{c.status.upper():<8} {c.name:<{wn}}  ({c.ref})"
            if c.detail:
                line += f"  {c.detail}"
            out.append(line.rstrip())
            out.extend(f"    {w}" for w in c.witnesses)
    return ("\n".join(out) + "\n").encode()


def parse_reports(data: bytes | str) -> list[Report]:
    """Inverse of ``emit_report(..., "jsonl")``; accepts concatenated reports."""
    text = data.decode() if isinstance(data, bytes) else data
    reports: list[Report] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {lineno}: not JSON") from exc
        if "report" in obj:
            reports.append(Report(obj["report"], dict(obj.get("parameters", {}))))
            continue
        if not reports:
            raise ValueError(f"line {lineno}: check before any report header")
        reports[-1].checks.append(
            Check(obj["name"], obj["ref"], obj["status"], tuple(obj["witnesses"]), obj["detail"])
        )
    return reports
