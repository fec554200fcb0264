"""Audit reports and canonical JSON encoding of exact data."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .subspace import Subspace

PASS = "pass"
PASS_NECESSARY = "pass (necessary conditions)"
FAIL = "fail"
SKIPPED = "skipped"


def jsonable(obj):
    """Exact data to plain JSON values; rationals become "p/q" strings."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Subspace):
        return [jsonable(r) for r in obj.rows]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json_obj"):
        return obj.to_json_obj()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def canonical_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class Clause:
    claim_id: str
    anchor: str
    status: str
    witness: object = None
    detail: str = ""

    def to_json_obj(self) -> dict:
        out = {"claim_id": self.claim_id, "anchor": self.anchor, "status": self.status}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class AuditReport:
    audit_name: str
    target: str
    precondition: str
    clauses: tuple

    @property
    def passed(self) -> bool:
        return all(c.status in (PASS, PASS_NECESSARY) for c in self.clauses)

    @property
    def failed(self) -> tuple:
        return tuple(c for c in self.clauses if c.status == FAIL)

    @property
    def skipped(self) -> bool:
        return bool(self.clauses) and all(c.status == SKIPPED for c in self.clauses)

    def clause(self, claim_id: str) -> Clause:
        return next(c for c in self.clauses if c.claim_id == claim_id)

    def to_json_obj(self) -> dict:
        return {"audit_name": self.audit_name, "target": self.target,
                "precondition": self.precondition,
                "clauses": [c.to_json_obj() for c in self.clauses]}

    def to_json(self) -> str:
        return canonical_json(self)


class ClauseBuilder:
    """Collects clauses; an exception inside a check becomes a failed clause."""

    def __init__(self):
        self.clauses: list[Clause] = []

    def add(self, claim_id: str, anchor: str, ok: bool, witness=None, detail: str = "",
            necessary_only: bool = False) -> None:
        status = (PASS_NECESSARY if necessary_only else PASS) if ok else FAIL
        self.clauses.append(Clause(claim_id, anchor, status, None if ok else witness, detail))

    def skip(self, claim_id: str, anchor: str, detail: str) -> None:
        self.clauses.append(Clause(claim_id, anchor, SKIPPED, None, detail))

    def run(self, claim_id: str, anchor: str, check, necessary_only: bool = False) -> None:
        """``check`` returns (ok, witness[, detail])."""
        try:
            res = check()
        except Exception as exc:  # a failing clause must not abort the audit
            self.clauses.append(Clause(claim_id, anchor, FAIL, None, f"{type(exc).__name__}: {exc}"))
            return
        ok, witness, *rest = res
        self.add(claim_id, anchor, ok, witness, rest[0] if rest else "", necessary_only)

    def report(self, name: str, target: str, precondition: str) -> AuditReport:
        return AuditReport(name, target, precondition, tuple(self.clauses))
