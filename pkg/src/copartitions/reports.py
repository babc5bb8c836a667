"""Verification reports shared by the identity checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


class MismatchFound(AssertionError):
    """An identity check found a coefficient that disagrees."""

    def __init__(self, report: "IdentityReport"):
        self.report = report
        super().__init__(f"{report.identity}: mismatch at {report.mismatch}")


@dataclass
class IdentityReport:
    """Outcome of one coefficient-by-coefficient identity check."""

    identity: str
    order_verified: int
    mismatch: dict | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def require(self) -> "IdentityReport":
        if not self.ok:
            raise MismatchFound(self)
        return self

    def to_json(self) -> dict:
        data = {"identity": self.identity, "orderVerified": self.order_verified, "mismatch": self.mismatch}
        if self.note:
            data["note"] = self.note
        return data

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL at {self.mismatch}"
        text = f"{self.identity}: {status} (verified through order {self.order_verified})"
        if self.note:
            text += f" [{self.note}]"
        return text


def merge_reports(reports: list[IdentityReport], identity: str) -> IdentityReport:
    """Collapse sub-checks into one report; the first failure wins."""
    order = min((r.order_verified for r in reports), default=0)
    for r in reports:
        if not r.ok:
            return IdentityReport(identity, order, r.mismatch, note=r.note or r.identity)
    return IdentityReport(identity, order)
