"""Verification reports and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..checks import CheckResult

SCHEMA_VERSION = "kmvir.report/1"


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0
    schema_version: str = SCHEMA_VERSION

    @property
    def aggregate(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "aggregate": {
                "pass": self.aggregate,
                "total": len(self.checks),
                "failed": len(self.failures),
            },
            "wall_time": round(self.wall_time, 3),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        report = cls(
            suite=d["suite"],
            config=d["config"],
            checks=[CheckResult.from_dict(c) for c in d["checks"]],
            wall_time=d["wall_time"],
        )
        if report.aggregate != d["aggregate"]["pass"]:
            raise ValueError("aggregate flag disagrees with the checks")
        return report


def emit_report(report: VerificationReport, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n").encode()
    if format == "text":
        return _text(report).encode()
    raise ValueError(f"unknown format {format!r}")


def parse_report(data: bytes | str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(data))


def _text(report: VerificationReport) -> str:
    lines = [f"suite {report.suite}  schema {report.schema_version}"]
    for c in report.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.id}  {c.lhs} == {c.rhs}")
        if c.witness:
            w = c.witness
            lines.append(
                f"      witness: on {w.get('source', '?')} at {w.get('monomial', '?')}: "
                f"lhs {w.get('lhs')} vs rhs {w.get('rhs')}"
            )
    total, failed = len(report.checks), len(report.failures)
    verdict = "PASS" if report.aggregate else "FAIL"
    lines.append(f"{verdict}  {total - failed}/{total} checks passed in {report.wall_time:.2f}s")
    return "\n".join(lines) + "\n"
