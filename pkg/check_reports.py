"""
Verdicts and reports produced by the theorem checks.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional


class Verdict(Enum):
    """Outcome of a single check."""
    PASS = "pass"
    FAIL = "fail"
    REPORT_ONLY = "report-only"
    SKIPPED = "skipped"


@dataclass
class CheckReport:
    """Result of one machine check, with witnesses for every failure."""
    check_name: str
    parameters: Dict[str, int]
    verdict: Verdict
    witnesses: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict is Verdict.FAIL and not self.witnesses:
            raise ValueError(f"{self.check_name}: a failing report needs a witness")

    @property
    def passed(self) -> bool:
        """Report-only and skipped checks never fail a suite."""
        return self.verdict is not Verdict.FAIL

    def to_dict(self) -> Dict:
        return {
            "check": self.check_name,
            "parameters": dict(self.parameters),
            "verdict": self.verdict.value,
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        params = ", ".join(f"{key}={value}" for key, value in self.parameters.items())
        line = f"{self.check_name}({params}): {self.verdict.value}"
        if self.witnesses:
            line += f" [{'; '.join(self.witnesses[:3])}{'; ...' if len(self.witnesses) > 3 else ''}]"
        return line


def verdict_report(check_name: str, parameters: Dict[str, int], failures: Iterable[str],
                   notes: Optional[Iterable[str]] = None) -> CheckReport:
    """PASS when there are no failures, FAIL with the failures as witnesses otherwise."""
    failures = list(failures)
    return CheckReport(
        check_name=check_name,
        parameters=parameters,
        verdict=Verdict.FAIL if failures else Verdict.PASS,
        witnesses=failures,
        notes=list(notes or []),
    )


def suite_passed(reports: Iterable[CheckReport]) -> bool:
    return all(report.passed for report in reports)
