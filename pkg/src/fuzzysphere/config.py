"""Run configurations shared by the CLI, the verify suites and the scripts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class VerifyConfig:
    suite: str = "all"
    nmax: int = 4
    seed: int = 0
    # specialization used by the suites that need a point
    kappa: Fraction = Fraction(1)
    u: Fraction = Fraction(3)


@dataclass(frozen=True)
class BenchConfig:
    degrees: tuple[int, ...] = (4, 5, 6, 7, 8, 9, 10)
    trials: int = 3
    seed: int = 0
    words: int = 8
    timing: bool = True


@dataclass(frozen=True)
class SphereConfig:
    R: float = 1.0
    ntheta: int = 33
    nphi: int = 64
    nmax: int = 5
    tol: float = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(CheckResult(name, bool(passed), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks],
        }
