"""Verification reports."""

from dataclasses import dataclass, field

MAX_RECORDED_FAILURES = 25


@dataclass
class Report:
    """Outcome of one verification run.

    ``checked`` counts individual assertions; only the first few failure
    messages are kept, ``failed`` holds the full count.
    """

    name: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def check(self, ok, message=""):
        self.checked += 1
        if not ok:
            self.fail(message() if callable(message) else message)
        return ok

    def fail(self, message):
        self.failed += 1
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(message)

    def warn(self, message):
        self.warnings.append(message)

    @property
    def passed(self):
        return self.failed == 0

    def merge(self, other):
        self.checked += other.checked
        self.failed += other.failed
        self.skipped += other.skipped
        room = MAX_RECORDED_FAILURES - len(self.failures)
        self.failures.extend(f"{other.name}: {m}" for m in other.failures[:room])
        self.warnings.extend(f"{other.name}: {w}" for w in other.warnings)
        return self

    def finish(self):
        if self.checked == 0 and not self.warnings:
            self.warn("vacuous: nothing was checked")
        return self

    def summary(self):
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict} {self.name}: {self.checked} checks, {self.failed} failed"
        if self.skipped:
            line += f", {self.skipped} skipped"
        return line

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": list(self.failures),
            "warnings": list(self.warnings),
        }


@dataclass
class NaturalIsoReport(Report):
    """Report for a natural isomorphism: component tables plus squares.

    The verdict is a pass only if every component is a bijection and every
    tested naturality square commutes.
    """

    components: dict = field(default_factory=dict)
    squares: int = 0

    def component(self, label, table, bijective):
        self.components[label] = table
        self.check(bijective, f"component {label} is not a bijection")

    def square(self, ok, message):
        self.squares += 1
        return self.check(ok, message)

    def to_dict(self):
        d = super().to_dict()
        d["components"] = self.components
        d["squares"] = self.squares
        return d
