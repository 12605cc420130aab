from dataclasses import dataclass, field
from functools import singledispatch
from typing import Any, List

from pybuyk.core.types import DiscreteDistribution, Menu

__all__ = ["Diagnostic", "ValidationReport", "validate"]


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant.

    :param location: path of the offending field, e.g. ``entries[2].allocation[0]``
    :param message: what is wrong
    """

    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


@dataclass
class ValidationReport:
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def add(self, location: str, message: str):
        self.diagnostics.append(Diagnostic(location, message))

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(d) for d in self.diagnostics)


@singledispatch
def validate(obj: Any) -> ValidationReport:
    """Checks every domain invariant of a menu, distribution or sequence pair
    and collects the violations. Never raises for malformed objects.

    :param obj: the object to check
    :return: a report, truthy iff there are no violations
    :raises TypeError: for objects of an unsupported type
    """
    raise TypeError(f"Cannot validate objects of type {type(obj).__name__}")


@validate.register
def _(menu: Menu) -> ValidationReport:
    report = ValidationReport()
    if menu.n < 0:
        report.add("n", "dimension must be non-negative")
    for i, entry in enumerate(menu.entries, start=1):
        where = f"entries[{i}]"
        if entry.price < 0:
            report.add(f"{where}.price", "negative price")
        if len(entry.allocation) != menu.n:
            report.add(
                f"{where}.allocation",
                f"dimension mismatch: {len(entry.allocation)} != {menu.n}",
            )
        for j, x in enumerate(entry.allocation):
            if not 0 <= x <= 1:
                report.add(f"{where}.allocation[{j}]", "coordinate out of [0,1]")
    return report


@validate.register
def _(dist: DiscreteDistribution) -> ValidationReport:
    report = ValidationReport()
    if dist.n < 0:
        report.add("n", "dimension must be non-negative")
    seen = set()
    for i, (v, p) in enumerate(dist.support):
        where = f"support[{i}]"
        if len(v) != dist.n:
            report.add(f"{where}.values", f"dimension mismatch: {len(v)} != {dist.n}")
        for j, x in enumerate(v):
            if x < 0:
                report.add(f"{where}.values[{j}]", "negative value")
        if p <= 0:
            report.add(f"{where}.prob", "probability must be positive")
        if v in seen:
            report.add(f"{where}.values", "duplicate support type")
        seen.add(v)
    if dist.total_mass > 1:
        report.add("support", "mass exceeds one")
    return report
