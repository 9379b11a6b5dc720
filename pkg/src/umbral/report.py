"""Verification reports shared by every engine."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def rational_str(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` for integers.  Never a float."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass
class Report:
    """Outcome of one verification run.

    ``failure`` holds the first counterexample found (engines stop there);
    it is None when every case passed.
    """

    name: str
    params: dict[str, Any] = field(default_factory=dict)
    checked: int = 0
    failure: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def __bool__(self) -> bool:
        return self.passed

    def fail(self, **details) -> Report:
        if self.failure is None:
            self.failure = {k: _plain(v) for k, v in details.items()}
        return self

    def _label(self) -> str:
        return " ".join(
            str(self.params[k]) if k in ("generator", "family") else f"{k}={_plain(self.params[k])}"
            for k in _LABEL_KEYS
            if self.params.get(k) is not None
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "passed": self.passed,
            "checked": self.checked,
            "failure": self.failure,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}"
        label = self._label()
        if label:
            line += f" [{label}]"
        line += f" ({self.checked} checks)"
        if self.failure:
            detail = ", ".join(f"{k}={v}" for k, v in self.failure.items())
            line += f": {detail}"
        return line


_LABEL_KEYS = ("generator", "family", "a", "b", "c")


def _plain(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return str(value)
