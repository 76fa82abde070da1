"""Match reports: labelled expected/computed pairs with exact serialization."""
from __future__ import annotations

import csv
import io
import json
import time
from fractions import Fraction
from numbers import Integral, Rational


def exact_str(value) -> str:
    """Integers as decimal strings, rationals as "num/den", anything else via str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Rational):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


class MatchReport:
    def __init__(self, command: str, params: dict | None = None):
        self.command = command
        self.params = dict(params or {})
        self.items = []
        self._start = time.perf_counter()
        self.elapsed_ms = None

    def add(self, label, expected, computed, passed=None):
        if passed is None:
            passed = expected == computed
        self.items.append({"label": str(label), "expected": exact_str(expected),
                           "computed": exact_str(computed), "pass": bool(passed)})
        return bool(passed)

    def extend(self, other: "MatchReport", prefix=""):
        for item in other.items:
            self.items.append(dict(item, label=prefix + item["label"]))

    @property
    def passed(self) -> bool:
        return all(item["pass"] for item in self.items)

    def failures(self):
        return [item for item in self.items if not item["pass"]]

    def finish(self, timing=True):
        self.elapsed_ms = (round((time.perf_counter() - self._start) * 1000)
                           if timing else None)
        return self

    def to_dict(self) -> dict:
        return {"command": self.command,
                "params": {k: exact_str(v) if isinstance(v, Rational) else v
                           for k, v in self.params.items()},
                "items": list(self.items),
                "pass": self.passed,
                "elapsed_ms": self.elapsed_ms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "expected", "computed", "pass"])
        for item in self.items:
            writer.writerow([item["label"], item["expected"], item["computed"],
                             "true" if item["pass"] else "false"])
        return buf.getvalue()

    def render(self, fmt="json") -> str:
        if fmt == "csv":
            return self.to_csv()
        return self.to_json() + "\n"

    def summary(self) -> str:
        bad = len(self.failures())
        return f"{self.command}: {len(self.items) - bad}/{len(self.items)} items pass"
