"""Law-check reports: JSON, CSV flattening and merging."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field


@dataclass
class LawResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    checks: int = 0
    fixture_class: str = "generic"
    exact: bool = False
    witness: dict | None = None
    expect_fail: bool = False

    @property
    def ok(self) -> bool:
        """Outcome against expectation (expected failures count as ok)."""
        return self.passed != self.expect_fail

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "checks": self.checks,
            "fixture_class": self.fixture_class,
            "exact": self.exact,
            "witness": self.witness,
        }
        if self.expect_fail:
            d["expect_fail"] = True
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LawResult":
        return cls(
            name=d["name"],
            max_residual=float(d["max_residual"]),
            tolerance=float(d["tolerance"]),
            passed=bool(d["pass"]),
            checks=int(d.get("checks", 0)),
            fixture_class=d.get("fixture_class", "generic"),
            exact=bool(d.get("exact", False)),
            witness=d.get("witness"),
            expect_fail=bool(d.get("expect_fail", False)),
        )


@dataclass
class ValuationReport:
    suite: str
    seed: int
    fixtures: int = 0
    laws: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(law.ok for law in self.laws)

    def first_failure(self) -> LawResult | None:
        return next((law for law in self.laws if not law.ok), None)

    def add(self, law: LawResult):
        self.laws.append(law)

    def extend(self, other: "ValuationReport"):
        self.fixtures += other.fixtures
        self.laws.extend(other.laws)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "fixtures": self.fixtures,
            "pass": self.passed,
            "laws": [law.to_dict() for law in self.laws],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ValuationReport":
        return cls(
            suite=d["suite"],
            seed=int(d["seed"]),
            fixtures=int(d.get("fixtures", 0)),
            laws=[LawResult.from_dict(x) for x in d.get("laws", [])],
        )

    def summary_lines(self) -> list:
        out = []
        for law in self.laws:
            tag = "PASS" if law.ok else "FAIL"
            note = " (expected failure observed)" if law.expect_fail and law.ok else ""
            out.append(
                f"{tag} {self.suite}:{law.name} [{law.fixture_class}] "
                f"max_residual={law.max_residual:.3e} tol={law.tolerance:.0e} checks={law.checks}{note}"
            )
        return out


CSV_FIELDS = ["suite", "seed", "law", "fixture_class", "checks", "max_residual", "tolerance", "pass", "expect_fail"]


def merge(reports) -> list:
    """Flatten reports into rows, one per (suite, law, fixture class).

    Rows with the same key are combined (max residual, summed checks, and
    pass only if every part passed), so merging is order independent.
    """
    rows = {}
    for rep in reports:
        for law in rep.laws:
            key = (rep.suite, law.name, law.fixture_class)
            row = rows.get(key)
            if row is None:
                rows[key] = {
                    "suite": rep.suite,
                    "seed": rep.seed,
                    "law": law.name,
                    "fixture_class": law.fixture_class,
                    "checks": law.checks,
                    "max_residual": law.max_residual,
                    "tolerance": law.tolerance,
                    "pass": law.passed,
                    "expect_fail": law.expect_fail,
                }
            else:
                row["seed"] = min(row["seed"], rep.seed)
                row["checks"] += law.checks
                row["max_residual"] = max(row["max_residual"], law.max_residual)
                row["tolerance"] = min(row["tolerance"], law.tolerance)
                row["pass"] = row["pass"] and law.passed
    return [rows[k] for k in sorted(rows)]


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in merge(reports):
        out = dict(row)
        out["max_residual"] = repr(float(out["max_residual"]))
        out["tolerance"] = repr(float(out["tolerance"]))
        w.writerow(out)
    return buf.getvalue()
