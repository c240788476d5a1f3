"""Verification report containers shared by the b0n and fock suites."""
from __future__ import annotations

from dataclasses import dataclass, field

MAX_STORED_FAILURES = 20


@dataclass
class RelationTally:
    relation: str
    tuples_checked: int = 0
    n_failures: int = 0
    failures: list = field(default_factory=list)

    def fail(self, record: dict):
        self.n_failures += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append(record)

    def to_json(self):
        return {
            "equation_id": self.relation,
            "tuples_checked": self.tuples_checked,
            "n_failures": self.n_failures,
            "failures": self.failures,
        }


@dataclass
class LedgerEntry:
    """A displayed formula that disagrees with the oracle, with its repair."""

    relation: str
    printed: str
    corrected: str
    solved_coefficient: object = None
    witness: dict | None = None
    occurrences: int = 0

    def to_json(self):
        return {
            "equation_id": self.relation,
            "printed": self.printed,
            "corrected": self.corrected,
            "solved_coefficient": self.solved_coefficient,
            "witness": self.witness,
            "occurrences": self.occurrences,
        }


@dataclass
class VerificationReport:
    suite: str
    tallies: dict = field(default_factory=dict)
    ledger: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def tally(self, relation: str) -> RelationTally:
        t = self.tallies.get(relation)
        if t is None:
            t = self.tallies[relation] = RelationTally(relation)
        return t

    @property
    def n_failures(self) -> int:
        return sum(t.n_failures for t in self.tallies.values())

    @property
    def tuples_checked(self) -> int:
        return sum(t.tuples_checked for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.n_failures == 0

    def to_json(self):
        return {
            "suite": self.suite,
            "ok": self.ok,
            "tuples_checked": self.tuples_checked,
            "n_failures": self.n_failures,
            "equations": [self.tallies[k].to_json() for k in sorted(self.tallies)],
            "ledger": [e.to_json() for e in self.ledger],
            "meta": self.meta,
        }
