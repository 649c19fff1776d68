"""Concept evaluation of technical solutions (TS) against nine DFA criteria.

Two aggregation modes:

* ``triadic_mean``: unweighted mean over the emphasized criteria. Value
  disciplines select criteria rather than weighting them.
* ``pugh``: better/same/worse counts of each TS against a per-function datum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional

from .model import Diagnostic, Severity


@dataclass(frozen=True)
class DfaCriterion:
    id: str
    label: str
    description: str


DFA_CRITERIA: tuple[DfaCriterion, ...] = (
    DfaCriterion("I", "Scalability opportunities", "Variants can be added with little assembly rework."),
    DfaCriterion("II", "Reduce assembly cost/complexity", "Fewer or combined parts cut labour and test cost."),
    DfaCriterion("III", "Ease of assembly", "Tool-free, self-locating, low-force joining."),
    DfaCriterion("IV", "Assembly automation opportunities", "Geometry and feeding suit robots and grippers."),
    DfaCriterion("V", "Late point of configuration", "Customisation can wait until after main assembly."),
    DfaCriterion("VI", "Limit production investment", "No dedicated tools or fixtures for this solution."),
    DfaCriterion("VII", "Limit production test cost", "Testable in line without costly setups."),
    DfaCriterion("VIII", "Improved yield", "Error-proofed and tolerant, so fewer defects."),
    DfaCriterion("IX", "Assembly line balance", "Task times stay even and sequencing flexible."),
)
CRITERION_IDS = tuple(c.id for c in DFA_CRITERIA)


@dataclass(frozen=True)
class DisciplineProfile:
    name: str
    emphasized: frozenset[str]

    def criteria(self) -> tuple[str, ...]:
        """Emphasized criteria in catalog order; an empty set means all nine."""
        if not self.emphasized:
            return CRITERION_IDS
        return tuple(c for c in CRITERION_IDS if c in self.emphasized)


BUILTIN_DISCIPLINES = {
    "operational_excellence": DisciplineProfile("operational_excellence", frozenset({"II", "III", "IV"})),
    "product_leadership": DisciplineProfile("product_leadership", frozenset({"VI", "VII", "VIII"})),
    "customer_intimacy": DisciplineProfile("customer_intimacy", frozenset({"I", "V", "IX"})),
}


def discipline(name: str, emphasized: Optional[list[str]] = None) -> DisciplineProfile:
    if name in BUILTIN_DISCIPLINES:
        return BUILTIN_DISCIPLINES[name]
    if name == "custom":
        return DisciplineProfile("custom", frozenset(emphasized or ()))
    raise ConceptError(f"unknown discipline {name!r}")


class Scale(Enum):
    TRIADIC = "triadic"
    FIVE_POINT = "five_point"

    @property
    def legal(self) -> tuple[int, ...]:
        return (1, 3, 9) if self is Scale.TRIADIC else (1, 2, 3, 4, 5)


class Mode(Enum):
    TRIADIC_MEAN = "triadic_mean"
    PUGH = "pugh"


class ConceptError(ValueError):
    pass


class IncompleteScores(ConceptError):
    def __init__(self, function: str, ts: str, missing: tuple[str, ...] = ()):
        self.function = function
        self.ts = ts
        self.missing = missing
        super().__init__(f"{function}/{ts} lacks scores for {', '.join(missing) or 'criteria'}")


class UnknownDatum(ConceptError):
    def __init__(self, function: str, datum: Optional[str]):
        self.function = function
        self.datum = datum
        super().__init__(f"function {function}: datum {datum!r} is not a declared solution")


Cell = tuple[str, str, str]  # (function id, TS id, criterion id)


@dataclass(frozen=True)
class ConceptInput:
    functions: tuple[tuple[str, str], ...]
    solutions: Mapping[str, tuple[tuple[str, str], ...]]
    scores: Mapping[Cell, int]
    scale: Scale = Scale.TRIADIC
    datums: Mapping[str, str] = field(default_factory=dict)
    justifications: Mapping[Cell, str] = field(default_factory=dict)
    emphasis: Optional[tuple[str, ...]] = None


def check_concept(ci: ConceptInput) -> list[Diagnostic]:
    out = []
    fids = {f for f, _ in ci.functions}
    for fid in ci.solutions:
        if fid not in fids:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_UNKNOWN_FUNCTION", f"solutions for undeclared function {fid!r}"))
    for (fid, ts, crit), value in ci.scores.items():
        where = f"concept score {fid}/{ts}/{crit}"
        if fid not in fids or ts not in {t for t, _ in ci.solutions.get(fid, ())}:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_UNKNOWN_CELL", f"{where} references an undeclared function or TS"))
        if crit not in CRITERION_IDS:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_UNKNOWN_CRITERION", f"{where}: unknown criterion"))
        if value not in ci.scale.legal:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_INVALID_SCORE", f"{where}: {value!r} not legal on {ci.scale.value} scale"))
    for fid, datum in ci.datums.items():
        if datum not in {t for t, _ in ci.solutions.get(fid, ())}:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_UNKNOWN_DATUM", f"function {fid}: datum {datum!r} undeclared"))
    for crit in ci.emphasis or ():
        if crit not in CRITERION_IDS:
            out.append(Diagnostic(Severity.ERROR, "CONCEPT_UNKNOWN_CRITERION", f"emphasis lists unknown criterion {crit!r}"))
    return out


@dataclass(frozen=True)
class RankEntry:
    ts_id: str
    label: str
    rank: int
    value: Fraction  # mean score, or net (better - worse) in pugh mode
    tied: bool
    better: int = 0
    same: int = 0
    worse: int = 0


@dataclass(frozen=True)
class FunctionRanking:
    function_id: str
    label: str
    mode: Mode
    entries: tuple[RankEntry, ...]
    datum: Optional[str] = None


def _row(ci: ConceptInput, fid: str, ts: str, criteria: tuple[str, ...]) -> list[int]:
    missing = tuple(c for c in criteria if (fid, ts, c) not in ci.scores)
    if missing:
        raise IncompleteScores(fid, ts, missing)
    return [ci.scores[(fid, ts, c)] for c in criteria]


def _ranked(raw: list[dict]) -> tuple[RankEntry, ...]:
    raw.sort(key=lambda r: (-r["value"], r["ts_id"]))
    entries = []
    for i, r in enumerate(raw):
        rank = i + 1
        if i and raw[i - 1]["value"] == r["value"]:
            rank = entries[-1].rank
        tied = sum(1 for o in raw if o["value"] == r["value"]) > 1
        entries.append(RankEntry(rank=rank, tied=tied, **r))
    return tuple(entries)


def evaluate_concepts(ci: ConceptInput, profile: DisciplineProfile, mode: Mode = Mode.TRIADIC_MEAN) -> list[FunctionRanking]:
    """Rank each function's technical solutions.

    Ties share a rank and are flagged; display order within a tie is by TS id.
    """
    criteria = profile.criteria()
    out = []
    for fid, flabel in ci.functions:
        solutions = ci.solutions.get(fid, ())
        rows = {ts: _row(ci, fid, ts, criteria) for ts, _ in solutions}
        raw = []
        datum = None
        if mode is Mode.TRIADIC_MEAN:
            for ts, label in solutions:
                raw.append({"ts_id": ts, "label": label, "value": Fraction(sum(rows[ts]), len(criteria))})
        else:
            datum = ci.datums.get(fid)
            if datum not in rows:
                raise UnknownDatum(fid, datum)
            for ts, label in solutions:
                b, s, w = pugh_counts(rows[ts], rows[datum])
                raw.append({"ts_id": ts, "label": label, "value": Fraction(b - w), "better": b, "same": s, "worse": w})
        out.append(FunctionRanking(fid, flabel, mode, _ranked(raw), datum))
    return out


def pugh_counts(candidate: list[int], datum: list[int]) -> tuple[int, int, int]:
    better = sum(1 for c, d in zip(candidate, datum) if c > d)
    worse = sum(1 for c, d in zip(candidate, datum) if c < d)
    return better, len(candidate) - better - worse, worse
