"""Module Indication Matrix support: driver catalog, TS totals, grouping hints.

Hints are advisory. They never alter module boundaries; a designer reads them.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Mapping, Optional

from .model import Diagnostic, Severity

RELEVANCE = (0, 1, 3, 9)


class Step(Enum):
    PRODUCT_DEVELOPMENT = "product_development"
    MANUFACTURING = "manufacturing"
    FUNCTIONALITY = "functionality"
    LOGISTICS = "logistics"
    AFTER_SALES = "after_sales"
    ASSEMBLY = "assembly"


class Polarity(Enum):
    GROUP = "group"
    SEPARATE = "separate"
    EITHER = "either"


@dataclass(frozen=True)
class ModuleDriver:
    id: str
    value_chain_step: Step
    label: str
    polarity: Polarity
    citation: str


def _d(id_, step, label, polarity, citation):
    return ModuleDriver(id_, Step(step), label, Polarity(polarity), citation)


DRIVERS: tuple[ModuleDriver, ...] = (
    _d("carry_over", "product_development", "Carry over", "group", "reused solutions grouped to cut development risk"),
    _d("planned_development", "product_development", "Planned development", "separate", "independently evolving solutions kept apart"),
    _d("technology_push", "product_development", "Technology push", "group", "emerging technology grouped to isolate uncertainty"),
    _d("technical_specification", "product_development", "Technical specification", "group", "shared performance targets grouped for verification"),
    _d("styling", "product_development", "Styling/customisation", "separate", "aesthetic variation localised in its own module"),
    _d("common_process", "manufacturing", "Common process", "group", "same manufacturing process grouped"),
    _d("common_unit", "manufacturing", "Common unit", "group", "units reused across variants grouped"),
    _d("automation", "manufacturing", "Automation", "either", "grouped by automation level, manual ones split off"),
    _d("late_differentiation", "manufacturing", "Late differentiation", "either", "grouped or split to delay variant integration"),
    _d("special_process", "manufacturing", "Special process requirements", "group", "unique production conditions grouped"),
    _d("separate_testability", "functionality", "Separate testability", "separate", "individually tested solutions isolated"),
    _d("user_perception", "functionality", "User perception", "either", "co-perceived solutions grouped or split"),
    _d("strategic_supplier", "logistics", "Strategic supplier", "group", "same supplier grouped"),
    _d("purchasing", "logistics", "Purchasing", "either", "grouped or split by sourcing decision"),
    _d("storage", "logistics", "Storage", "separate", "special storage needs split off"),
    _d("serviceability", "after_sales", "Serviceability", "separate", "maintained or replaced parts kept accessible"),
    _d("upgrading", "after_sales", "Upgrading/flexibility", "either", "grouped or split for future upgrades"),
    _d("recycling", "after_sales", "Recycling", "separate", "split for end-of-life sorting"),
    _d("assembly_sequence", "assembly", "Assembly sequence", "group", "grouped to simplify joining order"),
    _d("line_balancing", "assembly", "Assembly line balancing", "group", "grouped to even out station load"),
    _d("pre_assembly", "assembly", "Pre-assembly", "group", "clustered for offline sub-assembly"),
    _d("integrated_fastening", "assembly", "Integrated fastening", "group", "shared fasteners or tools grouped"),
    _d("interface_standardisation", "assembly", "Interface standardisation", "group", "grouped around common interfaces"),
    _d("handling", "assembly", "Handling", "group", "similar gripping and orientation needs grouped"),
)
DRIVERS_BY_ID = {d.id: d for d in DRIVERS}


def catalog_csv() -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "step", "label", "polarity", "citation"])
    for d in DRIVERS:
        writer.writerow([d.id, d.value_chain_step.value, d.label, d.polarity.value, d.citation])
    return buf.getvalue()


@dataclass(frozen=True)
class MimInput:
    ts_ids: tuple[str, ...]
    relevance: Mapping[str, Mapping[str, int]]

    def value(self, ts: str, driver: str) -> int:
        return self.relevance.get(ts, {}).get(driver, 0)

    def strong(self, ts: str) -> set[str]:
        return {d for d, v in self.relevance.get(ts, {}).items() if v == 9}


def check_mim(mim: MimInput) -> list[Diagnostic]:
    out = []
    for ts, row in mim.relevance.items():
        if ts not in mim.ts_ids:
            out.append(Diagnostic(Severity.ERROR, "MIM_UNKNOWN_TS", f"relevance row for undeclared TS {ts!r}"))
        for driver, v in row.items():
            if driver not in DRIVERS_BY_ID:
                out.append(Diagnostic(Severity.ERROR, "MIM_UNKNOWN_DRIVER", f"{ts}: unknown module driver {driver!r}"))
            if v not in RELEVANCE or isinstance(v, bool):
                out.append(Diagnostic(Severity.ERROR, "MIM_INVALID_VALUE", f"{ts}/{driver}: {v!r} not in 0, 1, 3, 9"))
    return out


@dataclass(frozen=True)
class TsSummary:
    ts_id: str
    total: int
    candidate: bool
    strong_drivers: tuple[str, ...]


def mim_summary(mim: MimInput) -> list[TsSummary]:
    out = [
        TsSummary(
            ts,
            sum(mim.relevance.get(ts, {}).values()),
            bool(mim.strong(ts)),
            tuple(sorted(mim.strong(ts))),
        )
        for ts in mim.ts_ids
    ]
    return sorted(out, key=lambda s: (-s.total, s.ts_id))


class HintKind(Enum):
    GROUP = "GROUP"
    SEPARATE = "SEPARATE"
    CONFLICT = "CONFLICT"


@dataclass(frozen=True)
class Hint:
    kind: HintKind
    ts_a: str
    ts_b: str
    group_drivers: tuple[str, ...]
    separate_drivers: tuple[str, ...]

    @property
    def drivers(self) -> tuple[str, ...]:
        return self.group_drivers + self.separate_drivers

    def __str__(self) -> str:
        return f"[advisory] {self.kind.value} {self.ts_a}+{self.ts_b}: {', '.join(self.drivers)}"


def pair_hint(mim: MimInput, a: str, b: str) -> Optional[Hint]:
    """GROUP when the pair shares a strong (9) group-polarity driver, SEPARATE
    when either member holds a strong separate-polarity driver, CONFLICT when both."""
    a, b = sorted((a, b))
    sa, sb = mim.strong(a), mim.strong(b)
    shared = sorted(d for d in sa & sb if d in DRIVERS_BY_ID and DRIVERS_BY_ID[d].polarity is Polarity.GROUP)
    apart = sorted(d for d in sa | sb if d in DRIVERS_BY_ID and DRIVERS_BY_ID[d].polarity is Polarity.SEPARATE)
    if shared and apart:
        kind = HintKind.CONFLICT
    elif shared:
        kind = HintKind.GROUP
    elif apart:
        kind = HintKind.SEPARATE
    else:
        return None
    return Hint(kind, a, b, tuple(shared), tuple(apart))


def grouping_hints(mim: MimInput) -> list[Hint]:
    pairs = combinations(sorted(mim.ts_ids), 2)
    return [h for h in (pair_hint(mim, a, b) for a, b in pairs) if h is not None]
