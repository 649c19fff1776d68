"""Task complexity C_t and Total Assembly Complexity (TAC).

All arithmetic runs on integer hundredths; every legal value is a multiple
of 0.25, so results are exact and convert to two-place Decimals at the edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Optional

from .model import Architecture, InterfaceCode, ModuleSet, hundredths

MISMATCH_TOLERANCE = Decimal("0.005")


def task_complexity_hundredths(c: InterfaceCode) -> int:
    return sum(c.factors.scores_hundredths())


def task_complexity(c: InterfaceCode) -> Decimal:
    """Sum of the five factor scores (handling, alignment, tooling, fit, fixing)."""
    return hundredths(task_complexity_hundredths(c))


def _set_hundredths(mset: ModuleSet, arch: Architecture) -> int:
    return sum(task_complexity_hundredths(c) for itf in arch.set_interfaces(mset) for c in itf.codes)


def module_set_tac(mset: ModuleSet, arch: Architecture) -> Decimal:
    """Unweighted sum of C_t over every code of every interface in the set."""
    return hundredths(_set_hundredths(mset, arch))


@dataclass(frozen=True)
class TaskComplexity:
    set_id: str
    interface: str
    code: str
    value: Decimal


@dataclass(frozen=True)
class TacMismatch:
    set_id: Optional[str]  # None for the architecture-level assertion
    asserted: Decimal
    computed: Decimal

    @property
    def difference(self) -> Decimal:
        return self.computed - self.asserted


@dataclass(frozen=True)
class TacBreakdown:
    per_task: tuple[TaskComplexity, ...]
    per_set: dict[str, Decimal]
    architecture_tac: Decimal
    asserted_per_set: dict[str, Decimal] = field(default_factory=dict)
    asserted_total: Optional[Decimal] = None
    asserted_mismatches: tuple[TacMismatch, ...] = ()

    @property
    def max_task(self) -> Decimal:
        return max((t.value for t in self.per_task), default=Decimal("0.00"))


def architecture_tac(arch: Architecture) -> TacBreakdown:
    """Compute per-task, per-set and architecture TAC, and compare to assertions.

    The asserted total is the sum of per-set assertions when every set
    carries one, otherwise the document's architecture-level assertion.
    """
    per_task = []
    per_set: dict[str, Decimal] = {}
    asserted: dict[str, Decimal] = {}
    mismatches = []
    total = 0
    for mset in arch.module_sets:
        for itf in arch.set_interfaces(mset):
            for code in itf.codes:
                per_task.append(TaskComplexity(mset.id, itf.key, str(code), task_complexity(code)))
        value = _set_hundredths(mset, arch)
        total += value
        per_set[mset.id] = hundredths(value)
        if mset.asserted_tac is not None:
            asserted[mset.id] = mset.asserted_tac
            if abs(mset.asserted_tac - per_set[mset.id]) > MISMATCH_TOLERANCE:
                mismatches.append(TacMismatch(mset.id, mset.asserted_tac, per_set[mset.id]))

    computed_total = hundredths(total)
    asserted_total = None
    if arch.module_sets and len(asserted) == len(arch.module_sets):
        asserted_total = sum(asserted.values(), Decimal("0.00"))
    elif arch.asserted_tac is not None:
        asserted_total = arch.asserted_tac
    if asserted_total is not None and abs(asserted_total - computed_total) > MISMATCH_TOLERANCE:
        mismatches.append(TacMismatch(None, asserted_total, computed_total))

    return TacBreakdown(
        per_task=tuple(per_task),
        per_set=per_set,
        architecture_tac=computed_total,
        asserted_per_set=asserted,
        asserted_total=asserted_total,
        asserted_mismatches=tuple(mismatches),
    )


def reduction_percent(before: Decimal, after: Decimal) -> int:
    """(before - after) / before as a whole percent, rounded half away from zero."""
    if before == 0:
        raise ZeroDivisionError("reduction relative to a zero baseline")
    ratio = (before - after) / before * 100
    return int(ratio.quantize(Decimal("1"), rounding="ROUND_HALF_UP"))
