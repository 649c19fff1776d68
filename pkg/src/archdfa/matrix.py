"""Interface Matrix: pairwise complexity, connection degree, base module and
macro assembly strategy suggestion."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Iterable, Optional

from .complexity import task_complexity_hundredths
from .model import Architecture, InterfaceCode, InterfaceType, hundredths


class NoInterfaces(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    a: str
    b: str
    codes: tuple[InterfaceCode, ...]

    @property
    def complexity(self) -> Decimal:
        return hundredths(sum(task_complexity_hundredths(c) for c in self.codes))

    @property
    def max_priority(self) -> int:
        return max(c.priority for c in self.codes)


@dataclass(frozen=True)
class InterfaceMatrix:
    modules: tuple[str, ...]  # ordered by degree desc, then id
    cells: dict[frozenset[str], Cell]

    def cell(self, a: str, b: str) -> Optional[Cell]:
        return self.cells.get(frozenset((a, b)))

    def degree(self, module: str) -> int:
        return sum(1 for pair in self.cells if module in pair)

    def neighbours(self, module: str) -> list[str]:
        return sorted(m for pair in self.cells if module in pair for m in pair if m != module)

    def priority_sum(self, module: str) -> int:
        return sum(c.max_priority for pair, c in self.cells.items() if module in pair)


def build_im(arch: Architecture, exclude_types: Iterable[InterfaceType] = ()) -> InterfaceMatrix:
    """Degree counts connected pairs, not codes. Excluding a type drops its
    codes; a pair left with no codes disappears from the matrix."""
    excluded = set(exclude_types)
    cells: dict[frozenset[str], Cell] = {}
    for itf in arch.interfaces:
        codes = tuple(c for c in itf.codes if c.itype not in excluded)
        if not codes:
            continue
        a, b = sorted(itf.pair)
        prior = cells.get(itf.pair)
        cells[itf.pair] = Cell(a, b, (prior.codes if prior else ()) + codes)
    cells = dict(sorted(cells.items(), key=lambda kv: (kv[1].a, kv[1].b)))
    probe = InterfaceMatrix((), cells)
    order = sorted((m.id for m in arch.modules), key=lambda m: (-probe.degree(m), m))
    return InterfaceMatrix(tuple(order), cells)


@dataclass(frozen=True)
class BaseModule:
    id: str
    degree: int
    priority_sum: int
    tied_with: tuple[str, ...] = ()

    @property
    def tie(self) -> bool:
        return bool(self.tied_with)


def base_module(im: InterfaceMatrix) -> BaseModule:
    """Most-connected module; ties go to the larger sum of cell max-priorities,
    then to the smallest id (and are reported)."""
    if not im.cells:
        raise NoInterfaces("interface matrix is empty")
    connected = [m for m in im.modules if im.degree(m) > 0]
    key = {m: (im.degree(m), im.priority_sum(m)) for m in connected}
    best = max(key.values())
    winners = sorted(m for m in connected if key[m] == best)
    return BaseModule(winners[0], best[0], best[1], tuple(winners[1:]))


class Strategy(Enum):
    BASE_UNIT = "base_unit"
    HAMBURGER = "hamburger"
    BUS = "bus"


@dataclass(frozen=True)
class StrategyCheck:
    strategy: Strategy
    applies: bool
    detail: str


@dataclass(frozen=True)
class StrategySuggestion:
    strategy: Strategy
    rationale: str
    checks: tuple[StrategyCheck, ...]


def _chain(im: InterfaceMatrix) -> Optional[list[str]]:
    """Module order along the graph if the connected modules form one simple path."""
    nodes = [m for m in im.modules if im.degree(m) > 0]
    if any(im.degree(m) > 2 for m in nodes) or len(im.cells) != len(nodes) - 1:
        return None
    ends = sorted(m for m in nodes if im.degree(m) == 1)
    if len(ends) != 2:
        return None
    path = [ends[0]]
    while len(path) < len(nodes):
        nxt = [m for m in im.neighbours(path[-1]) if m not in path]
        if not nxt:
            return None  # disconnected
        path.append(nxt[0])
    return path


def _non_increasing(values: list[Decimal]) -> bool:
    return all(x >= y for x, y in zip(values, values[1:]))


def strategy_suggestion(im: InterfaceMatrix) -> StrategySuggestion:
    """Advisory macro strategy.

    hamburger: connected modules form a single chain whose pair complexities
    never increase when read from one end. base_unit: base degree covers at
    least half of all connected pairs. bus: otherwise.
    """
    base = base_module(im)
    pairs = len(im.cells)
    need = math.ceil(pairs / 2)

    chain = _chain(im)
    hamburger = False
    if chain is None:
        ham_detail = "connected modules do not form a single chain"
    else:
        seq = [im.cell(x, y).complexity for x, y in zip(chain, chain[1:])]
        if not _non_increasing(seq) and _non_increasing(seq[::-1]):
            chain, seq = chain[::-1], seq[::-1]
        hamburger = _non_increasing(seq)
        shown = " > ".join(f"{v:.2f}" for v in seq)
        ham_detail = f"chain {'-'.join(chain)} complexities {shown}" + ("" if hamburger else " (not monotone)")

    hub = base.degree >= need
    hub_detail = f"base {base.id} touches {base.degree} of {pairs} pairs (needs >= {need})"
    bus_detail = "fallback when neither stacking nor hub pattern holds"

    if hamburger:
        pick, why = Strategy.HAMBURGER, ham_detail
    elif hub:
        pick, why = Strategy.BASE_UNIT, hub_detail
    else:
        pick, why = Strategy.BUS, f"{hub_detail}; {ham_detail}"
    checks = (
        StrategyCheck(Strategy.BASE_UNIT, hub, hub_detail),
        StrategyCheck(Strategy.HAMBURGER, hamburger, ham_detail),
        StrategyCheck(Strategy.BUS, not (hub or hamburger), bus_detail),
    )
    return StrategySuggestion(pick, why, checks)


def im_csv(im: InterfaceMatrix) -> str:
    """Square matrix of pair complexities; diagonal and unconnected cells blank."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(im.modules))
    for a in im.modules:
        row = [a]
        for b in im.modules:
            cell = im.cell(a, b) if a != b else None
            row.append(f"{cell.complexity:.2f}" if cell else "")
        writer.writerow(row)
    return buf.getvalue()
