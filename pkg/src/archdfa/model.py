"""Domain types shared by every engine, plus architecture validation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import TYPE_CHECKING, Any, Mapping, Optional

if TYPE_CHECKING:
    from .concept import ConceptInput
    from .mim import MimInput
    from .msasm import WeightProfile


class InterfaceType(Enum):
    M1 = "M1"
    M2 = "M2"
    B = "B"
    O = "O"  # noqa: E741
    E = "E"
    C = "C"

    @property
    def default_priority(self) -> int:
        return DEFAULT_PRIORITY[self]


DEFAULT_PRIORITY = {
    InterfaceType.M1: 3,
    InterfaceType.M2: 2,
    InterfaceType.B: 4,
    InterfaceType.O: 4,
    InterfaceType.E: 1,
    InterfaceType.C: 3,
}

# Level scores in hundredths, indexed by level digit. H0 is an extension
# (the table starts at H1) so control interfaces coded H0 stay parseable.
FACTOR_SCORES: dict[str, tuple[int, ...]] = {
    "H": (0, 25, 50, 100),
    "A": (0, 25, 50, 75, 100),
    "T": (0, 50, 100),
    "I": (25, 50, 100),
    "D": (0, 50, 100),
}
FACTOR_ORDER = ("H", "A", "T", "I", "D")


def hundredths(value: int) -> Decimal:
    """Scaled integer (value x 100) back to a two-place Decimal."""
    return Decimal(value).scaleb(-2)


@dataclass(frozen=True)
class TaskFactors:
    """Levels of the five task-complexity factors (level digits, not scores)."""

    handling: int
    alignment: int
    tooling: int
    fit: int
    fixing: int

    def __post_init__(self) -> None:
        for letter, level in zip(FACTOR_ORDER, self.levels()):
            if not isinstance(level, int) or not 0 <= level < len(FACTOR_SCORES[letter]):
                raise ValueError(f"{letter}{level} is not a defined level")

    def levels(self) -> tuple[int, int, int, int, int]:
        return (self.handling, self.alignment, self.tooling, self.fit, self.fixing)

    def scores_hundredths(self) -> tuple[int, ...]:
        return tuple(FACTOR_SCORES[k][lvl] for k, lvl in zip(FACTOR_ORDER, self.levels()))

    def scores(self) -> dict[str, Decimal]:
        return {k: hundredths(s) for k, s in zip(FACTOR_ORDER, self.scores_hundredths())}


@dataclass(frozen=True)
class InterfaceCode:
    itype: InterfaceType
    priority: int
    factors: TaskFactors

    def __post_init__(self) -> None:
        if self.priority not in (1, 2, 3, 4):
            raise ValueError(f"priority must be 1-4, got {self.priority!r}")

    def __str__(self) -> str:
        from .codec import serialize_code

        return serialize_code(self)


class Shell(Enum):
    INNER = "inner"
    OUTER = "outer"


class Direction(Enum):
    TOP_DOWN = "top_down"
    LATERAL = "lateral"
    FRONTAL = "frontal"
    UNDERSIDE = "underside"
    ANGLED = "angled"
    UNSPECIFIED = "unspecified"


class FlagKind(Enum):
    SIMULTANEOUS_INSERTION = "simultaneous_insertion"
    LIMITED_VISIBILITY = "limited_visibility"
    TORQUE_CONTROLLED_TOOL = "torque_controlled_tool"
    REORIENTATION = "reorientation"
    MANUAL_WIRING = "manual_wiring"


@dataclass(frozen=True)
class ConstraintFlag:
    kind: FlagKind
    note: str = ""


@dataclass(frozen=True)
class ModuleDef:
    id: str
    name: str
    shell: Optional[Shell] = None
    description: str = ""
    flags: tuple[ConstraintFlag, ...] = ()


@dataclass(frozen=True)
class InterfaceDef:
    from_module: str
    to_module: str
    codes: tuple[InterfaceCode, ...]
    direction: Direction = Direction.UNSPECIFIED
    comment: str = ""
    id: Optional[str] = None
    flags: tuple[ConstraintFlag, ...] = ()

    @property
    def key(self) -> str:
        return self.id or f"{self.from_module}-{self.to_module}"

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.from_module, self.to_module))

    @property
    def code_strings(self) -> tuple[str, ...]:
        return tuple(str(c) for c in self.codes)


@dataclass(frozen=True)
class ModuleSet:
    """A group of modules evaluated together.

    ``interface_refs`` of ``None`` means "every interface among the members".
    ``asserted_msasm``/``source_label`` carry published scores whose criterion
    inputs are unknown, so they can be compared but never recomputed.
    """

    id: str
    members: tuple[str, ...]
    interface_refs: Optional[tuple[str, ...]] = None
    msasm_scores: Optional[Mapping[str, int]] = None
    asserted_tac: Optional[Decimal] = None
    asserted_msasm: Optional[Decimal] = None
    source_label: Optional[str] = None


@dataclass(frozen=True)
class Architecture:
    name: str
    modules: tuple[ModuleDef, ...] = ()
    interfaces: tuple[InterfaceDef, ...] = ()
    module_sets: tuple[ModuleSet, ...] = ()
    concept: Optional["ConceptInput"] = None
    mim: Optional["MimInput"] = None
    weight_profile: Optional["WeightProfile"] = None
    asserted_tac: Optional[Decimal] = None
    asserted_msasm_mean: Optional[Decimal] = None
    notes: tuple[str, ...] = ()

    def module(self, module_id: str) -> Optional[ModuleDef]:
        for m in self.modules:
            if m.id == module_id:
                return m
        return None

    def interface(self, key: str) -> Optional[InterfaceDef]:
        for itf in self.interfaces:
            if itf.key == key:
                return itf
        return None

    def set_interfaces(self, mset: ModuleSet) -> list[InterfaceDef]:
        """Interfaces covered by a module set, in declaration order."""
        if mset.interface_refs is None:
            members = set(mset.members)
            return [i for i in self.interfaces if i.pair <= members]
        found = [self.interface(ref) for ref in mset.interface_refs]
        return [i for i in found if i is not None]


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value}: {self.code}: {self.message}"


def errors(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity is Severity.ERROR]


def _err(code: str, msg: str) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, msg)


def _warn(code: str, msg: str) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, msg)


def validate(arch: Architecture) -> list[Diagnostic]:
    """Check every cross-reference and type invariant of an architecture.

    Returns diagnostics in a stable order; an empty list means fully valid.
    Priority deviations from a type's default are warnings, pair overlaps
    between module sets are informational.
    """
    out: list[Diagnostic] = []
    ids = [m.id for m in arch.modules]
    known = set(ids)

    for m in arch.modules:
        if not m.id or any(ch.isspace() for ch in m.id):
            out.append(_err("BAD_MODULE_ID", f"module id {m.id!r} is empty or contains whitespace"))
    for mid, n in sorted(Counter(ids).items()):
        if n > 1:
            out.append(_err("DUPLICATE_MODULE", f"module id {mid!r} defined {n} times"))

    seen_pairs: dict[frozenset[str], str] = {}
    seen_keys: set[str] = set()
    for itf in arch.interfaces:
        label = f"interface {itf.key}"
        for end in (itf.from_module, itf.to_module):
            if end not in known:
                out.append(_err("UNRESOLVED_MODULE", f"{label} references undefined module {end!r}"))
        if itf.from_module == itf.to_module:
            out.append(_err("SELF_INTERFACE", f"{label} connects {itf.from_module!r} to itself"))
        if not itf.codes:
            out.append(_err("EMPTY_CODES", f"{label} carries no interface codes"))
        if itf.pair in seen_pairs:
            out.append(
                _err("DUPLICATE_PAIR", f"{label} duplicates the module pair of {seen_pairs[itf.pair]}")
            )
        else:
            seen_pairs[itf.pair] = itf.key
        if itf.key in seen_keys:
            out.append(_err("DUPLICATE_INTERFACE_ID", f"interface id {itf.key!r} is not unique"))
        seen_keys.add(itf.key)
        for code in itf.codes:
            default = code.itype.default_priority
            if code.priority != default:
                out.append(
                    _warn(
                        "PRIORITY_DEVIATION",
                        f"{label}: {code} uses priority {code.priority}, "
                        f"type {code.itype.value} defaults to {default}",
                    )
                )

    set_ids = Counter(s.id for s in arch.module_sets)
    for sid, n in sorted(set_ids.items()):
        if n > 1:
            out.append(_err("DUPLICATE_SET", f"module set id {sid!r} defined {n} times"))

    pair_owner: dict[frozenset[str], list[str]] = {}
    for mset in arch.module_sets:
        label = f"module set {mset.id}"
        if len(mset.members) < 2:
            out.append(_err("SET_TOO_SMALL", f"{label} has fewer than two members"))
        for mid in mset.members:
            if mid not in known:
                out.append(_err("UNRESOLVED_MODULE", f"{label} references undefined module {mid!r}"))
        members = set(mset.members)
        for ref in mset.interface_refs or ():
            itf = arch.interface(ref)
            if itf is None:
                out.append(_err("UNRESOLVED_INTERFACE", f"{label} references unknown interface {ref!r}"))
            elif not itf.pair <= members:
                out.append(
                    _err("FOREIGN_INTERFACE", f"{label} covers interface {ref!r} outside its members")
                )
        for itf in arch.set_interfaces(mset):
            pair_owner.setdefault(itf.pair, []).append(mset.id)
        if mset.msasm_scores is not None:
            out.extend(_check_msasm_scores(label, mset.msasm_scores))
        for attr in ("asserted_tac", "asserted_msasm"):
            value = getattr(mset, attr)
            if value is not None and value < 0:
                out.append(_err("NEGATIVE_ASSERTION", f"{label}: {attr} is negative"))

    for pair, owners in pair_owner.items():
        if len(owners) > 1:
            a, b = sorted(pair)
            out.append(
                Diagnostic(
                    Severity.INFO,
                    "SET_OVERLAP",
                    f"module pair {a}-{b} appears in sets {', '.join(owners)}",
                )
            )

    if arch.weight_profile is not None:
        from .msasm import check_profile

        out.extend(check_profile(arch.weight_profile))
    if arch.concept is not None:
        from .concept import check_concept

        out.extend(check_concept(arch.concept))
    if arch.mim is not None:
        from .mim import check_mim

        out.extend(check_mim(arch.mim))
    return out


def _check_msasm_scores(label: str, scores: Mapping[str, Any]) -> list[Diagnostic]:
    from .msasm import CRITERIA_BY_ID, TRIADIC

    out = []
    for cid, value in scores.items():
        if cid not in CRITERIA_BY_ID:
            out.append(_err("UNKNOWN_CRITERION", f"{label}: unknown MSASM criterion {cid!r}"))
        elif value not in TRIADIC:
            out.append(_err("INVALID_SCORE", f"{label}: {cid} scored {value!r}, expected 1, 3 or 9"))
    return out

