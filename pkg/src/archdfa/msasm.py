"""Module Set Assembly Strategy Matrix: weighted triadic scoring of module sets."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Mapping, Optional

from .model import Architecture, Diagnostic, Severity, hundredths

TRIADIC = (1, 3, 9)


class Category(Enum):
    ASSEMBLY_FEASIBILITY = "assembly_feasibility"
    LOGISTICS_VALUE_CHAIN = "logistics_value_chain"
    AUTOMATION_COMPATIBILITY = "automation_compatibility"


@dataclass(frozen=True)
class MsasmCriterion:
    id: str
    category: Category
    label: str
    default_weight: int


_AF, _LV, _AC = Category.ASSEMBLY_FEASIBILITY, Category.LOGISTICS_VALUE_CHAIN, Category.AUTOMATION_COMPATIBILITY

CRITERIA: tuple[MsasmCriterion, ...] = (
    MsasmCriterion("C1", _AF, "Attachment interface connections", 4),
    MsasmCriterion("C2a", _AF, "Assembly direction to base module", 3),
    MsasmCriterion("C2b", _AF, "Relative direction of subsequent modules", 3),
    MsasmCriterion("C3", _AF, "Assembly motion and reachability", 4),
    MsasmCriterion("C4", _AF, "Part orientation", 2),
    MsasmCriterion("C5", _AF, "One operator compliant", 5),
    MsasmCriterion("C6", _AF, "Insertion", 3),
    MsasmCriterion("C7", _AF, "Handling", 2),
    MsasmCriterion("C8", _LV, "Transport and storage", 3),
    MsasmCriterion("C9", _LV, "Disassembly and recycling", 3),
    MsasmCriterion("C10", _LV, "Maintenance accessibility", 2),
    MsasmCriterion("C11", _AC, "Automatic feeding", 3),
    MsasmCriterion("C12", _AC, "Gripping ease", 4),
    MsasmCriterion("C13", _AC, "Automatic insertion and fastening", 3),
)
CRITERIA_BY_ID = {c.id: c for c in CRITERIA}
CRITERION_IDS = tuple(CRITERIA_BY_ID)


class MsasmError(ValueError):
    pass


class MissingScore(MsasmError):
    def __init__(self, criterion: str, set_id: Optional[str] = None):
        self.criterion = criterion
        self.set_id = set_id
        where = f" in module set {set_id}" if set_id else ""
        super().__init__(f"no score for criterion {criterion}{where}")


class InvalidScore(MsasmError):
    def __init__(self, value: object, criterion: Optional[str] = None):
        self.value = value
        self.criterion = criterion
        super().__init__(f"score {value!r} for {criterion or 'criterion'} is not one of 1, 3, 9")


class NoModuleSets(MsasmError):
    pass


@dataclass(frozen=True)
class WeightProfile:
    """Criterion weights. A reduced profile scores only the criteria it lists.

    Construction only requires positive integer weights; the 1-5 range of
    hand-authored profiles is enforced by :func:`check_profile`.
    """

    name: str
    weights: Mapping[str, int]
    reduced: bool = False

    def __post_init__(self) -> None:
        for cid, w in self.weights.items():
            if cid not in CRITERIA_BY_ID:
                raise MsasmError(f"profile {self.name!r}: unknown criterion {cid!r}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise MsasmError(f"profile {self.name!r}: weight for {cid} must be a positive integer")
        if not self.weights:
            raise MsasmError(f"profile {self.name!r} declares no criteria")
        if not self.reduced:
            missing = [c for c in CRITERION_IDS if c not in self.weights]
            if missing:
                raise MsasmError(
                    f"profile {self.name!r} lacks {', '.join(missing)}; declare it reduced to omit criteria"
                )


TABLE6_DEFAULT = WeightProfile("table6-default", {c.id: c.default_weight for c in CRITERIA})
BUILTIN_PROFILES = {TABLE6_DEFAULT.name: TABLE6_DEFAULT}


def builtin_profile(name: str) -> WeightProfile:
    try:
        return BUILTIN_PROFILES[name]
    except KeyError:
        raise MsasmError(f"unknown weight profile {name!r} (built-ins: {', '.join(BUILTIN_PROFILES)})") from None


def check_profile(profile: WeightProfile) -> list[Diagnostic]:
    return [
        Diagnostic(Severity.ERROR, "WEIGHT_RANGE", f"profile {profile.name!r}: {cid} weight {w} outside 1-5")
        for cid, w in profile.weights.items()
        if w > 5
    ]


def _round_half_up(num: int, den: int) -> int:
    """round(num / den) with halves away from zero; num, den >= 0."""
    return (2 * num + den) // (2 * den)


def msasm_score(scores: Mapping[str, int], profile: WeightProfile, set_id: Optional[str] = None) -> Decimal:
    """Weighted mean sum(w*s)/sum(w) over the profile's criteria, to 2 places."""
    num = den = 0
    for cid, w in profile.weights.items():
        if cid not in scores:
            raise MissingScore(cid, set_id)
        s = scores[cid]
        if s not in TRIADIC or isinstance(s, bool):
            raise InvalidScore(s, cid)
        num += w * s
        den += w
    return hundredths(_round_half_up(100 * num, den))


class Verdict(Enum):
    GOOD = "good"
    ACCEPTABLE = "acceptable"
    CAUTION = "caution"
    CRITICAL = "critical"


def classify(score: Decimal) -> Verdict:
    # half-open bands so that e.g. 7.95 has a home
    if score >= 8:
        return Verdict.GOOD
    if score >= 7:
        return Verdict.ACCEPTABLE
    if score >= 6:
        return Verdict.CAUTION
    return Verdict.CRITICAL


@dataclass(frozen=True)
class MsasmAssessment:
    set_id: str
    scores: Mapping[str, int]
    profile: WeightProfile
    weighted_score: Decimal
    verdict: Verdict


@dataclass(frozen=True)
class ArchitectureAssessment:
    assessments: tuple[MsasmAssessment, ...]
    mean: Decimal


def mean_score(values: list[Decimal]) -> Decimal:
    """Arithmetic mean of two-place scores, rounded half up to two places."""
    if not values:
        raise NoModuleSets("mean of zero module-set scores is undefined")
    total = sum(int(v * 100) for v in values)
    return hundredths(_round_half_up(total, len(values)))


def assess_set(set_id: str, scores: Mapping[str, int], profile: WeightProfile) -> MsasmAssessment:
    value = msasm_score(scores, profile, set_id)
    return MsasmAssessment(set_id, dict(scores), profile, value, classify(value))


def assess_architecture(arch: Architecture, profile: Optional[WeightProfile] = None) -> ArchitectureAssessment:
    """Assess every module set; the mean is taken over the rounded set scores."""
    profile = profile or arch.weight_profile or TABLE6_DEFAULT
    if not arch.module_sets:
        raise NoModuleSets(f"architecture {arch.name!r} has no module sets")
    results = []
    for mset in arch.module_sets:
        if mset.msasm_scores is None:
            raise MissingScore(next(iter(profile.weights)), mset.id)
        results.append(assess_set(mset.id, mset.msasm_scores, profile))
    return ArchitectureAssessment(tuple(results), mean_score([r.weighted_score for r in results]))
