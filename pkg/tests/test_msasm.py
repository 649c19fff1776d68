import random
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from archdfa.model import Architecture, ModuleSet, validate
from archdfa.msasm import (
    CRITERION_IDS,
    TABLE6_DEFAULT,
    InvalidScore,
    MissingScore,
    MsasmError,
    NoModuleSets,
    Verdict,
    WeightProfile,
    assess_architecture,
    builtin_profile,
    classify,
    mean_score,
    msasm_score,
)

from helpers import arch

WEIGHTS = {"C1": 4, "C2a": 3, "C2b": 3, "C3": 4, "C4": 2, "C5": 5, "C6": 3, "C7": 2,
           "C8": 3, "C9": 3, "C10": 2, "C11": 3, "C12": 4, "C13": 3}  # fmt: skip

profiles = st.dictionaries(st.sampled_from(CRITERION_IDS), st.integers(1, 5), min_size=1).map(
    lambda w: WeightProfile("rand", w, reduced=len(w) < len(CRITERION_IDS))
)
score_maps = st.fixed_dictionaries({c: st.sampled_from((1, 3, 9)) for c in CRITERION_IDS})


def oracle(scores, weights):
    exact = Fraction(sum(weights[c] * scores[c] for c in weights), sum(weights.values()))
    return Decimal(int(exact * 100 + Fraction(1, 2))) / 100


def test_default_profile_is_the_table():
    assert dict(TABLE6_DEFAULT.weights) == WEIGHTS
    assert sum(WEIGHTS.values()) == 44
    assert builtin_profile("table6-default") is TABLE6_DEFAULT
    assert len(CRITERION_IDS) == 14


@pytest.mark.parametrize("value, expected", [(9, "9.00"), (1, "1.00"), (3, "3.00")])
def test_constant_scores(value, expected):
    assert str(msasm_score({c: value for c in CRITERION_IDS}, TABLE6_DEFAULT)) == expected


def test_reduced_profile_hand_value():
    p = WeightProfile("three", {"C1": 1, "C5": 1, "C9": 1}, reduced=True)
    assert msasm_score({"C1": 9, "C5": 3, "C9": 1}, p) == Decimal("4.33")


def test_rounds_half_away_from_zero():
    p = WeightProfile("half", {"C1": 1, "C2a": 1599}, reduced=True)  # 1608 / 1600 = 1.005 exactly
    assert msasm_score({"C1": 9, "C2a": 1}, p) == Decimal("1.01")
    p = WeightProfile("below", {"C1": 1, "C2a": 1601}, reduced=True)  # 1.004...
    assert msasm_score({"C1": 9, "C2a": 1}, p) == Decimal("1.00")


def test_missing_and_invalid_scores():
    scores = {c: 9 for c in CRITERION_IDS}
    del scores["C7"]
    with pytest.raises(MissingScore) as info:
        msasm_score(scores, TABLE6_DEFAULT, "S1")
    assert info.value.criterion == "C7" and info.value.set_id == "S1"
    with pytest.raises(InvalidScore):
        msasm_score({**{c: 9 for c in CRITERION_IDS}, "C3": 5}, TABLE6_DEFAULT)


@pytest.mark.parametrize(
    "weights, reduced",
    [({"C1": 0, **{c: 1 for c in CRITERION_IDS[1:]}}, False), ({"C1": 1}, False), ({"C99": 1}, True), ({}, True)],
)
def test_bad_profiles(weights, reduced):
    with pytest.raises(MsasmError):
        WeightProfile("bad", weights, reduced)


def test_unknown_builtin():
    with pytest.raises(MsasmError):
        builtin_profile("nope")


def test_weights_above_five_flagged_by_validate():
    p = WeightProfile("heavy", {c: 6 for c in CRITERION_IDS})
    diags = validate(Architecture("x", weight_profile=p))
    assert [d.code for d in diags] == ["WEIGHT_RANGE"] * 14


@given(score_maps, profiles)
def test_matches_rational_oracle_and_bounds(scores, profile):
    value = msasm_score(scores, profile)
    assert value == oracle(scores, profile.weights)
    assert Decimal(1) <= value <= Decimal(9)


@given(score_maps, profiles, st.integers(2, 50))
def test_scale_invariance(scores, profile, k):
    scaled = WeightProfile("k", {c: w * k for c, w in profile.weights.items()}, profile.reduced)
    assert msasm_score(scores, scaled) == msasm_score(scores, profile)


@given(score_maps, profiles, st.data())
def test_single_upgrade_strictly_increases(scores, profile, data):
    upgradable = [c for c in profile.weights if scores[c] < 9]
    if not upgradable:
        return
    c = data.draw(st.sampled_from(upgradable))
    better = {**scores, c: 3 if scores[c] == 1 else 9}
    assert msasm_score(better, profile) > msasm_score(scores, profile)


@pytest.mark.parametrize(
    "score, verdict",
    [
        ("9.00", Verdict.GOOD), ("8.11", Verdict.GOOD), ("8.00", Verdict.GOOD),
        ("7.99", Verdict.ACCEPTABLE), ("7.95", Verdict.ACCEPTABLE), ("7.76", Verdict.ACCEPTABLE),
        ("7.65", Verdict.ACCEPTABLE), ("7.11", Verdict.ACCEPTABLE), ("7.00", Verdict.ACCEPTABLE),
        ("6.99", Verdict.CAUTION), ("6.00", Verdict.CAUTION),
        ("5.99", Verdict.CRITICAL), ("5.84", Verdict.CRITICAL), ("1.00", Verdict.CRITICAL),
    ],
)  # fmt: skip
def test_classify(score, verdict):
    assert classify(Decimal(score)) is verdict


@given(st.integers(100, 900), st.integers(100, 900))
def test_classify_monotone(a, b):
    order = [Verdict.CRITICAL, Verdict.CAUTION, Verdict.ACCEPTABLE, Verdict.GOOD]
    lo, hi = sorted((a, b))
    assert order.index(classify(Decimal(lo) / 100)) <= order.index(classify(Decimal(hi) / 100))


def test_mean_of_published_scores():
    values = [Decimal(v) for v in ("7.65", "5.84", "8.11", "7.11", "7.76")]
    assert mean_score(values) == Decimal("7.29")
    assert abs(mean_score(values) - Decimal("7.29")) <= Decimal("0.005")


def test_mean_needs_sets():
    with pytest.raises(NoModuleSets):
        mean_score([])
    with pytest.raises(NoModuleSets):
        assess_architecture(Architecture("empty"))


def test_single_all_nine_set_mean():
    a = arch([("X", "Y", ["B-P4-H1-A1-T1-I1-D1"])], sets=[ModuleSet("S", ("X", "Y"), msasm_scores={c: 9 for c in CRITERION_IDS})])
    assert assess_architecture(a).mean == Decimal("9.00")


def test_unscored_set_reports_which(revised):
    with pytest.raises(MissingScore) as info:
        assess_architecture(revised)
    assert info.value.set_id == revised.module_sets[0].id


def test_demo_fixture(demo):
    result = assess_architecture(demo)
    assert [str(r.weighted_score) for r in result.assessments] == ["7.50", "4.68"]
    assert [r.verdict for r in result.assessments] == [Verdict.ACCEPTABLE, Verdict.CRITICAL]
    assert result.mean == Decimal("6.09")
    for r, mset in zip(result.assessments, demo.module_sets):
        assert r.weighted_score == oracle(mset.msasm_scores, WEIGHTS)


def test_randomized_profiles_scale_invariance_100():
    rng = random.Random(7)
    for _ in range(100):
        weights = {c: rng.randint(1, 5) for c in CRITERION_IDS}
        scores = {c: rng.choice((1, 3, 9)) for c in CRITERION_IDS}
        k = rng.randint(2, 9)
        base = msasm_score(scores, WeightProfile("r", weights))
        assert msasm_score(scores, WeightProfile("r", {c: w * k for c, w in weights.items()})) == base
