import json
import re
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from archdfa.codec import all_codes, parse_code, serialize_code
from archdfa.complexity import architecture_tac, module_set_tac, reduction_percent, task_complexity
from archdfa.model import InterfaceCode, InterfaceType, ModuleSet, TaskFactors

from conftest import LEGACY, REVISED
from helpers import arch, whole_set

# factor level -> score, typed in from the reference table
TABLE = {
    "H": ["0", "0.25", "0.5", "1"],
    "A": ["0", "0.25", "0.5", "0.75", "1"],
    "T": ["0", "0.5", "1"],
    "I": ["0.25", "0.5", "1"],
    "D": ["0", "0.5", "1"],
}


def oracle(code: str) -> Fraction:
    return sum(Fraction(TABLE[k][int(v)]) for k, v in re.findall(r"([HATID])(\d)", code.split("-", 2)[2]))


def test_worked_examples():
    assert task_complexity(parse_code("M1-P3-H1-A2-T1-I0-D0")) == Decimal("1.50")
    assert task_complexity(parse_code("O-P4-H2-A3-T2-I2-D1")) == Decimal("3.75")


def test_i0_scores_a_quarter():
    assert task_complexity(parse_code("C-P1-H0-A0-T0-I0-D0")) == Decimal("0.25")


def test_matches_oracle_everywhere():
    for c in all_codes():
        assert Fraction(task_complexity(c)) == oracle(serialize_code(c))


def test_result_has_two_decimals():
    assert str(task_complexity(parse_code("E-P1-H1-A1-T0-I0-D0"))) == "0.75"


def _fixture_codes(path):
    doc = json.loads(path.read_text())
    return {(i["from"], i["to"]): i["codes"] for i in doc["interfaces"]}


@pytest.mark.parametrize("path", [LEGACY, REVISED], ids=["legacy", "revised"])
def test_fixture_totals_against_oracle(path, request):
    a = request.getfixturevalue(path.stem.split("_")[1])
    expected = sum(oracle(c) for codes in _fixture_codes(path).values() for c in codes)
    assert Fraction(architecture_tac(a).architecture_tac) == expected


def test_revised_breakdown(revised):
    tac = architecture_tac(revised)
    assert tac.architecture_tac == Decimal("6.00")
    assert tac.asserted_total == Decimal("7.25")
    assert {k: str(v) for k, v in tac.per_set.items()} == {
        "MFU-MHO": "2.25",
        "MFU-MPC": "1.00",
        "MAD-MHO": "1.25",
        "MPC-MHO": "1.25",
        "MAD-MPC": "0.25",
    }
    # every set disagrees with its published value, and so does the total
    assert [m.set_id for m in tac.asserted_mismatches] == ["MFU-MHO", "MFU-MPC", "MAD-MHO", "MPC-MHO", "MAD-MPC", None]


def test_legacy_breakdown(legacy):
    tac = architecture_tac(legacy)
    assert tac.architecture_tac == Decimal("15.25")
    assert tac.asserted_total == Decimal("26.25")
    assert [m.set_id for m in tac.asserted_mismatches] == [None]


def test_multi_code_set_sums():
    a = arch([("E1", "C1", ["E-P1-H1-A1-T0-I0-D0", "C-P1-H0-A0-T0-I0-D0"])])
    assert module_set_tac(whole_set(a), a) == Decimal("1.00")


def test_no_assertions_means_no_ledger():
    a = arch([("X", "Y", ["B-P4-H1-A1-T1-I1-D1"])], sets=[ModuleSet("S", ("X", "Y"))])
    tac = architecture_tac(a)
    assert tac.asserted_total is None and tac.asserted_mismatches == ()


def test_within_tolerance_is_not_a_mismatch():
    a = arch([("X", "Y", ["M1-P3-H1-A2-T1-I0-D0"])], sets=[ModuleSet("S", ("X", "Y"), asserted_tac=Decimal("1.504"))])
    assert architecture_tac(a).asserted_mismatches == ()


@pytest.mark.parametrize(
    "before, after, pct",
    [("26.25", "7.25", 72), ("100", "50", 50), ("8", "1", 88), ("200", "201", -1), ("1", "1", 0)],
)
def test_reduction_percent(before, after, pct):
    assert reduction_percent(Decimal(before), Decimal(after)) == pct


def test_reduction_from_zero():
    with pytest.raises(ZeroDivisionError):
        reduction_percent(Decimal(0), Decimal(1))


levels = st.tuples(
    st.sampled_from(list(InterfaceType)),
    st.integers(1, 4),
    st.integers(0, 3),
    st.integers(0, 4),
    st.integers(0, 2),
    st.integers(0, 2),
    st.integers(0, 2),
)


def _code(t):
    return InterfaceCode(t[0], t[1], TaskFactors(*t[2:]))


@given(levels, st.integers(0, 4))
def test_monotone_in_each_factor(t, which):
    limits = (3, 4, 2, 2, 2)
    if t[2 + which] == limits[which]:
        return
    raised = list(t)
    raised[2 + which] += 1
    assert task_complexity(_code(tuple(raised))) > task_complexity(_code(t))


@given(st.lists(levels, min_size=1, max_size=8), st.randoms())
def test_set_bounds_quantization_and_order(codes, rnd):
    strings = [serialize_code(_code(t)) for t in codes]
    pairs = [(f"A{i}", f"B{i}", [s]) for i, s in enumerate(strings)]
    a = arch(pairs)
    total = module_set_tac(whole_set(a), a)
    assert 0 <= total <= 5 * len(codes)
    assert (total * 4) == (total * 4).to_integral_value()
    rnd.shuffle(pairs)
    b = arch(pairs)
    assert module_set_tac(whole_set(b), b) == total
