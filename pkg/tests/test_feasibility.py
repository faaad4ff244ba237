"""Perfect-guess feasibility of message-value promises."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racbox.feasibility import (
    BIT_CASES,
    TRIT_CASES,
    bit_case,
    guessing_feasibility,
    trit_case,
)

F = Fraction


def test_bit_case_catalog_verdicts():
    # one variable promised on both message values: always recoverable;
    # crossed promises on two variables: impossible
    assert bit_case("a").passed
    assert bit_case("b").passed
    assert not bit_case("c").passed
    assert not bit_case("d").passed


def test_crossed_bits_witness_and_coverage():
    report = bit_case("c")
    assert report.witness == "P(atilde_0=1,atilde_1=1)=0"
    assert report.quantity == F(3, 4)
    assert report.bound == F(1)


def test_trit_case_catalog_verdicts():
    verdicts = {k: trit_case(k).passed for k in TRIT_CASES}
    assert verdicts == {1: True, 2: True, 3: False, 4: False, 5: False, 6: False, 7: False, 8: False}


def test_mixed_trit_witness():
    report = trit_case(3)  # promises A, A, x_1 on m = 0, 1, 2
    assert not report.passed
    assert report.witness == "P(A=2,x_1=1)=0"


def test_single_variable_promises_have_explicit_plans():
    report = trit_case(1)
    assert report.passed
    assert report.witness == "m=0 -> A=0; m=1 -> A=1; m=2 -> A=2"


def test_free_message_value_absorbs_everything():
    report = guessing_feasibility(
        [("u", 0), ("u", 1)], [("u", 2), ("v", 2)], 3
    )
    assert report.passed
    assert "m=2" in (report.witness or "")


def test_no_promises_is_trivially_feasible():
    assert guessing_feasibility([], [("u", 2)], 2).passed


def test_validation_errors():
    with pytest.raises(ValueError):
        guessing_feasibility([("w", 0)], [("u", 2)], 2)  # unknown variable
    with pytest.raises(ValueError):
        guessing_feasibility([("u", 5)], [("u", 2)], 2)  # message value range
    with pytest.raises(ValueError):
        guessing_feasibility([("u", 0), ("u", 0)], [("u", 2)], 2)  # duplicate slot
    with pytest.raises(ValueError):
        guessing_feasibility([("u", 0)], [("u", 2), ("u", 3)], 2)  # var twice
    with pytest.raises(ValueError):
        guessing_feasibility([("u", 0)], [("u", 1)], 2)  # degenerate alphabet


def test_same_variable_on_every_message_value_scales():
    # promising one variable everywhere is exactly the ability to send it
    for size in (2, 3, 4):
        constraints = [("u", mu) for mu in range(size)]
        report = guessing_feasibility(constraints, [("u", size), ("v", size)], size)
        assert report.passed


def test_two_distinct_variables_on_a_binary_message_fail():
    report = guessing_feasibility(
        [("u", 0), ("v", 1)], [("u", 2), ("v", 2)], 2
    )
    assert not report.passed
    assert report.quantity == F(3, 4)


@given(st.integers(2, 3), st.data())
@settings(max_examples=40, deadline=None)
def test_dropping_a_promise_never_hurts(size, data):
    # feasibility is monotone: removing a constraint keeps a feasible
    # instance feasible
    variables = [("u", size), ("v", size)]
    slots = [(var, mu) for var, _ in variables for mu in range(size)]
    chosen = data.draw(
        st.lists(st.sampled_from(slots), min_size=1, max_size=size, unique_by=lambda s: s[1])
    )
    full = guessing_feasibility(chosen, variables, size)
    reduced = guessing_feasibility(chosen[:-1], variables, size)
    if full.passed:
        assert reduced.passed


def test_case_catalogs_are_complete():
    assert sorted(BIT_CASES) == ["a", "b", "c", "d"]
    assert sorted(TRIT_CASES) == list(range(1, 9))
    with pytest.raises(ValueError):
        bit_case("z")
    with pytest.raises(ValueError):
        trit_case(9)
