import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vitpoly.model import Sequence, equivalent
from vitpoly.structure import (THREE_STATE_PERIODS, canonical_period, check_bounds, combined_bound,
                               decompose, closed_subword_check, simple_cycles, theoretical_bound,
                               validate_catalog)


def s(text, k=3):
    return Sequence.parse(text, k)


def test_decompose_constant_run():
    d = decompose(s("000000000", 2))
    assert d.period_word == "00" and d.repetitions == 8 and d.prefix_length == 0 and d.suffix_length == 0
    assert check_bounds(d).ok


def test_decompose_prefix_then_cycles():
    d = decompose(s("2100210210210"))
    assert d.prefix == (2, 1, 0, 0) and d.period_word == "0210" and d.repetitions == 3
    assert d.suffix_length == 0


def test_decompose_cycles_then_suffix():
    d = decompose(s("021021021010"))
    assert d.period_word == "0210" and d.repetitions == 3
    assert d.prefix_length == 0 and d.suffix == (0, 1, 0)


def test_partial_period_interior():
    # the interior may stop part-way around its cycle
    d = decompose(s("0212121210210"))
    assert d.period_word == "121" and d.repetitions == 3 and d.extra == 1
    assert d.prefix_length + d.suffix_length == 5 == combined_bound(3, 2)
    assert check_bounds(d).ok


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda k: st.lists(st.integers(0, k - 1), min_size=1, max_size=14).map(
        lambda xs: Sequence(k, tuple(xs)))))
def test_reassembly_is_equivalent_and_maximal(seq):
    d = decompose(seq)
    assert equivalent(d.reassemble(), seq)
    if d.repetitions:
        cyc = d.period[:-1]
        for i in range(len(cyc)):
            rot = cyc[i:] + cyc[:i]
            walk = rot + rot[:1]
            for part in (d.prefix, d.suffix):
                assert all(part[j:j + len(walk)] != walk for j in range(len(part)))


def test_bound_arithmetic():
    assert combined_bound(3, 2) == 5 and combined_bound(2, 1) == 2


def test_theoretical_bound_values():
    assert theoretical_bound(1) == 1
    assert theoretical_bound(2) == 24
    # k=3: p=1,2,3 terms 3^5*3 + 3^6*3 + 3^7*2
    assert theoretical_bound(3) == 3 ** 5 * 3 + 3 ** 6 * 3 + 3 ** 7 * 2 == 7290
    with pytest.raises(ValueError):
        theoretical_bound(0)


def test_closed_subword_examples():
    assert not closed_subword_check(s("0011", 2)).ok
    assert closed_subword_check(s("010", 2)).ok


def test_simple_cycles_and_canonical_words():
    assert {canonical_period(c + c[:1]) for c in simple_cycles(3)} == THREE_STATE_PERIODS
    assert canonical_period("1021") == "0210" and canonical_period("101") == "010"


def test_short_sequences_skip_bounds():
    d = decompose(s("012"))
    assert d.repetitions == 0 and check_bounds(d).skipped


def test_two_state_certified_entries_validate(k2_catalogs):
    for cat in k2_catalogs.values():
        assert all(v.ok for v in validate_catalog(cat))
