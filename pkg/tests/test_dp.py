import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from vitpoly import dp
from vitpoly.model import MarkovChain, Sequence, WeightScheme, exponent_of


def test_worked_example_unique_001():
    opt = dp.min_weight(WeightScheme.from_flat([3, 2, 4, 5]), 2, start=0)
    assert opt.value == 5 and [str(p) for p in opt.argmax_paths] == ["001"] and not opt.tie_flag


def test_uniform_weights_tie():
    opt = dp.min_weight(WeightScheme.from_flat([2] * 4), 5, start=0)
    assert opt.value == 10 and opt.tie_flag and len(opt.argmax_paths) == 32


def test_cap_limits_listing():
    opt = dp.min_weight(WeightScheme.from_flat([1] * 9), 6, start=0, cap=10)
    assert opt.cap_hit and len(opt.argmax_paths) == 10
    # lexicographic order
    assert [p.states for p in opt.argmax_paths] == sorted(p.states for p in opt.argmax_paths)


def test_all_starts_needs_omega():
    with pytest.raises(ValueError):
        dp.min_weight(WeightScheme.from_flat([1, 2, 3, 4]), 3)
    ws = WeightScheme.from_flat([1, 2, 3, 0], omega=(5, 0))
    opt = dp.min_weight(ws, 3)
    assert str(opt.argmax_paths[0]) == "1111" and opt.value == 0


def test_omega_shift_is_irrelevant_from_fixed_start():
    w = [3, 2, 4, 5]
    a = dp.min_weight(WeightScheme.from_flat(w, omega=(0, 0)), 4, start=0)
    b = dp.min_weight(WeightScheme.from_flat(w, omega=(9, -3)), 4, start=0)
    assert a == b


def test_viterbi_examples():
    det = MarkovChain(2, (1, 0), ((1, 0), (F(1, 2), F(1, 2))))
    opt = dp.viterbi(det, 6)
    assert opt.value == 1 and str(opt.argmax_paths[0]) == "0000000" and not opt.tie_flag
    u = MarkovChain.uniform(3)
    opt = dp.viterbi(u, 4, cap=5)
    assert opt.tie_flag and opt.value == F(1, 3 ** 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 5), st.randoms(use_true_random=False))
def test_viterbi_matches_bruteforce(k, n, rnd):
    rows = []
    for _ in range(k):
        xs = [rnd.randint(1, 4) for _ in range(k)]
        rows.append(tuple(F(x, sum(xs)) for x in xs))
    chain = MarkovChain.from_start(rnd.randrange(k), tuple(rows))
    probs = oracles.brute_probabilities(chain.p, n, chain.pi.index(1), k)
    best = max(probs.values())
    opt = dp.viterbi(chain, n)
    assert opt.value == best
    assert {c.counts for c in opt.classes} == {c for c, v in probs.items() if v == best}


def test_margin_example_and_ties():
    ws = WeightScheme.from_flat([3, 2, 4, 5])
    assert dp.margin(ws, Sequence.parse("001", 2)) == 1
    assert dp.margin(WeightScheme.from_flat([1] * 4), Sequence.parse("0101", 2)) == 0


def test_margin_agrees_with_bruteforce():
    rng = random.Random(5)
    for _ in range(60):
        k = rng.choice((2, 3))
        n = rng.randint(1, 6)
        ws = WeightScheme.from_flat([F(rng.randint(-3, 6), rng.randint(1, 2)) for _ in range(k * k)])
        s = Sequence(k, tuple(rng.randrange(k) for _ in range(n + 1)))
        assert dp.margin(ws, s) == dp.brute_force_margin(ws, s)


def test_margin_positive_means_unique_class():
    rng = random.Random(11)
    for _ in range(60):
        k = rng.choice((2, 3))
        n = rng.randint(1, 6)
        ws = WeightScheme.from_flat([F(rng.randint(0, 9), rng.randint(1, 3)) for _ in range(k * k)])
        s = Sequence(k, tuple(rng.randrange(k) for _ in range(n + 1)))
        m = dp.margin(ws, s)
        if m is not None and m > 0:
            opt = dp.min_weight(ws, n, start=s.start)
            assert not opt.tie_flag and {c for c in opt.classes} == {exponent_of(s)}


def test_probability_competitor():
    c = MarkovChain(2, (1, 0), ((F(3, 4), F(1, 4)), (F(1, 2), F(1, 2))))
    s = Sequence.parse("000", 2)
    # best other class of length 2 from 0: 001 (3/16) or 010 (1/8) or 011 (1/8)
    assert dp.probability_competitor(c, s) == F(3, 16)
