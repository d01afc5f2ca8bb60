from fractions import Fraction as F

import numpy as np

import oracles
from vitpoly.classify import (CERTIFIED, NOT_RESOLVED, PSEUDO_EXPECTED, SearchBudget, classify,
                              classify_catalog, deterministic_chain, ending_rules, rationalize,
                              verify_witness)
from vitpoly.model import ExponentVector, MarkovChain, Sequence, exponent_of, realize
from vitpoly.propagate import VITERBI, enumerate_catalog


def s2(text):
    return Sequence.parse(text, 2)


def test_constant_run_certified_with_degenerate_chain():
    cat = enumerate_catalog(2, 6)
    entry = cat.find((6, 0, 0, 0))
    c = classify(entry, cat)
    assert c.status == CERTIFIED and c.witness.p[0] == (1, 0) and c.margin is None


def test_verify_witness_examples():
    u = MarkovChain.uniform(2)
    assert verify_witness(u, s2("0101"))[0] is False
    det = MarkovChain(2, (1, 0), ((1, 0), (1, 0)))
    assert verify_witness(det, s2("00000")) == (True, None)


def test_alternating_witness_checked_by_enumeration():
    cat = classify_catalog(enumerate_catalog(2, 6))
    e = cat.find((0, 3, 3, 0))
    assert e.status == VITERBI
    probs = oracles.brute_probabilities(e.chain.p, 6, 0, 2)
    own = probs[e.counts]
    assert all(v < own for c, v in probs.items() if c != e.counts)


def test_ending_rule_examples():
    assert ending_rules(ExponentVector(2, 0, (5, 1, 0, 0))) == "ends-001"
    assert ending_rules(exponent_of(Sequence.parse("0" + "21" * 4 + "10", 3))) is not None
    assert ending_rules(ExponentVector(2, 0, (0, 3, 3, 0))) is None


def test_two_state_split_matches_closed_forms():
    cat = classify_catalog(enumerate_catalog(2, 8))
    m = 4
    cert = {e.counts for e in cat.entries if e.status == VITERBI}
    assert cert == {(2 * m, 0, 0, 0), (0, m, m - 1, 1), (0, m, m, 0), (0, 1, 0, 2 * m - 1)}
    for e in cat.entries:
        if e.status != VITERBI:
            assert e.status == "pseudo_viterbi" and e.tag in ("ends-001", "ends-110")


def test_soundness_against_enumeration():
    for k, n in ((2, 7), (3, 5), (3, 6)):
        cat = classify_catalog(enumerate_catalog(k, n))
        for e in cat.entries:
            if e.status != VITERBI:
                continue
            assert e.tag is None
            probs = oracles.brute_probabilities(e.chain.p, n, 0, k)
            own = probs[e.counts]
            assert own > 0 and all(v < own for c, v in probs.items() if c != e.counts)
            rows = e.chain.p
            assert all(sum(r) == 1 for r in rows)


def test_unresolved_without_rule():
    # with no search budget, an entry no shortcut certifies and no rule tags stays unresolved
    cat = enumerate_catalog(3, 6)
    budget = SearchBudget(restarts=0, steps=0)
    statuses = {classify(e, cat, budget).status for e in cat.entries}
    assert NOT_RESOLVED in statuses and statuses <= {CERTIFIED, PSEUDO_EXPECTED, NOT_RESOLVED}


def test_deterministic_and_seeded():
    cat = enumerate_catalog(3, 7)
    a = classify_catalog(cat)
    b = classify_catalog(cat)
    assert a == b


def test_deterministic_chain_shortcut():
    assert deterministic_chain(Sequence.parse("0120120", 3)) is not None
    assert deterministic_chain(Sequence.parse("0010", 2)) is None


def test_rationalize_rows_are_exact_distributions():
    rows = rationalize(np.array([[0.3, 0.7], [1e-9, 1 - 1e-9]]), 1000)
    assert rows is not None and all(sum(r) == 1 and min(r) > 0 for r in rows)
    assert rows[0] == (F(3, 10), F(7, 10))


def test_realize_representatives_agree():
    cat = enumerate_catalog(3, 5)
    for e in cat.entries:
        assert realize(e.exponents).states <= e.representative.states
