import pytest

import oracles
from vitpoly import hull
from vitpoly.model import (ExponentVector, Sequence, exponent_of, permute_counts, permute_states,
                           swap_perm)
from vitpoly.propagate import (BudgetExceeded, all_classes, base_catalog, combined_polytope,
                               enumerate_catalog, extend, iterate, permute, relabel)
from vitpoly.store import CatalogStore


def test_length_one_and_two():
    assert sorted(str(e.representative) for e in enumerate_catalog(2, 1).entries) == ["00", "01"]
    cat = enumerate_catalog(2, 2)
    assert {e.counts for e in cat.entries} == {(2, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1)}


def test_two_state_closed_forms_odd_m2():
    got = {e.counts for e in enumerate_catalog(2, 5).entries}
    assert got == {(5, 0, 0, 0), (4, 1, 0, 0), (1, 2, 2, 0), (0, 2, 2, 1), (0, 3, 2, 0),
                   (0, 1, 1, 3), (0, 1, 0, 4)}


def test_entries_sorted_and_realizing():
    for k, n in ((2, 9), (3, 6)):
        cat = enumerate_catalog(k, n)
        assert [e.counts for e in cat.entries] == sorted(e.counts for e in cat.entries)
        for e in cat.entries:
            assert exponent_of(e.representative) == e.exponents
            assert hull.strictly_separates(e.witness, e.counts,
                                           [q for q in cat.points() if q != e.counts])


def test_relabel_examples_and_involution():
    cat = enumerate_catalog(2, 6)
    one = relabel(cat, 1)
    assert one.start == 1
    assert (0, 3, 3, 0) in one.points() and (0, 0, 0, 6) in one.points()
    assert relabel(one, 1) == cat
    c3 = enumerate_catalog(3, 5)
    assert relabel(relabel(c3, 2), 2) == c3


def test_relabel_three_state_coordinates():
    s = Sequence.parse("021021021010", 3)
    ev = exponent_of(s)
    assert ev.counts == (0, 1, 3, 4, 0, 0, 0, 3, 0)
    moved = permute_counts(ev, swap_perm(3, 2))
    assert moved == exponent_of(permute_states(s, swap_perm(3, 2)))
    # x02->x20, x01->x21, x10->x12, x21->x01
    assert moved.start == 2 and moved.counts == (0, 3, 0, 0, 0, 4, 3, 1, 0)


def test_suffix_closure():
    prev = None
    for cat in iterate(3, 7):
        if prev is not None:
            per_start = {i: prev if i == 0 else relabel(prev, i) for i in range(3)}
            for e in cat.entries:
                tail = Sequence(3, e.representative.states[1:])
                assert per_start[tail.start].find(exponent_of(tail).counts) is not None
        prev = cat


def test_relabel_commutes_with_extend():
    cat = enumerate_catalog(3, 4)
    per_start = {i: cat if i == 0 else relabel(cat, i) for i in range(3)}
    direct = extend(per_start, 2)
    via = relabel(extend(per_start, 0), 2)
    assert direct.points() == via.points()


@pytest.mark.parametrize("k,n", [(2, 5), (3, 5), (1, 3)])
def test_matches_bruteforce_hull(k, n):
    want = set(oracles.hull_vertices(oracles.exponent_set(k, n, 0)))
    assert set(enumerate_catalog(k, n).points()) == want


def test_all_classes_matches_path_enumeration():
    assert {e.counts for e in all_classes(3, 5, 1)} == set(oracles.exponent_set(3, 5, 1))


def test_two_state_size_is_seven():
    for cat in iterate(2, 20):
        if cat.n >= 4:
            assert len(cat) == 7


def test_combined_polytope():
    ps, rep = combined_polytope(6)
    assert len(ps) == 14 and all(rep.vertex_flags)
    assert (0, 3, 3, 0, 0) in ps.points and (0, 3, 3, 0, 1) in ps.points
    with pytest.raises(ValueError):
        combined_polytope(4, k=3)


def test_budget_cap_reports_progress():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_catalog(3, 10, max_candidates=40)
    assert info.value.completed is not None and info.value.completed.n < 10


def test_cache_resume(tmp_path):
    store = CatalogStore(tmp_path)
    a = enumerate_catalog(3, 6, cache=store)
    assert store.lengths(3) == [1, 2, 3, 4, 5, 6]
    b = enumerate_catalog(3, 7, cache=store)
    assert b == enumerate_catalog(3, 7) and store.best_resume(3, 100).n == 7
    assert enumerate_catalog(3, 6, cache=store) == a


def test_start_argument():
    assert enumerate_catalog(2, 4, start=1) == relabel(enumerate_catalog(2, 4), 1)
    with pytest.raises(ValueError):
        enumerate_catalog(2, 4, start=2)


def test_base_catalog():
    b = base_catalog(3)
    assert b.n == 0 and len(b) == 1 and b.entries[0].exponents == ExponentVector(3, 0, (0,) * 9)
