"""Exact min-weight and Viterbi dynamic programming.

Both problems are the same recursion over a semiring: ``(min, +)`` on
weights, ``(max, *)`` on probabilities.  Ties are decided exactly, so the
full set of optimal paths can be enumerated, and a 2-best recursion over
exponent classes yields exact second-best margins.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .model import ExponentVector, MarkovChain, Sequence, WeightScheme, exponent_of

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class Optimum:
    value: Fraction
    argmax_paths: tuple[Sequence, ...]
    tie_flag: bool
    cap_hit: bool = False
    classes: tuple[ExponentVector, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class _Semiring:
    combine: Callable
    identity: Fraction
    maximize: bool

    def sort_key(self, value):
        return -value if self.maximize else value

    def best(self, values):
        return max(values) if self.maximize else min(values)


_MIN_PLUS = _Semiring(operator.add, Fraction(0), False)
_MAX_TIMES = _Semiring(operator.mul, Fraction(1), True)


def _suffix_tables(k, n, trans, sr):
    """g[t][j] = best value of the remaining ``n - t`` transitions from state j."""
    g = [[sr.identity] * k]
    for _ in range(n):
        nxt = g[-1]
        g.append([sr.best([sr.combine(trans[i][j], nxt[j]) for j in range(k)]) for i in range(k)])
    g.reverse()
    return g


def _enumerate_optimal(k, n, init, trans, sr, value, g, cap):
    """All optimal paths in lexicographic order, at most ``cap`` of them."""
    out: list[tuple[int, ...]] = []
    path: list[int] = []
    hit = False

    def dfs(t, state, cur):
        nonlocal hit
        if hit:
            return
        if t == n:
            if len(out) >= cap:
                hit = True
                return
            out.append(tuple(path))
            return
        for j in range(k):
            nv = sr.combine(cur, trans[state][j])
            if sr.combine(nv, g[t + 1][j]) == value:
                path.append(j)
                dfs(t + 1, j, nv)
                path.pop()
                if hit:
                    return

    for s in sorted(init):
        if sr.combine(init[s], g[0][s]) == value:
            path.append(s)
            dfs(0, s, init[s])
            path.pop()
            if hit:
                break
    return out, hit


def _class_tops(k, n, init, trans, sr, keep=2):
    """Top ``keep`` distinct exponent classes, best first, as (value, start, counts)."""
    tops: list[list[tuple]] = [[] for _ in range(k)]
    zero = (0,) * (k * k)
    for s, v in init.items():
        tops[s] = [(v, s, zero)]
    for _ in range(n):
        new: list[list[tuple]] = []
        for j in range(k):
            cand: dict[tuple, Fraction] = {}
            for i in range(k):
                wij = trans[i][j]
                idx = i * k + j
                for v, s, c in tops[i]:
                    c2 = c[:idx] + (c[idx] + 1,) + c[idx + 1:]
                    cand[(s, c2)] = sr.combine(v, wij)
            ranked = sorted(((v, s, c) for (s, c), v in cand.items()),
                            key=lambda e: (sr.sort_key(e[0]), e[1], e[2]))
            new.append(ranked[:keep])
        tops = new
    final = [e for t in tops for e in t]
    final.sort(key=lambda e: (sr.sort_key(e[0]), e[1], e[2]))
    return final


def _optimize(k, n, init, trans, sr, cap) -> Optimum:
    if n < 0:
        raise ValueError("length must be nonnegative")
    g = _suffix_tables(k, n, trans, sr)
    value = sr.best([sr.combine(v, g[0][s]) for s, v in init.items()])
    paths, hit = _enumerate_optimal(k, n, init, trans, sr, value, g, cap)
    tops = _class_tops(k, n, init, trans, sr)
    tie = len(tops) > 1 and tops[1][0] == value
    seqs = tuple(Sequence(k, p) for p in paths)
    classes = tuple(dict.fromkeys(exponent_of(s) for s in seqs))
    return Optimum(value, seqs, tie, hit, classes)


def min_weight(ws: WeightScheme, n: int, start: int | None = None,
               cap: int = DEFAULT_CAP) -> Optimum:
    """Minimum total weight over all length-``n`` paths.

    With ``start`` given, only paths from that state count and ``omega`` is
    ignored; otherwise every start is allowed and ``omega`` is added.
    """
    if start is None:
        if ws.omega is None:
            raise ValueError("optimizing over all starts needs initial weights")
        init = dict(enumerate(ws.omega))
    else:
        init = {start: Fraction(0)}
    return _optimize(ws.k, n, init, ws.w, _MIN_PLUS, cap)


def viterbi(chain: MarkovChain, n: int, cap: int = DEFAULT_CAP,
            start: int | None = None) -> Optimum:
    """Maximum-probability length-``n`` paths, initial probability included."""
    if start is None:
        init = {s: p for s, p in enumerate(chain.pi) if p}
    else:
        init = {start: chain.pi[start]}
    return _optimize(chain.k, n, init, chain.p, _MAX_TIMES, cap)


def second_best(ws: WeightScheme, s: Sequence) -> Fraction | None:
    """Least weight over length-n paths from ``s.start`` not equivalent to ``s``."""
    key = exponent_of(s).counts
    tops = _class_tops(ws.k, s.length(), {s.start: Fraction(0)}, ws.w, _MIN_PLUS)
    for v, _, c in tops:
        if c != key:
            return v
    return None


def margin(ws: WeightScheme, s: Sequence) -> Fraction | None:
    """Second-best weight minus ``weight(ws, s)``; positive iff ``s`` is the
    strict unique optimal class.  ``None`` when ``s`` has no competitor."""
    other = second_best(ws, s)
    if other is None:
        return None
    own = sum((ws.w[a][b] for a, b in s.pairs()), Fraction(0))
    return other - own


def probability_competitor(chain: MarkovChain, s: Sequence) -> Fraction | None:
    """Highest probability of a length-n path from ``s.start`` not equivalent to ``s``.

    The initial factor is ``chain.pi[s.start]``, shared by every competitor.
    """
    key = exponent_of(s).counts
    init = {s.start: chain.pi[s.start]}
    for v, _, c in _class_tops(chain.k, s.length(), init, chain.p, _MAX_TIMES):
        if c != key:
            return v
    return None


def brute_force_min_weight(ws: WeightScheme, n: int, start: int | None = None):
    """Exhaustive oracle: (optimal value, set of optimal exponent classes)."""
    k = ws.k
    starts = [start] if start is not None else range(k)
    best = None
    classes: set[ExponentVector] = set()
    for s in starts:
        base = Fraction(0) if start is not None else ws.omega[s]
        for tail in itertools.product(range(k), repeat=n):
            seq = Sequence(k, (s,) + tail)
            v = base + sum((ws.w[a][b] for a, b in seq.pairs()), Fraction(0))
            if best is None or v < best:
                best, classes = v, {exponent_of(seq)}
            elif v == best:
                classes.add(exponent_of(seq))
    return best, classes


def brute_force_viterbi(chain: MarkovChain, n: int):
    """Exhaustive oracle: (max probability, set of optimal exponent classes)."""
    k = chain.k
    best = None
    classes: set[ExponentVector] = set()
    for states in itertools.product(range(k), repeat=n + 1):
        seq = Sequence(k, states)
        pr = chain.pi[states[0]]
        for a, b in seq.pairs():
            pr *= chain.p[a][b]
        if best is None or pr > best:
            best, classes = pr, {exponent_of(seq)}
        elif pr == best:
            classes.add(exponent_of(seq))
    return best, classes


def brute_force_margin(ws: WeightScheme, s: Sequence) -> Fraction | None:
    key = exponent_of(s)
    own = sum((ws.w[a][b] for a, b in s.pairs()), Fraction(0))
    best = None
    for tail in itertools.product(range(ws.k), repeat=s.length()):
        seq = Sequence(ws.k, (s.start,) + tail)
        if exponent_of(seq) == key:
            continue
        v = sum((ws.w[a][b] for a, b in seq.pairs()), Fraction(0))
        if best is None or v < best:
            best = v
    return None if best is None else best - own
