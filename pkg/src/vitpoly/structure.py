"""Prefix / periodic interior / suffix decomposition and the structural bounds.

A period is a simple cycle of at most ``k`` states, written as the closed
state word of its transitions (``"00"`` is the loop at 0, ``"010"`` the
two-cycle through 0 and 1, ``"0210"`` the cycle 0->2->1->0), rotated to its
lexicographically least form.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .model import ExponentVector, Sequence, _trail_exists, exponent_of, realize

# node cap for the prefix/suffix split search
_SPLIT_NODE_LIMIT = 20000


@dataclass(frozen=True)
class Decomposition:
    """``prefix`` ends where the interior begins, ``suffix`` starts where it ends.

    The interior walks the period cycle from ``entry`` for ``repetitions``
    full turns plus ``extra`` (< p) further transitions.
    """

    k: int
    start: int
    prefix: tuple[int, ...]
    period: tuple[int, ...] | None   # closed canonical cycle word, e.g. (0, 2, 1, 0)
    entry: int | None
    repetitions: int
    suffix: tuple[int, ...]
    extra: int = 0

    @property
    def p(self) -> int:
        return 0 if self.period is None else len(self.period) - 1

    @property
    def period_word(self) -> str:
        return "" if self.period is None else "".join(map(str, self.period))

    def interior(self) -> tuple[int, ...]:
        if self.period is None:
            return ()
        cyc = _rotate_to(self.period[:-1], self.entry)
        walk = cyc * self.repetitions + cyc[:self.extra]
        return walk + (cyc[self.extra % len(cyc)],)

    def reassemble(self) -> Sequence:
        if self.period is None:
            return Sequence(self.k, self.prefix)
        states = self.prefix + self.interior()[1:] + self.suffix[1:]
        return Sequence(self.k, states)

    @property
    def prefix_length(self) -> int:
        return len(self.prefix) - 1

    @property
    def suffix_length(self) -> int:
        return len(self.suffix) - 1 if self.suffix else 0


def _rotate_to(cycle: tuple[int, ...], state: int) -> tuple[int, ...]:
    i = cycle.index(state)
    return cycle[i:] + cycle[:i]


def simple_cycles(k: int) -> list[tuple[int, ...]]:
    """All simple cycles of the complete digraph with loops, canonical rotation."""
    out = []
    for p in range(1, k + 1):
        for combo in itertools.permutations(range(k), p):
            if combo[0] == min(combo):
                out.append(combo)
    out.sort(key=lambda c: (len(c), c))
    return out


def canonical_period(word: str | tuple[int, ...]) -> str:
    """Least rotation of a closed cycle word such as ``"1021"`` -> ``"0210"``."""
    w = tuple(int(c) for c in word) if isinstance(word, str) else tuple(word)
    cyc = w[:-1]
    best = min(cyc[i:] + cyc[:i] for i in range(len(cyc)))
    return "".join(map(str, best + best[:1]))


def _occurrence_ok(states, period_states: set[int], p: int) -> bool:
    for q, c in Counter(states).items():
        if c > (p - 1 if q in period_states else p):
            return False
    return True


def _fits(prefix, suffix, k, p, pstates) -> bool:
    return (len(prefix) - 1 <= k * p and len(suffix) - 1 <= k * p
            and len(prefix) + len(suffix) - 2 <= combined_bound(k, p)
            and _occurrence_ok(prefix[:-1], pstates, p)
            and _occurrence_ok(suffix[1:], pstates, p))


def _splits(rest: list[int], k: int, start: int, x: int, y: int, end: int):
    """Prefix/suffix pairs realizing ``rest`` as a trail start->x then y->end.

    One lex-smallest prefix per distinct leftover multiset.
    """
    out = []
    seen = set()
    budget = [_SPLIT_NODE_LIMIT]
    path = [start]

    def record():
        if not any(rest):
            if y == end:
                out.append((tuple(path), (y,)))
            return
        if _trail_exists(rest, k, y) and ExponentVector(k, y, tuple(rest)).end == end:
            suffix = realize(ExponentVector(k, y, tuple(rest))).states
            out.append((tuple(path), suffix))

    def dfs(u):
        key = (u, tuple(rest))
        if key in seen or budget[0] <= 0:
            return
        seen.add(key)
        budget[0] -= 1
        if u == x:
            record()
        for j in range(k):
            idx = u * k + j
            if rest[idx]:
                rest[idx] -= 1
                path.append(j)
                dfs(j)
                path.pop()
                rest[idx] += 1

    dfs(start)
    return out


def _own_runs(states: tuple[int, ...], walk: tuple[int, ...]):
    """Positions where ``walk`` occurs contiguously in ``states``."""
    m = len(walk)
    return [i for i in range(len(states) - m + 1) if states[i:i + m] == walk]


def decompose(seq: Sequence) -> Decomposition:
    """Rearrange ``seq`` (within its class) around a maximal periodic interior.

    The interior maximizes full repetitions times period length over all
    cycles of at most ``k`` states; ties go to the shorter period, then the
    smaller word.  Among the arrangements with that interior, preference goes
    to one meeting the prefix/suffix limits, then to the input's own
    arrangement, then to a longer partial period, a shorter prefix, and
    lexicographic order.
    """
    k = seq.k
    ev = exponent_of(seq)
    start, end = ev.start, ev.end
    best = None
    for cyc in simple_cycles(k):
        p = len(cyc)
        pstates = set(cyc)
        edges = [(cyc[i], cyc[(i + 1) % p]) for i in range(p)]
        rmax = min(ev.count(a, b) for a, b in edges)
        for r in range(rmax, 0, -1):
            if best is not None and r * p <= best[0]:
                break
            options = []
            for xi, x in enumerate(cyc):
                order = [edges[(xi + i) % p] for i in range(p)]
                rest0 = list(ev.counts)
                for a, b in edges:
                    rest0[a * k + b] -= r
                emax = 0
                while emax < p - 1 and rest0[order[emax][0] * k + order[emax][1]] > 0:
                    emax += 1
                for extra in range(emax, -1, -1):
                    rest = list(rest0)
                    for a, b in order[:extra]:
                        rest[a * k + b] -= 1
                    y = cyc[(xi + extra) % p]
                    rot = _rotate_to(cyc, x)
                    walk = rot * r + rot[:extra] + (y,)
                    cands = []
                    for i in _own_runs(seq.states, walk):
                        cands.append((seq.states[:i + 1], seq.states[i + len(walk) - 1:], True))
                    for pre, suf in _splits(rest, k, start, x, y, end):
                        cands.append((pre, suf, False))
                    for pre, suf, own in cands:
                        key = (not _fits(pre, suf, k, p, pstates), not own, -extra,
                               len(pre), pre, suf)
                        options.append((key, Decomposition(k, start, tuple(pre), cyc + cyc[:1],
                                                           x, r, tuple(suf), extra)))
            if options:
                best = (r * p, min(options, key=lambda o: o[0])[1])
                break
    if best is None:
        return Decomposition(k, start, seq.states, None, None, 0, ())
    return best[1]


@dataclass
class BoundsReport:
    k: int
    p: int
    skipped: bool
    checks: dict[str, tuple[int, int, bool]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c[2] for c in self.checks.values())


def check_bounds(d: Decomposition, k: int | None = None) -> BoundsReport:
    """Prefix/suffix length limits and per-state occurrence limits."""
    k = d.k if k is None else k
    p = d.p
    if d.repetitions == 0:
        return BoundsReport(k, 0, True)
    rep = BoundsReport(k, p, False)
    lp, ls = d.prefix_length, d.suffix_length
    rep.checks["prefix"] = (lp, k * p, lp <= k * p)
    rep.checks["suffix"] = (ls, k * p, ls <= k * p)
    combined = combined_bound(k, p)
    rep.checks["combined"] = (lp + ls, combined, lp + ls <= combined)
    pstates = set(d.period)
    for name, states in (("prefix", d.prefix[:-1]), ("suffix", d.suffix[1:])):
        for q, c in sorted(Counter(states).items()):
            limit = p - 1 if q in pstates else p
            rep.checks[f"{name}_occurrences_{q}"] = (c, limit, c <= limit)
    return rep


def combined_bound(k: int, p: int) -> int:
    return k * p + k - 2 * p


@dataclass
class SubwordReport:
    violations: list[tuple[int, int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def closed_subword_check(seq: Sequence) -> SubwordReport:
    """Same-length closed subwords at distinct states must share their transitions.

    Each violation is ``(t, x, i, y, j)``: the subwords of ``t`` transitions
    starting at positions ``i`` (state ``x``) and ``j`` (state ``y``).
    """
    s = seq.states
    n = len(s) - 1
    rep = SubwordReport()
    for t in range(1, n + 1):
        by_state = defaultdict(list)
        for i in range(n - t + 1):
            if s[i] == s[i + t]:
                ms = tuple(sorted(Counter(zip(s[i:i + t], s[i + 1:i + t + 1])).items()))
                by_state[s[i]].append((i, ms))
        for x, y in itertools.combinations(sorted(by_state), 2):
            for i, mx in by_state[x]:
                for j, my in by_state[y]:
                    if mx != my:
                        rep.violations.append((t, x, i, y, j))
    return rep


def theoretical_bound(k: int) -> int:
    """Upper bound on the number of Viterbi sequences of a long length."""
    if k < 1:
        raise ValueError("k must be positive")
    total = 0
    for p in range(1, k + 1):
        periods = math.factorial(k) // (math.factorial(k - p) * p)
        total += k ** (k * p + k - 2 * p + 1) * periods
    return total


# the simple cycles on three states, up to rotation
THREE_STATE_PERIODS = frozenset({"00", "11", "22", "010", "020", "121", "0120", "0210"})


@dataclass(frozen=True)
class EntryValidation:
    sequence: str
    period: str
    repetitions: int
    extra: int
    failed_bounds: tuple[str, ...]
    subword_violations: int
    period_allowed: bool

    @property
    def ok(self) -> bool:
        return not self.failed_bounds and not self.subword_violations and self.period_allowed


def validate_sequence(seq: Sequence) -> EntryValidation:
    d = decompose(seq)
    rep = check_bounds(d)
    failed = tuple(name for name, c in rep.checks.items() if not c[2])
    allowed = True
    if seq.k == 3 and d.repetitions > 0:
        allowed = canonical_period(d.period) in THREE_STATE_PERIODS
    return EntryValidation(str(seq), d.period_word if d.repetitions else "", d.repetitions,
                           d.extra, failed, len(closed_subword_check(seq).violations), allowed)


def validate_catalog(cat, statuses=("viterbi",)) -> list[EntryValidation]:
    """Structural checks on the catalog entries whose status is in ``statuses``."""
    return [validate_sequence(e.representative) for e in cat.entries if e.status in statuses]
