"""Sequences, Markov chains, weight schemes and the transition-count embedding.

States are integers ``0..k-1``.  A sequence of length ``n`` has ``n``
transitions and ``n + 1`` states.  All arithmetic is exact
(:class:`fractions.Fraction`); probabilities are never turned into floats
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence as Seq


class RealizationError(ValueError):
    """Transition counts that no sequence with the given start produces."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'a/b' strings")
    return Fraction(x)


@dataclass(frozen=True)
class Sequence:
    """A state sequence on ``k`` states."""

    k: int
    states: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(int(s) for s in self.states))
        if self.k < 1:
            raise ValueError("k must be positive")
        if not self.states:
            raise ValueError("a sequence has at least one state")
        for s in self.states:
            if not 0 <= s < self.k:
                raise ValueError(f"state {s} out of range for k={self.k}")

    @classmethod
    def parse(cls, text: str, k: int) -> "Sequence":
        """Build from a digit string such as ``"0110"``."""
        return cls(k, tuple(int(c) for c in text if not c.isspace()))

    @property
    def start(self) -> int:
        return self.states[0]

    @property
    def end(self) -> int:
        return self.states[-1]

    @property
    def transitions(self) -> tuple[int, ...]:
        return self.states[1:]

    def length(self) -> int:
        return len(self.states) - 1

    def pairs(self) -> Iterable[tuple[int, int]]:
        return zip(self.states, self.states[1:])

    def __str__(self) -> str:
        if self.k <= 10:
            return "".join(str(s) for s in self.states)
        return ",".join(str(s) for s in self.states)


@dataclass(frozen=True)
class ExponentVector:
    """Start state plus the row-major ``k*k`` transition-count vector."""

    k: int
    start: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.k * self.k:
            raise ValueError(f"expected {self.k * self.k} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")
        if not 0 <= self.start < self.k:
            raise ValueError("start out of range")

    def count(self, a: int, b: int) -> int:
        return self.counts[a * self.k + b]

    def length(self) -> int:
        return sum(self.counts)

    def imbalance(self) -> list[int]:
        """Out-degree minus in-degree per state."""
        k = self.k
        d = [0] * k
        for a in range(k):
            for b in range(k):
                c = self.counts[a * k + b]
                d[a] += c
                d[b] -= c
        return d

    @property
    def end(self) -> int:
        """The end state implied by flow conservation (the start if balanced)."""
        ends = [s for s, x in enumerate(self.imbalance()) if x == -1]
        return ends[0] if len(ends) == 1 else self.start

    def is_realizable(self) -> bool:
        return _trail_exists(list(self.counts), self.k, self.start)

    def matrix(self) -> list[list[int]]:
        k = self.k
        return [list(self.counts[a * k:(a + 1) * k]) for a in range(k)]

    def bump(self, a: int, b: int) -> "ExponentVector":
        """Copy with one more ``a -> b`` transition and start ``a``."""
        c = list(self.counts)
        c[a * self.k + b] += 1
        return ExponentVector(self.k, a, tuple(c))


@dataclass(frozen=True)
class MarkovChain:
    """Initial distribution ``pi`` and stochastic matrix ``p``, exact rationals."""

    k: int
    pi: tuple[Fraction, ...]
    p: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pi = tuple(_frac(x) for x in self.pi)
        p = tuple(tuple(_frac(x) for x in row) for row in self.p)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "p", p)
        if len(pi) != self.k or len(p) != self.k or any(len(r) != self.k for r in p):
            raise ValueError("shape mismatch")
        for x in pi + tuple(x for r in p for x in r):
            if not 0 <= x <= 1:
                raise ValueError(f"probability {x} outside [0, 1]")
        if sum(pi) != 1:
            raise ValueError(f"initial distribution sums to {sum(pi)}")
        for i, row in enumerate(p):
            if sum(row) != 1:
                raise ValueError(f"row {i} sums to {sum(row)}")

    @classmethod
    def uniform(cls, k: int) -> "MarkovChain":
        f = Fraction(1, k)
        return cls(k, (f,) * k, ((f,) * k,) * k)

    @classmethod
    def from_start(cls, start: int, p) -> "MarkovChain":
        """Chain whose initial distribution is a point mass at ``start``."""
        k = len(p)
        return cls(k, tuple(Fraction(int(i == start)) for i in range(k)), p)


@dataclass(frozen=True)
class WeightScheme:
    """Transition weights ``w`` (``k x k``) and optional initial weights ``omega``.

    No stochasticity constraint applies: any finite rationals are allowed.
    """

    k: int
    w: tuple[tuple[Fraction, ...], ...]
    omega: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        w = tuple(tuple(_frac(x) for x in row) for row in self.w)
        object.__setattr__(self, "w", w)
        if len(w) != self.k or any(len(r) != self.k for r in w):
            raise ValueError("weight matrix shape mismatch")
        if self.omega is not None:
            om = tuple(_frac(x) for x in self.omega)
            if len(om) != self.k:
                raise ValueError("omega shape mismatch")
            object.__setattr__(self, "omega", om)

    @classmethod
    def from_flat(cls, flat: Seq, omega=None) -> "WeightScheme":
        k = round(len(flat) ** 0.5)
        if k * k != len(flat):
            raise ValueError("flat weight vector length is not a square")
        return cls(k, tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k)), omega)

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.w for x in row)


def exponent_of(seq: Sequence) -> ExponentVector:
    k = seq.k
    counts = [0] * (k * k)
    for a, b in seq.pairs():
        counts[a * k + b] += 1
    return ExponentVector(k, seq.start, tuple(counts))


def equivalent(s1: Sequence, s2: Sequence) -> bool:
    if s1.k != s2.k:
        raise ValueError("sequences on different state counts")
    return exponent_of(s1) == exponent_of(s2)


def probability(chain: MarkovChain, seq: Sequence) -> Fraction:
    if chain.k != seq.k:
        raise ValueError("state count mismatch")
    pr = chain.pi[seq.start]
    for a, b in seq.pairs():
        if not pr:
            break
        pr *= chain.p[a][b]
    return pr


def weight(ws: WeightScheme, seq: Sequence, include_initial: bool = False) -> Fraction:
    if ws.k != seq.k:
        raise ValueError("state count mismatch")
    total = Fraction(0)
    if include_initial:
        if ws.omega is None:
            raise ValueError("initial weights requested but omega is absent")
        total += ws.omega[seq.start]
    for a, b in seq.pairs():
        total += ws.w[a][b]
    return total


def _trail_exists(counts: list[int], k: int, v: int) -> bool:
    """Can every edge of the count multigraph be used by one trail leaving ``v``?"""
    d = [0] * k
    adj: list[set[int]] = [set() for _ in range(k)]
    nedges = 0
    for a in range(k):
        for b in range(k):
            c = counts[a * k + b]
            if c:
                nedges += c
                d[a] += c
                d[b] -= c
                adj[a].add(b)
                adj[b].add(a)
    if nedges == 0:
        return True
    if any(d) and (d[v] != 1 or sorted(d) != [-1] + [0] * (k - 2) + [1]):
        return False
    if not adj[v]:
        return False
    seen = {v}
    stack = [v]
    while stack:
        s = stack.pop()
        for t in adj[s]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return all(not adj[s] or s in seen for s in range(k))


def realize(ev: ExponentVector) -> Sequence:
    """The lexicographically smallest sequence with exponent vector ``ev``.

    Greedy Eulerian-trail extension: at each step take the smallest next state
    that leaves a completable remainder.
    """
    k = ev.k
    counts = list(ev.counts)
    if not _trail_exists(counts, k, ev.start):
        raise RealizationError(f"counts {ev.counts} are not realizable from state {ev.start}")
    states = [ev.start]
    v = ev.start
    for _ in range(sum(counts)):
        for j in range(k):
            idx = v * k + j
            if counts[idx] == 0:
                continue
            counts[idx] -= 1
            if _trail_exists(counts, k, j):
                break
            counts[idx] += 1
        else:  # pragma: no cover - excluded by the realizability check above
            raise RealizationError("greedy extension got stuck")
        states.append(j)
        v = j
    return Sequence(k, tuple(states))


def permute_states(seq: Sequence, perm: Seq[int]) -> Sequence:
    return Sequence(seq.k, tuple(perm[s] for s in seq.states))


def permute_counts(ev: ExponentVector, perm: Seq[int]) -> ExponentVector:
    """Relabel state ``a`` as ``perm[a]`` in an exponent vector."""
    k = ev.k
    c = [0] * (k * k)
    for a in range(k):
        for b in range(k):
            c[perm[a] * k + perm[b]] = ev.counts[a * k + b]
    return ExponentVector(k, perm[ev.start], tuple(c))


def swap_perm(k: int, i: int) -> list[int]:
    """The transposition exchanging states 0 and ``i``."""
    perm = list(range(k))
    perm[0], perm[i] = perm[i], perm[0]
    return perm
