"""Viterbi vs pseudo-Viterbi classification of min-weight vertices.

A vertex is certified Viterbi by exhibiting a stochastic matrix (with the
initial distribution a point mass on the start state) under which its class
is the unique most probable one; the check is exact.  Witnesses are found by
a seeded multi-start local search over row-simplex parameterizations.  When
the search fails, an entry is reported as pseudo-Viterbi only if one of the
known impossible endings applies to some rearrangement of it.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import dp
from .model import ExponentVector, MarkovChain, Sequence, _trail_exists, probability
from .propagate import PSEUDO, UNRESOLVED, VITERBI, CatalogEntry, VertexCatalog

CERTIFIED = "viterbi_certified"
PSEUDO_EXPECTED = "pseudo_viterbi_expected"
NOT_RESOLVED = "unresolved"

_CATALOG_STATUS = {CERTIFIED: VITERBI, PSEUDO_EXPECTED: PSEUDO, NOT_RESOLVED: UNRESOLVED}


@dataclass(frozen=True)
class SearchBudget:
    restarts: int = 64
    steps: int = 500
    proposals: int = 8
    max_denominator: int = 10**6
    seed: int = 0


@dataclass(frozen=True)
class Classification:
    status: str
    witness: MarkovChain | None = None
    margin: Fraction | None = None  # probability ratio over the best competitor
    tag: str | None = None
    restarts_used: int = 0
    steps_used: int = 0
    verifications: int = 0


def verify_witness(chain: MarkovChain, seq: Sequence) -> tuple[bool, Fraction | None]:
    """Does ``seq``'s class strictly beat every other class from its start?

    Returns ``(ok, ratio)`` where ``ratio`` is Pr[seq] over the best
    non-equivalent competitor, ``None`` if every competitor has probability 0.
    """
    own = probability(chain, seq)
    if own == 0:
        return False, None
    comp = dp.probability_competitor(chain, seq)
    if comp is None or comp == 0:
        return True, None
    return own > comp, own / comp


def _ending_patterns(k: int) -> list[tuple[int, ...]]:
    if k == 2:
        return [(a, a, b) for a, b in itertools.permutations(range(2), 2)]
    if k == 3:
        return [(a, a, b, a, c) for a, b, c in itertools.permutations(range(3), 3)]
    return []


def ending_rules(ev: ExponentVector) -> str | None:
    """Tag an exponent class if some rearrangement of it has an impossible ending.

    Two states: no Viterbi sequence ends ``aab``.  Three states: none ends
    ``aabac`` (every relabeling of the ``11210`` rule).
    """
    k = ev.k
    for pat in _ending_patterns(k):
        rest = list(ev.counts)
        ok = True
        for a, b in zip(pat, pat[1:]):
            rest[a * k + b] -= 1
            if rest[a * k + b] < 0:
                ok = False
        if not ok:
            continue
        if not any(rest):
            if ev.start == pat[0]:
                return "ends-" + "".join(map(str, pat))
            continue
        if not _trail_exists(rest, k, ev.start):
            continue
        if ExponentVector(k, ev.start, tuple(rest)).end == pat[0]:
            return "ends-" + "".join(map(str, pat))
    return None


def _entry_seed(ev: ExponentVector, n: int, base: int) -> int:
    key = f"{base}|{ev.k}|{n}|{ev.start}|{','.join(map(str, ev.counts))}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "little")


def deterministic_chain(seq: Sequence) -> MarkovChain | None:
    """Chain that follows ``seq`` with probability one, when every state used
    has a single successor in it."""
    k = seq.k
    succ: dict[int, int] = {}
    for a, b in seq.pairs():
        if succ.setdefault(a, b) != b:
            return None
    rows = []
    for a in range(k):
        if a in succ:
            rows.append(tuple(Fraction(int(b == succ[a])) for b in range(k)))
        else:
            rows.append((Fraction(1, k),) * k)
    return MarkovChain.from_start(seq.start, tuple(rows))


def rationalize(p: np.ndarray, maxden: int) -> tuple[tuple[Fraction, ...], ...] | None:
    """Snap each row to a distribution with denominator ``maxden``."""
    rows = []
    for row in p:
        ints = [max(1, int(round(x * maxden))) for x in row[:-1]]
        last = maxden - sum(ints)
        if last < 1:
            return None
        ints.append(last)
        rows.append(tuple(Fraction(x, maxden) for x in ints))
    return tuple(rows)


def _softmax_rows(theta: np.ndarray) -> np.ndarray:
    z = theta - theta.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _log_softmax_rows(theta: np.ndarray) -> np.ndarray:
    z = theta - theta.max(axis=-1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=-1, keepdims=True))


def search_witness(entry: CatalogEntry, competitors: list[tuple[int, ...]], n: int,
                   budget: SearchBudget = SearchBudget()):
    """Local search for a stochastic witness.

    Returns ``(chain, ratio, restarts, steps, verifications)``; ``chain`` is
    ``None`` when the budget ran out.
    """
    ev = entry.exponents
    k = ev.k
    seq = entry.representative
    verifications = 0

    det = deterministic_chain(seq)
    if det is not None:
        verifications += 1
        ok, ratio = verify_witness(det, seq)
        if ok:
            return det, ratio, 0, 0, verifications
    if not competitors:
        chain = MarkovChain.from_start(ev.start, MarkovChain.uniform(k).p)
        return chain, None, 0, 0, verifications

    v = np.array(ev.counts, dtype=float)
    diff = v[None, :] - np.array(competitors, dtype=float)  # rows: v - u
    rng = np.random.default_rng(_entry_seed(ev, n, budget.seed))
    w = np.array([float(x) for x in entry.witness]).reshape(k, k)
    scales = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0]

    def score(theta):  # theta: (B, k, k)
        logp = _log_softmax_rows(theta).reshape(theta.shape[0], k * k)
        return (logp @ diff.T).min(axis=1)

    steps_used = 0
    last_checked = -np.inf
    for r in range(budget.restarts):
        if r < len(scales):
            theta = -scales[r] * w
        elif r % 2:
            theta = -scales[r % len(scales)] * w + rng.normal(0, 1.0, (k, k))
        else:
            theta = rng.normal(0, 2.0, (k, k))
        cur = score(theta[None])[0]
        sigma = 1.0
        for _ in range(budget.steps):
            steps_used += 1
            props = theta[None] + sigma * rng.normal(size=(budget.proposals, k, k))
            vals = score(props)
            j = int(np.argmax(vals))
            if vals[j] > cur:
                theta, cur = props[j], vals[j]
                sigma = min(sigma * 1.5, 4.0)
            else:
                sigma *= 0.6
                if sigma < 1e-7:
                    break
            if cur > 0 and cur > 2 * last_checked:
                last_checked = cur
                rows = rationalize(_softmax_rows(theta), budget.max_denominator)
                if rows is None:
                    continue
                chain = MarkovChain.from_start(ev.start, rows)
                verifications += 1
                ok, ratio = verify_witness(chain, seq)
                if ok:
                    return chain, ratio, r + 1, steps_used, verifications
        last_checked = -np.inf
    return None, None, budget.restarts, steps_used, verifications


def classify(entry: CatalogEntry, catalog: VertexCatalog,
             budget: SearchBudget = SearchBudget()) -> Classification:
    """Certify ``entry`` as Viterbi, or explain why it is not."""
    competitors = [e.counts for e in catalog.entries if e.counts != entry.counts]
    chain, ratio, restarts, steps, nver = search_witness(entry, competitors, catalog.n, budget)
    tag = ending_rules(entry.exponents)
    if chain is not None:
        return Classification(CERTIFIED, chain, ratio, tag, restarts, steps, nver)
    status = PSEUDO_EXPECTED if tag is not None else NOT_RESOLVED
    return Classification(status, None, None, tag, restarts, steps, nver)


def classify_catalog(catalog: VertexCatalog, budget: SearchBudget = SearchBudget()) -> VertexCatalog:
    """Copy of ``catalog`` with every entry's status, witness chain and tag filled in."""
    entries = []
    for e in catalog.entries:
        c = classify(e, catalog, budget)
        entries.append(replace(e, status=_CATALOG_STATUS[c.status], chain=c.witness,
                               ratio=c.margin, tag=c.tag))
    return replace(catalog, entries=tuple(entries))
