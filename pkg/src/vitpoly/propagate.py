"""Length-by-length construction of min-weight vertex catalogs.

The catalog at length ``n`` for start 0 is obtained from the start-0 catalog
at ``n - 1``: relabel it to every start ``i``, prepend state 0 to each entry
(one more ``0 -> i`` transition), and keep the hull vertices of the
resulting candidate points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator

from . import hull
from .model import (ExponentVector, MarkovChain, Sequence, permute_counts, permute_states,
                    swap_perm)

log = logging.getLogger(__name__)

MINWEIGHT = "minweight"
VITERBI = "viterbi"
PSEUDO = "pseudo_viterbi"
UNRESOLVED = "unresolved"
STATUSES = (MINWEIGHT, VITERBI, PSEUDO, UNRESOLVED)

DEFAULT_MAX_CANDIDATES = 5000


class BudgetExceeded(RuntimeError):
    """Raised when a candidate set outgrows the configured cap."""

    def __init__(self, msg: str, completed: "VertexCatalog | None"):
        super().__init__(msg)
        self.completed = completed


@dataclass(frozen=True)
class CatalogEntry:
    exponents: ExponentVector
    representative: Sequence
    witness: tuple[Fraction, ...]
    status: str = MINWEIGHT
    chain: MarkovChain | None = None
    ratio: Fraction | None = None  # certified probability ratio; None = unbounded or absent
    tag: str | None = None

    @property
    def counts(self) -> tuple[int, ...]:
        return self.exponents.counts


@dataclass(frozen=True)
class VertexCatalog:
    k: int
    n: int
    start: int
    entries: tuple[CatalogEntry, ...] = field(default=())

    def __len__(self):
        return len(self.entries)

    def points(self) -> list[tuple[int, ...]]:
        return [e.counts for e in self.entries]

    def find(self, counts) -> CatalogEntry | None:
        counts = tuple(counts)
        for e in self.entries:
            if e.counts == counts:
                return e
        return None

    def status_counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for e in self.entries:
            out[e.status] += 1
        return out


def _permute_witness(w, perm, k):
    out = [Fraction(0)] * (k * k)
    for a in range(k):
        for b in range(k):
            out[perm[a] * k + perm[b]] = w[a * k + b]
    return tuple(out)


def permute(cat: VertexCatalog, perm) -> VertexCatalog:
    """Apply a state relabeling to every entry of a catalog."""
    k = cat.k
    entries = []
    for e in cat.entries:
        chain = None
        if e.chain is not None:
            inv = [0] * k
            for a, pa in enumerate(perm):
                inv[pa] = a
            chain = MarkovChain(k, tuple(e.chain.pi[inv[a]] for a in range(k)),
                                tuple(tuple(e.chain.p[inv[a]][inv[b]] for b in range(k))
                                      for a in range(k)))
        entries.append(replace(e, exponents=permute_counts(e.exponents, perm),
                               representative=permute_states(e.representative, perm),
                               witness=_permute_witness(e.witness, perm, k), chain=chain))
    entries.sort(key=lambda e: e.counts)
    return VertexCatalog(k, cat.n, perm[cat.start], tuple(entries))


def relabel(cat: VertexCatalog, i: int) -> VertexCatalog:
    """Swap states 0 and ``i``; maps the start-0 catalog to the start-``i`` one."""
    return permute(cat, swap_perm(cat.k, i))


def base_catalog(k: int, start: int = 0) -> VertexCatalog:
    ev = ExponentVector(k, start, (0,) * (k * k))
    entry = CatalogEntry(ev, Sequence(k, (start,)), (Fraction(0),) * (k * k))
    return VertexCatalog(k, 0, start, (entry,))


def extend(catalogs: dict[int, VertexCatalog], start: int,
           max_candidates: int = DEFAULT_MAX_CANDIDATES) -> VertexCatalog:
    """Catalog at length n for ``start`` from the per-start catalogs at n - 1."""
    some = next(iter(catalogs.values()))
    k, n = some.k, some.n + 1
    if sorted(catalogs) != list(range(k)):
        raise ValueError("extend needs one catalog per start state")
    cands: dict[tuple[int, ...], Sequence] = {}
    for i in range(k):
        for e in catalogs[i].entries:
            pt = e.exponents.bump(start, i)
            rep = Sequence(k, (start,) + e.representative.states)
            old = cands.get(pt.counts)
            if old is None or rep.states < old.states:
                cands[pt.counts] = rep
    if len(cands) > max_candidates:
        raise BudgetExceeded(f"{len(cands)} candidates at n={n} exceed cap {max_candidates}", None)
    keys = sorted(cands)
    rep = hull.vertices(hull.PointSet(k * k, tuple(keys)))
    entries = []
    for idx in rep.vertex_indices:
        counts = keys[idx]
        entries.append(CatalogEntry(ExponentVector(k, start, counts), cands[counts],
                                    rep.witnesses[idx]))
    log.debug("k=%d n=%d start=%d: %d candidates, %d vertices", k, n, start, len(keys), len(entries))
    return VertexCatalog(k, n, start, tuple(entries))


def iterate(k: int, n_max: int, start_catalog: VertexCatalog | None = None,
            max_candidates: int = DEFAULT_MAX_CANDIDATES) -> Iterator[VertexCatalog]:
    """Yield the start-0 catalogs for successive lengths up to ``n_max``."""
    cat = start_catalog if start_catalog is not None else base_catalog(k)
    if cat.start != 0:
        raise ValueError("propagation runs on start-0 catalogs")
    while cat.n < n_max:
        per_start = {i: (cat if i == 0 else relabel(cat, i)) for i in range(k)}
        try:
            cat = extend(per_start, 0, max_candidates)
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), per_start[0]) from None
        yield cat


def enumerate_catalog(k: int, n: int, start: int = 0, cache=None,
                      max_candidates: int = DEFAULT_MAX_CANDIDATES) -> VertexCatalog:
    """Min-weight vertex catalog for ``k`` states, length ``n``, given start.

    ``cache`` is an optional :class:`vitpoly.store.CatalogStore`; the longest
    stored start-0 catalog not exceeding ``n`` is used to resume.
    """
    if not 0 <= start < k:
        raise ValueError("start out of range")
    if k >= 4:
        log.warning("k=%d is experimental: no reference counts exist to validate against", k)
    cat = None
    if cache is not None:
        cat = cache.best_resume(k, n)
    if cat is None:
        cat = base_catalog(k)
    for cat in iterate(k, n, cat, max_candidates):
        if cache is not None:
            cache.save(cat)
    return cat if start == 0 else relabel(cat, start)


def combined_polytope(n: int, k: int = 2):
    """Both start polytopes embedded with an extra start coordinate, and their hull."""
    if k != 2:
        raise ValueError("the combined polytope is defined for two states")
    cat0 = enumerate_catalog(2, n, 0)
    cat1 = relabel(cat0, 1)
    pts = [e.counts + (0,) for e in cat0.entries] + [e.counts + (1,) for e in cat1.entries]
    ps = hull.PointSet(5, tuple(pts))
    return ps, hull.full_report(ps)


def all_classes(k: int, n: int, start: int = 0) -> set[ExponentVector]:
    """Every exponent vector of a length-``n`` path from ``start`` (no pruning)."""
    layer = {(start, (0,) * (k * k))}
    for _ in range(n):
        nxt = set()
        for state, c in layer:
            for j in range(k):
                idx = state * k + j
                nxt.add((j, c[:idx] + (c[idx] + 1,) + c[idx + 1:]))
        layer = nxt
    return {ExponentVector(k, start, c) for _, c in layer}
