"""Grid sampling of two-state Viterbi regions over (p00, p10).

Each subspace fixes the initial distribution (``pi0``: start in state 0,
``pi1``: start in state 1).  The optimal class of every grid cell is computed
exactly; a cell is a tie when two distinct classes share the optimum.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from . import dp
from .model import ExponentVector, MarkovChain, Sequence, exponent_of, probability

SUBSPACES = {"pi0": 0, "pi1": 1}


@dataclass(frozen=True)
class RegionCell:
    i: int
    j: int
    p00: Fraction
    p10: Fraction
    classes: tuple[ExponentVector, ...]
    path: Sequence
    tie: bool


@dataclass
class RegionSample:
    subspace: str
    step: Fraction
    n: int
    cells: list[RegionCell] = field(default_factory=list)

    @property
    def start(self) -> int:
        return SUBSPACES[self.subspace]

    def class_counts(self) -> dict[tuple[int, ...], int]:
        """Untied cells per observed class (keyed by counts)."""
        out: dict[tuple[int, ...], int] = {}
        for c in self.cells:
            if not c.tie:
                key = c.classes[0].counts
                out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def ties(self) -> list[RegionCell]:
        return [c for c in self.cells if c.tie]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "p00", "p10", "start", "counts", "path", "tie"])
        for c in self.cells:
            w.writerow([c.i, c.j, c.p00, c.p10, self.start,
                        " ".join(map(str, c.classes[0].counts)), str(c.path), int(c.tie)])
        return buf.getvalue()


def chain_at(subspace: str, p00: Fraction, p10: Fraction) -> MarkovChain:
    s = SUBSPACES[subspace]
    pi = (Fraction(int(s == 0)), Fraction(int(s == 1)))
    return MarkovChain(2, pi, ((p00, 1 - p00), (p10, 1 - p10)))


def sample_regions(n: int = 3, subspace: str = "pi0", step: Fraction = Fraction(1, 100)) -> RegionSample:
    """Exact Viterbi class at every interior grid point ``(i*step, j*step)``."""
    if subspace not in SUBSPACES:
        raise ValueError(f"subspace must be one of {sorted(SUBSPACES)}")
    step = Fraction(step)
    if not 0 < step <= Fraction(1, 10):
        raise ValueError("step must lie in (0, 1/10]")
    m = 1 / step
    if m.denominator != 1:
        raise ValueError("step must be 1/m for an integer m")
    m = int(m)
    sample = RegionSample(subspace, step, n)
    for i in range(1, m):
        for j in range(1, m):
            p00, p10 = i * step, j * step
            opt = dp.viterbi(chain_at(subspace, p00, p10), n, cap=1)
            path = opt.argmax_paths[0]
            classes = (exponent_of(path),) if not opt.tie_flag else opt.classes
            sample.cells.append(RegionCell(i, j, p00, p10, classes, path, opt.tie_flag))
    return sample


def outside_catalog(sample: RegionSample, catalog) -> list[RegionCell]:
    """Untied cells whose class is not a certified entry of ``catalog``."""
    allowed = {e.counts for e in catalog.entries if e.status == "viterbi"}
    return [c for c in sample.cells if not c.tie and c.classes[0].counts not in allowed]


@dataclass
class BoundaryReport:
    """Cells of the two classes on each side of ``Pr[a] = Pr[b]``."""

    a: Sequence
    b: Sequence
    a_cells: int = 0
    b_cells: int = 0
    misplaced: list[RegionCell] = field(default_factory=list)
    adjacent_pairs: int = 0

    @property
    def ok(self) -> bool:
        return self.a_cells > 0 and self.b_cells > 0 and not self.misplaced


def boundary_pair(subspace: str) -> tuple[Sequence, Sequence]:
    """``0000`` vs ``0111``, relabeled to start 1 for the ``pi1`` subspace.

    In log weights the boundary between them is ``w01 + 2 w11 = 3 w00``.
    """
    a, b = Sequence.parse("0000", 2), Sequence.parse("0111", 2)
    if SUBSPACES[subspace] == 1:
        a, b = (Sequence(2, tuple(1 - x for x in s.states)) for s in (a, b))
    return a, b


def boundary_check(sample: RegionSample) -> BoundaryReport:
    """Every cell won by ``a`` has Pr[a] > Pr[b] and vice versa; also counts
    grid-adjacent cells where the winner switches directly from ``a`` to ``b``."""
    a, b = boundary_pair(sample.subspace)
    ka, kb = exponent_of(a).counts, exponent_of(b).counts
    rep = BoundaryReport(a, b)
    won = {}
    for c in sample.cells:
        if c.tie:
            continue
        key = c.classes[0].counts
        if key not in (ka, kb):
            continue
        chain = chain_at(sample.subspace, c.p00, c.p10)
        pa, pb = probability(chain, a), probability(chain, b)
        if key == ka:
            rep.a_cells += 1
            if not pa > pb:
                rep.misplaced.append(c)
        else:
            rep.b_cells += 1
            if not pb > pa:
                rep.misplaced.append(c)
        won[(c.i, c.j)] = key
    for (i, j), key in won.items():
        for nb in ((i + 1, j), (i, j + 1)):
            other = won.get(nb)
            if other is not None and other != key:
                rep.adjacent_pairs += 1
    return rep
