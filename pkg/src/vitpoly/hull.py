"""Exact convex-hull machinery for small lattice point sets.

Vertex and edge tests are linear programs solved with the exact simplex in
:mod:`vitpoly.lp`.  Face counts come from double-description facet
enumeration in the affine hull followed by closing the facet sets under
intersection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence as Seq

from . import lp

DEFAULT_MAX_FACE_DIM = 4


class UnsupportedDimension(ValueError):
    """Face enumeration requested above the configured affine dimension."""


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pts = tuple(dict.fromkeys(tuple(int(x) for x in p) for p in self.points))
        if any(len(p) != self.dim for p in pts):
            raise ValueError("point of wrong dimension")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Seq[int]]) -> "PointSet":
        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("empty point set")
        return cls(len(pts[0]), tuple(pts))

    def __len__(self):
        return len(self.points)


@dataclass
class HullReport:
    vertex_flags: list[bool]
    witnesses: list[tuple[Fraction, ...] | None]
    edges: list[tuple[int, int]] | None = None
    f_vector: list[int] | None = None
    margins: list[Fraction | None] = field(default_factory=list)

    @property
    def vertex_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.vertex_flags) if f]


def separation(v: Seq[int], others: Seq[Seq[int]], free_dirs: Seq[Seq[int]] = (),
               rule: str = lp.DANTZIG) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Largest margin ``eps`` with a box-bounded ``w`` such that
    ``w.(q - v) >= eps`` for every ``q`` in ``others`` and ``w.d = 0`` for every
    free direction ``d``.

    Solved through its dual: the L1 distance from ``v`` to the convex hull of
    ``others`` plus the span of ``free_dirs``.  ``eps > 0`` iff ``v`` is strictly
    separated.
    """
    d = len(v)
    if not others:
        return Fraction(1), (Fraction(0),) * d
    cols: list[tuple[int, ...]] = []
    for q in others:
        cols.append(tuple(qi - vi for qi, vi in zip(q, v)) + (1,))
    for dv in free_dirs:
        cols.append(tuple(dv) + (0,))
        cols.append(tuple(-x for x in dv) + (0,))
    first_alpha = len(cols)
    for i in range(d):
        cols.append(tuple(-int(r == i) for r in range(d)) + (0,))
    for i in range(d):
        cols.append(tuple(int(r == i) for r in range(d)) + (0,))
    c = [0] * first_alpha + [1] * (2 * d)
    b = [0] * d + [1]
    diff0 = cols[0]
    basis = [first_alpha + i if diff0[i] > 0 else first_alpha + d + i for i in range(d)] + [0]
    res = lp.solve(c, cols, b, basis=basis, rule=rule)
    if res.status != "optimal":  # pragma: no cover - the problem is always bounded and feasible
        raise lp.LPError(f"separation LP ended with status {res.status}")
    w = tuple(-yi for yi in res.y[:d])
    return res.value, w


def _normalize(w: Seq[Fraction]) -> tuple[Fraction, ...]:
    top = max((abs(x) for x in w), default=0)
    if top == 0:
        return tuple(Fraction(x) for x in w)
    return tuple(Fraction(x) / top for x in w)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def strictly_separates(w: Seq[Fraction], v: Seq[int], others: Iterable[Seq[int]]) -> bool:
    """Exact check that ``w.v < w.q`` for every ``q`` in ``others``."""
    wi = _integral(w)
    wv = _dot(wi, v)
    return all(_dot(wi, q) > wv for q in others)


def _integral(w: Seq[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in w)) if w else 1
    return tuple(int(Fraction(x) * den) for x in w)


def vertices(ps: PointSet, rule: str = lp.DANTZIG) -> HullReport:
    """Flag the extreme points of ``ps`` and attach a strict witness to each."""
    pts = ps.points
    flags, wits, margins = [], [], []
    for i, v in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        eps, w = separation(v, others, rule=rule)
        if eps > 0:
            w = _normalize(w)
            if not strictly_separates(w, v, others):  # pragma: no cover - LP duality guarantees this
                raise lp.LPError(f"witness for point {i} failed exact verification")
            flags.append(True)
            wits.append(w)
            margins.append(eps)
        else:
            flags.append(False)
            wits.append(None)
            margins.append(None)
    return HullReport(flags, wits, margins=margins)


def edges(ps: PointSet, report: HullReport | None = None,
          rule: str = lp.DANTZIG) -> list[tuple[int, int]]:
    """Index pairs (into ``ps.points``) of vertices joined by an edge."""
    if report is None:
        report = vertices(ps, rule)
    vidx = report.vertex_indices
    pts = ps.points
    out = []
    for a_pos, a in enumerate(vidx):
        for b in vidx[a_pos + 1:]:
            others = [pts[j] for j in vidx if j != a and j != b]
            u, v = pts[a], pts[b]
            direction = tuple(x - y for x, y in zip(v, u))
            eps, _ = separation(u, others, [direction], rule=rule)
            if eps > 0:
                out.append((a, b))
    return out


def rref(rows: Seq[Seq]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, exact."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncol = len(a[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncol):
        piv = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a[:row], pivots


def affine_dimension(points: Seq[Seq[int]]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    _, piv = rref([[x - y for x, y in zip(p, p0)] for p in points[1:]])
    return len(piv)


def project_to_affine_hull(points: Seq[Seq[int]]) -> tuple[list[tuple[int, ...]], int]:
    """Coordinate projection that is injective on the affine hull of ``points``.

    Keeps the pivot coordinates of the difference matrix, so integer points
    stay integer and the combinatorial type is unchanged.
    """
    if len(points) <= 1:
        return [() for _ in points], 0
    p0 = points[0]
    _, piv = rref([[x - y for x, y in zip(p, p0)] for p in points[1:]])
    return [tuple(p[j] for j in piv) for p in points], len(piv)


def _primitive(vec: Seq[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def facets_dd(points: Seq[Seq[int]]) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Facets of the full-dimensional polytope ``conv(points)`` by double description.

    Returns ``(h, tight)`` pairs with ``h = (h0, h1, ..., hr)`` an integer
    inequality ``h0 + h.x >= 0`` and ``tight`` the indices of points on it.
    """
    r = len(points[0])
    rows = [(1,) + tuple(p) for p in points]
    dim = r + 1
    # initial simplex cone from dim linearly independent rows
    chosen: list[int] = []
    for i, row in enumerate(rows):
        trial = [rows[j] for j in chosen] + [row]
        if len(rref(trial)[1]) == len(trial):
            chosen.append(i)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise ValueError("points are not full-dimensional")
    inv = lp._inverse([[Fraction(x) for x in rows[i]] for i in chosen])
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []
    for col in range(dim):
        z = _primitive([inv[rr][col] for rr in range(dim)])
        rays.append((z, frozenset(i for i in chosen if _dot(rows[i], z) == 0)))
    for i, h in enumerate(rows):
        if i in chosen:
            continue
        vals = [_dot(h, z) for z, _ in rays]
        pos = [j for j, s in enumerate(vals) if s > 0]
        neg = [j for j, s in enumerate(vals) if s < 0]
        zero = [j for j, s in enumerate(vals) if s == 0]
        new = []
        for a in pos:
            za, sa = rays[a]
            for bb in neg:
                zb, sb = rays[bb]
                common = sa & sb
                if len(common) < dim - 2:
                    continue
                if any(t != a and t != bb and common <= rays[t][1] for t in range(len(rays))):
                    continue
                comb = tuple(vals[a] * y - vals[bb] * x for x, y in zip(za, zb))
                new.append((_primitive(comb), common | {i}))
        rays = ([rays[j] for j in pos] + [(rays[j][0], rays[j][1] | {i}) for j in zero] + new)
    out = []
    for z, _ in rays:
        tight = frozenset(j for j, row in enumerate(rows) if _dot(row, z) == 0)
        out.append((z, tight))
    out.sort(key=lambda e: sorted(e[1]))
    return out


def face_lattice(points: Seq[Seq[int]], facet_sets: Iterable[frozenset[int]]) -> dict[frozenset[int], int]:
    """All nonempty proper faces (as vertex-index sets) with their dimensions."""
    facets = list(dict.fromkeys(facet_sets))
    faces = set(facets)
    frontier = list(facets)
    while frontier:
        nxt = []
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        frontier = nxt
    return {f: affine_dimension([points[i] for i in sorted(f)]) for f in faces}


def f_vector_of_vertices(verts: Seq[Seq[int]], max_dim: int | None = DEFAULT_MAX_FACE_DIM) -> list[int]:
    """Face counts ``f_0 .. f_{d-1}`` of ``conv(verts)``; ``verts`` must be its vertices."""
    proj, d = project_to_affine_hull(list(verts))
    if max_dim is not None and d > max_dim:
        raise UnsupportedDimension(
            f"affine dimension {d} exceeds the face-enumeration limit {max_dim}; "
            "raise the limit explicitly (cost grows quickly with dimension)")
    if d == 0:
        return [1]
    if d == 1:
        return [2]
    facets = facets_dd(proj)
    lattice = face_lattice(proj, (t for _, t in facets))
    counts = [0] * d
    for dim in lattice.values():
        counts[dim] += 1
    return counts


def f_vector(ps: PointSet, max_dim: int | None = DEFAULT_MAX_FACE_DIM,
             report: HullReport | None = None) -> list[int]:
    if report is None:
        report = vertices(ps)
    verts = [ps.points[i] for i in report.vertex_indices]
    return f_vector_of_vertices(verts, max_dim)


def full_report(ps: PointSet, with_edges: bool = True, with_f_vector: bool = True,
                max_dim: int | None = DEFAULT_MAX_FACE_DIM) -> HullReport:
    rep = vertices(ps)
    if with_edges:
        rep.edges = edges(ps, rep)
    if with_f_vector:
        rep.f_vector = f_vector(ps, max_dim, rep)
    return rep
