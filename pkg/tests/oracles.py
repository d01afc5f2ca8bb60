"""Independent reference implementations used only by the tests.

None of these go through the package's own LP, hull or DP code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def all_paths(k, n, start):
    for tail in itertools.product(range(k), repeat=n):
        yield (start,) + tail


def counts_of(path, k):
    c = [0] * (k * k)
    for a, b in zip(path, path[1:]):
        c[a * k + b] += 1
    return tuple(c)


def exponent_set(k, n, start):
    return sorted({counts_of(p, k) for p in all_paths(k, n, start)})


def in_hull(v, others) -> bool:
    """Is ``v`` a convex combination of ``others``? (floating LP, small integer data)"""
    if not others:
        return False
    A = np.array(others, dtype=float).T
    A_eq = np.vstack([A, np.ones(len(others))])
    b_eq = np.append(np.array(v, dtype=float), 1.0)
    res = linprog(np.zeros(len(others)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def hull_vertices(points):
    pts = sorted(set(map(tuple, points)))
    return [p for i, p in enumerate(pts) if not in_hull(p, pts[:i] + pts[i + 1:])]


def _affine_rank(pts):
    if len(pts) <= 1:
        return 0
    a = np.array(pts, dtype=float)
    return int(np.linalg.matrix_rank(a[1:] - a[0]))


def faces_by_subsets(verts):
    """f-vector by testing every vertex subset for an exposing hyperplane."""
    verts = [tuple(v) for v in verts]
    d = _affine_rank(verts)
    dim = len(verts[0])
    counts = [0] * d
    for r in range(1, len(verts)):
        for sub in itertools.combinations(range(len(verts)), r):
            inside = [verts[i] for i in sub]
            outside = [verts[i] for i in range(len(verts)) if i not in sub]
            # variables (w, c): w.s - c = 0 on the subset, w.t - c >= 1 off it
            A_eq = [list(s) + [-1.0] for s in inside]
            A_ub = [[-x for x in t] + [1.0] for t in outside]
            res = linprog(np.zeros(dim + 1), A_ub=A_ub, b_ub=[-1.0] * len(outside),
                          A_eq=A_eq, b_eq=[0.0] * len(inside), bounds=(None, None),
                          method="highs")
            if res.status == 0:
                counts[_affine_rank(inside)] += 1
    return counts


def brute_min_weight(w, n, start, k):
    """(value, set of optimal exponent classes) by exhaustive enumeration."""
    best = None
    classes = set()
    for p in all_paths(k, n, start):
        val = sum((w[a][b] for a, b in zip(p, p[1:])), Fraction(0))
        if best is None or val < best:
            best, classes = val, {counts_of(p, k)}
        elif val == best:
            classes.add(counts_of(p, k))
    return best, classes


def brute_probabilities(p, n, start, k):
    """Probability of every exponent class (from a point-mass start)."""
    out = {}
    for path in all_paths(k, n, start):
        pr = Fraction(1)
        for a, b in zip(path, path[1:]):
            pr *= p[a][b]
        out[counts_of(path, k)] = pr
    return out
