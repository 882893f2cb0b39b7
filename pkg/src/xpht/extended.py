"""Extended persistence of the foreground from its boundary curves.

One height sweep per direction: 0-dimensional persistence of each curve via
union-find with the elder rule, a local plus/minus classification of every
finite birth vertex, and the per-curve extrema for the essential classes.
Equal heights are ordered by the height along the direction rotated +pi/2,
which realises the filtration of an infinitesimally rotated direction.
"""
from __future__ import annotations

import math

import numpy as np

from .boundary import EXTERIOR, BoundaryCurve
from .diagram import (CurvePersistence, ExtendedDiagram, ExtParam, FinitePair,
                      Interval, ORD, REL, ess_interval, ord_interval, rel_interval)

PLUS = "plus"
MINUS = "minus"

#: absolute tolerance for treating two heights as tied
HEIGHT_TOL = 1e-12

#: determinant magnitudes below this fall back to the rotated-edge test
DET_TOL = 1e-9


class CurveGeometryError(RuntimeError):
    """A vertex that cannot be classified; valid traced curves never raise."""


def _check_unit(v) -> tuple[float, float]:
    v1, v2 = float(v[0]), float(v[1])
    if abs(v1 * v1 + v2 * v2 - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, got {(v1, v2)}")
    return v1, v2


def height(vertex, v) -> float:
    """Inner product coord . v.

    Factored so that vertices with equal exact heights compare equal in
    floating point for axis-aligned and diagonal directions.
    """
    x1, x2 = float(vertex[0]), float(vertex[1])
    v1, v2 = float(v[0]), float(v[1])
    if v2 == 0.0:
        return x1 * v1
    if v1 == 0.0:
        return x2 * v2
    if v1 == v2:
        return (x1 + x2) * v1
    if v1 == -v2:
        return (x1 - x2) * v1
    return x1 * v1 + x2 * v2


def perp(v) -> tuple[float, float]:
    """v rotated by +pi/2 in the row/col frame."""
    return (-float(v[1]), float(v[0]))


def tie_break_key(vertex, v) -> tuple[float, float]:
    """Lexicographic sweep key (height along v, height along perp(v))."""
    return (height(vertex, v), height(vertex, perp(v)))


class _UnionFind:
    """Union-find over curve vertices tracking each component's birth vertex."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.birth = list(range(n))  # valid at roots only

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int, birth: int) -> int:
        """Merge roots a and b; the merged component keeps `birth`."""
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        self.birth[a] = birth
        return a


def curve_ph0(curve: BoundaryCurve, v) -> CurvePersistence:
    """0-dimensional persistence of one closed curve under the tie-broken sweep.

    Finite pairs record the younger component's birth vertex and plain height
    values; the essential record keeps the tie-broken global minimum vertex
    and the global maximum height.
    """
    _check_unit(v)
    m = len(curve)
    keys = [tie_break_key(curve.vertices[i], v) for i in range(m)]
    order = sorted(range(m), key=keys.__getitem__)
    arrival = [0] * m
    for t, i in enumerate(order):
        arrival[i] = t

    uf = _UnionFind(m)
    processed = [False] * m
    pairs: list[FinitePair] = []
    for i in order:
        nbrs = [j for j in ((i - 1) % m, (i + 1) % m) if processed[j]]
        processed[i] = True
        if not nbrs:
            continue  # fresh local minimum, birth tracked by uf.birth[i]
        if len(nbrs) == 1:
            root = uf.find(nbrs[0])
            uf.union(root, i, uf.birth[root])
            continue
        ra, rb = uf.find(nbrs[0]), uf.find(nbrs[1])
        if ra == rb:
            uf.union(ra, i, uf.birth[ra])  # the cycle closes at the global max
            continue
        elder, younger = (ra, rb) if arrival[uf.birth[ra]] < arrival[uf.birth[rb]] else (rb, ra)
        died = uf.birth[younger]
        death_value = keys[i][0]
        # births on tie-broken step shoulders merge within their own level
        # set; those pairs are ephemeral in the limit and are not stored
        if death_value - keys[died][0] > HEIGHT_TOL:
            pairs.append(FinitePair(died, keys[died][0], death_value))
        root = uf.union(elder, younger, uf.birth[elder])
        uf.union(root, i, uf.birth[root])

    min_index = uf.birth[uf.find(0)]
    return CurvePersistence(
        finite_pairs=tuple(pairs),
        min_index=min_index,
        min_value=keys[min_index][0],
        max_value=keys[order[-1]][0],
    )


def classify_critical(curve: BoundaryCurve, vertex_index: int, v) -> str:
    """Label a birth vertex plus- or minus-critical for the foreground.

    The determinant of the adjacent edge vectors decides generic vertices; a
    vertex opening a flat run (or a near-degenerate determinant) is decided
    by whether the forward edge rotated +pi/2 points along v.
    """
    v1, v2 = _check_unit(v)
    x = curve.vertex(vertex_index)
    fwd = curve.vertex(vertex_index + 1) - x
    back = curve.vertex(vertex_index - 1) - x
    det = fwd[0] * back[1] - back[0] * fwd[1]
    flat_forward = abs(height(curve.vertex(vertex_index + 1), v) - height(x, v)) <= HEIGHT_TOL
    if flat_forward or abs(det) < DET_TOL:
        w_dot_v = -fwd[1] * v1 + fwd[0] * v2
        if w_dot_v > 0:
            return PLUS
        if w_dot_v < 0:
            return MINUS
        raise CurveGeometryError(
            f"degenerate vertex {tuple(x)}: flat with rotated edge orthogonal to v")
    return PLUS if det > 0 else MINUS


def xph_from_boundary(curves: list[BoundaryCurve], v) -> ExtendedDiagram:
    """Extended persistence diagram of the foreground in direction v.

    Plus-critical finite pairs populate the ordinary dimension-0 classes,
    minus-critical ones the relative dimension-1 classes; curve extrema give
    the essential classes, positive for exterior curves and negative for
    interior ones.
    """
    diag = ExtendedDiagram()
    for curve in curves:
        if curve.kind is None:
            raise ValueError("curves must be classified before computing persistence")
        ph = curve_ph0(curve, v)
        for pair in ph.finite_pairs:
            if classify_critical(curve, pair.birth_index, v) == PLUS:
                diag.add(0, ord_interval(pair.birth, pair.death))
            else:
                diag.add(1, rel_interval(pair.death, pair.birth))
        if curve.kind == EXTERIOR:
            diag.add(0, ess_interval(ph.min_value, ph.max_value))
        else:
            diag.add(1, ess_interval(ph.max_value, ph.min_value))
    return diag.sort()


def _dual_param(p: ExtParam) -> ExtParam:
    return ExtParam(-p.value, REL if p.phase == ORD else ORD)


def dual_diagram(diag: ExtendedDiagram) -> ExtendedDiagram:
    """Diagram of the opposite direction; an involution.

    Each endpoint maps to the negated value in the opposite phase, ordinary
    classes of dimension k trade places with relative classes of dimension
    k+1, and essential classes stay in their dimension.
    """
    out = ExtendedDiagram()
    for (k, kind), intervals in diag.parts.items():
        if kind == "ord":
            new_k = k + 1
        elif kind == "rel":
            new_k = k - 1
        else:
            new_k = k
        for iv in intervals:
            a, b = _dual_param(iv.birth), _dual_param(iv.death)
            out.add(new_k, Interval(min(a, b), max(a, b)))
    return out.sort()


def diameter(curves: list[BoundaryCurve]) -> float:
    """Diagonal of the bounding box of all curve vertices."""
    pts = np.vstack([c.vertices for c in curves])
    span = pts.max(axis=0) - pts.min(axis=0)
    return float(math.hypot(span[0], span[1]))
