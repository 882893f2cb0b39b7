"""Independent ground truth for validating the fast path.

The foreground region is triangulated cell by cell (the polygonal piece of
each 2x2 pixel cell on the foreground side of the boundary edges), extended
persistence is computed by reducing the boundary matrix of the ascending
filtration followed by coned descending simplices over the two-element
field, and small transport problems are solved by exhaustive enumeration.
Nothing here shares a code path with the fast modules beyond the value types.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import fsum, inf

import numpy as np

from .boundary import BoundaryCurve, trace_curves
from .diagram import (CurvePersistence, ExtendedDiagram, FinitePair, Interval,
                      ExtParam, ORD, REL, ess_interval, intervals_allclose,
                      ord_interval, rel_interval)
from .extended import HEIGHT_TOL, tie_break_key
from .image import BinaryImage
from .metric import eph_cost, interval_dist

# Patch-cell corner and side-midpoint ids in doubled local coordinates.
_A, _B, _C, _D = (0, 0), (0, 2), (2, 0), (2, 2)
_N, _W, _E, _S = (0, 1), (1, 0), (1, 2), (2, 1)

# Foreground-side polygon(s) of each cell, keyed like the boundary patch
# table.  The two diagonal codes keep the foreground joined through the cell.
_REGION_POLYGONS: dict[int, tuple[tuple[tuple[int, int], ...], ...]] = {
    0b0000: (),
    0b0001: ((_E, _D, _S),),
    0b0010: ((_W, _S, _C),),
    0b0011: ((_W, _E, _D, _C),),
    0b0100: ((_N, _B, _E),),
    0b0101: ((_N, _B, _D, _S),),
    0b0110: ((_N, _B, _E, _S, _C, _W),),
    0b0111: ((_N, _B, _D, _C, _W),),
    0b1000: ((_A, _N, _W),),
    0b1001: ((_A, _N, _E, _D, _S, _W),),
    0b1010: ((_A, _N, _S, _C),),
    0b1011: ((_A, _N, _E, _D, _C),),
    0b1100: ((_A, _B, _E, _W),),
    0b1101: ((_A, _B, _D, _S, _W),),
    0b1110: ((_A, _B, _E, _S, _C),),
    0b1111: ((_A, _B, _D, _C),),
}

# Background-side polygons: the complement within each cell.  For the two
# diagonal codes the background splits into separate corner triangles.
_COMPLEMENT_POLYGONS = {code: _REGION_POLYGONS[0b1111 ^ code] for code in range(16)}
_COMPLEMENT_POLYGONS[0b1001] = ((_N, _B, _E), (_W, _S, _C))
_COMPLEMENT_POLYGONS[0b0110] = ((_A, _N, _W), (_E, _D, _S))


@dataclass
class FilteredComplex:
    """Simplicial complex with vertex coordinates, closed under faces."""

    coords: np.ndarray  # (n, 2) float
    simplices: list[tuple[int, ...]]  # sorted vertex tuples, dims 0..2


def _assemble(polygon_sets) -> FilteredComplex:
    """Index doubled-coordinate polygons and fan-triangulate them."""
    index: dict[tuple[int, int], int] = {}
    triangles: set[tuple[int, ...]] = set()

    def vid(pt: tuple[int, int]) -> int:
        if pt not in index:
            index[pt] = len(index)
        return index[pt]

    for polygon in polygon_sets:
        ids = [vid(p) for p in polygon]
        for i in range(1, len(ids) - 1):
            triangles.add(tuple(sorted((ids[0], ids[i], ids[i + 1]))))

    edges = {tuple(sorted(pair)) for tri in triangles for pair in combinations(tri, 2)}
    coords = np.zeros((len(index), 2))
    for pt, i in index.items():
        coords[i] = (pt[0] / 2.0, pt[1] / 2.0)
    simplices = [(i,) for i in range(len(index))] + sorted(edges) + sorted(triangles)
    return FilteredComplex(coords, simplices)


def _cell_polygons(img: BinaryImage, table) -> list:
    px = img.pixels
    rows, cols = px.shape
    polys = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            code = px[r, c] << 3 | px[r, c + 1] << 2 | px[r + 1, c] << 1 | px[r + 1, c + 1]
            base = (2 * r + 2, 2 * c + 2)
            for poly in table[code]:
                polys.append([(base[0] + dr, base[1] + dc) for dr, dc in poly])
    return polys


def triangulate_region(img: BinaryImage) -> FilteredComplex:
    """Triangulate the closed foreground region of a padded image."""
    return _assemble(_cell_polygons(img, _REGION_POLYGONS))


def triangulate_complement(img: BinaryImage) -> FilteredComplex:
    """Triangulate the closure of the background within the image rectangle."""
    return _assemble(_cell_polygons(img, _COMPLEMENT_POLYGONS))


def curve_complex(curves: list[BoundaryCurve]) -> FilteredComplex:
    """1-complex of the curves themselves."""
    index: dict[tuple[float, float], int] = {}
    edges = set()
    pts = []
    for curve in curves:
        ids = []
        for vert in curve.vertices:
            key = (float(vert[0]), float(vert[1]))
            if key not in index:
                index[key] = len(index)
                pts.append(key)
            ids.append(index[key])
        m = len(ids)
        for i in range(m):
            edges.add(tuple(sorted((ids[i], ids[(i + 1) % m]))))
    simplices = [(i,) for i in range(len(index))] + sorted(edges)
    return FilteredComplex(np.array(pts), simplices)


def boundary_of(cx: FilteredComplex) -> set[tuple[int, int]]:
    """Edges incident to exactly one triangle."""
    count: dict[tuple[int, int], int] = {}
    for s in cx.simplices:
        if len(s) == 3:
            for pair in combinations(s, 2):
                count[pair] = count.get(pair, 0) + 1
    return {e for e, c in count.items() if c == 1}


def euler_characteristic(cx: FilteredComplex) -> int:
    dims = [len(s) - 1 for s in cx.simplices]
    return dims.count(0) - dims.count(1) + dims.count(2)


def _reduce_columns(columns: list[int]) -> dict[int, int]:
    """Standard boundary-matrix reduction over Z/2; returns row -> column pairs."""
    pivot_of_row: dict[int, int] = {}
    for j, col in enumerate(columns):
        while col:
            low = col.bit_length() - 1
            other = pivot_of_row.get(low)
            if other is None:
                pivot_of_row[low] = j
                columns[j] = col
                break
            col ^= columns[other]
        else:
            columns[j] = 0
    return pivot_of_row


def extended_persistence_reduction(cx: FilteredComplex, v,
                                   order_seed=None) -> ExtendedDiagram:
    """Extended persistence of the height sweep by cone-augmented reduction.

    The ascending part orders simplices by the lexicographic maximum of their
    vertex sweep keys; coned copies follow in descending order of the minimum
    key.  order_seed, when given, shuffles simplices within equal-key groups
    to exercise order independence.
    """
    n_vert = len(cx.coords)
    keys = [tie_break_key(cx.coords[i], v) for i in range(n_vert)]

    def maxkey(s):
        return max(keys[i] for i in s)

    def minkey(s):
        return min(keys[i] for i in s)

    asc = sorted(cx.simplices, key=lambda s: (maxkey(s), len(s), s))
    cone = sorted(cx.simplices, key=lambda s: (tuple(-c for c in minkey(s)), len(s), s))
    if order_seed is not None:
        rng = np.random.default_rng(order_seed)
        asc = _shuffle_within_groups(asc, lambda s: (maxkey(s), len(s)), rng)
        cone = _shuffle_within_groups(cone, lambda s: (tuple(-c for c in minkey(s)), len(s)), rng)

    pos_asc = {s: i + 1 for i, s in enumerate(asc)}  # position 0 is the apex
    off = 1 + len(asc)
    pos_cone = {s: off + i for i, s in enumerate(cone)}

    columns = [0]  # apex vertex has empty boundary
    for s in asc:
        col = 0
        if len(s) > 1:
            for face in combinations(s, len(s) - 1):
                col |= 1 << pos_asc[face]
        columns.append(col)
    for s in cone:
        col = 1 << pos_asc[s]
        if len(s) == 1:
            col |= 1  # the apex row
        else:
            for face in combinations(s, len(s) - 1):
                col |= 1 << pos_cone[face]
        columns.append(col)

    pairs = _reduce_columns(columns)

    diag = ExtendedDiagram()
    for row, col in pairs.items():
        if row == 0:
            continue  # the apex pairing is the global artifact
        if row <= len(asc) and col <= len(asc):
            sigma, tau = asc[row - 1], asc[col - 1]
            b, d = maxkey(sigma)[0], maxkey(tau)[0]
            if abs(b - d) > HEIGHT_TOL and len(sigma) - 1 <= 1:
                diag.add(len(sigma) - 1, ord_interval(b, d))
        elif row <= len(asc) < col:
            sigma, tau = asc[row - 1], cone[col - off]
            b, d = maxkey(sigma)[0], minkey(tau)[0]
            if abs(b - d) > HEIGHT_TOL and len(sigma) - 1 <= 1:
                diag.add(len(sigma) - 1, ess_interval(b, d))
        else:
            sigma, tau = cone[row - off], cone[col - off]
            b, d = minkey(sigma)[0], minkey(tau)[0]
            if abs(b - d) > HEIGHT_TOL and len(sigma) <= 1 + 1:
                diag.add(len(sigma), rel_interval(b, d))
    return diag.sort()


def _shuffle_within_groups(items, group_key, rng):
    out = []
    group = []
    current = None
    for item in items:
        key = group_key(item)
        if key != current and group:
            rng.shuffle(group)
            out.extend(group)
            group = []
        current = key
        group.append(item)
    rng.shuffle(group)
    out.extend(group)
    return out


def ph0_reduction(curve: BoundaryCurve, v) -> CurvePersistence:
    """0-dimensional persistence of one curve by plain matrix reduction."""
    m = len(curve)
    keys = [tie_break_key(curve.vertices[i], v) for i in range(m)]
    verts = sorted(range(m), key=keys.__getitem__)
    pos = {("v", i): r for r, i in enumerate(verts)}
    edges = sorted((tuple(sorted((i, (i + 1) % m))) for i in range(m)),
                   key=lambda e: (max(keys[e[0]], keys[e[1]]), e))
    columns = [0] * m
    for e in edges:
        columns.append(1 << pos[("v", e[0])] | 1 << pos[("v", e[1])])

    pairs = _reduce_columns(columns)
    finite = []
    paired_rows = set()
    for row, col in pairs.items():
        vertex = verts[row]
        edge = edges[col - m]
        paired_rows.add(row)
        b = keys[vertex][0]
        d = max(keys[edge[0]], keys[edge[1]])[0]
        if abs(b - d) > HEIGHT_TOL:
            finite.append(FinitePair(vertex, b, d))
    finite.sort(key=lambda fp: (fp.birth, fp.death, fp.birth_index))
    (unpaired,) = [verts[r] for r in range(m) if r not in paired_rows]
    return CurvePersistence(tuple(finite), unpaired, keys[unpaired][0],
                            keys[verts[-1]][0])


def brute_force_wasserstein(s1: list[Interval], s2: list[Interval], p: float) -> float:
    """Minimum cost over every transportation plan; sizes capped at 10."""
    n, m = len(s1), len(s2)
    if n + m > 10:
        raise ValueError(f"brute force capped at 10 intervals, got {n + m}")
    best = inf
    for k in range(min(n, m) + 1):
        for left in combinations(range(n), k):
            for right in permutations(range(m), k):
                matched = [interval_dist(s1[i], s2[j], p) for i, j in zip(left, right)]
                left_out = [eph_cost(s1[i], p) for i in range(n) if i not in left]
                right_out = [eph_cost(s2[j], p) for j in range(m) if j not in set(right)]
                parts = matched + left_out + right_out
                if p == inf:
                    cost = max(parts) if parts else 0.0
                else:
                    cost = fsum(x ** p for x in parts) ** (1.0 / p)
                best = min(best, cost)
    return best


def _merge(parts_list: list[ExtendedDiagram]) -> ExtendedDiagram:
    out = ExtendedDiagram()
    for d in parts_list:
        for (k, _), ivs in d.parts.items():
            for iv in ivs:
                out.add(k, iv)
    return out.sort()


def compute_xpht_reduction(img: BinaryImage, k: int, centered: bool = False,
                           source: str = ""):
    """Transform computed direction by direction with the reduction engine.

    Every one of the k directions is swept from scratch; no duality shortcut,
    which is the point of the A/B comparison.
    """
    from .boundary import traced_boundary
    from .transform import Xpht, center, directions

    if img.foreground_count() == 0:
        raise ValueError("image has no foreground pixels")
    dirs = directions(k, centered)
    cx = triangulate_region(img)
    translation = (0.0, 0.0)
    if centered:
        _, translation = center(traced_boundary(img))
        cx = FilteredComplex(cx.coords + np.asarray(translation), cx.simplices)
    diagrams = [extended_persistence_reduction(cx, v) for v in dirs]
    return Xpht(dirs, diagrams, translation=translation, centered=centered,
                source=source, filtration_passes=k)


def theorem_4_7_check(img: BinaryImage, v, tol: float = 1e-9) -> bool:
    """Direct-sum identity between the curves, the region and its complement.

    The complement is taken within the image rectangle, whose own extended
    persistence is the single dimension-0 interval spanning its extremes;
    that interval joins the curve side of the identity.
    """
    if img.foreground_count() == 0:
        raise ValueError("identity check needs a non-empty foreground")
    xx = extended_persistence_reduction(curve_complex(trace_curves(img)), v)
    xa = extended_persistence_reduction(triangulate_region(img), v)
    xb = extended_persistence_reduction(triangulate_complement(img), v)

    corners = [(1.0, 1.0), (1.0, img.cols), (img.rows, 1.0), (img.rows, img.cols)]
    heights = [tie_break_key(c, v)[0] for c in corners]
    box = ess_interval(min(heights), max(heights))

    left = ExtendedDiagram()
    for (k, _), ivs in xx.parts.items():
        for iv in ivs:
            left.add(k, iv)
    left.add(0, box)
    right = _merge([xa, xb])
    return left.sort().allclose(right, tol)
