"""Oriented boundary curves of a padded binary image.

Boundary points sit halfway between 4-adjacent foreground/background pixel
pairs.  Every 2x2 pixel patch contributes directed edges between the points
on its sides, looked up from a literal 16-case table; following the out-edges
stitches the points into disjoint simple closed curves.  Edges are directed
so the tangent rotated by +pi/2 (in the row/col frame, first axis down the
page) points into the foreground.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .image import BinaryImage, ComponentLabels

EXTERIOR = "exterior"
INTERIOR = "interior"

# Patch-local point offsets in doubled coordinates, anchor = top-left pixel.
_N = (0, 1)  # between top-left and top-right pixels
_W = (1, 0)  # between top-left and bottom-left
_E = (1, 2)  # between top-right and bottom-right
_S = (2, 1)  # between bottom-left and bottom-right

# Directed edges per patch code (top-left*8 + top-right*4 + bottom-left*2 +
# bottom-right).  The two diagonal codes emit two parallel edges that keep
# diagonal foreground connected and diagonal background separated.
PATCH_EDGES: dict[int, tuple[tuple[tuple[int, int], tuple[int, int]], ...]] = {
    0b0000: (),
    0b0001: ((_E, _S),),
    0b0010: ((_S, _W),),
    0b0011: ((_E, _W),),
    0b0100: ((_N, _E),),
    0b0101: ((_N, _S),),
    0b0110: ((_N, _W), (_S, _E)),
    0b0111: ((_N, _W),),
    0b1000: ((_W, _N),),
    0b1001: ((_E, _N), (_W, _S)),
    0b1010: ((_S, _N),),
    0b1011: ((_E, _N),),
    0b1100: ((_W, _E),),
    0b1101: ((_W, _S),),
    0b1110: ((_S, _E),),
    0b1111: (),
}


@dataclass(frozen=True)
class BoundaryCurve:
    """Simple closed PL curve in cyclic traversal order.

    vertices has shape (m, 2); consecutive rows are joined by an edge, as are
    the last and the first.  kind is "exterior" or "interior" once classified.
    """

    vertices: np.ndarray
    kind: str | None = None
    component_id: int = -1

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> np.ndarray:
        return self.vertices[i % len(self.vertices)]

    def translated(self, offset) -> "BoundaryCurve":
        return replace(self, vertices=self.vertices + np.asarray(offset, dtype=float))


def trace_curves(img: BinaryImage) -> list[BoundaryCurve]:
    """Emit boundary points and stitch patch edges into closed curves.

    Curves are listed (and traversed) starting from their lexicographically
    smallest boundary point, smallest first.
    """
    px = img.pixels
    rows, cols = px.shape
    out_edge: dict[tuple[int, int], tuple[int, int]] = {}
    in_deg: dict[tuple[int, int], int] = {}
    for r in range(rows - 1):
        row0 = px[r]
        row1 = px[r + 1]
        for c in range(cols - 1):
            code = row0[c] << 3 | row0[c + 1] << 2 | row1[c] << 1 | row1[c + 1]
            if code == 0 or code == 15:
                continue
            base_r, base_c = 2 * r + 2, 2 * c + 2
            for (pr, pc), (qr, qc) in PATCH_EDGES[code]:
                p = (base_r + pr, base_c + pc)
                q = (base_r + qr, base_c + qc)
                assert p not in out_edge, f"boundary point {p} has out-degree > 1"
                out_edge[p] = q
                in_deg[q] = in_deg.get(q, 0) + 1
    assert set(in_deg) == set(out_edge) and all(d == 1 for d in in_deg.values()), \
        "patch table emitted a point with degree != 2"

    curves = []
    unused = set(out_edge)
    while unused:
        start = min(unused)
        loop = [start]
        unused.remove(start)
        cur = out_edge[start]
        while cur != start:
            loop.append(cur)
            unused.remove(cur)
            cur = out_edge[cur]
        curves.append(BoundaryCurve(np.array(loop, dtype=float) / 2.0))
    return curves


def signed_area(curve: BoundaryCurve) -> float:
    """Shoelace area; positive for exterior curves under our orientation."""
    v = curve.vertices
    w = np.roll(v, -1, axis=0)
    return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]))


def _adjacent_foreground_pixel(curve: BoundaryCurve, img: BinaryImage) -> tuple[int, int]:
    """1-based coordinates of the foreground pixel beside the smallest vertex."""
    order = np.lexsort((curve.vertices[:, 1], curve.vertices[:, 0]))
    vr, vc = curve.vertices[order[0]]
    if abs(vr - round(vr)) > 0.25:  # half-integer row: vertical pixel pair
        pair = ((vr - 0.5, vc), (vr + 0.5, vc))
    else:
        pair = ((vr, vc - 0.5), (vr, vc + 0.5))
    for r, c in pair:
        if img.value(int(round(r)), int(round(c))) == 1:
            return int(round(r)), int(round(c))
    raise AssertionError("boundary point without a foreground neighbour")


def _point_in_polygon(point: tuple[float, float], vertices: np.ndarray) -> bool:
    """Ray-casting parity along +col; exact for this half-integer geometry."""
    r0, c0 = point
    inside = False
    m = len(vertices)
    for i in range(m):
        ar, ac = vertices[i]
        br, bc = vertices[(i + 1) % m]
        if (ar > r0) != (br > r0):
            cross_c = ac + (r0 - ar) * (bc - ac) / (br - ar)
            if cross_c > c0:
                inside = not inside
    return inside


def classify_curves(curves: list[BoundaryCurve], img: BinaryImage,
                    labels: ComponentLabels) -> list[BoundaryCurve]:
    """Mark each curve exterior/interior and attach its component id.

    A curve is exterior exactly when its adjacent foreground lies on the
    bounded side of the loop.
    """
    classified = []
    for curve in curves:
        fr, fc = _adjacent_foreground_pixel(curve, img)
        comp = int(labels.foreground[fr - 1, fc - 1])
        kind = EXTERIOR if _point_in_polygon((float(fr), float(fc)), curve.vertices) else INTERIOR
        classified.append(replace(curve, kind=kind, component_id=comp))
    return classified


def traced_boundary(img: BinaryImage) -> list[BoundaryCurve]:
    """Trace and classify in one call."""
    from .image import label_components

    return classify_curves(trace_curves(img), img, label_components(img))
