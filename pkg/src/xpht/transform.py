"""Whole-transform orchestration: direction grid, centering, duality halving."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryCurve, signed_area, traced_boundary
from .diagram import ExtendedDiagram
from .extended import dual_diagram, xph_from_boundary
from .image import BinaryImage

_SNAP_VALUES = (0.0, 1.0, -1.0, 0.5, -0.5, math.sqrt(0.5), -math.sqrt(0.5))


def _snap(x: float) -> float:
    for s in _SNAP_VALUES:
        if abs(x - s) < 1e-12:
            return s
    return x


def directions(k: int, centered: bool = False) -> list[tuple[float, float]]:
    """Equally spaced unit vectors (cos(2*pi*i/k), sin(2*pi*i/k)).

    The second half is the exact negation of the first so that antipodal
    heights negate bit-for-bit; common exact components are snapped.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"number of directions must be even and >= 2, got {k}")
    if centered and k % 4 != 0:
        raise ValueError("centering requires the direction count to be a multiple of 4")
    half = []
    for i in range(k // 2):
        angle = 2.0 * math.pi * i / k
        half.append((_snap(math.cos(angle)), _snap(math.sin(angle))))
    return half + [(-v1, -v2) for v1, v2 in half]


def center(curves: list[BoundaryCurve]) -> tuple[list[BoundaryCurve], tuple[float, float]]:
    """Translate the curves so the foreground's area centroid sits at the origin.

    The centroid comes from the shoelace formula over all curves; interior
    curves carry negative signed area and subtract themselves.
    """
    if not curves:
        raise ValueError("cannot center an empty curve set")
    area = 0.0
    sx = sy = 0.0
    for curve in curves:
        pts = curve.vertices
        nxt = np.roll(pts, -1, axis=0)
        cross = pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]
        area += 0.5 * float(cross.sum())
        sx += float(((pts[:, 0] + nxt[:, 0]) * cross).sum())
        sy += float(((pts[:, 1] + nxt[:, 1]) * cross).sum())
    if abs(area) < 1e-12:
        raise ValueError("zero-area region")
    centroid = (sx / (6.0 * area), sy / (6.0 * area))
    translation = (-centroid[0], -centroid[1])
    return [c.translated(translation) for c in curves], translation


@dataclass
class Xpht:
    """Per-direction extended diagrams of one shape."""

    directions: list[tuple[float, float]]
    diagrams: list[ExtendedDiagram]
    translation: tuple[float, float] = (0.0, 0.0)
    centered: bool = False
    source: str = ""
    filtration_passes: int = 0

    @property
    def k(self) -> int:
        return len(self.directions)

    def to_json_dict(self) -> dict:
        return {
            "K": self.k,
            "translation": [self.translation[0], self.translation[1]],
            "diagrams": [d.to_json_dict(v) for d, v in zip(self.diagrams, self.directions)],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "Xpht":
        diagrams, dirs = [], []
        for entry in obj["diagrams"]:
            d, v = ExtendedDiagram.from_json_dict(entry)
            diagrams.append(d)
            dirs.append(v)
        if len(diagrams) != obj["K"]:
            raise ValueError("diagram count does not match K")
        tx, ty = obj.get("translation", [0.0, 0.0])
        return Xpht(dirs, diagrams, translation=(float(tx), float(ty)))


def compute_xpht(img: BinaryImage, k: int, centered: bool = False,
                 source: str = "") -> Xpht:
    """Trace once, sweep the first k/2 directions, and fill the rest by duality."""
    if img.foreground_count() == 0:
        raise ValueError("image has no foreground pixels")
    dirs = directions(k, centered)
    curves = traced_boundary(img)
    translation = (0.0, 0.0)
    if centered:
        curves, translation = center(curves)

    diagrams: list[ExtendedDiagram | None] = [None] * k
    passes = 0
    for i in range(k // 2):
        diagrams[i] = xph_from_boundary(curves, dirs[i])
        passes += 1
        diagrams[i + k // 2] = dual_diagram(diagrams[i])
    assert passes == k // 2
    return Xpht(dirs, diagrams, translation=translation, centered=centered,
                source=source, filtration_passes=passes)


def total_area(curves: list[BoundaryCurve]) -> float:
    """Signed area enclosed by the curves (the foreground area)."""
    return sum(signed_area(c) for c in curves)
