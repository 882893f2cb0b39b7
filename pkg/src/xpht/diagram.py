"""Core value types for extended persistence.

The parameter axis has two phases: an ordinary phase swept upward and a
relative phase swept downward, with every ordinary parameter preceding every
relative one.  Intervals are half-open ``[birth, death)`` in that order and
diagrams keep one interval multiset per homology dimension and class type.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

ORD = "ord"
REL = "rel"

#: the four class types of an extended diagram, in canonical order
TYPES = ("ord", "rel", "ess_pos", "ess_neg")


@dataclass(frozen=True, slots=True)
class ExtParam:
    """A point (value, phase) of the two-phase parameter axis."""

    value: float
    phase: str

    def order_key(self) -> tuple[int, float]:
        # ordinary ascends, relative descends, ordinary < relative
        if self.phase == ORD:
            return (0, self.value)
        return (1, -self.value)

    def __lt__(self, other: "ExtParam") -> bool:
        return self.order_key() < other.order_key()

    def __le__(self, other: "ExtParam") -> bool:
        return self.order_key() <= other.order_key()


@dataclass(frozen=True, slots=True)
class Interval:
    """Half-open interval [birth, death) with positive length on the axis."""

    birth: ExtParam
    death: ExtParam

    def __post_init__(self) -> None:
        if not self.birth < self.death:
            raise ValueError(f"empty or reversed interval: {self.birth} .. {self.death}")

    @property
    def length(self) -> float:
        """Absolute gap between the endpoint values (not the axis measure)."""
        return abs(self.birth.value - self.death.value)

    def values(self) -> tuple[float, float]:
        return (self.birth.value, self.death.value)


def ord_interval(b: float, d: float) -> Interval:
    return Interval(ExtParam(b, ORD), ExtParam(d, ORD))


def rel_interval(b: float, d: float) -> Interval:
    """Relative interval; the birth value is the larger one."""
    return Interval(ExtParam(b, REL), ExtParam(d, REL))


def ess_interval(b: float, d: float) -> Interval:
    """Essential interval, positive when b < d and negative when b > d."""
    return Interval(ExtParam(b, ORD), ExtParam(d, REL))


def _type_of(iv: Interval) -> str:
    bp, dp = iv.birth.phase, iv.death.phase
    if bp == ORD and dp == ORD:
        return "ord"
    if bp == REL and dp == REL:
        return "rel"
    return "ess_pos" if iv.birth.value < iv.death.value else "ess_neg"


@dataclass
class ExtendedDiagram:
    """Interval multisets indexed by (homology dimension, class type).

    Dimensions 0 and 1 are kept; planar inputs never populate anything else.
    """

    parts: dict[tuple[int, str], list[Interval]] = field(default_factory=dict)

    def get(self, dim: int, kind: str) -> list[Interval]:
        return self.parts.get((dim, kind), [])

    def add(self, dim: int, iv: Interval) -> None:
        kind = _type_of(iv)
        self.parts.setdefault((dim, kind), []).append(iv)

    # the four buckets a planar shape can populate
    @property
    def ord_0(self) -> list[Interval]:
        return self.get(0, "ord")

    @property
    def rel_1(self) -> list[Interval]:
        return self.get(1, "rel")

    @property
    def ess_pos_0(self) -> list[Interval]:
        return self.get(0, "ess_pos")

    @property
    def ess_neg_1(self) -> list[Interval]:
        return self.get(1, "ess_neg")

    def sort(self) -> "ExtendedDiagram":
        """Canonical in-place ordering; returns self for chaining."""
        for ivs in self.parts.values():
            ivs.sort(key=Interval.values)
        self.parts = {k: v for k, v in sorted(self.parts.items()) if v}
        return self

    def total_intervals(self) -> int:
        return sum(len(v) for v in self.parts.values())

    def allclose(self, other: "ExtendedDiagram", tol: float = 1e-9) -> bool:
        """Multiset equality of every bucket with per-endpoint tolerance."""
        keys = {k for k, v in self.parts.items() if v} | {k for k, v in other.parts.items() if v}
        for key in keys:
            if not intervals_allclose(self.get(*key), other.get(*key), tol):
                return False
        return True

    def to_json_dict(self, direction: tuple[float, float]) -> dict:
        dims: dict[str, dict[str, list[list[float]]]] = {}
        for k in (0, 1):
            dims[str(k)] = {
                kind: [list(iv.values()) for iv in sorted(self.get(k, kind), key=Interval.values)]
                for kind in TYPES
            }
        return {"direction": [direction[0], direction[1]], "dims": dims}

    @staticmethod
    def from_json_dict(obj: dict) -> tuple["ExtendedDiagram", tuple[float, float]]:
        diag = ExtendedDiagram()
        for k_str, kinds in obj["dims"].items():
            k = int(k_str)
            for kind, pairs in kinds.items():
                for b, d in pairs:
                    if kind == "ord":
                        diag.parts.setdefault((k, kind), []).append(ord_interval(b, d))
                    elif kind == "rel":
                        diag.parts.setdefault((k, kind), []).append(rel_interval(b, d))
                    else:
                        diag.parts.setdefault((k, kind), []).append(ess_interval(b, d))
        vx, vy = obj["direction"]
        return diag.sort(), (float(vx), float(vy))


def intervals_allclose(a: list[Interval], b: list[Interval], tol: float = 1e-9) -> bool:
    """Compare two interval multisets after canonical sorting."""
    if len(a) != len(b):
        return False
    sa = sorted(a, key=Interval.values)
    sb = sorted(b, key=Interval.values)
    for x, y in zip(sa, sb):
        if x.birth.phase != y.birth.phase or x.death.phase != y.death.phase:
            return False
        if abs(x.birth.value - y.birth.value) > tol or abs(x.death.value - y.death.value) > tol:
            return False
    return True


@dataclass(frozen=True, slots=True)
class FinitePair:
    """One finite 0-dimensional class of a curve: born at a vertex, dies on a merge."""

    birth_index: int
    birth: float
    death: float


@dataclass(frozen=True, slots=True)
class CurvePersistence:
    """0-dimensional persistence of one closed curve under a height sweep."""

    finite_pairs: tuple[FinitePair, ...]
    min_index: int
    min_value: float
    max_value: float


def dumps_json(obj: dict) -> str:
    """Serialize with stable key order; floats use shortest round-trip repr."""
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False)


INF = math.inf
