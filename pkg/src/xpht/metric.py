"""Wasserstein and bottleneck distances between extended diagrams and XPHTs.

Within one class type every interval distance is finite, so each type is an
ordinary assignment problem between the two multisets plus per-interval
ephemeral (diagonal) costs.  The full distance combines the per-type optima;
cross-type matches can never improve on that.
"""
from __future__ import annotations

import math
from collections import deque
from math import fsum, inf

import numpy as np
from scipy.optimize import linear_sum_assignment

from .diagram import ExtendedDiagram, ExtParam, Interval
from .transform import Xpht


def ext_param_dist(a: ExtParam, b: ExtParam) -> float:
    """|s - t| within one phase, infinite across phases."""
    if a.phase != b.phase:
        return inf
    return abs(a.value - b.value)


def interval_dist(i: Interval, j: Interval, p: float) -> float:
    """lp combination of the endpoint distances; max for p = inf."""
    db = ext_param_dist(i.birth, j.birth)
    dd = ext_param_dist(i.death, j.death)
    if math.isinf(db) or math.isinf(dd):
        return inf
    if p == inf:
        return max(db, dd)
    return (db ** p + dd ** p) ** (1.0 / p)


def eph_cost(i: Interval, p: float) -> float:
    """Distance from an interval to the nearest ephemeral interval.

    The minimiser is the midpoint of the endpoint values, giving
    l * 2**((1-p)/p) for finite p and l/2 for the bottleneck.
    """
    length = i.length
    if p == inf:
        return length / 2.0
    return length * 2.0 ** ((1.0 - p) / p)


def _multiset_key(intervals: list[Interval]) -> tuple:
    return tuple(sorted(iv.values() for iv in intervals))


def wasserstein_type(s1: list[Interval], s2: list[Interval], p: float) -> float:
    """Optimal transport cost between two same-type interval multisets."""
    if _multiset_key(s2) < _multiset_key(s1):
        s1, s2 = s2, s1  # canonical order keeps the distance exactly symmetric
    n, m = len(s1), len(s2)
    if n == 0 and m == 0:
        return 0.0
    if p == inf:
        return _bottleneck_type(s1, s2)
    size = n + m
    cost = np.zeros((size, size))
    for a, iv in enumerate(s1):
        cost[a, m:] = eph_cost(iv, p) ** p
        for b, jv in enumerate(s2):
            cost[a, b] = interval_dist(iv, jv, p) ** p
    for b, jv in enumerate(s2):
        cost[n:, b] = eph_cost(jv, p) ** p
    rows, cols = linear_sum_assignment(cost)
    return fsum(cost[rows, cols]) ** (1.0 / p)


def _perfect_matching(adj: list[list[int]], n_left: int, n_right: int) -> bool:
    """Hopcroft-Karp; True when a perfect matching saturates both sides."""
    if n_left != n_right:
        return False
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left
    infinity = n_left + 1

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = infinity
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                v = match_r[w]
                if v == -1:
                    found = True
                elif dist[v] == infinity:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return found

    def dfs(u: int) -> bool:
        for w in adj[u]:
            v = match_r[w]
            if v == -1 or (dist[v] == dist[u] + 1 and dfs(v)):
                match_l[u] = w
                match_r[w] = u
                return True
        dist[u] = infinity
        return False

    matched = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                matched += 1
    return matched == n_left


def _bottleneck_type(s1: list[Interval], s2: list[Interval]) -> float:
    """Exact bottleneck via binary search over candidate costs."""
    n, m = len(s1), len(s2)
    size = n + m
    pair_cost = np.zeros((size, size))
    for a, iv in enumerate(s1):
        pair_cost[a, m:] = eph_cost(iv, inf)
        for b, jv in enumerate(s2):
            pair_cost[a, b] = interval_dist(iv, jv, inf)
    for b, jv in enumerate(s2):
        pair_cost[n:, b] = eph_cost(jv, inf)

    candidates = sorted(set(pair_cost.ravel().tolist()))

    def feasible(c: float) -> bool:
        adj = [np.nonzero(pair_cost[u] <= c)[0].tolist() for u in range(size)]
        return _perfect_matching(adj, size, size)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def wasserstein(d1: ExtendedDiagram, d2: ExtendedDiagram, p: float) -> float:
    """Distance between extended diagrams, split over dimensions and types."""
    keys = sorted({k for k, v in d1.parts.items() if v} | {k for k, v in d2.parts.items() if v})
    terms = [wasserstein_type(d1.get(*key), d2.get(*key), p) for key in keys]
    if not terms:
        return 0.0
    if p == inf:
        return max(terms)
    return fsum(t ** p for t in terms) ** (1.0 / p)


def xpht_distance(x1: Xpht, x2: Xpht, p: float) -> float:
    """Quadrature of the per-direction diagram distances over the circle."""
    if x1.k != x2.k:
        raise ValueError(f"direction counts differ: {x1.k} != {x2.k}")
    per_dir = [wasserstein(a, b, p) for a, b in zip(x1.diagrams, x2.diagrams)]
    if p == inf:
        return max(per_dir)
    weight = 2.0 * math.pi / x1.k
    return (weight * fsum(w ** p for w in per_dir)) ** (1.0 / p)


def parse_p(text: str) -> float:
    """CLI parser for the exponent: a real >= 1 or "inf"."""
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return inf
    value = float(text)
    if value < 1:
        raise ValueError(f"p must be >= 1 or inf, got {text}")
    return value
