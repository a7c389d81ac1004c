"""Extended naturals N ∪ {inf} used for costs, ranks and bounds."""
from __future__ import annotations

import math

INF = math.inf


def is_inf(x) -> bool:
    return x == INF


def vmax(values, default=0):
    """Max over a possibly empty iterable of extended naturals."""
    best = default
    for x in values:
        if x > best:
            best = x
    return best


def encode(x):
    """JSON-friendly form: integers stay integers, infinity becomes "inf"."""
    if x == INF:
        return "inf"
    return int(x)


def decode(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        return int(x)
    if isinstance(x, float) and math.isinf(x):
        return INF
    return int(x)


def fmt(x) -> str:
    return "inf" if x == INF else str(int(x))
