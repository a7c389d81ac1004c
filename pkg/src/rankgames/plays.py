"""Ultimately periodic plays and finite play prefixes."""
from __future__ import annotations

from dataclasses import dataclass


def _primitive(cycle: tuple) -> tuple:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle[:p] * (n // p) == cycle:
            return cycle[:p]
    return cycle


@dataclass(frozen=True)
class UPPlay:
    """A play ``prefix · cycle^ω``.

    Stored in canonical form: the cycle is primitive and the prefix is as
    short as possible (a prefix ending with the cycle's last vertex is
    folded into the cycle), so two equal plays compare equal.  Vertices
    may be any hashable values, e.g. ``(v, m)`` pairs of a product.
    """

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        prefix = tuple(self.prefix)
        cycle = _primitive(tuple(self.cycle))
        if not cycle:
            raise ValueError("cycle must be nonempty")
        while prefix and prefix[-1] == cycle[-1]:
            cycle = (prefix[-1],) + cycle[:-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @property
    def first(self):
        return self.prefix[0] if self.prefix else self.cycle[0]

    def at(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def unroll(self, periods=1) -> list:
        return list(self.prefix) + list(self.cycle) * periods

    def vertices(self) -> set:
        return set(self.prefix) | set(self.cycle)

    def map(self, f) -> "UPPlay":
        return UPPlay(tuple(f(x) for x in self.prefix), tuple(f(x) for x in self.cycle))

    def is_valid(self, arena, initial=None) -> bool:
        """Edges are respected, including the wrap-around; starts at the initial vertex."""
        start = arena.initial if initial is None else initial
        if self.first != start:
            return False
        seq = self.unroll(1) + [self.cycle[0]]
        return all(arena.has_edge(u, v) for u, v in zip(seq, seq[1:]))

    def __len__(self):
        return len(self.prefix) + len(self.cycle)


def inf_set(play: UPPlay) -> frozenset:
    """Vertices visited infinitely often."""
    return frozenset(play.cycle)


def is_prefix_valid(arena, prefix, initial=None) -> bool:
    if not prefix:
        return False
    start = arena.initial if initial is None else initial
    return prefix[0] == start and all(arena.has_edge(u, v) for u, v in zip(prefix, prefix[1:]))
