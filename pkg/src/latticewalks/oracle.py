"""Ground-truth walk enumeration, independent of the closed-form series.

``enumerate_walks`` counts closed walks by dynamic programming over
exact displacement states: positions are integer tuples (step
coordinates scaled by the lattice's common denominator), transitions are
the step set, and per-label step usage is carried in the state so the
tally splits by multi-index.  Walk sequences are never materialised.

The finite ring additionally has an adjacency-matrix route: the trace of
the n-th matrix power counts all closed walks, and dividing by the site
count (exact, by vertex transitivity) gives the per-site tally.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional

from .lattices import LatticeSpec

MultiIndex = tuple[int, ...]

# default length caps by spatial dimension (resource guard, not a hard limit)
ORACLE_BOUNDS = {1: 12, 2: 10, 3: 8}


def oracle_bound(dimension: int) -> int:
    return ORACLE_BOUNDS[dimension]


@dataclass(frozen=True)
class WalkTally:
    """Closed-walk counts of one length, split by label usage.

    ``sublattice_doubled`` records that the counts of a two-sublattice
    lattice include the factor 2 for the two equivalent terminal sites
    per abstract lattice point.
    """

    lattice: str
    length: int
    counts: Mapping[MultiIndex, int]
    sublattice_doubled: bool = False

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, index: MultiIndex) -> int:
        return self.counts.get(tuple(index), 0)

    def to_json_dict(self) -> dict:
        return {
            "lattice": self.lattice,
            "length": self.length,
            "sublattice_doubled": self.sublattice_doubled,
            "total": str(self.total),
            "counts": [
                {"index": list(index), "count": str(value)}
                for index, value in sorted(self.counts.items())
            ],
        }


def enumerate_walks(spec: LatticeSpec, n: int, bound: Optional[int] = None) -> WalkTally:
    """Count length-``n`` closed walks from the origin, per multi-index.

    For two-sublattice lattices the walk starts on sublattice A and the
    tally is doubled, counting both equivalent terminal sublattices of
    one abstract lattice point.
    """
    limit = oracle_bound(spec.dimension) if bound is None else bound
    if n < 0:
        raise ValueError("walk length must be >= 0")
    if n > limit:
        raise ValueError(f"walk length {n} exceeds enumeration bound {limit}")

    scale = spec.coordinate_scale()
    ring = spec.pbc_size * scale if spec.pbc_size is not None else None
    moves = []
    for s in spec.steps:
        delta = tuple(int(c * scale) for c in s.displacement)
        moves.append((delta, s.label - 1, s.sublattice))

    labels = spec.hopping_count
    origin = (0,) * spec.dimension
    frontier: dict[tuple[tuple[int, ...], MultiIndex], int] = {(origin, (0,) * labels): 1}
    for t in range(n):
        wanted = None
        if spec.basis_size == 2:
            wanted = "AtoB" if t % 2 == 0 else "BtoA"
        nxt: dict[tuple[tuple[int, ...], MultiIndex], int] = defaultdict(int)
        for (pos, used), ways in frontier.items():
            for delta, lab, flag in moves:
                if wanted is not None and flag != wanted:
                    continue
                if ring is None:
                    new_pos = tuple(p + d for p, d in zip(pos, delta))
                else:
                    new_pos = tuple((p + d) % ring for p, d in zip(pos, delta))
                new_used = used[:lab] + (used[lab] + 1,) + used[lab + 1 :]
                nxt[(new_pos, new_used)] += ways
        frontier = nxt

    doubled = spec.basis_size == 2
    factor = 2 if doubled else 1
    counts: dict[MultiIndex, int] = {}
    for (pos, used), ways in frontier.items():
        if pos == origin:
            counts[used] = counts.get(used, 0) + factor * ways
    return WalkTally(spec.name, n, counts, sublattice_doubled=doubled)


def _matmul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    size = len(x)
    cols = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in x]


def _matpow(a: list[list[int]], n: int) -> list[list[int]]:
    size = len(a)
    result = [[int(i == j) for j in range(size)] for i in range(size)]
    base = a
    while n:
        if n & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        n >>= 1
    return result


def finite_chain_trace(pbc_size: int, n: int) -> int:
    """Per-site closed-walk count on the ring, via exact A**n trace."""
    if pbc_size < 3:
        raise ValueError(f"pbc_size must be >= 3, got {pbc_size}")
    if n < 0:
        raise ValueError("walk length must be >= 0")
    adjacency = [
        [1 if (i - j) % pbc_size in (1, pbc_size - 1) else 0 for j in range(pbc_size)]
        for i in range(pbc_size)
    ]
    power = _matpow(adjacency, n)
    trace = sum(power[i][i] for i in range(pbc_size))
    if trace % pbc_size:
        raise AssertionError("ring trace not divisible by site count")
    return trace // pbc_size
