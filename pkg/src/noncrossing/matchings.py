"""Combinatorial ground truth for k-noncrossing matchings.

Two independent counters live here: brute-force enumeration of every perfect
matching on ``2n`` points with an exhaustive crossing-number search, and a
dynamic program over oscillating tableaux (walks through Young diagrams with
at most ``k-1`` rows that add or remove one box per step).
"""

from __future__ import annotations

import functools
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterator

BRUTE_FORCE_LIMIT = 8

Arc = tuple[int, int]


@dataclass(frozen=True)
class Matching:
    """A perfect matching on ``1..2n`` stored as arcs sorted by left end."""

    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        arcs = tuple(sorted((min(a), max(a)) for a in self.arcs))
        seen = [v for arc in arcs for v in arc]
        if sorted(seen) != list(range(1, 2 * len(arcs) + 1)):
            raise ValueError(f"not a perfect matching on 1..{2 * len(arcs)}: {self.arcs}")
        if any(l == r for l, r in arcs):
            raise ValueError("arc endpoints must differ")
        object.__setattr__(self, "arcs", arcs)

    @property
    def n(self) -> int:
        return len(self.arcs)

    def reflected(self) -> Matching:
        """Mirror image under ``i -> 2n+1-i``."""
        top = 2 * self.n + 1
        return Matching(tuple((top - r, top - l) for l, r in self.arcs))


def arcs_cross(a: Arc, b: Arc) -> bool:
    (l1, r1), (l2, r2) = sorted((a, b))
    return l1 < l2 < r1 < r2


def enumerate_matchings(n: int, limit: int = BRUTE_FORCE_LIMIT) -> Iterator[Matching]:
    """Yield every perfect matching on ``1..2n`` exactly once."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > limit:
        raise ValueError(
            f"enumerate_matchings: n={n} exceeds the brute-force limit {limit} "
            f"({2 * n - 1}!! matchings); use count_tableaux instead"
        )

    def rec(free: tuple[int, ...]) -> Iterator[tuple[Arc, ...]]:
        if not free:
            yield ()
            return
        first, rest = free[0], free[1:]
        for idx, partner in enumerate(rest):
            remaining = rest[:idx] + rest[idx + 1:]
            for tail in rec(remaining):
                yield ((first, partner),) + tail

    for arcs in rec(tuple(range(1, 2 * n + 1))):
        yield Matching(arcs)


def crossing_number(m: Matching) -> int:
    """Size of the largest set of pairwise crossing arcs (0 if empty)."""
    arcs = m.arcs
    if not arcs:
        return 0
    crosses = [
        [arcs_cross(a, b) for b in arcs]
        for a in arcs
    ]
    best = 1

    # exhaustive search over crossing subsets, grown in index order
    def grow(chosen: list[int], start: int) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (len(arcs) - start) <= best:
            return
        for idx in range(start, len(arcs)):
            if all(crosses[idx][c] for c in chosen):
                chosen.append(idx)
                grow(chosen, idx + 1)
                chosen.pop()

    grow([], 0)
    return best


@functools.lru_cache(maxsize=None)
def _crossing_histogram(n: int) -> Counter:
    return Counter(crossing_number(m) for m in enumerate_matchings(n))


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")


def count_bruteforce(k: int, n: int) -> int:
    """Number of matchings on ``2n`` points with crossing number <= k-1."""
    _check_k(k)
    hist = _crossing_histogram(n)
    return sum(c for cr, c in hist.items() if cr <= k - 1)


@dataclass(frozen=True)
class TableauState:
    """A Young diagram with at most ``row_bound`` rows."""

    rows: tuple[int, ...]
    row_bound: int

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if len(rows) > self.row_bound:
            raise ValueError(f"{rows} has more than {self.row_bound} rows")
        if any(r <= 0 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_dense(cls, dense: tuple[int, ...]) -> TableauState:
        return cls(tuple(r for r in dense if r), len(dense))

    def dense(self) -> tuple[int, ...]:
        """Fixed-length form padded with zeros; used as the DP key."""
        return self.rows + (0,) * (self.row_bound - len(self.rows))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def neighbors(self) -> list[TableauState]:
        return [TableauState.from_dense(d) for d in _neighbors(self.dense())]


def _neighbors(lam: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    last = len(lam) - 1
    for r, part in enumerate(lam):
        if r == 0 or lam[r - 1] > part:
            yield lam[:r] + (part + 1,) + lam[r + 1:]
        if part > 0 and (r == last or lam[r + 1] < part):
            yield lam[:r] + (part - 1,) + lam[r + 1:]


def tableau_counts(k: int, n_max: int) -> list[int]:
    """``f_k(0..n_max)`` from a single forward pass over oscillating tableaux.

    A closed walk of length ``2n`` splits at its midpoint into two walks of
    length ``n`` from the empty shape to a common shape, so
    ``f_k(n) = sum_lambda W_n(lambda)**2`` where ``W_n`` counts the walks of
    length ``n`` ending at ``lambda``. Only ``n_max`` layers are needed.
    """
    _check_k(k)
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    layer: dict[tuple[int, ...], int] = {(0,) * (k - 1): 1}
    counts = [1]
    for _ in range(n_max):
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for lam, ways in layer.items():
            for mu in _neighbors(lam):
                nxt[mu] += ways
        layer = nxt
        counts.append(sum(w * w for w in layer.values()))
    return counts


def count_tableaux(k: int, n: int) -> int:
    """f_k(n) via oscillating tableaux with at most k-1 rows."""
    return tableau_counts(k, n)[n]
