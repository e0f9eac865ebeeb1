"""Ranked streams of labelled triples: exhaustive subsets of edge slots, or seeded samples.

The slot list of size ``S = 2*C(n,2) + n*n`` is: G1 pairs (lexicographic),
then G2 pairs, then yellow pairs ``(u, w)`` in row-major order. Exhaustive
mode walks subsets by increasing size, then lexicographically; a subset's
rank is its position in that order over *all* subsets of size
``<= max_edge_sum``, so degree caps skip ranks without renumbering the rest.
Sample ``i`` of a seeded run is drawn from its own generator, so shards of
the index range reproduce the same triples regardless of worker count.

Sampling procedure: pick caps (``degree_caps``, or uniformly from
``cap_menu``), pick a size ``k`` uniformly in ``[0, K]`` where ``K`` is
``max_edge_sum`` clipped to what the caps allow, then draw slots uniformly
with replacement, rejecting a draw that repeats a slot or breaks a cap,
until ``k`` slots are accepted or ``8*S`` consecutive draws are rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from ..core import Graph, Triple
from ..solver.exact import GuardError, guard_overridden

ENUMERATION_GUARD = 10**8

Caps = tuple[int | None, int | None, int | None]


@dataclass(frozen=True)
class EnumSpec:
    n: int
    max_edge_sum: int
    degree_caps: Caps | None = None
    mode: str = "exhaustive"  # or "sample"
    count: int = 0
    seed: int = 0
    cap_menu: tuple[Caps, ...] | None = None
    start: int = 0
    stop: int | None = None  # rank window [start, stop) of the full stream

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_edge_sum < 0:
            raise ValueError("max_edge_sum must be non-negative")
        if self.mode not in ("exhaustive", "sample"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "sample" and self.count < 1:
            raise ValueError("sample mode needs count >= 1")
        if self.cap_menu is not None and self.mode != "sample":
            raise ValueError("a cap menu only applies to sample mode")

    @classmethod
    def sample(cls, n: int, max_edge_sum: int, count: int, seed: int, **kw) -> EnumSpec:
        return cls(n, max_edge_sum, mode="sample", count=count, seed=seed, **kw)


@dataclass(frozen=True)
class SlotLayout:
    n: int

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return _pairs(self.n)

    @property
    def white(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def size(self) -> int:
        return 2 * self.white + self.n * self.n

    def slot(self, i: int) -> tuple[str, tuple[int, int]]:
        e = self.white
        if i < e:
            return "g1", self.pairs[i]
        if i < 2 * e:
            return "g2", self.pairs[i - e]
        j = i - 2 * e
        return "g3", divmod(j, self.n)

    def triple(self, combo: Sequence[int]) -> Triple:
        n = self.n
        e = self.white
        pairs = _pairs(n)
        a1 = [0] * n
        a2 = [0] * n
        y1 = [0] * n
        for i in combo:
            if i < e:
                u, v = pairs[i]
                a1[u] |= 1 << v
                a1[v] |= 1 << u
            elif i < 2 * e:
                u, v = pairs[i - e]
                a2[u] |= 1 << v
                a2[v] |= 1 << u
            else:
                u, w = divmod(i - 2 * e, n)
                y1[u] |= 1 << w
        return Triple(n, Graph(n, tuple(a1)), Graph(n, tuple(a2)), tuple(y1))

    def triple_from_mask(self, mask: int) -> Triple:
        combo = []
        i = 0
        while mask:
            if mask & 1:
                combo.append(i)
            mask >>= 1
            i += 1
        return self.triple(combo)


@lru_cache(maxsize=None)
def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def full_length(spec: EnumSpec) -> int:
    """Length of the unwindowed rank space."""
    if spec.mode == "sample":
        return spec.count
    s = SlotLayout(spec.n).size
    return sum(comb(s, k) for k in range(min(spec.max_edge_sum, s) + 1))


def exhaustive_count(n: int, max_edge_sum: int) -> int:
    s = SlotLayout(n).size
    return sum(comb(s, k) for k in range(min(max_edge_sum, s) + 1))


def window(spec: EnumSpec) -> tuple[int, int]:
    total = full_length(spec)
    stop = total if spec.stop is None else min(spec.stop, total)
    return min(spec.start, stop), stop


def _cap_capacity(n: int, caps: Caps) -> tuple[int, int, int]:
    e = n * (n - 1) // 2
    c1, c2, c3 = caps
    return (
        e if c1 is None else min(e, n * c1 // 2),
        e if c2 is None else min(e, n * c2 // 2),
        n * n if c3 is None else min(n * n, n * c3),
    )


def work_estimate(spec: EnumSpec) -> int:
    if spec.mode == "sample":
        return spec.count
    raw = full_length(spec)
    if spec.degree_caps is None:
        return raw
    layout = SlotLayout(spec.n)
    cap = _cap_capacity(spec.n, spec.degree_caps)
    sizes = (layout.white, layout.white, spec.n * spec.n)
    per_part = 1
    for size, c in zip(sizes, cap):
        per_part *= sum(comb(size, k) for k in range(min(c, spec.max_edge_sum) + 1))
    return min(raw, per_part)


def check_guard(spec: EnumSpec) -> None:
    if spec.mode == "exhaustive" and not guard_overridden():
        est = work_estimate(spec)
        if est > ENUMERATION_GUARD:
            raise GuardError(
                f"exhaustive run over ~{est:.3g} triples exceeds the guard of {ENUMERATION_GUARD:.0e}"
                " (set PACKTRIPLE_GUARD_OVERRIDE=1 to force)"
            )


def enumerate_triples(spec: EnumSpec) -> Iterator[Triple]:
    for _, t in enumerate_ranked(spec):
        yield t


def enumerate_ranked(spec: EnumSpec) -> Iterator[tuple[int, Triple]]:
    check_guard(spec)
    layout = SlotLayout(spec.n)
    if spec.mode == "sample":
        lo, hi = window(spec)
        for i in range(lo, hi):
            yield i, layout.triple(sample_slots(spec, i))
        return
    for rank, combo in _ranked_combos(spec):
        yield rank, layout.triple(combo)


class _CapTracker:
    """Incremental degree counters for cap pruning."""

    def __init__(self, n: int, caps: Caps):
        self.n = n
        self.layout = SlotLayout(n)
        big = 1 << 30
        self.caps = tuple(big if c is None else c for c in caps)
        self.d1 = [0] * n
        self.d2 = [0] * n
        self.ya = [0] * n
        self.yb = [0] * n
        e = self.layout.white
        self.kind = []
        for i in range(self.layout.size):
            if i < e:
                self.kind.append((self.d1, self.d1, *_pairs(n)[i], self.caps[0]))
            elif i < 2 * e:
                self.kind.append((self.d2, self.d2, *_pairs(n)[i - e], self.caps[1]))
            else:
                u, w = divmod(i - 2 * e, n)
                self.kind.append((self.ya, self.yb, u, w, self.caps[2]))

    def fits(self, i: int) -> bool:
        da, db, u, v, cap = self.kind[i]
        return da[u] < cap and db[v] < cap

    def push(self, i: int) -> None:
        da, db, u, v, _ = self.kind[i]
        da[u] += 1
        db[v] += 1

    def pop(self, i: int) -> None:
        da, db, u, v, _ = self.kind[i]
        da[u] -= 1
        db[v] -= 1


def _ranked_combos(spec: EnumSpec) -> Iterator[tuple[int, tuple[int, ...]]]:
    s = SlotLayout(spec.n).size
    lo, hi = window(spec)
    base = 0
    tracker = _CapTracker(spec.n, spec.degree_caps) if spec.degree_caps else None
    for k in range(min(spec.max_edge_sum, s) + 1):
        size_k = comb(s, k)
        if base + size_k > lo and base < hi:
            yield from _walk(s, k, base, lo, hi, tracker)
        base += size_k
        if base >= hi:
            return


def _walk(s: int, k: int, base: int, lo: int, hi: int, tracker: _CapTracker | None):
    """Lexicographic k-subsets of range(s) with ranks in [lo, hi), base = rank of the first."""
    combo: list[int] = []

    def rec(first: int, rank: int) -> Iterator[tuple[int, tuple[int, ...]]]:
        left = k - len(combo)
        if left == 0:
            if rank >= lo:
                yield rank, tuple(combo)
            return
        for j in range(first, s - left + 1):
            if rank >= hi:
                return
            size = comb(s - j - 1, left - 1)
            if rank + size <= lo or (tracker is not None and not tracker.fits(j)):
                rank += size
                continue
            combo.append(j)
            if tracker is not None:
                tracker.push(j)
            yield from rec(j + 1, rank)
            if tracker is not None:
                tracker.pop(j)
            combo.pop()
            rank += size

    yield from rec(0, base)


def sample_slots(spec: EnumSpec, index: int) -> list[int]:
    rng = random.Random(f"{spec.seed}/{spec.n}/{index}")
    n = spec.n
    layout = SlotLayout(n)
    s = layout.size
    caps: Caps = (None, None, None)
    if spec.cap_menu:
        caps = spec.cap_menu[rng.randrange(len(spec.cap_menu))]
    elif spec.degree_caps:
        caps = spec.degree_caps
    k = rng.randint(0, min(spec.max_edge_sum, sum(_cap_capacity(n, caps))))
    tracker = _CapTracker(n, caps)
    chosen: set[int] = set()
    misses = 0
    while len(chosen) < k and misses < 8 * s:
        j = rng.randrange(s)
        if j in chosen or not tracker.fits(j):
            misses += 1
            continue
        misses = 0
        chosen.add(j)
        tracker.push(j)
    return sorted(chosen)


def partition_work(spec: EnumSpec, workers: int) -> list[EnumSpec]:
    """Split the spec's rank window into ``workers`` contiguous, disjoint shards."""
    if workers < 1:
        raise ValueError("need at least one worker")
    if workers == 1:
        return [spec]
    lo, hi = window(spec)
    span = hi - lo
    bounds = [lo + span * i // workers for i in range(workers + 1)]
    return [replace(spec, start=a, stop=b) for a, b in zip(bounds, bounds[1:])]
