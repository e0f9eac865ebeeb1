"""Vectorised evaluation of whole rank ranges of triples for n <= 5.

A triple is a uint64 mask over the slot layout of ``enumerate``. Packability
is decided by bitsets over the lexicographic permutation list: ``white_ok``
indexed by the two white graphs, ``yellow_ok`` indexed by one yellow row; a
triple packs iff the AND of its white word and its n row words is non-zero.
Hypotheses come from per-graph lookup tables (max degree, edge count,
perfect matching, blocking partner kind, isomorphism class).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from ..conditions import kk_partner_kind, lemma7_bound
from ..core import Graph, is_perfect_matching
from ..generators import be_bad_pair
from .enumerate import Caps, SlotLayout

KERNEL_MAX_N = 5
BLOCK_LIMIT = 1 << 20
BATCH = 1 << 19

_KK_CODES = {None: 0, "bipartite": 1, "clique": 2}
KK_LABELS = {1: "kk_bipartite", 2: "kk_clique"}


@dataclass(frozen=True)
class KernelTables:
    n: int
    e: int
    words: int
    white_ok: np.ndarray  # (2^e * 2^e, words) uint64
    yellow_ok: np.ndarray  # (n, 2^n, words) uint64
    maxdeg: np.ndarray  # (2^e,)
    edges: np.ndarray  # (2^e,)
    kk: np.ndarray  # (2^e,) partner code when the other graph is a perfect matching
    pm: np.ndarray  # (2^e,) bool
    cls: np.ndarray  # (2^e,) isomorphism class id
    bad: np.ndarray  # (classes, classes) bad-pair index or 0


def _graph_of(n: int, g: int) -> Graph:
    pairs = SlotLayout(n).pairs
    return Graph.from_edges(n, [pairs[j] for j in range(len(pairs)) if g >> j & 1])


def _mask_of(g: Graph) -> int:
    pairs = SlotLayout(g.n).pairs
    return sum(1 << j for j, (u, v) in enumerate(pairs) if g.has_edge(u, v))


@lru_cache(maxsize=None)
def tables(n: int) -> KernelTables:
    if not 1 <= n <= KERNEL_MAX_N:
        raise ValueError(f"kernel supports 1 <= n <= {KERNEL_MAX_N}")
    pairs = SlotLayout(n).pairs
    e = len(pairs)
    index = {p: j for j, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    nperm = len(perms)
    words = (nperm + 63) // 64
    g = np.arange(1 << e, dtype=np.int64)

    img = np.zeros((nperm, 1 << e), dtype=np.int64)
    for p, perm in enumerate(perms):
        for j, (u, v) in enumerate(pairs):
            a, b = sorted((perm[u], perm[v]))
            img[p] |= ((g >> j) & 1) << index[(a, b)]

    white_ok = np.zeros(((1 << e) * (1 << e), words), dtype=np.uint64)
    for p in range(nperm):
        ok = (img[p][:, None] & g[None, :]) == 0
        white_ok[:, p // 64] |= ok.reshape(-1).astype(np.uint64) << np.uint64(p % 64)

    rows = np.arange(1 << n, dtype=np.int64)
    yellow_ok = np.zeros((n, 1 << n, words), dtype=np.uint64)
    for p, perm in enumerate(perms):
        for u in range(n):
            ok = ((rows >> perm[u]) & 1) == 0
            yellow_ok[u, :, p // 64] |= ok.astype(np.uint64) << np.uint64(p % 64)

    deg = np.zeros((1 << e, max(n, 1)), dtype=np.int64)
    for j, (u, v) in enumerate(pairs):
        bit = (g >> j) & 1
        deg[:, u] += bit
        deg[:, v] += bit
    maxdeg = deg.max(axis=1)
    edges = np.array([int(x).bit_count() for x in range(1 << e)], dtype=np.int64)

    canon = img.min(axis=0)
    _, cls = np.unique(canon, return_inverse=True)
    pm = np.zeros(1 << e, dtype=bool)
    kk = np.zeros(1 << e, dtype=np.int8)
    for x in range(1 << e):
        gr = _graph_of(n, x)
        pm[x] = is_perfect_matching(gr)
        kk[x] = _KK_CODES[kk_partner_kind(gr)]

    nclass = int(cls.max()) + 1
    bad = np.zeros((nclass, nclass), dtype=np.int8)
    for i in range(1, 8):
        a, b = be_bad_pair(i)
        if a.n != n:
            continue
        ca, cb = cls[_mask_of(a)], cls[_mask_of(b)]
        bad[ca, cb] = bad[cb, ca] = i
    return KernelTables(n, e, words, white_ok, yellow_ok, maxdeg, edges, kk, pm, cls, bad)


# ---------------------------------------------------------------- mask stream

@lru_cache(maxsize=None)
def _suffix_base(s: int, m: int) -> tuple[int, np.ndarray]:
    """(start, masks of all m-subsets of range(start, s) in lex order), the
    smallest start whose subset count fits in BLOCK_LIMIT."""
    if m == 0:
        return 0, np.zeros(1, dtype=np.uint64)
    start = next(i for i in range(s + 1) if comb(s - i, m) <= BLOCK_LIMIT)
    parts = []
    for i in range(start, s - m + 1):
        parts.append(np.uint64(1 << i) | _suffix(s, m - 1, i + 1))
    arr = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint64)
    return start, arr


def _suffix(s: int, m: int, start: int) -> np.ndarray:
    base, arr = _suffix_base(s, m)
    assert start >= base
    skip = comb(s - base, m) - comb(s - start, m)
    return arr[skip:]


def mask_blocks(n: int, max_edge_sum: int, lo: int, hi: int) -> Iterator[tuple[int, np.ndarray]]:
    """Contiguous (first rank, masks) pieces covering ranks [lo, hi)."""
    s = SlotLayout(n).size

    def block(prefix: int, start: int, left: int, rank: int):
        size = comb(s - start, left)
        if rank + size <= lo or rank >= hi:
            return
        if size <= BLOCK_LIMIT:
            arr = _suffix(s, left, start)
            a, b = max(lo - rank, 0), min(hi - rank, size)
            yield rank + a, arr[a:b] | np.uint64(prefix)
            return
        for i in range(start, s - left + 1):
            sz = comb(s - i - 1, left - 1)
            yield from block(prefix | 1 << i, i + 1, left - 1, rank)
            rank += sz
            if rank >= hi:
                return

    base = 0
    for k in range(min(max_edge_sum, s) + 1):
        yield from block(0, 0, k, base)
        base += comb(s, k)
        if base >= hi:
            return


def batched_blocks(n: int, max_edge_sum: int, lo: int, hi: int) -> Iterator[tuple[int, np.ndarray]]:
    buf: list[np.ndarray] = []
    first = lo
    have = 0
    for rank, arr in mask_blocks(n, max_edge_sum, lo, hi):
        if not buf:
            first = rank
        buf.append(arr)
        have += len(arr)
        if have >= BATCH:
            yield first, np.concatenate(buf)
            buf, have = [], 0
    if buf:
        yield first, np.concatenate(buf)


# ---------------------------------------------------------------- evaluation

@dataclass
class Features:
    g1: np.ndarray
    g2: np.ndarray
    rows: list[np.ndarray]
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    full_yellow: np.ndarray


def features(tb: KernelTables, masks: np.ndarray) -> Features:
    n, e = tb.n, tb.e
    low = np.uint64((1 << e) - 1)
    g1 = (masks & low).astype(np.int64)
    g2 = ((masks >> np.uint64(e)) & low).astype(np.int64)
    ybits = masks >> np.uint64(2 * e)
    rowmask = np.uint64((1 << n) - 1)
    rows = [((ybits >> np.uint64(u * n)) & rowmask).astype(np.int64) for u in range(n)]
    rowdeg = [np.bitwise_count(r.astype(np.uint64)).astype(np.int64) for r in rows]
    coldeg = [sum(((r >> w) & 1) for r in rows) for w in range(n)]
    d3 = np.maximum(np.max(rowdeg, axis=0), np.max(coldeg, axis=0))
    e3 = np.sum(rowdeg, axis=0)
    full = np.any(np.array(rowdeg) == n, axis=0) | np.any(np.array(coldeg) == n, axis=0)
    return Features(g1, g2, rows, tb.maxdeg[g1], tb.maxdeg[g2], d3,
                    tb.edges[g1], tb.edges[g2], e3, full)


def packs(tb: KernelTables, f: Features) -> np.ndarray:
    acc = tb.white_ok[f.g1 * (1 << tb.e) + f.g2]
    for u, r in enumerate(f.rows):
        acc = acc & tb.yellow_ok[u][r]
    return np.any(acc != 0, axis=1)


def within_caps(f: Features, caps: Caps | None) -> np.ndarray | None:
    if caps is None:
        return None
    keep = np.ones(len(f.g1), dtype=bool)
    for d, c in zip((f.d1, f.d2, f.d3), caps):
        if c is not None:
            keep &= d <= c
    return keep


def predict(theorem: str, tb: KernelTables, f: Features, drop_exceptions: bool
            ) -> tuple[np.ndarray, np.ndarray, dict[int, str]]:
    """(prediction code 0 none / 1 must_pack / 2 exception, exception code, labels)."""
    n = tb.n
    esum = f.e1 + f.e2 + f.e3
    zeros = np.zeros(len(f.g1), dtype=np.int64)
    if theorem == "ss_product":
        holds = 2 * (f.d1 * f.d2 + f.d3) <= n
        code = zeros
        if not drop_exceptions:
            k1, k2 = tb.kk[f.g1].astype(np.int64), tb.kk[f.g2].astype(np.int64)
            code = np.where(tb.pm[f.g1] & (k2 > 0), k2, np.where(tb.pm[f.g2] & (k1 > 0), k1, 0))
            code = np.where(f.d3 == 0, code, 0)
        labels = KK_LABELS
    elif theorem == "lemma7":
        holds = (f.d3 <= n - 1) & (esum <= lemma7_bound(n))
        code = zeros
        labels = {}
    elif theorem == "cor8":
        holds = esum <= n
        k2 = (n == 2) & (f.e1 == 1) & (f.e2 == 1)
        code = np.where(holds & f.full_yellow, 1, np.where(holds & k2, 2, 0))
        labels = {1: "full_yellow_vertex", 2: "k2_k2"}
    elif theorem == "be":
        holds = (f.d1 <= n - 2) & (f.d2 <= n - 2) & (f.d3 <= n - 1) & (esum <= 2 * n - 3)
        code = zeros
        if not drop_exceptions:
            code = np.where(holds, tb.bad[tb.cls[f.g1], tb.cls[f.g2]].astype(np.int64), 0)
        labels = {i: f"be_bad_pair_{i}" for i in range(1, 8)}
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    pred = np.where(code > 0, 2, np.where(holds, 1, 0))
    return pred, code, labels
