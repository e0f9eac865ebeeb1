"""Exact solvers: the n! oracle, the pruned backtracking solver and the Hall matcher."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np

from ..core import PackingMap, Triple, is_packing, iter_bits

BRUTE_FORCE_MAX_N = 10
_MEMO_LIMIT = 1_000_000


class GuardError(ValueError):
    """A size guard refused an input that would take too long."""


def guard_overridden() -> bool:
    return os.environ.get("PACKTRIPLE_GUARD_OVERRIDE") == "1"


@dataclass(frozen=True)
class Conflict:
    kind: Literal["white", "yellow"]
    witness: tuple[int, ...]  # (u, v) edge of G1 for white, (v,) for yellow


def find_conflicts(t: Triple, f: PackingMap) -> list[Conflict]:
    out = []
    perm = f.perm
    for u in range(t.n):
        if t.y1[u] >> perm[u] & 1:
            out.append(Conflict("yellow", (u,)))
    adj2 = t.g2.adj
    for u, v in t.g1.edges():
        if adj2[perm[u]] >> perm[v] & 1:
            out.append(Conflict("white", (u, v)))
    return out


@lru_cache(maxsize=None)
def _lex_perms(n: int) -> np.ndarray:
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(n))),
        dtype=np.int8,
        count=_factorial(n) * n,
    )
    return flat.reshape(-1, n)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _perm_batches(n: int, size: int = 1 << 18) -> Iterator[np.ndarray]:
    if n <= 9:
        yield _lex_perms(n)
        return
    it = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int8)


def brute_force_pack(t: Triple) -> PackingMap | None:
    """Lexicographically first packing among all n! bijections, or None."""
    n = t.n
    if n > BRUTE_FORCE_MAX_N and not guard_overridden():
        raise GuardError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    if n == 0:
        return PackingMap(())
    yellow = np.zeros((n, n), dtype=bool)
    for u, w in t.yellow_pairs():
        yellow[u, w] = True
    white2 = np.zeros((n, n), dtype=bool)
    for a, b in t.g2.edges():
        white2[a, b] = white2[b, a] = True
    rows = np.arange(n)
    edges1 = t.g1.edges()
    for perms in _perm_batches(n):
        bad = yellow[rows, perms].any(axis=1)
        for u, v in edges1:
            bad |= white2[perms[:, u], perms[:, v]]
        good = np.flatnonzero(~bad)
        if good.size:
            f = PackingMap(tuple(int(x) for x in perms[good[0]]))
            assert is_packing(t, f), "brute force returned a non-packing"
            return f
    return None


def backtrack_pack(t: Triple) -> PackingMap | None:
    """Depth-first placement of V1 vertices, most constrained first.

    Candidates of a vertex exclude its yellow neighbours, used images and the
    G2-neighbourhoods of images of already placed G1-neighbours. Every unplaced
    vertex is forward-checked after each placement, and failed subproblems are
    cached on (depth, used images, forbidden masks of the frontier).
    """
    n = t.n
    if n == 0:
        return PackingMap(())
    adj1 = t.g1.adj
    adj2 = t.g2.adj
    full = (1 << n) - 1
    allowed = [full & ~m for m in t.y1]
    if not all(allowed):
        return None
    order = sorted(range(n), key=lambda u: (-(adj1[u].bit_count() + t.y1[u].bit_count()), u))
    pos = [0] * n
    for i, u in enumerate(order):
        pos[u] = i
    later = [[x for x in iter_bits(adj1[u]) if pos[x] > pos[u]] for u in order]
    frontier = []
    for i in range(n):
        frontier.append(tuple(x for x in order[i:] if any(pos[y] < i for y in iter_bits(adj1[x]))))

    forb = [0] * n
    image = [0] * n
    failed: set = set()

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        front = frontier[i]
        key = None
        if front and i > 1:
            key = (i, used, tuple(forb[x] for x in front))
            if key in failed:
                return False
        u = order[i]
        cand = allowed[u] & ~used & ~forb[u]
        nbrs = later[i]
        rest = order[i + 1:]
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            block = adj2[w]
            saved = [forb[x] for x in nbrs]
            for x in nbrs:
                forb[x] |= block
            now = used | low
            ok = True
            for x in rest:
                if not allowed[x] & ~now & ~forb[x]:
                    ok = False
                    break
            if ok:
                image[u] = w
                if place(i + 1, now):
                    return True
            for x, s in zip(nbrs, saved):
                forb[x] = s
        if key is not None and len(failed) < _MEMO_LIMIT:
            failed.add(key)
        return False

    if not place(0, 0):
        return None
    f = PackingMap(tuple(image))
    assert is_packing(t, f), "backtracking returned a non-packing"
    return f


def hall_matching(t: Triple) -> PackingMap | None:
    """Perfect matching in the bipartite complement of the yellow graph (Kuhn's augmenting paths).

    Only valid when one side has no white edges, so that any bijection avoiding
    yellow edges is a packing.
    """
    if t.g1.num_edges and t.g2.num_edges:
        raise ValueError("hall_matching needs one of the white graphs to be edgeless")
    n = t.n
    full = (1 << n) - 1
    allowed = [full & ~m for m in t.y1]
    owner = [-1] * n
    taken = [0]

    def augment(u: int, seen: list[int]) -> bool:
        free = allowed[u] & ~taken[0]
        if free:
            w = (free & -free).bit_length() - 1
            owner[w] = u
            taken[0] |= 1 << w
            return True
        for w in iter_bits(allowed[u] & ~seen[0]):
            seen[0] |= 1 << w
            if owner[w] == -1 or augment(owner[w], seen):
                owner[w] = u
                return True
        return False

    for u in range(n):
        if not augment(u, [0]):
            return None
    perm = [0] * n
    for w, u in enumerate(owner):
        perm[u] = w
    f = PackingMap(tuple(perm))
    assert is_packing(t, f), "Hall matching returned a non-packing"
    return f
