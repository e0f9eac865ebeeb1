"""Recursive packer for triples with small edge sum (e1 + e2 + e3 <= floor(3n/2) - 2).

The recursion follows an inductive case analysis. Each case proposes moves:
fix one or two assignments (optionally adding yellow edges that keep the lift
conflict-free) and recurse on the residual triple, which must again satisfy
the edge-sum hypothesis. Side-2 versions of each case run on the transposed
triple and invert the result.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterator

from ..conditions import lemma7_holds
from ..core import PackingMap, Triple, add_yellow, delete_pairs, is_packing, iter_bits, transpose
from .exact import backtrack_pack, hall_matching


class ConstructionGap(RuntimeError):
    """No case of the recursion applied; raised instead of falling back in strict mode."""


# A move is either a finished map or (assignments, yellow edges to add).
Move = PackingMap | tuple[list[tuple[int, int]], list[tuple[int, int]]]


def constructive_lemma7(t: Triple, *, strict: bool = False, trace: Counter | None = None) -> PackingMap:
    if not lemma7_holds(t):
        raise ValueError("triple violates d3 <= n-1 or e1+e2+e3 <= floor(3n/2)-2")
    trace = Counter() if trace is None else trace
    f = _solve(t, strict, trace)
    assert is_packing(t, f), "edge-sum packer produced a non-packing"
    return f


def _deg(t: Triple, side: int, v: int) -> int:
    return t.total_degree1(v) if side == 1 else t.total_degree2(v)


def _base(t: Triple) -> PackingMap:
    for perm in itertools.permutations(range(t.n)):
        if is_packing(t, perm):
            return PackingMap(perm)
    raise AssertionError(f"base case n={t.n} has no packing")


def _solve(t: Triple, strict: bool, trace: Counter) -> PackingMap:
    n = t.n
    if n <= 3:
        trace["base"] += 1
        return _base(t)
    if t.e3 == 0:
        # plain edge-sum packing of two graphs
        trace["classical"] += 1
        f = backtrack_pack(t)
        if f is None:
            raise AssertionError("white graphs under the edge-sum bound failed to pack")
        return f
    if t.e1 == 0 or t.e2 == 0:
        trace["hall"] += 1
        f = hall_matching(t)
        if f is None:
            raise AssertionError("Hall's condition failed under the edge-sum bound")
        return f

    for label, moves in (
        ("full_yellow", _full_yellow_moves),
        ("case1", _case1_moves),
        ("case2", _case2_moves),
        ("case3", _case3_moves),
    ):
        sides = [(1, t), (2, transpose(t))]
        if label == "case3" and t.e1 > t.e2:
            sides.reverse()
        for side, tt in sides:
            f = _apply(tt, moves(tt), strict, trace)
            if f is not None:
                trace[label] += 1
                return f if side == 1 else f.inverse()

    if strict:
        raise ConstructionGap(f"no case applies to a triple with n={n}")
    trace["fallback"] += 1
    f = backtrack_pack(t)
    if f is None:
        raise AssertionError("triple under the edge-sum bound has no packing")
    return f


def _apply(t: Triple, moves: Iterator[Move], strict: bool, trace: Counter) -> PackingMap | None:
    for move in moves:
        if isinstance(move, PackingMap):
            assert is_packing(t, move), "direct assignment conflicts"
            return move
        pairs, added = move
        res = delete_pairs(add_yellow(t, added) if added else t, pairs)
        if not lemma7_holds(res.triple):
            continue
        f = res.lift(_solve(res.triple, strict, trace))
        if not is_packing(t, f):
            raise AssertionError(f"lifting {pairs} produced a conflict")
        return f
    return None


def _full_yellow_moves(t: Triple) -> Iterator[Move]:
    """A vertex v in V1 yellow-adjacent to all but one vertex of V2."""
    n = t.n
    for v in range(n):
        if t.y1[v].bit_count() != n - 1:
            continue
        lonely = [u for u in range(n) if t.g2.adj[u] == 0 and t.y2[u] & ~(1 << v) == 0]
        if not lonely:
            continue
        u = lonely[0]
        if not t.has_yellow(v, u):
            yield [(v, u)], []
            continue
        helpers = [w for w in range(n) if w != v and _deg(t, 1, w) >= 1]
        if not helpers:
            # everything but v is isolated: v takes its one allowed image
            (z,) = iter_bits(((1 << n) - 1) & ~t.y1[v])
            rest = iter(w for w in range(n) if w != z)
            yield PackingMap(tuple(z if x == v else next(rest) for x in range(n)))
            continue
        for w in helpers:
            yield [(w, u)], []


def _case1_moves(t: Triple) -> Iterator[Move]:
    """A vertex x in V1 with no edges at all."""
    n = t.n
    for x in range(n):
        if t.g1.adj[x] or t.y1[x]:
            continue
        busy = [y for y in range(n) if _deg(t, 2, y) >= 2]
        if busy:
            for y in busy:
                yield [(x, y)], []
            continue
        if all(_deg(t, 2, y) == 0 for y in range(n)):
            yield PackingMap(tuple(range(n)))
            continue
        leaves = [y for y in range(n) if t.g2.adj[y].bit_count() == 1]
        if not leaves:
            f = hall_matching(t)
            if f is not None:
                yield f
            continue
        for y in leaves:
            (z,) = iter_bits(t.g2.adj[y])
            for w in range(n):
                if w != x and _deg(t, 1, w) >= 2 and not t.has_yellow(w, z):
                    yield [(w, z), (x, y)], []


def _case2_moves(t: Triple) -> Iterator[Move]:
    """A vertex x in V1 without white neighbours but with yellow ones."""
    n = t.n
    for x in range(n):
        if t.g1.adj[x] or not t.y1[x]:
            continue
        if t.y1[x].bit_count() >= 2:
            for z in range(n):
                if not t.has_yellow(x, z):
                    yield [(x, z)], []
        else:
            (y,) = iter_bits(t.y1[x])
            for v in range(n):
                if v != y and _deg(t, 2, v) >= 1:
                    yield [(x, v)], []


def _case3_moves(t: Triple) -> Iterator[Move]:
    """x in V1 whose only edge is white (to x'); y in V2 with a yellow edge.

    Sending x to y is safe once x' is barred from every white neighbour of y.
    """
    n = t.n
    for x in range(n):
        if t.y1[x] or t.g1.adj[x].bit_count() != 1:
            continue
        (xp,) = iter_bits(t.g1.adj[x])
        for y in range(n):
            if t.y2[y]:
                yield [(x, y)], [(xp, q) for q in iter_bits(t.g2.adj[y])]
