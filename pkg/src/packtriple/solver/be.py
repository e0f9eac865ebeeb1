"""Reduction steps for triples under the list Bollobas-Eldridge hypothesis.

Every rule fixes a few assignments whose lift cannot conflict with any packing
of the residual, sometimes after adding yellow edges that bar the remaining
dangerous images. The rules are a sound but partial set: ``be_reduction_step``
returns None when none of them is cheaply detectable, and
``constructive_pack_be`` finishes the residual by backtracking.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..conditions import Prediction, check_be, detect_be_bad_pair
from ..core import PackingMap, Residual, Triple, add_yellow, delete_pairs, is_packing, iter_bits, transpose
from .exact import backtrack_pack

RULES = (
    "yellow_star",
    "white_star_case1",
    "white_star_case2",
    "isolated_vertex",
    "no_white_neighbor",
    "low_degree_yellow",
)


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    removed: tuple[tuple[int, int], ...]
    added_yellow: tuple[tuple[int, int], ...]
    residual: Residual


# A proposal is (rule, assignments, added yellow) in the orientation it was found in.
_Proposal = tuple[str, list[tuple[int, int]], list[tuple[int, int]]]


def _components(t: Triple, skip_yellow_at: tuple[int, int] | None = None) -> list[tuple[int, int]]:
    """Components of the 2n-vertex graph of all edges, as (V1 mask, V2 mask).

    ``skip_yellow_at = (v, w)`` drops the yellow edges at ``v in V1`` and ``w in V2``.
    """
    n = t.n
    y1 = list(t.y1)
    if skip_yellow_at is not None:
        v, w = skip_yellow_at
        y1[v] = 0
        y1 = [m & ~(1 << w) for m in y1]
    y2 = [0] * n
    for u, m in enumerate(y1):
        for x in iter_bits(m):
            y2[x] |= 1 << u
    seen1 = seen2 = 0
    comps = []
    for side, start in [(1, s) for s in range(n)] + [(2, s) for s in range(n)]:
        if (seen1 if side == 1 else seen2) >> start & 1:
            continue
        c1, c2 = (1 << start, 0) if side == 1 else (0, 1 << start)
        f1, f2 = c1, c2
        while f1 or f2:
            n1 = n2 = 0
            for u in iter_bits(f1):
                n1 |= t.g1.adj[u]
                n2 |= y1[u]
            for x in iter_bits(f2):
                n2 |= t.g2.adj[x]
                n1 |= y2[x]
            f1, f2 = n1 & ~c1, n2 & ~c2
            c1 |= f1
            c2 |= f2
        seen1 |= c1
        seen2 |= c2
        comps.append((c1, c2))
    return comps


def _yellow_star(t: Triple) -> _Proposal | None:
    n = t.n
    for v in range(n):
        if t.y1[v].bit_count() != n - 1:
            continue
        (w,) = iter_bits(((1 << n) - 1) & ~t.y1[v])
        if not t.g1.adj[v] or not t.g2.adj[w]:
            return "yellow_star", [(v, w)], []
        comps = _components(t, skip_yellow_at=(v, w))
        x1 = next(c1 for c1, _ in comps if c1 >> v & 1)
        y2 = next(c2 for _, c2 in comps if c2 >> w & 1)
        single1 = [next(iter_bits(c1)) for c1, c2 in comps if c1.bit_count() == 1 and not c2]
        single2 = [next(iter_bits(c2)) for c1, c2 in comps if c2.bit_count() == 1 and not c1]
        single1 = [u for u in single1 if u != v]
        single2 = [x for x in single2 if x != w]
        # v's component onto w plus singletons of V2
        others = [u for u in iter_bits(x1) if u != v]
        if len(single2) >= len(others):
            return "yellow_star", [(v, w)] + list(zip(others, single2)), []
        # singletons of V1 onto w's component
        others = [x for x in iter_bits(y2) if x != w]
        if len(single1) >= len(others):
            return "yellow_star", [(v, w)] + list(zip(single1, others)), []
    return None


def _white_star(t: Triple) -> _Proposal | None:
    n = t.n
    full = (1 << n) - 1
    for v in range(n):
        if t.g1.adj[v].bit_count() != n - 2:
            continue
        (vp,) = iter_bits(full & ~t.g1.adj[v] & ~(1 << v))
        free = full & ~t.y1[v]
        for w in iter_bits(free):
            if not t.g2.adj[w]:
                return "white_star_case1", [(v, w)], []
        reach2 = 0
        for c1, c2 in _components(t):
            if c1:
                reach2 |= c2
        trees = []
        for c1, c2 in _components(t):
            if c1 or c2.bit_count() < 2 or c2 & reach2:
                continue
            edges = sum(t.g2.adj[x].bit_count() for x in iter_bits(c2)) // 2
            if edges == c2.bit_count() - 1:
                trees.append((c2.bit_count(), (c2 & -c2).bit_length(), c2))
        if not trees:
            continue
        _, _, comp = min(trees)
        y = next(x for x in iter_bits(comp) if t.g2.adj[x].bit_count() == 1)
        (yp,) = iter_bits(t.g2.adj[y])
        added = [(a, q) for a in iter_bits(t.g1.adj[vp]) for q in iter_bits(t.g2.adj[yp]) if q != y]
        return "white_star_case2", [(v, y), (vp, yp)], added
    return None


def _no_white_neighbor(t: Triple) -> _Proposal | None:
    n = t.n
    deg2 = [t.total_degree2(x) for x in range(n)]
    for v in range(n):
        if t.g1.adj[v]:
            continue
        if not t.y1[v]:
            for w in range(n):
                if deg2[w] < 2:
                    continue
                sub = delete_pairs(t, [(v, w)]).triple
                if sub.e3 == 0 and detect_be_bad_pair(sub.g1, sub.g2) is not None:
                    continue
                return "isolated_vertex", [(v, w)], []
            continue
        options = [w for w in range(n) if not t.y1[v] >> w & 1]
        top = max(deg2[w] for w in options)
        w = min((w for w in options if deg2[w] == top), key=lambda x: (t.y2[x].bit_count(), x))
        return "no_white_neighbor", [(v, w)], []
    return None


def _low_degree_yellow(t: Triple) -> _Proposal | None:
    n = t.n
    ys = [y for y in range(n) if t.y2[y]]
    if not ys:
        return None
    y = ys[0]
    for v in range(n):
        if t.y1[v] or t.g1.adj[v].bit_count() != 1:
            continue
        (vp,) = iter_bits(t.g1.adj[v])
        return "low_degree_yellow", [(v, y)], [(vp, q) for q in iter_bits(t.g2.adj[y])]
    return None


def _flip(p: _Proposal) -> _Proposal:
    rule, pairs, added = p
    return rule, [(b, a) for a, b in pairs], [(b, a) for a, b in added]


def be_reduction_step(t: Triple) -> ReductionStep | None:
    if check_be(t).predicted is not Prediction.MUST_PACK:
        raise ValueError("be_reduction_step needs a triple the hypothesis says must pack")
    tt = transpose(t)
    for finder in (_yellow_star, _white_star, _no_white_neighbor, _low_degree_yellow):
        for oriented, flip in ((t, False), (tt, True)):
            p = finder(oriented)
            if p is None:
                continue
            rule, pairs, added = _flip(p) if flip else p
            base = add_yellow(t, added) if added else t
            return ReductionStep(rule, tuple(pairs), tuple(added), delete_pairs(base, pairs))
    return None


def constructive_pack_be(t: Triple, *, trace: Counter | None = None) -> PackingMap:
    if check_be(t).predicted is not Prediction.MUST_PACK:
        raise ValueError("triple is outside the hypothesis or is an exceptional pair")
    trace = Counter() if trace is None else trace
    chain: list[tuple[Triple, ReductionStep]] = []
    cur = t
    while cur.n > 0 and check_be(cur).predicted is Prediction.MUST_PACK:
        step = be_reduction_step(cur)
        if step is None:
            break
        trace[step.rule] += 1
        chain.append((cur, step))
        cur = step.residual.triple
    f = backtrack_pack(cur)
    if f is None:
        trace["fallback"] += 1
        f = backtrack_pack(t)
        if f is None:
            raise AssertionError("triple under the hypothesis has no packing")
        return f
    trace["finish"] += 1
    for parent, step in reversed(chain):
        f = step.residual.lift(f)
        if not is_packing(parent, f):
            raise AssertionError(f"lifting rule {step.rule} produced a conflict")
    assert is_packing(t, f)
    return f
