"""Graph triples, packing maps and the structural predicates shared by every module.

Vertices are ``0..n-1`` on both sides. Adjacency is stored as one integer
bitmask per vertex, so ``g.adj[v] >> u & 1`` tests the edge ``uv``. Yellow
edges are stored oriented: ``t.y1[u]`` is the mask of ``V2`` vertices joined to
``u in V1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def compress_mask(mask: int, keep: Sequence[int]) -> int:
    """Re-index ``mask`` onto positions of ``keep`` (bit i set iff keep[i] in mask)."""
    out = 0
    for i, v in enumerate(keep):
        if mask >> v & 1:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adj), default=0)

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def induced(self, keep: Sequence[int]) -> Graph:
        return Graph(len(keep), tuple(compress_mask(self.adj[v], keep) for v in keep))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for u in iter_bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        return Graph(self.n, tuple(adj))


@dataclass(frozen=True)
class PackingMap:
    perm: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.perm)

    def __getitem__(self, u: int) -> int:
        return self.perm[u]

    def inverse(self) -> PackingMap:
        inv = [0] * len(self.perm)
        for u, w in enumerate(self.perm):
            inv[w] = u
        return PackingMap(tuple(inv))

    def is_bijection(self) -> bool:
        n = len(self.perm)
        seen = 0
        for w in self.perm:
            if not 0 <= w < n or seen >> w & 1:
                return False
            seen |= 1 << w
        return True


@dataclass(frozen=True)
class Triple:
    n: int
    g1: Graph
    g2: Graph
    y1: tuple[int, ...]

    @cached_property
    def y2(self) -> tuple[int, ...]:
        """Yellow neighbourhood masks of the ``V2`` vertices (bits over ``V1``)."""
        out = [0] * self.n
        for u, m in enumerate(self.y1):
            for w in iter_bits(m):
                out[w] |= 1 << u
        return tuple(out)

    @property
    def yellow(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.yellow_pairs())

    def yellow_pairs(self) -> list[tuple[int, int]]:
        return [(u, w) for u, m in enumerate(self.y1) for w in iter_bits(m)]

    def has_yellow(self, u: int, w: int) -> bool:
        return bool(self.y1[u] >> w & 1)

    @property
    def e1(self) -> int:
        return self.g1.num_edges

    @property
    def e2(self) -> int:
        return self.g2.num_edges

    @property
    def e3(self) -> int:
        return sum(m.bit_count() for m in self.y1)

    @property
    def edge_sum(self) -> int:
        return self.e1 + self.e2 + self.e3

    def total_degree1(self, u: int) -> int:
        return self.g1.adj[u].bit_count() + self.y1[u].bit_count()

    def total_degree2(self, w: int) -> int:
        return self.g2.adj[w].bit_count() + self.y2[w].bit_count()


@dataclass(frozen=True)
class DegreeSummary:
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    d3: tuple[tuple[int, ...], tuple[int, ...]]  # (yellow degrees on V1, on V2)
    e1: int
    e2: int
    e3: int
    delta1: int
    delta2: int
    delta3: int


@dataclass(frozen=True)
class Residual:
    """A triple with some vertex pairs removed, plus what is needed to lift packings back.

    ``fixed`` holds the removed assignments ``(v in V1, w in V2)`` in the parent's
    labels; ``keep1[i]`` / ``keep2[i]`` is the parent label of residual vertex ``i``.
    """

    triple: Triple
    fixed: tuple[tuple[int, int], ...]
    keep1: tuple[int, ...]
    keep2: tuple[int, ...]

    def lift(self, sub: PackingMap) -> PackingMap:
        if len(sub) != self.triple.n:
            raise ValueError("packing size does not match residual")
        perm = [0] * (self.triple.n + len(self.fixed))
        for v, w in self.fixed:
            perm[v] = w
        for i, j in enumerate(sub.perm):
            perm[self.keep1[i]] = self.keep2[j]
        return PackingMap(tuple(perm))


def build_triple(
    n: int,
    white1: Iterable[tuple[int, int]] = (),
    white2: Iterable[tuple[int, int]] = (),
    yellow: Iterable[tuple[int, int]] = (),
) -> Triple:
    if n < 1:
        raise ValueError(f"triple size must be at least 1, got {n}")
    g1 = Graph.from_edges(n, white1)
    g2 = Graph.from_edges(n, white2)
    y1 = [0] * n
    for u, w in yellow:
        if not (0 <= u < n and 0 <= w < n):
            raise ValueError(f"yellow pair ({u}, {w}) out of range for n={n}")
        y1[u] |= 1 << w
    return Triple(n, g1, g2, tuple(y1))


def empty_triple(n: int) -> Triple:
    return Triple(n, Graph.empty(n), Graph.empty(n), (0,) * n)


def degrees(t: Triple) -> DegreeSummary:
    d1 = t.g1.degrees()
    d2 = t.g2.degrees()
    d3a = tuple(m.bit_count() for m in t.y1)
    d3b = tuple(m.bit_count() for m in t.y2)
    return DegreeSummary(
        d1=d1,
        d2=d2,
        d3=(d3a, d3b),
        e1=sum(d1) // 2,
        e2=sum(d2) // 2,
        e3=sum(d3a),
        delta1=max(d1, default=0),
        delta2=max(d2, default=0),
        delta3=max(d3a + d3b, default=0),
    )


def max_degrees(t: Triple) -> tuple[int, int, int]:
    """``(delta1, delta2, delta3)`` without building a full summary."""
    d3 = max((m.bit_count() for m in t.y1), default=0)
    d3 = max(d3, max((m.bit_count() for m in t.y2), default=0))
    return t.g1.max_degree, t.g2.max_degree, d3


def is_packing(t: Triple, f: PackingMap | Sequence[int]) -> bool:
    perm = f.perm if isinstance(f, PackingMap) else tuple(f)
    if len(perm) != t.n:
        raise ValueError(f"map has length {len(perm)}, triple has n={t.n}")
    if not PackingMap(perm).is_bijection():
        return False
    y1 = t.y1
    adj1 = t.g1.adj
    adj2 = t.g2.adj
    for u in range(t.n):
        fu = perm[u]
        if y1[u] >> fu & 1:
            return False
        image = adj2[fu]
        for v in iter_bits(adj1[u] >> (u + 1) << (u + 1)):
            if image >> perm[v] & 1:
                return False
    return True


def delete_pairs(t: Triple, pairs: Sequence[tuple[int, int]]) -> Residual:
    """Remove each ``(v in V1, w in V2)`` pair; survivors keep their relative order."""
    gone1 = 0
    gone2 = 0
    for v, w in pairs:
        if not (0 <= v < t.n and 0 <= w < t.n):
            raise ValueError(f"pair ({v}, {w}) out of range for n={t.n}")
        if gone1 >> v & 1 or gone2 >> w & 1:
            raise ValueError(f"pair ({v}, {w}) reuses a removed vertex")
        gone1 |= 1 << v
        gone2 |= 1 << w
    keep1 = tuple(v for v in range(t.n) if not gone1 >> v & 1)
    keep2 = tuple(w for w in range(t.n) if not gone2 >> w & 1)
    sub = Triple(
        len(keep1),
        t.g1.induced(keep1),
        t.g2.induced(keep2),
        tuple(compress_mask(t.y1[v], keep2) for v in keep1),
    )
    return Residual(sub, tuple(pairs), keep1, keep2)


def delete_pair(t: Triple, v: int, w: int) -> Residual:
    return delete_pairs(t, [(v, w)])


def add_yellow(t: Triple, pairs: Iterable[tuple[int, int]]) -> Triple:
    y1 = list(t.y1)
    for u, w in pairs:
        if not (0 <= u < t.n and 0 <= w < t.n):
            raise ValueError(f"yellow pair ({u}, {w}) out of range for n={t.n}")
        y1[u] |= 1 << w
    return Triple(t.n, t.g1, t.g2, tuple(y1))


def transpose(t: Triple) -> Triple:
    return Triple(t.n, t.g2, t.g1, t.y2)


def relabel_triple(t: Triple, sigma: Sequence[int], tau: Sequence[int]) -> Triple:
    """Rename ``V1`` by ``sigma`` and ``V2`` by ``tau``; ``f`` packs t iff ``tau.f.sigma^-1`` packs the result."""
    y1 = [0] * t.n
    for u, w in t.yellow_pairs():
        y1[sigma[u]] |= 1 << tau[w]
    return Triple(t.n, t.g1.relabel(sigma), t.g2.relabel(tau), tuple(y1))


def _refined_invariants(g: Graph) -> list[tuple]:
    deg = g.degrees()
    return [(deg[v], tuple(sorted(deg[u] for u in iter_bits(g.adj[v])))) for v in range(g.n)]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Permutation search pruned by degree and neighbour-degree signatures."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    inv_g = _refined_invariants(g)
    inv_h = _refined_invariants(h)
    if sorted(inv_g) != sorted(inv_h):
        return False

    n = g.n
    order = sorted(range(n), key=lambda v: (-inv_g[v][0], v))
    by_class: dict[tuple, list[int]] = {}
    for w in range(n):
        by_class.setdefault(inv_h[w], []).append(w)
    image = [-1] * n

    def extend(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in by_class[inv_g[v]]:
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (g.adj[v] >> u & 1) != (h.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(i + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return extend(0, 0)


def has_clique(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if k == 1:
        return g.n >= 1
    # only vertices of degree >= k-1 can sit in a k-clique
    live = 0
    for v in range(g.n):
        if g.adj[v].bit_count() >= k - 1:
            live |= 1 << v
    if live.bit_count() < k:
        return False
    adj = g.adj

    def grow(cand: int, size: int) -> bool:
        if size == k:
            return True
        while cand:
            if size + cand.bit_count() < k:
                return False
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if grow(cand & adj[v], size + 1):
                return True
        return False

    return grow(live, 0)


def is_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and all(a.bit_count() == 1 for a in g.adj)


def is_complete_bipartite_balanced(g: Graph) -> bool:
    """True iff ``g`` is ``K_{n/2,n/2}``: a 2-colouring with equal sides and all cross edges."""
    n = g.n
    if n == 0 or n % 2:
        return False
    half = n // 2
    if g.num_edges != half * half:
        return False
    colour = [-1] * n
    for s in range(n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if colour[u] == -1:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return False
    return colour.count(0) == half
