"""Constructors for the exceptional pairs, sharpness families and problem encodings."""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import Graph, Triple, build_triple

FAMILY_TAGS = (
    "BE1", "BE2", "BE3", "BE4", "BE5", "BE6", "BE7",
    "FIG2A", "FIG2B", "FIG2C", "FIG2D", "FIG2E",
    "KK_BIPARTITE", "KK_CLIQUE",
)


# --- graph building blocks -------------------------------------------------

def _union(*parts: Graph) -> Graph:
    adj = []
    offset = 0
    for g in parts:
        adj.extend(a << offset for a in g.adj)
        offset += g.n
    return Graph(offset, tuple(adj))


def complete(k: int) -> Graph:
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def independent(k: int) -> Graph:
    return Graph.empty(k)


def matching(pairs: int) -> Graph:
    return _union(*[complete(2)] * pairs)


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _as_triple(g1: Graph, g2: Graph, yellow: Iterable[tuple[int, int]] = ()) -> Triple:
    if g1.n != g2.n:
        raise ValueError(f"white graphs have different orders {g1.n} and {g2.n}")
    return build_triple(g1.n, g1.edges(), g2.edges(), yellow)


# --- Bollobas-Eldridge exceptional pairs -------------------------------------

def be_bad_pair(index: int) -> tuple[Graph, Graph]:
    """The ``index``-th exceptional pair, components laid out left to right as named."""
    pairs = {
        1: lambda: (matching(2), _union(independent(1), complete(3))),
        2: lambda: (_union(independent(2), complete(3)), _union(complete(2), complete(3))),
        3: lambda: (matching(3), _union(independent(2), complete(4))),
        4: lambda: (_union(independent(3), complete(3)), _union(complete(3), complete(3))),
        5: lambda: (_union(matching(2), complete(3)), _union(independent(3), complete(4))),
        6: lambda: (_union(independent(4), complete(4)), _union(complete(2), complete(3), complete(3))),
        7: lambda: (_union(independent(5), complete(4)), _union(complete(3), complete(3), complete(3))),
    }
    if index not in pairs:
        raise ValueError(f"bad pair index must be in 1..7, got {index}")
    return pairs[index]()


def be_bad_pair_triple(index: int) -> Triple:
    g1, g2 = be_bad_pair(index)
    return _as_triple(g1, g2)


# --- sharpness families ------------------------------------------------------

def sharpness_family(tag: str, n: int, m: int | None = None, mp: int | None = None,
                     k: int | None = None) -> Triple:
    tag = tag.upper()
    if tag == "FIG2A":
        if n < 1:
            raise ValueError("FIG2A needs n >= 1")
        return build_triple(n, yellow=[(0, w) for w in range(n)])
    if tag == "FIG2B":
        if n < 2:
            raise ValueError("FIG2B needs n >= 2")
        # both x1, x2 miss the same vertex y = n-1
        return build_triple(n, yellow=[(x, w) for x in (0, 1) for w in range(n - 1)])
    if tag == "FIG2C":
        if n < 4:
            raise ValueError("FIG2C needs n >= 4")
        return build_triple(
            n, [(0, 1)], [(n - 2, n - 1)], [(x, w) for x in (0, 1) for w in range(n - 2)]
        )
    if tag == "FIG2D":
        if m is None or mp is None:
            raise ValueError("FIG2D needs m and m'")
        if not (1 <= m < n and 1 <= mp < n):
            raise ValueError(f"FIG2D needs 1 <= m, m' <= n-1, got m={m}, m'={mp}, n={n}")
        g1 = _union(star(m - 1), independent(n - m))
        g2 = _union(star(mp - 1), independent(n - mp))
        yellow = [(0, w) for w in range(mp, n)] + [(u, 0) for u in range(m, n)]
        return _as_triple(g1, g2, yellow)
    if tag == "FIG2E":
        if k is None:
            raise ValueError("FIG2E needs k")
        if not 3 <= k <= n - 1:
            raise ValueError(f"FIG2E needs 3 <= k <= n-1, got k={k}, n={n}")
        g1 = _union(star(n - 2), independent(1))
        g2 = _union(cycle(k), independent(n - k))
        return _as_triple(g1, g2, [(0, w) for w in range(k, n)])
    raise ValueError(f"unknown sharpness family {tag!r}")


def fig2d_packs(n: int, m: int, mp: int) -> bool:
    """Closed form for FIG2D: the centres must meet, which works iff m + m' <= n + 1."""
    return m + mp <= n + 1


# --- Kaul-Kostochka exceptions -----------------------------------------------

def kk_exception(kind: str, n: int) -> Triple:
    if n < 2 or n % 2:
        raise ValueError(f"KK exceptions need even n >= 2, got {n}")
    half = n // 2
    if kind == "bipartite":
        if half % 2 == 0:
            raise ValueError(f"bipartite KK exception needs n/2 odd, got n/2={half}")
        other = complete_bipartite(half, half)
    elif kind == "clique":
        other = _union(complete(half + 1), independent(half - 1))
    else:
        raise ValueError(f"unknown KK kind {kind!r}")
    return _as_triple(matching(half), other)


# --- encodings ---------------------------------------------------------------

def from_list_coloring(g: Graph, k: int, lists: Sequence[Iterable[int]],
                       block: int | None = None) -> Triple:
    """Encode "colour g from k colours, vertex v avoiding lists[v]" as a triple.

    Side 2 is ``k`` disjoint cliques of ``block`` vertices (default ``|V(g)|``,
    so a single colour can absorb every vertex); clique ``c`` occupies
    ``c*block .. c*block+block-1``. Side 1 is ``g`` padded with isolated vertices.
    """
    if k < 1:
        raise ValueError("need at least one colour")
    if len(lists) != g.n:
        raise ValueError(f"expected {g.n} forbidden lists, got {len(lists)}")
    s = g.n if block is None else block
    if s * k < g.n:
        raise ValueError(f"{k} blocks of size {s} cannot hold {g.n} vertices")
    n = s * k
    g2 = _union(*[complete(s)] * k)
    yellow = []
    for v, bad in enumerate(lists):
        for c in set(bad):
            if not 0 <= c < k:
                raise ValueError(f"colour {c} out of range for k={k}")
            yellow.extend((v, c * s + j) for j in range(s))
    return build_triple(n, g.edges(), g2.edges(), yellow)


def coloring_from_packing(f: Sequence[int], g: Graph, k: int, block: int | None = None) -> list[int]:
    s = g.n if block is None else block
    return [f[v] // s for v in range(g.n)]


def bipartite_packing_encoding(g1: Graph, x1: Iterable[int], g2: Graph, x2: Iterable[int]) -> Triple:
    """Packings of the result are the packings sending ``X1 -> X2`` and ``Y1 -> Y2``."""
    if g1.n != g2.n:
        raise ValueError(f"total vertex counts differ: {g1.n} vs {g2.n}")
    n = g1.n
    xs1 = set(x1)
    xs2 = set(x2)
    for x in xs1 | xs2:
        if not 0 <= x < n:
            raise ValueError(f"vertex {x} out of range for n={n}")
    yellow = [(u, w) for u in range(n) for w in range(n) if (u in xs1) != (w in xs2)]
    return build_triple(n, g1.edges(), g2.edges(), yellow)


def fixed_point_free_encoding(g: Graph) -> Triple:
    return build_triple(g.n, g.edges(), g.edges(), [(v, v) for v in range(g.n)])


def family_triple(tag: str, n: int | None = None, m: int | None = None, mp: int | None = None,
                  k: int | None = None) -> Triple:
    """Dispatch used by the CLI: any FAMILY_TAGS member to a triple."""
    tag = tag.upper()
    if tag.startswith("BE") and tag[2:].isdigit():
        t = be_bad_pair_triple(int(tag[2:]))
        if n is not None and n != t.n:
            raise ValueError(f"{tag} has n={t.n}, not {n}")
        return t
    if n is None:
        raise ValueError(f"{tag} needs --n")
    if tag == "KK_BIPARTITE":
        return kk_exception("bipartite", n)
    if tag == "KK_CLIQUE":
        return kk_exception("clique", n)
    return sharpness_family(tag, n, m=m, mp=mp, k=k)

