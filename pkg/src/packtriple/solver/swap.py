"""Single-conflict swap repair and the edge-insertion packer built on it."""

from __future__ import annotations

from ..conditions import kk_exception_kind
from ..core import PackingMap, Triple, is_packing, iter_bits, max_degrees
from .exact import Conflict, backtrack_pack, find_conflicts


def _image(f: list[int], mask: int, skip: int, extra: int) -> int:
    """Mask of f(x) over x in ``mask``; ``skip`` is redirected to ``extra``."""
    out = 0
    for x in iter_bits(mask):
        out |= 1 << (extra if x == skip else f[x])
    return out


def swap_repair(t: Triple, f: PackingMap, c: Conflict) -> PackingMap | None:
    """Clear a lone yellow conflict ``v -> w`` by trading images with some ``a``.

    For ``a`` in ascending order, with ``b = f(a)``, the map ``f_a`` sends
    ``v -> b`` and ``a -> w``. It is accepted when
    (i) ``f_a(N1(a))`` misses ``N2(w)``, (ii) ``f_a(N1(v))`` misses ``N2(b)``,
    (iii) ``b`` is not a yellow neighbour of ``v``, (iv) ``w`` is not one of ``a``.
    """
    if c.kind != "yellow":
        raise ValueError("swap_repair only repairs yellow conflicts")
    if find_conflicts(t, f) != [c]:
        raise ValueError("swap_repair needs the given conflict to be the only one")
    (v,) = c.witness
    perm = list(f.perm)
    w = perm[v]
    adj1, adj2 = t.g1.adj, t.g2.adj
    for a in range(t.n):
        if a == v:
            continue
        b = perm[a]
        if t.y1[v] >> b & 1:  # (iii)
            continue
        if t.y1[a] >> w & 1:  # (iv)
            continue
        if _image(perm, adj1[a], v, b) & adj2[w]:  # (i)
            continue
        if _image(perm, adj1[v], a, w) & adj2[b]:  # (ii)
            continue
        perm[v], perm[a] = b, w
        out = PackingMap(tuple(perm))
        assert is_packing(t, out), "swap conditions (i)-(iv) held but the map conflicts"
        return out
    return None


def ss_product_applicable(t: Triple) -> bool:
    d1, d2, d3 = max_degrees(t)
    twice = 2 * (d1 * d2 + d3)
    if twice < t.n:
        return True
    return twice <= t.n and not (d3 == 0 and kk_exception_kind(t.g1, t.g2))


def constructive_ss_product(t: Triple) -> PackingMap:
    """Pack the white graphs alone, then insert yellow edges in lexicographic
    order, repairing each newly created conflict with one swap."""
    if not ss_product_applicable(t):
        raise ValueError("triple is outside the degree-product hypothesis or is an exception")
    base = Triple(t.n, t.g1, t.g2, (0,) * t.n)
    f = backtrack_pack(base)
    if f is None:
        raise AssertionError("white graphs failed to pack under the product hypothesis")
    y1 = list(base.y1)
    for u, w in sorted(t.yellow_pairs()):
        y1[u] |= 1 << w
        if f[u] != w:
            continue
        cur = Triple(t.n, t.g1, t.g2, tuple(y1))
        repaired = swap_repair(cur, f, Conflict("yellow", (u,)))
        if repaired is None:
            raise AssertionError(f"no swap repairs yellow edge ({u}, {w})")
        f = repaired
    assert is_packing(t, f), "edge-insertion packer produced a non-packing"
    return f
