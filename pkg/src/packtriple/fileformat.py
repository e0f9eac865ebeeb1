"""Line-oriented text format for triples and packing witnesses.

::

    # comment
    triple 4
    g1 0 1
    g2 1 2
    g3 0 3

``g3 u w`` is a yellow edge from ``u in V1`` to ``w in V2``. A witness is a
single line ``packing p0 p1 ... p(n-1)`` meaning ``f(i) = pi``.
"""

from __future__ import annotations

from .core import PackingMap, Triple, build_triple


class TripleFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _columns(raw: str) -> list[tuple[int, str]]:
    """Whitespace-split tokens paired with their 1-based starting column."""
    out = []
    i = 0
    while i < len(raw):
        if raw[i].isspace():
            i += 1
            continue
        j = i
        while j < len(raw) and not raw[j].isspace():
            j += 1
        out.append((i + 1, raw[i:j]))
        i = j
    return out


def parse_triple_file(text: str) -> Triple:
    n = None
    white = {"g1": [], "g2": [], "g3": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0]
        toks = _columns(raw)
        if not toks:
            continue
        col, tag = toks[0]
        if n is None:
            if tag != "triple" or len(toks) != 2:
                raise TripleFormatError("expected header 'triple <n>'", lineno, col)
            try:
                n = int(toks[1][1])
            except ValueError:
                raise TripleFormatError(f"bad vertex count {toks[1][1]!r}", lineno, toks[1][0]) from None
            if n < 1:
                raise TripleFormatError(f"vertex count must be >= 1, got {n}", lineno, toks[1][0])
            continue
        if tag not in white:
            raise TripleFormatError(f"unknown line tag {tag!r}", lineno, col)
        if len(toks) != 3:
            raise TripleFormatError(f"'{tag}' takes exactly two vertices", lineno, col)
        ends = []
        for c, tok in toks[1:]:
            try:
                x = int(tok)
            except ValueError:
                raise TripleFormatError(f"bad vertex {tok!r}", lineno, c) from None
            if not 0 <= x < n:
                raise TripleFormatError(f"vertex {x} out of range for n={n}", lineno, c)
            ends.append(x)
        if tag != "g3" and ends[0] == ends[1]:
            raise TripleFormatError(f"self-loop at vertex {ends[0]} in {tag}", lineno, toks[1][0])
        white[tag].append((ends[0], ends[1]))
    if n is None:
        raise TripleFormatError("missing header 'triple <n>'", 1)
    return build_triple(n, white["g1"], white["g2"], white["g3"])


def format_triple(t: Triple, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"triple {t.n}")
    lines.extend(f"g1 {u} {v}" for u, v in t.g1.edges())
    lines.extend(f"g2 {u} {v}" for u, v in t.g2.edges())
    lines.extend(f"g3 {u} {w}" for u, w in sorted(t.yellow_pairs()))
    return "\n".join(lines) + "\n"


def format_packing(f: PackingMap) -> str:
    return "packing" + "".join(f" {w}" for w in f.perm)


def parse_packing(text: str) -> PackingMap:
    toks = text.split()
    if not toks or toks[0] != "packing":
        raise ValueError("expected a line starting with 'packing'")
    perm = PackingMap(tuple(int(x) for x in toks[1:]))
    if not perm.is_bijection():
        raise ValueError("witness is not a permutation")
    return perm
