import sys
import itertools

from hypothesis import strategies as st

from packtriple.core import Graph, Triple, build_triple


@st.composite
def graphs(draw, n=None, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def triples(draw, min_n=1, max_n=6, max_yellow=None):
    n = draw(st.integers(min_n, max_n))
    g1 = draw(graphs(n=n))
    g2 = draw(graphs(n=n))
    cells = [(u, w) for u in range(n) for w in range(n)]
    yellow = draw(st.lists(st.sampled_from(cells), unique=True, max_size=max_yellow or len(cells)))
    return build_triple(n, g1.edges(), g2.edges(), yellow)


@st.composite
def triple_and_perm(draw, **kw):
    t: Triple = draw(triples(**kw))
    perm = draw(st.permutations(range(t.n)))
    return t, tuple(perm)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(mod.RESULTS, key=lambda c: int(c[1:])):
        terminalreporter.write_line(mod.RESULTS[cid])
