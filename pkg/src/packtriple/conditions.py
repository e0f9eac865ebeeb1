"""Hypothesis checkers: which packing theorem applies to a triple and what it predicts."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .core import (
    Graph,
    Triple,
    are_isomorphic,
    has_clique,
    is_complete_bipartite_balanced,
    is_perfect_matching,
    max_degrees,
)
from .generators import be_bad_pair

THEOREMS = ("ss_product", "lemma7", "cor8", "be")


class Prediction(str, Enum):
    MUST_PACK = "must_pack"
    EXCEPTION_NO_PACK = "exception_no_pack"
    NO_PREDICTION = "no_prediction"


class Cor8Outcome(str, Enum):
    PACKS = "packs"
    FULL_YELLOW_VERTEX = "full_yellow_vertex"
    K2_K2 = "k2_k2"


@dataclass(frozen=True)
class HypothesisReport:
    theorem: str
    hypothesis_holds: bool
    exception: str | None
    predicted: Prediction
    strict: bool | None = None  # ss_product only: 2(D1*D2 + D3) < n
    case: Cor8Outcome | None = None  # cor8 only

    def __post_init__(self):
        if self.predicted is Prediction.MUST_PACK:
            assert self.hypothesis_holds and self.exception is None
        if self.predicted is Prediction.EXCEPTION_NO_PACK:
            assert self.exception is not None

    def line(self) -> str:
        yn = {True: "yes", False: "no", None: "-"}
        parts = [
            self.theorem,
            f"hypothesis={yn[self.hypothesis_holds]}",
            f"exception={self.exception or '-'}",
            f"predicted={self.predicted.value}",
        ]
        if self.theorem == "ss_product":
            parts.append(f"strict={yn[self.strict]}")
        if self.theorem == "cor8":
            parts.append(f"case={self.case.value if self.case else '-'}")
        return " ".join(parts)


def _predict(holds: bool, exception: str | None) -> Prediction:
    if exception is not None:
        return Prediction.EXCEPTION_NO_PACK
    return Prediction.MUST_PACK if holds else Prediction.NO_PREDICTION


def kk_partner_kind(g: Graph) -> str | None:
    """'bipartite' or 'clique' if g is a partner that blocks a perfect matching, else None."""
    n = g.n
    if n % 2:
        return None
    if (n // 2) % 2 == 1 and is_complete_bipartite_balanced(g):
        return "bipartite"
    if has_clique(g, n // 2 + 1):
        return "clique"
    return None


def kk_exception_kind(g1: Graph, g2: Graph) -> str | None:
    for a, b in ((g1, g2), (g2, g1)):
        if is_perfect_matching(a):
            kind = kk_partner_kind(b)
            if kind is not None:
                return f"kk_{kind}"
    return None


def check_ss_product(t: Triple, *, drop_exceptions: bool = False) -> HypothesisReport:
    d1, d2, d3 = max_degrees(t)
    twice = 2 * (d1 * d2 + d3)
    holds = twice <= t.n
    exception = None
    if d3 == 0 and not drop_exceptions:
        exception = kk_exception_kind(t.g1, t.g2)
    return HypothesisReport("ss_product", holds, exception, _predict(holds, exception),
                            strict=twice < t.n)


def lemma7_bound(n: int) -> int:
    return (3 * n) // 2 - 2


def lemma7_holds(t: Triple) -> bool:
    return max_degrees(t)[2] <= t.n - 1 and t.edge_sum <= lemma7_bound(t.n)


def check_edge_sum_lemma7(t: Triple) -> HypothesisReport:
    holds = lemma7_holds(t)
    return HypothesisReport("lemma7", holds, None, _predict(holds, None))


def cor8_case(t: Triple) -> Cor8Outcome:
    n = t.n
    if any(m.bit_count() == n for m in t.y1) or any(m.bit_count() == n for m in t.y2):
        return Cor8Outcome.FULL_YELLOW_VERTEX
    if n == 2 and t.e1 == 1 and t.e2 == 1:
        return Cor8Outcome.K2_K2
    return Cor8Outcome.PACKS


def check_cor8(t: Triple) -> HypothesisReport:
    if t.n < 2:
        raise ValueError(f"the n-edge trichotomy needs n >= 2, got n={t.n}")
    holds = t.edge_sum <= t.n
    if not holds:
        return HypothesisReport("cor8", False, None, Prediction.NO_PREDICTION)
    case = cor8_case(t)
    exception = None if case is Cor8Outcome.PACKS else case.value
    return HypothesisReport("cor8", True, exception, _predict(True, exception), case=case)


@lru_cache(maxsize=None)
def _bad_pair_table() -> dict[int, list[tuple[int, Graph, Graph]]]:
    table: dict[int, list[tuple[int, Graph, Graph]]] = {}
    for i in range(1, 8):
        a, b = be_bad_pair(i)
        table.setdefault(a.n, []).append((i, a, b))
    return table


def detect_be_bad_pair(g1: Graph, g2: Graph) -> int | None:
    if g1.n != g2.n:
        return None
    e1, e2 = g1.num_edges, g2.num_edges
    for i, a, b in _bad_pair_table().get(g1.n, ()):
        ea, eb = a.num_edges, b.num_edges
        if (e1, e2) == (ea, eb) and are_isomorphic(g1, a) and are_isomorphic(g2, b):
            return i
        if (e1, e2) == (eb, ea) and are_isomorphic(g1, b) and are_isomorphic(g2, a):
            return i
    return None


def be_holds(t: Triple) -> bool:
    n = t.n
    d1, d2, d3 = max_degrees(t)
    return d1 <= n - 2 and d2 <= n - 2 and d3 <= n - 1 and t.edge_sum <= 2 * n - 3


def check_be(t: Triple, *, drop_exceptions: bool = False) -> HypothesisReport:
    holds = be_holds(t)
    exception = None
    if holds and not drop_exceptions:
        idx = detect_be_bad_pair(t.g1, t.g2)
        if idx is not None:
            # a bad pair already uses all 2n-3 edges
            assert t.e3 == 0, "bad pair with yellow edges inside the hypothesis"
            exception = f"be_bad_pair_{idx}"
    return HypothesisReport("be", holds, exception, _predict(holds, exception))


CHECKERS = {
    "ss_product": check_ss_product,
    "lemma7": check_edge_sum_lemma7,
    "cor8": check_cor8,
    "be": check_be,
}


def check_all(t: Triple) -> list[HypothesisReport | None]:
    """Reports in the fixed order of THEOREMS; cor8 is None when n < 2."""
    out: list[HypothesisReport | None] = []
    for name in THEOREMS:
        if name == "cor8" and t.n < 2:
            out.append(None)
        else:
            out.append(CHECKERS[name](t))
    return out
