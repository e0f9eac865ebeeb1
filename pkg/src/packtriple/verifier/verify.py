"""Empirical verification of the packing theorems over enumerated triples."""

from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..conditions import CHECKERS, THEOREMS, Cor8Outcome, Prediction, lemma7_holds
from ..core import Triple, is_packing
from ..fileformat import format_triple
from ..solver.be import constructive_pack_be
from ..solver.exact import BRUTE_FORCE_MAX_N, backtrack_pack, brute_force_pack
from ..solver.lemma7 import constructive_lemma7
from ..solver.swap import constructive_ss_product
from . import kernel as K
from .enumerate import EnumSpec, SlotLayout, check_guard, enumerate_ranked, partition_work, window

CROSS_CHECK_MAX_N = 6
KERNEL_AUTO_MIN = 200_000


@dataclass(frozen=True)
class Counterexample:
    rank: int
    kind: str
    text: str
    path: str | None = None


@dataclass
class VerificationReport:
    theorem: str
    spec: EnumSpec
    instances_checked: int = 0
    with_prediction: int = 0
    predicted_pack: int = 0
    predicted_nopack: int = 0
    predicted_pack_confirmed: int = 0
    predicted_nopack_confirmed: int = 0
    exceptions: Counter = field(default_factory=Counter)
    constructive_runs: int = 0
    constructive_trace: Counter = field(default_factory=Counter)
    counterexamples: list[Counterexample] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def consistent(self) -> bool:
        confirmed = self.predicted_pack_confirmed + self.predicted_nopack_confirmed
        return (not self.counterexamples) == (confirmed == self.with_prediction)

    def merge(self, other: VerificationReport) -> VerificationReport:
        out = VerificationReport(self.theorem, self.spec)
        for name in ("instances_checked", "with_prediction", "predicted_pack", "predicted_nopack",
                     "predicted_pack_confirmed", "predicted_nopack_confirmed", "constructive_runs"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.exceptions = self.exceptions + other.exceptions
        out.constructive_trace = self.constructive_trace + other.constructive_trace
        out.counterexamples = sorted(self.counterexamples + other.counterexamples, key=lambda c: (c.rank, c.kind))
        out.wall_time = max(self.wall_time, other.wall_time)
        return out

    def render(self, *, wall_time: bool = True) -> str:
        s = self.spec
        caps = "-" if s.degree_caps is None else ",".join("-" if c is None else str(c) for c in s.degree_caps)
        menu = "-" if not s.cap_menu else ";".join(
            ",".join("-" if c is None else str(c) for c in m) for m in s.cap_menu)
        mode = "exhaustive" if s.mode == "exhaustive" else f"sample count={s.count} seed={s.seed}"
        lines = [
            f"theorem: {self.theorem}",
            f"n: {s.n}",
            f"mode: {mode}",
            f"max_edge_sum: {s.max_edge_sum}",
            f"degree_caps: {caps}",
            f"cap_menu: {menu}",
            f"instances_checked: {self.instances_checked}",
            f"with_prediction: {self.with_prediction}",
            f"predicted_pack: {self.predicted_pack}",
            f"predicted_nopack: {self.predicted_nopack}",
            f"predicted_pack_confirmed: {self.predicted_pack_confirmed}",
            f"predicted_nopack_confirmed: {self.predicted_nopack_confirmed}",
            "exceptions: " + (" ".join(f"{k}={v}" for k, v in sorted(self.exceptions.items())) or "-"),
            f"constructive_runs: {self.constructive_runs}",
            "constructive_trace: " + (" ".join(f"{k}={v}" for k, v in sorted(self.constructive_trace.items())) or "-"),
            f"counterexamples: {len(self.counterexamples)}",
        ]
        for c in self.counterexamples:
            lines.append(f"counterexample: rank={c.rank} kind={c.kind}" + (f" file={c.path}" if c.path else ""))
        if wall_time:
            lines.append(f"wall_time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        return (f"theorem={self.theorem} n={self.spec.n} checked={self.instances_checked} "
                f"counterexamples={len(self.counterexamples)}")


# ---------------------------------------------------------------- per-triple route

def _constructive(theorem: str, t: Triple, trace: Counter):
    if theorem == "ss_product":
        return constructive_ss_product(t)
    if theorem == "lemma7":
        return constructive_lemma7(t, strict=True, trace=trace)
    if theorem == "be":
        return constructive_pack_be(t, trace=trace)
    # cor8's packing case sits inside the edge-sum lemma from n = 4 on
    if lemma7_holds(t):
        return constructive_lemma7(t, strict=True, trace=trace)
    return backtrack_pack(t)


@dataclass
class _Outcome:
    predicted: Prediction
    exception: str | None
    kinds: list[str]
    constructed: bool = False


def evaluate_triple(theorem: str, t: Triple, *, drop_exceptions: bool = False,
                    constructive: bool = False, trace: Counter | None = None) -> _Outcome:
    """Check one triple against a theorem; ``kinds`` lists the violations found."""
    if theorem in ("ss_product", "be"):
        rep = CHECKERS[theorem](t, drop_exceptions=drop_exceptions)
    else:
        rep = CHECKERS[theorem](t)
    out = _Outcome(rep.predicted, rep.exception, [])
    if rep.predicted is Prediction.NO_PREDICTION:
        return out
    kinds = out.kinds
    f = backtrack_pack(t)
    if f is not None and not is_packing(t, f):
        kinds.append("invalid_witness")
    g = None
    if t.n <= CROSS_CHECK_MAX_N or (rep.predicted is Prediction.EXCEPTION_NO_PACK and t.n <= BRUTE_FORCE_MAX_N):
        g = brute_force_pack(t)
        if (f is None) != (g is None):
            kinds.append("solver_disagreement")
        if g is not None and not is_packing(t, g):
            kinds.append("invalid_witness")
    found = f is not None or g is not None
    if rep.predicted is Prediction.MUST_PACK and not found:
        kinds.append("predicted_pack_has_none")
    if rep.predicted is Prediction.EXCEPTION_NO_PACK and found:
        kinds.append("predicted_nopack_packs")
    if theorem == "cor8":
        full = any(m.bit_count() == t.n for m in t.y1 + t.y2)
        k2 = t.n == 2 and t.e1 == 1 and t.e2 == 1 and t.e3 == 0
        if full and k2:
            kinds.append("trichotomy_overlap")
        if (rep.case is Cor8Outcome.FULL_YELLOW_VERTEX) != full or (rep.case is Cor8Outcome.K2_K2) != k2:
            kinds.append("trichotomy_misclassified")
    if constructive and rep.predicted is Prediction.MUST_PACK:
        out.constructed = True
        try:
            h = _constructive(theorem, t, Counter() if trace is None else trace)
            if h is None or not is_packing(t, h):
                kinds.append("constructive_invalid")
        except Exception as exc:  # recorded, not raised: the run must finish
            kinds.append(f"constructive_failed:{type(exc).__name__}")
    return out


class _Sink:
    """Collects counterexamples, writing each one to disk as soon as it is found."""

    def __init__(self, theorem: str, n: int, out_dir: str | None):
        self.theorem, self.n, self.out_dir = theorem, n, out_dir
        self.items: list[Counterexample] = []
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)

    def add(self, rank: int, kind: str, t: Triple) -> None:
        text = format_triple(t, comment=f"{self.theorem} counterexample rank={rank} kind={kind}")
        path = None
        if self.out_dir:
            path = os.path.join(self.out_dir, f"{self.theorem}_n{self.n}_rank{rank}.triple")
            with open(path, "w") as fh:
                fh.write(text)
        self.items.append(Counterexample(rank, kind, text, path))


def _tally(rep: VerificationReport, o: _Outcome) -> None:
    if o.predicted is Prediction.NO_PREDICTION:
        return
    rep.with_prediction += 1
    if o.exception is not None:
        rep.exceptions[o.exception] += 1
    ok = not o.kinds
    if o.predicted is Prediction.MUST_PACK:
        rep.predicted_pack += 1
        rep.predicted_pack_confirmed += ok
    else:
        rep.predicted_nopack += 1
        rep.predicted_nopack_confirmed += ok
    rep.constructive_runs += o.constructed


def _object_shard(theorem: str, spec: EnumSpec, out_dir, drop_exceptions, constructive) -> VerificationReport:
    rep = VerificationReport(theorem, spec)
    sink = _Sink(theorem, spec.n, out_dir)
    for rank, t in enumerate_ranked(spec):
        rep.instances_checked += 1
        o = evaluate_triple(theorem, t, drop_exceptions=drop_exceptions,
                            constructive=constructive, trace=rep.constructive_trace)
        _tally(rep, o)
        if o.kinds:
            sink.add(rank, ",".join(o.kinds), t)
    rep.counterexamples = sink.items
    return rep


def _kernel_shard(theorem: str, spec: EnumSpec, out_dir, drop_exceptions, constructive) -> VerificationReport:
    rep = VerificationReport(theorem, spec)
    sink = _Sink(theorem, spec.n, out_dir)
    tb = K.tables(spec.n)
    layout = SlotLayout(spec.n)
    lo, hi = window(spec)
    for first, masks in K.batched_blocks(spec.n, spec.max_edge_sum, lo, hi):
        ranks = np.arange(first, first + len(masks), dtype=np.int64)
        f = K.features(tb, masks)
        keep = K.within_caps(f, spec.degree_caps)
        if keep is not None:
            masks, ranks = masks[keep], ranks[keep]
            f = K.features(tb, masks)
        rep.instances_checked += len(masks)
        pred, code, labels = K.predict(theorem, tb, f, drop_exceptions)
        pk = K.packs(tb, f)
        must, exc = pred == 1, pred == 2
        flagged = (must & ~pk) | (exc & pk)
        if theorem == "be":
            flagged |= exc & (f.e3 > 0)
        rep.with_prediction += int(np.count_nonzero(pred))
        rep.predicted_pack += int(np.count_nonzero(must))
        rep.predicted_nopack += int(np.count_nonzero(exc))
        rep.predicted_pack_confirmed += int(np.count_nonzero(must & ~flagged))
        rep.predicted_nopack_confirmed += int(np.count_nonzero(exc & ~flagged))
        for c, cnt in zip(*np.unique(code[exc], return_counts=True)):
            rep.exceptions[labels[int(c)]] += int(cnt)
        for i in np.flatnonzero(flagged):
            t = layout.triple_from_mask(int(masks[i]))
            o = evaluate_triple(theorem, t, drop_exceptions=drop_exceptions)
            sink.add(int(ranks[i]), ",".join(o.kinds) or "engine_disagreement", t)
        if constructive:
            for i in np.flatnonzero(must & ~flagged):
                t = layout.triple_from_mask(int(masks[i]))
                rep.constructive_runs += 1
                try:
                    h = _constructive(theorem, t, rep.constructive_trace)
                    bad = None if h is not None and is_packing(t, h) else "constructive_invalid"
                except Exception as exc_:
                    bad = f"constructive_failed:{type(exc_).__name__}"
                if bad:
                    rep.predicted_pack_confirmed -= 1
                    sink.add(int(ranks[i]), bad, t)
    rep.counterexamples = sorted(sink.items, key=lambda c: c.rank)
    return rep


def _choose_engine(spec: EnumSpec, engine: str) -> str:
    if engine not in ("auto", "object", "kernel"):
        raise ValueError(f"unknown engine {engine!r}")
    kernel_ok = spec.mode == "exhaustive" and spec.n <= K.KERNEL_MAX_N
    if engine == "kernel" and not kernel_ok:
        raise ValueError("the kernel engine needs exhaustive mode and n <= 5")
    if engine == "auto":
        lo, hi = window(spec)
        return "kernel" if kernel_ok and hi - lo >= KERNEL_AUTO_MIN else "object"
    return engine


def _run_shard(args) -> VerificationReport:
    theorem, spec, engine, out_dir, drop, constructive = args
    t0 = time.perf_counter()
    fn = _kernel_shard if engine == "kernel" else _object_shard
    rep = fn(theorem, spec, out_dir, drop, constructive)
    rep.wall_time = time.perf_counter() - t0
    return rep


def _map(fn: Callable, jobs: list, workers: int) -> list:
    if workers == 1 or len(jobs) == 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def verify_theorem(theorem: str, spec: EnumSpec, *, workers: int = 1, engine: str = "auto",
                   out_dir: str | None = None, drop_exceptions: bool = False,
                   constructive: bool = False) -> VerificationReport:
    """Check every triple of ``spec`` against ``theorem``.

    ``drop_exceptions`` is a test hook that blinds the checker to its
    exceptional cases; ``constructive`` also runs the theorem's own packer
    on every must-pack instance.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    if theorem == "cor8" and spec.n < 2:
        raise ValueError("cor8 needs n >= 2")
    check_guard(spec)
    eng = _choose_engine(spec, engine)
    t0 = time.perf_counter()
    shards = partition_work(spec, workers)
    jobs = [(theorem, s, eng, out_dir, drop_exceptions, constructive) for s in shards]
    parts = _map(_run_shard, jobs, workers)
    rep = parts[0]
    for p in parts[1:]:
        rep = rep.merge(p)
    rep.spec = spec
    rep.wall_time = time.perf_counter() - t0
    assert rep.consistent, "report invariant broken"
    return rep


# ---------------------------------------------------------------- solver comparison

@dataclass
class ComparisonReport:
    spec: EnumSpec
    instances: int = 0
    packable: int = 0
    disagreements: list[Counterexample] = field(default_factory=list)
    wall_time: float = 0.0

    def merge(self, other: ComparisonReport) -> ComparisonReport:
        return ComparisonReport(self.spec, self.instances + other.instances, self.packable + other.packable,
                                sorted(self.disagreements + other.disagreements, key=lambda c: c.rank),
                                max(self.wall_time, other.wall_time))

    def render(self, *, wall_time: bool = True) -> str:
        lines = [f"n: {self.spec.n}", f"instances: {self.instances}", f"packable: {self.packable}",
                 f"disagreements: {len(self.disagreements)}"]
        lines += [f"disagreement: rank={d.rank} kind={d.kind}" for d in self.disagreements]
        if wall_time:
            lines.append(f"wall_time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"


def _compare_shard(spec: EnumSpec) -> ComparisonReport:
    t0 = time.perf_counter()
    rep = ComparisonReport(spec)
    for rank, t in enumerate_ranked(spec):
        rep.instances += 1
        f, g = backtrack_pack(t), brute_force_pack(t)
        kinds = []
        if (f is None) != (g is None):
            kinds.append("existence")
        if (f is not None and not is_packing(t, f)) or (g is not None and not is_packing(t, g)):
            kinds.append("invalid_witness")
        rep.packable += g is not None
        if kinds:
            rep.disagreements.append(Counterexample(rank, ",".join(kinds), format_triple(t)))
    rep.wall_time = time.perf_counter() - t0
    return rep


def compare_solvers(spec: EnumSpec, *, workers: int = 1) -> ComparisonReport:
    """Run backtrack_pack and brute_force_pack side by side over a stream."""
    check_guard(spec)
    if spec.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    t0 = time.perf_counter()
    parts = _map(_compare_shard, partition_work(spec, workers), workers)
    rep = parts[0]
    for p in parts[1:]:
        rep = rep.merge(p)
    rep.spec = spec
    rep.wall_time = time.perf_counter() - t0
    return rep
