"""Bin censuses of normal deviates against exact normal probabilities.

The central object is BinCensus: observed bin counts q_i = z_i / N next
to exact probabilities p_i, with relative deviations eps_i = q_i/p_i - 1.
Under a perfect generator eps_i -> 0 as N grows; a deterministic sweep
of every possible seed has no sampling noise at all, so nonzero eps is
structure, not luck.

first_output_bin_census runs that sweep: one normal deviate from every
seed value, binned by the ziggurat's own strip boundaries. Each strip's
probability is a few parts in a thousand, so the per-strip counts are
around 2^32 * 0.002 ~ 8.6 million and relative deviations of a few
parts in 10^4 stand far above any rounding effect.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from .._bridge import VID_BY_VARIANT, kernel_tables, make_regs
from ..ziggurat import ZigguratTable, build_table
from .chi2 import detection_sample_size, normal_bin_probs

# Seeds per kernel call when sweeping; small enough for progress
# callbacks, large enough that call overhead is invisible.
_SWEEP_SPAN = 1 << 26


@dataclass
class BinCensus:
    """Observed vs exact occupancy of a set of |x| bins."""

    edges: np.ndarray  # nbins + 1 values, last may be inf
    counts: np.ndarray  # int64, nbins
    trials: int
    p: np.ndarray  # exact probabilities, sum ~ coverage of the edges
    q: np.ndarray  # counts / trials
    eps: np.ndarray  # q/p - 1

    @property
    def nbins(self) -> int:
        return len(self.counts)

    def weighted_sq_deviation(self) -> float:
        """sum p_i eps_i^2, the chi-square drift rate per sample."""
        return float(np.sum(self.p * self.eps * self.eps))

    def detection_size(self) -> int:
        """Samples needed before a chi-square test flags these eps."""
        return detection_sample_size(self.p, self.eps)


def census_from_counts(
    edges: np.ndarray, counts: np.ndarray, trials: int, p: np.ndarray
) -> BinCensus:
    q = counts / float(trials)
    eps = q / p - 1.0
    return BinCensus(
        edges=np.asarray(edges, dtype=np.float64),
        counts=np.asarray(counts, dtype=np.int64),
        trials=int(trials),
        p=np.asarray(p, dtype=np.float64),
        q=q,
        eps=eps,
    )


def _sweep_spans(seed_lo: int, seed_hi: int) -> list[tuple[int, int]]:
    spans = []
    s = seed_lo
    while s < seed_hi:
        e = min(s + _SWEEP_SPAN, seed_hi)
        spans.append((s, e))
        s = e
    return spans


def first_output_bin_census(
    variant: str = "shr3",
    k: int = 128,
    seed_lo: int = 1,
    seed_hi: int = 1 << 32,
    workers: int = 1,
    table: ZigguratTable | None = None,
    progress=None,
) -> BinCensus:
    """First normal deviate from every seed in [seed_lo, seed_hi), binned
    by the k-strip ziggurat's own boundaries.

    Bin i (0-based) covers [x_i, x_{i+1}) with x_0 = 0; the last bin is
    [r, inf). The seed goes into the word-generator register that the
    variant derives its stream from; the remaining registers start from
    the standard defaults for every seed.
    """
    if variant not in VID_BY_VARIANT:
        raise ValueError(f"unknown variant {variant!r}")
    if not 1 <= seed_lo < seed_hi <= 1 << 32:
        raise ValueError("seed range must satisfy 1 <= lo < hi <= 2^32")
    if table is None:
        table = build_table(k)
    vid = VID_BY_VARIANT[variant]
    kn, wn, fn, r, kmask = kernel_tables(table)
    edges = np.ascontiguousarray(table.x, dtype=np.float64)
    template = make_regs(variant)
    spans = _sweep_spans(seed_lo, seed_hi)
    done = 0

    if workers <= 1:
        counts = np.zeros(table.k, dtype=np.int64)
        for lo, hi in spans:
            _kernels.first_output_sweep(
                vid, lo, hi, template, kn, wn, fn, r, kmask, edges, counts
            )
            done += 1
            if progress is not None:
                progress(done, len(spans))
        total = counts
    else:
        # One counts array per span: spans are tiny (k int64 slots) and
        # private arrays keep concurrent kernel calls from racing.
        arrays = [np.zeros(table.k, dtype=np.int64) for _ in spans]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(
                    _kernels.first_output_sweep,
                    vid, lo, hi, template, kn, wn, fn, r, kmask,
                    edges, arrays[i],
                )
                for i, (lo, hi) in enumerate(spans)
            ]
            for f in futs:
                f.result()
                done += 1
                if progress is not None:
                    progress(done, len(spans))
        total = arrays[0]
        for arr in arrays[1:]:
            total = total + arr

    prob_edges = np.append(edges, np.inf)
    p = normal_bin_probs(prob_edges)
    return census_from_counts(prob_edges, total, seed_hi - seed_lo, p)


def top_deviation_ranking(census: BinCensus, n: int = 8) -> list[int]:
    """Bins ordered by their contribution p*eps^2 to the chi-square
    drift, largest first. Returns 1-based strip indices (strip i covers
    [x_{i-1}, x_i))."""
    contrib = census.p * census.eps * census.eps
    order = np.argsort(-contrib, kind="stable")
    return [int(j) + 1 for j in order[:n]]
