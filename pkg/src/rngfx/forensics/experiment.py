"""Growth of the chi-square statistic with sample size.

A structurally biased generator has fixed relative bin deviations eps,
so E[T] grows linearly: (k-1) + (N-1) * sum(p eps^2) + sum(eps). The
experiment draws normal deviates, bins them, and evaluates T at
geometrically spaced checkpoints; a sound generator hugs k-1 forever
while a flawed one crosses any threshold once N reaches about
sqrt(2k) / sum(p eps^2).

Two draw protocols are supported. "stream" runs one continuous stream
from a single seeded state, exposing the stationary bias of the word
sequence. "restart" reseeds the shift register for every draw
(sequential seeds, one deviate each), exposing the first-output bias:
the deviate is then a deterministic function of the seed, so the bin
deviations equal the full seed-sweep deviations and the statistic
grows much faster for generators whose first output is biased.

Binning covers [-7, 7] in equal widths. True normal mass outside is
~2.6e-12, so at feasible N the expected overflow is well under one
deviate; overflows are tallied separately, excluded from T, and the
bin probabilities are renormalized over the covered range. Outer bins
are merged outward-in at each checkpoint until every group expects at
least 5 counts, the standard validity floor for the chi-square
approximation; the effective group count k_eff therefore grows with N
and is reported alongside T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from .._bridge import VID_BY_VARIANT, kernel_tables, make_regs
from ..generators import ICNG_SEED_DEFAULT, MWC_W_DEFAULT, MWC_Z_DEFAULT
from ..ziggurat import build_table
from .chi2 import Chi2Report, chi2_statistic, signed_bin_probs

DEFAULT_CHECKPOINTS = tuple(1 << b for b in range(20, 35, 2))
MIN_EXPECTED = 5.0
_BATCH = 1 << 26


def merged_partition(
    p: np.ndarray, trials: int, min_expected: float = MIN_EXPECTED
) -> list[tuple[int, int]]:
    """Contiguous groups covering all bins, each expecting >= min_expected.

    Groups are grown greedily from each end toward the center, so only
    low-probability outer bins get merged. An innermost remnant that
    cannot reach the floor joins its neighbor group. Returns half-open
    (start, stop) ranges in ascending order.
    """
    kbins = len(p)
    half = kbins // 2

    def side(indices: range) -> list[list[int]]:
        groups: list[list[int]] = []
        cur: list[int] = []
        acc = 0.0
        for j in indices:
            cur.append(j)
            acc += p[j]
            if acc * trials >= min_expected:
                groups.append(cur)
                cur = []
                acc = 0.0
        if cur:
            if groups:
                groups[-1].extend(cur)
            else:
                groups.append(cur)
        return groups

    ranges = [(g[0], g[-1] + 1) for g in side(range(half))]
    right = [(g[-1], g[0] + 1) for g in side(range(kbins - 1, half - 1, -1))]
    ranges.extend(reversed(right))
    if ranges[0][0] != 0 or ranges[-1][1] != kbins:
        raise AssertionError("partition does not cover the bins")
    for (a, b), (c, d) in zip(ranges, ranges[1:]):
        if b != c:
            raise AssertionError("partition ranges are not contiguous")
    return ranges


def group_sums(values: np.ndarray, ranges: list[tuple[int, int]]) -> np.ndarray:
    return np.array([values[a:b].sum() for a, b in ranges])


@dataclass
class CheckpointRow:
    """Chi-square evaluation of the stream after n_nominal deviates."""

    n_nominal: int
    inside: int  # deviates that landed in [-7, 7)
    overflow: int
    k_eff: int
    statistic: float
    threshold: float
    verdict: str


@dataclass
class ExperimentResult:
    variant: str
    k: int
    nbins: int
    lo: float
    hi: float
    c: float
    protocol: str = "stream"
    rows: list[CheckpointRow] = field(default_factory=list)

    def final(self) -> CheckpointRow:
        return self.rows[-1]


def normal_chi2_experiment(
    variant: str = "shr3",
    checkpoints=DEFAULT_CHECKPOINTS,
    nbins: int = 200,
    lo: float = -7.0,
    hi: float = 7.0,
    k: int = 128,
    c: float = 3.0,
    jsr: int = 1,
    icng: int = ICNG_SEED_DEFAULT,
    z: int = MWC_Z_DEFAULT,
    w: int = MWC_W_DEFAULT,
    extra: int = 0,
    protocol: str = "stream",
    progress=None,
) -> ExperimentResult:
    """Draw deviates from one generator, reporting T at each checkpoint.

    Checkpoints must be increasing; draws are continuous across them
    (deviate n is the same regardless of the checkpoint schedule). With
    protocol="restart" each draw restarts the generator with the next
    seed (jsr, jsr+1, ...) and the other registers at their given
    values, so checkpoint n means n seeds consumed.
    """
    if variant not in VID_BY_VARIANT:
        raise ValueError(f"unknown variant {variant!r}")
    if protocol not in ("stream", "restart"):
        raise ValueError(f"unknown protocol {protocol!r}")
    checkpoints = sorted(int(n) for n in checkpoints)
    if not checkpoints or checkpoints[0] < 1:
        raise ValueError("need at least one positive checkpoint")
    if len(set(checkpoints)) != len(checkpoints):
        raise ValueError("checkpoints must be distinct")
    if not (lo < hi and nbins >= 8):
        raise ValueError("need lo < hi and at least 8 bins")
    if protocol == "restart":
        if variant in ("ideal", "cng"):
            raise ValueError("restart protocol needs a shift-register variant")
        if jsr < 1 or jsr + checkpoints[-1] - 1 >= 1 << 32:
            raise ValueError("restart seeds must stay within 1..2^32-1")
    table = build_table(k)
    vid = VID_BY_VARIANT[variant]
    kn, wn, fn, r, kmask = kernel_tables(table)
    regs = make_regs(variant, jsr=jsr, icng=icng, z=z, w=w, extra=extra)
    base_p = signed_bin_probs(lo, hi, nbins)
    p = base_p / base_p.sum()
    inv_width = nbins / (hi - lo)
    counts = np.zeros(nbins, dtype=np.int64)
    overflow = 0
    drawn = 0
    result = ExperimentResult(
        variant=variant, k=k, nbins=nbins, lo=lo, hi=hi, c=c,
        protocol=protocol,
    )
    for target in checkpoints:
        while drawn < target:
            batch = min(_BATCH, target - drawn)
            if protocol == "stream":
                overflow += int(
                    _kernels.stream_deviates_binned(
                        vid, regs, batch, kn, wn, fn, r, kmask,
                        lo, inv_width, nbins, counts,
                    )
                )
            else:
                seed_lo = jsr + drawn
                overflow += int(
                    _kernels.restart_deviates_binned(
                        vid, regs, seed_lo, seed_lo + batch,
                        kn, wn, fn, r, kmask,
                        lo, inv_width, nbins, counts,
                    )
                )
            drawn += batch
            if progress is not None:
                progress(drawn, checkpoints[-1])
        inside = int(counts.sum())
        ranges = merged_partition(p, inside)
        gp = group_sums(p, ranges)
        gc = group_sums(counts.astype(np.float64), ranges)
        report: Chi2Report = chi2_statistic(gc, gp, trials=inside, c=c)
        result.rows.append(
            CheckpointRow(
                n_nominal=target,
                inside=inside,
                overflow=overflow,
                k_eff=len(ranges),
                statistic=report.statistic,
                threshold=report.threshold,
                verdict=report.verdict,
            )
        )
    return result
