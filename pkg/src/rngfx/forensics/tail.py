"""Exhaustive audit of the normal sampler's tail branch.

The tail branch (strip index 0) only runs when the driving word has all
seven low bits zero AND |hz| >= kn[0], so its entries are enumerable:
words 128*m for m in [1, 2^25). When the word source is the bare
xorshift, the word IS the register, so the uniforms consumed inside the
tail loop are fully determined by the entering word. One pass therefore
yields the exact distribution of every tail deviate the sampler can
ever produce, conditioned on reaching the tail.

Binned against exact conditional normal probabilities, this shows the
tail output leaning on the wrong side of 4 and starving beyond 5: the
uniforms that drive the tail loop are correlated with the word that
selected the tail in the first place.
"""

from __future__ import annotations

import math

import numpy as np

from .. import _kernels
from ..ziggurat import ZigguratTable, build_table
from .bins import BinCensus, census_from_counts
from .chi2 import normal_bin_probs

# Interior edges above the tail start; chosen to resolve the region
# where the conditional density still has appreciable mass.
TAIL_EDGES_ABOVE_R = (3.75, 4.0, 4.25, 4.5, 4.75, 5.0, 5.5)


def tail_audit_shr0(
    table: ZigguratTable | None = None,
) -> tuple[int, BinCensus]:
    """(entering_count, census of tail deviates from the xorshift source).

    The census's p column holds conditional probabilities
    Pr{|Z| in bin} / Pr{|Z| >= r}, its q column the observed share of
    entering states landing in each bin.
    """
    if table is None:
        table = build_table(128)
    r = float(table.r)
    kn0 = int(table.kn[0])
    edges = np.array((r,) + TAIL_EDGES_ABOVE_R, dtype=np.float64)
    counts = np.zeros(len(edges), dtype=np.int64)
    entering = int(_kernels.tail_audit(kn0, r, edges, counts))
    if counts.sum() != entering:
        raise AssertionError("tail census lost deviates")
    prob_edges = np.append(edges, np.inf)
    masses = normal_bin_probs(prob_edges)
    tail_mass = math.erfc(r / math.sqrt(2.0))
    p = masses / tail_mass
    return entering, census_from_counts(prob_edges, counts, entering, p)
