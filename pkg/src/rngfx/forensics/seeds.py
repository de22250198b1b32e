"""Correlations between streams started from related seeds.

Two algebraic facts make "nearby" seeds dangerous:

* The xorshift transform T is linear over GF(2), so states satisfy
  T^t(u) xor T^t(v) = T^t(u xor v) for all t. Any four seeds whose
  XOR vanishes produce four state streams whose XOR vanishes forever,
  and the word stream of the bare xorshift IS the state stream.

* The linear-congruential register evolves differences multiplicatively:
  c_a(t) - c_b(t) = 69069^t * (c_a(0) - c_b(0)) mod 2^32. The multiplier
  is odd, so a difference divisible by 2^b stays divisible by 2^b; two
  icng seeds congruent mod 64 give combined outputs whose low 6 bits
  agree at every single step.

Both effects survive into the normal sampler because the strip index
and the sign come straight from low/high bits of the word.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .. import _kernels
from .._bridge import VID_BY_VARIANT, make_regs
from ..generators import MASK32


@dataclass
class LowBitsCheck:
    """Low-bit agreement between two combined streams sharing a jsr."""

    jsr: int
    icng_a: int
    icng_b: int
    nsteps: int
    nlowbits: int
    violations: int
    first_violation_step: int  # 0 when there is none

    @property
    def locked(self) -> bool:
        return self.violations == 0


def related_seed_lowbits_check(
    jsr: int,
    icng_a: int,
    icng_b: int,
    nsteps: int = 1_000_000,
    nlowbits: int = 6,
) -> LowBitsCheck:
    """Run two cng-plus-shr0 streams and count low-bit disagreements.

    With icng_a = icng_b (mod 2^nlowbits) the count is exactly zero
    for any number of steps; otherwise disagreements appear within the
    first few steps.
    """
    if not 1 <= nlowbits <= 16:
        raise ValueError("nlowbits must be in [1, 16]")
    if jsr & MASK32 == 0:
        raise ValueError("jsr must be nonzero")
    violations, first = _kernels.pair_lowbits_violations(
        jsr & MASK32, icng_a & MASK32, icng_b & MASK32, nsteps, nlowbits
    )
    return LowBitsCheck(
        jsr=jsr & MASK32,
        icng_a=icng_a & MASK32,
        icng_b=icng_b & MASK32,
        nsteps=nsteps,
        nlowbits=nlowbits,
        violations=int(violations),
        first_violation_step=int(first),
    )


def shr0_stream(seed: int, nsteps: int) -> np.ndarray:
    """nsteps consecutive bare-xorshift words from the given seed."""
    regs = make_regs("shr0", jsr=seed)
    out = np.zeros(nsteps, dtype=np.uint32)
    _kernels.gen_words(VID_BY_VARIANT["shr0"], regs, out)
    return out


def gf2_linearity_check(u: int, v: int, nsteps: int = 1_000_000) -> bool:
    """T^t(u) xor T^t(v) == T^t(u xor v) for every t in [1, nsteps]."""
    u &= MASK32
    v &= MASK32
    if u == 0 or v == 0 or u == v:
        raise ValueError("seeds must be distinct and nonzero")
    a = shr0_stream(u, nsteps)
    b = shr0_stream(v, nsteps)
    c = shr0_stream(u ^ v, nsteps)
    return bool(np.all((a ^ b) == c))


def find_zero_xor_quadruples(seeds) -> list[tuple[int, int, int, int]]:
    """All 4-subsets of seeds whose XOR is zero.

    Pairs are grouped by their XOR; two disjoint pairs in one group form
    a quadruple. O(n^2) pairs instead of O(n^4) subsets. For n random
    32-bit seeds the expected number of hits is C(n, 4) / 2^32, so any
    hit among a handful of seeds is essentially never an accident.
    """
    seeds = [s & MASK32 for s in seeds]
    if len(set(seeds)) != len(seeds):
        raise ValueError("seeds must be distinct")
    by_xor: dict[int, list[tuple[int, int]]] = {}
    for i, j in combinations(range(len(seeds)), 2):
        by_xor.setdefault(seeds[i] ^ seeds[j], []).append((i, j))
    found = set()
    for pairs in by_xor.values():
        if len(pairs) < 2:
            continue
        for (i, j), (k, l) in combinations(pairs, 2):
            if len({i, j, k, l}) == 4:
                idx = tuple(sorted((i, j, k, l)))
                found.add(tuple(seeds[t] for t in idx))
    return sorted(found)


def expected_random_quadruples(n: int) -> float:
    """Expected zero-XOR 4-subsets among n independent uniform words."""
    return (n * (n - 1) * (n - 2) * (n - 3) / 24.0) / 2.0**32


@dataclass
class QuadrupleReport:
    """Lockstep statistics for one zero-XOR seed quadruple."""

    seeds: tuple[int, int, int, int]
    nsteps: int
    xor_zero_all_steps: bool  # word xor relation held at every step
    index_xor_zero_rate: float  # rate of vanishing XOR of the 4 strip indices
    sign_xor_zero_rate: float  # rate of vanishing XOR of the 4 sign bits


def quadruple_lockstep_report(
    quad: tuple[int, int, int, int], nsteps: int = 100_000, k: int = 128
) -> QuadrupleReport:
    """Measure how a zero-XOR quadruple's streams move in lockstep.

    For the bare xorshift the word XOR vanishes at every step, hence so
    do the XORs of the k-strip index bits and of the sign bits: both
    rates are exactly 1. Independent streams would give 1/k and 1/2.
    """
    streams = [shr0_stream(s, nsteps) for s in quad]
    x = streams[0] ^ streams[1] ^ streams[2] ^ streams[3]
    mask = np.uint32(k - 1)
    iz = (
        (streams[0] & mask)
        ^ (streams[1] & mask)
        ^ (streams[2] & mask)
        ^ (streams[3] & mask)
    )
    top = np.uint32(0x80000000)
    sg = (
        (streams[0] & top)
        ^ (streams[1] & top)
        ^ (streams[2] & top)
        ^ (streams[3] & top)
    )
    return QuadrupleReport(
        seeds=tuple(s & MASK32 for s in quad),
        nsteps=nsteps,
        xor_zero_all_steps=bool(np.all(x == 0)),
        index_xor_zero_rate=float(np.mean(iz == 0)),
        sign_xor_zero_rate=float(np.mean(sg == 0)),
    )
