"""Orbit structure of the 16-bit multiply-with-carry steps.

The step y -> a*(y & 0xFFFF) + (y >> 16) on [0, a*2^16) is, modulo
m = a*2^16 - 1, multiplication by the inverse of 2^16. When m is prime
and 2^16 generates the quadratic residues, the non-fixed states split
into exactly two orbits of period (m-1)/2: the residues (the orbit of
1, since 2^16 is itself a square) and the non-residues. The two fixed
states are 0 and m, both congruent to 0 mod m.

A full walk of one orbit visits each of its states exactly once, so
tallying a 7-bit pattern of every state gives that orbit's exact
stationary distribution: systematic deviations from 1/128, equal in
size and opposite in sign between the two orbits, with no sampling
noise involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..generators import MWC_A_W, MWC_A_Z

PATTERN_BITS = 7
N_PATTERNS = 1 << PATTERN_BITS


def modulus(a: int) -> int:
    return a * 65536 - 1


def fixed_states(a: int) -> tuple[int, int]:
    return 0, modulus(a)


def is_quadratic_residue(y: int, m: int) -> bool:
    """Euler's criterion; m must be an odd prime and y not 0 mod m."""
    return pow(y, (m - 1) // 2, m) == 1


def second_orbit_start(a: int) -> int:
    """Smallest state on the non-residue orbit."""
    m = modulus(a)
    y = 2
    while is_quadratic_residue(y, m):
        y += 1
    return y


@dataclass
class OrbitStats:
    """Exact pattern census of one multiply-with-carry orbit."""

    a: int
    start_state: int
    period: int
    msb7_counts: np.ndarray  # top 7 bits of the low word: (y & 0xFFFF) >> 9
    lsb7_counts: np.ndarray  # y & 127
    probabilities: np.ndarray  # msb7_counts / period
    eps: np.ndarray  # 128 * probabilities - 1


def mwc_orbit_census(a: int, start: int) -> OrbitStats:
    """Walk the full orbit of `start`, tallying 7-bit patterns.

    Takes one multiply-add per state, about (m-1)/2 of them; near 10^9
    steps for the standard multipliers.
    """
    m = modulus(a)
    if not 0 < start < m:
        raise ValueError(f"start must lie strictly between the fixed states 0, {m}")
    msb7 = np.zeros(N_PATTERNS, dtype=np.int64)
    lsb7 = np.zeros(N_PATTERNS, dtype=np.int64)
    period = _kernels.orbit_walk(a, start, msb7, lsb7)
    if period < 0:
        raise AssertionError("orbit walk exceeded the state-space bound")
    probs = msb7 / float(period)
    return OrbitStats(
        a=a,
        start_state=start,
        period=int(period),
        msb7_counts=msb7,
        lsb7_counts=lsb7,
        probabilities=probs,
        eps=N_PATTERNS * probs - 1.0,
    )


def mwc_orbit_pair(a: int) -> tuple[OrbitStats, OrbitStats]:
    """Both orbits: (residue orbit through 1, non-residue orbit)."""
    return mwc_orbit_census(a, 1), mwc_orbit_census(a, second_orbit_start(a))


def combined_period_log2(period_z: int, period_w: int) -> float:
    """log2 of the combined period of the paired 16-bit generators."""
    return math.log2(math.lcm(period_z, period_w))


def expected_periods() -> tuple[int, int]:
    """(z-multiplier orbit period, w-multiplier orbit period) by formula."""
    return (modulus(MWC_A_Z) - 1) // 2, (modulus(MWC_A_W) - 1) // 2
