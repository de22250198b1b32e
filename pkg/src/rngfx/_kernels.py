"""Compiled hot loops for the exhaustive enumerations.

Everything here mirrors the pure-Python state machines in
:mod:`rngfx.generators` and :mod:`rngfx.ziggurat` and is equivalence-
tested against them; the Python versions stay the reference, these are
the ones that can afford 2^32 iterations. All 32-bit arithmetic is done
in int64 with explicit masking, so there is no wraparound to reason
about; the ideal control source alone uses uint64 internally.

Register array convention (dtype int64, length 5):
    regs[0] = jsr, regs[1] = icng, regs[2] = mwc z, regs[3] = mwc w,
    regs[4] = splitmix64 state (bit pattern, reinterpreted unsigned).

Variant ids (must match generators.COMBINED_VARIANTS order, with the
ideal control source appended):
    0 shr3, 1 shr0, 2 cng-plus-shr0, 3 mwc32, 4 kiss-xplustx,
    5 shrcong-xplustx, 6 ideal.

Map ids for the preimage/low-bit censuses:
    0 x-plus-tx, 1 t-minus-r0, 2 identity, 3 custom-shift-triple
    (x + T_s(x) with caller-chosen shifts).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

M32 = 0xFFFFFFFF
TOP = 0x80000000
WRAP = 0x100000000
UNI_SCALE = 2.328306e-10

VID_SHR3 = 0
VID_SHR0 = 1
VID_CNG_PLUS_SHR0 = 2
VID_MWC32 = 3
VID_KISS_XPLUSTX = 4
VID_SHRCONG_XPLUSTX = 5
VID_IDEAL = 6
VID_CONG = 7

MAP_X_PLUS_TX = 0
MAP_T_MINUS_R0 = 1
MAP_IDENTITY = 2
MAP_CUSTOM = 3

# splitmix64 constants (unsigned)
_SM_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM_MIX2 = np.uint64(0x94D049BB133111EB)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_U32 = np.uint64(32)


@njit(cache=True, inline="always")
def _t32(x):
    x ^= (x << 13) & M32
    x ^= x >> 17
    x ^= (x << 5) & M32
    return x


@njit(cache=True, inline="always")
def _t32s(x, s1, s2, s3):
    x ^= (x << s1) & M32
    x ^= x >> s2
    x ^= (x << s3) & M32
    return x


@njit(cache=True, inline="always")
def _signed(word):
    return word - WRAP if word >= TOP else word


@njit(cache=True, inline="always")
def _uni(word):
    return 0.5 + _signed(word) * UNI_SCALE


@njit(cache=True, inline="always")
def _next_word(vid, regs):
    if vid == VID_SHR3:
        old = regs[0]
        new = _t32(old)
        regs[0] = new
        return (old + new) & M32
    if vid == VID_SHR0:
        new = _t32(regs[0])
        regs[0] = new
        return new
    if vid == VID_CNG_PLUS_SHR0:
        t = _t32(regs[0])
        regs[0] = t
        c = (69069 * regs[1] + 1234567) & M32
        regs[1] = c
        return (t + c) & M32
    if vid == VID_MWC32:
        z = 36969 * (regs[2] & 0xFFFF) + (regs[2] >> 16)
        regs[2] = z
        w = 18000 * (regs[3] & 0xFFFF) + (regs[3] >> 16)
        regs[3] = w
        return ((z << 16) + (w & 0xFFFF)) & M32
    if vid == VID_KISS_XPLUSTX:
        old = regs[0]
        t = _t32(old)
        regs[0] = t
        c = (69069 * regs[1] + 1234567) & M32
        regs[1] = c
        z = 36969 * (regs[2] & 0xFFFF) + (regs[2] >> 16)
        regs[2] = z
        w = 18000 * (regs[3] & 0xFFFF) + (regs[3] >> 16)
        regs[3] = w
        m = ((z << 16) + (w & 0xFFFF)) & M32
        return (old + t + c + m) & M32
    if vid == VID_SHRCONG_XPLUSTX:
        old = regs[0]
        t = _t32(old)
        regs[0] = t
        c = (69069 * regs[1] + 1234567) & M32
        regs[1] = c
        return (old + t + c) & M32
    if vid == VID_CONG:
        c = (69069 * regs[1] + 1234567) & M32
        regs[1] = c
        return c
    # ideal: splitmix64, top 32 bits of the mixed state
    s = np.uint64(regs[4]) + _SM_GAMMA
    regs[4] = np.int64(s)
    z = s
    z = (z ^ (z >> _U30)) * _SM_MIX1
    z = (z ^ (z >> _U27)) * _SM_MIX2
    z = z ^ (z >> _U31)
    return np.int64(z >> _U32)


@njit(cache=True, inline="always")
def _rnor(vid, regs, kn, wn, fn, r, kmask):
    """One normal deviate via the full rejection algorithm."""
    word = _next_word(vid, regs)
    hz = _signed(word)
    iz = word & kmask
    ah = -hz if hz < 0 else hz
    if ah < kn[iz]:
        return hz * wn[iz]
    while True:
        x = hz * wn[iz]
        if iz == 0:
            while True:
                w1 = _next_word(vid, regs)
                xt = -math.log(_uni(w1)) / r
                w2 = _next_word(vid, regs)
                y = -math.log(_uni(w2))
                if y + y >= xt * xt:
                    if hz > 0:
                        return r + xt
                    return -r - xt
        wu = _next_word(vid, regs)
        if fn[iz] + _uni(wu) * (fn[iz - 1] - fn[iz]) < math.exp(-0.5 * x * x):
            return x
        word = _next_word(vid, regs)
        hz = _signed(word)
        iz = word & kmask
        ah = -hz if hz < 0 else hz
        if ah < kn[iz]:
            return hz * wn[iz]


@njit(cache=True, nogil=True)
def census_pass(map_id, s1, s2, s3, mask, lo, hi, chunk_lo, chunk_hi, counters):
    """One pass over inputs [lo, hi): tally map outputs in [chunk_lo, chunk_hi).

    counters is uint8, one slot per output in the chunk; 255 saturates.
    Returns True if any counter saturated.
    """
    sat = False
    for x in range(lo, hi):
        if map_id == MAP_X_PLUS_TX:
            y = (x + _t32s(x, 13, 17, 5)) & mask
        elif map_id == MAP_T_MINUS_R0:
            y = (_t32s(x, 13, 17, 5) - 69069 * x) & mask
        elif map_id == MAP_IDENTITY:
            y = x
        else:
            y = (x + _t32s(x, s1, s2, s3)) & mask
        if chunk_lo <= y < chunk_hi:
            i = y - chunk_lo
            c = counters[i]
            if c == 255:
                sat = True
            else:
                counters[i] = c + 1
    return sat


@njit(cache=True, nogil=True)
def lowbits_pass(map_id, s1, s2, s3, mask, lo, hi, nbits, counts):
    """Histogram the low nbits of map outputs over inputs [lo, hi)."""
    lowmask = (1 << nbits) - 1
    for x in range(lo, hi):
        if map_id == MAP_X_PLUS_TX:
            y = (x + _t32s(x, 13, 17, 5)) & mask
        elif map_id == MAP_T_MINUS_R0:
            y = (_t32s(x, 13, 17, 5) - 69069 * x) & mask
        elif map_id == MAP_IDENTITY:
            y = x
        else:
            y = (x + _t32s(x, s1, s2, s3)) & mask
        counts[y & lowmask] += 1


@njit(cache=True, nogil=True)
def first_output_sweep(
    vid, seed_lo, seed_hi, regs_template, kn, wn, fn, r, kmask, edges, counts
):
    """First RNOR deviate for every seed in [seed_lo, seed_hi), binned by |x|.

    Seeds go into regs[0] (jsr-driven variants) and regs[4] (ideal);
    the other registers reset to the template each time. Bins are
    [edges[i-1], edges[i]) plus the open last bin [edges[-1], inf);
    edges[0] must be 0 so every |x| lands somewhere.
    """
    n_edges = len(edges)
    regs = regs_template.copy()
    for s in range(seed_lo, seed_hi):
        regs[0] = s & M32
        regs[1] = regs_template[1]
        regs[2] = regs_template[2]
        regs[3] = regs_template[3]
        regs[4] = s
        d = _rnor(vid, regs, kn, wn, fn, r, kmask)
        ad = -d if d < 0.0 else d
        lo_ = 0
        hi_ = n_edges
        while lo_ < hi_:
            mid = (lo_ + hi_) >> 1
            if edges[mid] <= ad:
                lo_ = mid + 1
            else:
                hi_ = mid
        counts[lo_ - 1] += 1


@njit(cache=True, nogil=True)
def tail_audit(kn0, r, edges, counts):
    """Enumerate jsr values with zero low 7 bits; run the shr0 tail path.

    For each hz = 128*m (m in [1, 2^25)) with |signed(hz)| >= kn0 the
    tail loop runs with UNI draws following the shr0 stream from that
    state; the resulting magnitude r + x is binned by edges (edges[0]
    must be r itself so nothing falls below bin 0; last bin open).
    Returns the number of entering states.
    """
    entering = 0
    n_edges = len(edges)
    for m in range(1, 1 << 25):
        word = m << 7
        hz = _signed(word)
        ah = -hz if hz < 0 else hz
        if ah < kn0:
            continue
        entering += 1
        jsr = word
        while True:
            jsr = _t32(jsr)
            xt = -math.log(_uni(jsr)) / r
            jsr = _t32(jsr)
            y = -math.log(_uni(jsr))
            if y + y >= xt * xt:
                break
        mag = r + xt
        lo_ = 0
        hi_ = n_edges
        while lo_ < hi_:
            mid = (lo_ + hi_) >> 1
            if edges[mid] <= mag:
                lo_ = mid + 1
            else:
                hi_ = mid
        counts[lo_ - 1] += 1
    return entering


@njit(cache=True, nogil=True)
def orbit_walk(a, start, msb7, lsb7):
    """Walk one MWC orbit until it returns to start.

    Tallies the 7 MSBs ((state & 0xFFFF) >> 9) and 7 LSBs (state & 127)
    of every new state. Returns the period, or -1 if the walk exceeds
    the a*2^16 state-count bound (impossible unless the transition is
    wrong).
    """
    bound = a * 65536 + 1
    y = start
    n = 0
    while True:
        y = a * (y & 0xFFFF) + (y >> 16)
        msb7[(y & 0xFFFF) >> 9] += 1
        lsb7[y & 127] += 1
        n += 1
        if y == start:
            return n
        if n >= bound:
            return -1


@njit(cache=True, nogil=True)
def stream_deviates_binned(
    vid, regs, n, kn, wn, fn, r, kmask, lo, inv_width, nbins, counts
):
    """Draw n deviates, accumulate into nbins uniform bins from lo.

    Returns the number of deviates outside [lo, lo + nbins/inv_width),
    which are counted nowhere else.
    """
    overflow = 0
    for _ in range(n):
        d = _rnor(vid, regs, kn, wn, fn, r, kmask)
        t = (d - lo) * inv_width
        if t < 0.0:
            overflow += 1
            continue
        j = int(t)
        if j >= nbins:
            overflow += 1
        else:
            counts[j] += 1
    return overflow


@njit(cache=True, nogil=True)
def restart_deviates_binned(
    vid, template, seed_lo, seed_hi, kn, wn, fn, r, kmask,
    lo, inv_width, nbins, counts
):
    """One deviate per seed, binned like stream_deviates_binned.

    For each seed the full register file is reset to template with the
    jsr slot replaced by the seed, so draws are independent restarts
    rather than one continuous stream.
    """
    overflow = 0
    regs = template.copy()
    for s in range(seed_lo, seed_hi):
        for t in range(template.shape[0]):
            regs[t] = template[t]
        regs[0] = s
        d = _rnor(vid, regs, kn, wn, fn, r, kmask)
        u = (d - lo) * inv_width
        if u < 0.0:
            overflow += 1
            continue
        j = int(u)
        if j >= nbins:
            overflow += 1
        else:
            counts[j] += 1
    return overflow


@njit(cache=True, nogil=True)
def gen_words(vid, regs, out):
    """Fill out (uint32) with consecutive uniform words."""
    for i in range(len(out)):
        out[i] = _next_word(vid, regs)


@njit(cache=True, nogil=True)
def gen_deviates(vid, regs, kn, wn, fn, r, kmask, out):
    """Fill out (float64) with consecutive normal deviates."""
    for i in range(len(out)):
        out[i] = _rnor(vid, regs, kn, wn, fn, r, kmask)


@njit(cache=True, nogil=True)
def pair_lowbits_violations(jsr0, icng_a, icng_b, nsteps, nlowbits):
    """Count low-bit mismatches between two cng-plus-shr0 streams.

    Both streams share jsr0; they differ in the icng register. Returns
    (violations, first_violation_step) with step counting from 1;
    first_violation_step is 0 when there is none.
    """
    lowmask = (1 << nlowbits) - 1
    jsr = jsr0
    ca = icng_a
    cb = icng_b
    violations = 0
    first = 0
    for t in range(1, nsteps + 1):
        jsr = _t32(jsr)
        ca = (69069 * ca + 1234567) & M32
        cb = (69069 * cb + 1234567) & M32
        ya = (jsr + ca) & M32
        yb = (jsr + cb) & M32
        if (ya & lowmask) != (yb & lowmask):
            violations += 1
            if first == 0:
                first = t
    return violations, first
