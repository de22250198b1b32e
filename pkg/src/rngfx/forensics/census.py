"""Exhaustive preimage and low-bit censuses of 32-bit maps.

A preimage census answers: for every output value y, how many inputs
x map to it? The full answer needs one counter per output value, i.e.
4 GiB of 8-bit counters for a 32-bit codomain, so the codomain is cut
into `chunks` ranges and the input domain is swept once per chunk,
tallying only outputs that fall in the live range. The per-chunk
result is the multiplicity histogram restricted to that range; chunk
histograms add up to the full census because the ranges partition the
codomain.

Within a chunk the input domain can additionally be split across
workers, each with private counters merged by addition afterwards.
Addition is associative and commutative, so results are bit-identical
for any worker count; the merge also re-checks saturation, since two
half-counts can individually stay under 255 while their sum does not.

Maps are named; the SHR-family maps exclude x = 0 from the domain (the
register can never be there), so their domain size is 2^bits - 1 and
the identity map's is 2^bits. Scaled-down domains (domain_bits < 32)
use the same shift triple, which stays a bijection on the truncated
words, and exist so the expensive invariants can be tested quickly.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..errors import CounterSaturation

# name -> (kernel map id, domain excludes zero)
MAPS = {
    "x-plus-tx": (_kernels.MAP_X_PLUS_TX, True),
    "t-minus-r0": (_kernels.MAP_T_MINUS_R0, True),
    "identity": (_kernels.MAP_IDENTITY, False),
    "custom-shift-triple": (_kernels.MAP_CUSTOM, True),
}

DEFAULT_SHIFTS = (13, 17, 5)
# Histograms always cover multiplicities 0..13 (the studied maps top
# out at 12 or 13), extended upward only if a map exceeds that.
_MIN_TOP_MULTIPLICITY = 13


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Deterministic near-equal partition of [lo, hi) into parts ranges."""
    n = hi - lo
    if parts < 1 or n < 0:
        raise ValueError("bad range split")
    step = n // parts
    bounds = [lo + i * step for i in range(parts)] + [hi]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


@dataclass
class PreimageCensus:
    """Multiplicity histogram of a map's outputs."""

    map_name: str
    domain_bits: int
    domain_size: int  # inputs actually swept (2^bits or 2^bits - 1)
    chunks: int
    multiplicity_counts: dict[int, int]
    shifts: tuple[int, int, int] = DEFAULT_SHIFTS
    workers: int = 1

    def check_conservation(self) -> None:
        """Every census must account for the whole codomain and domain."""
        total_outputs = sum(self.multiplicity_counts.values())
        total_inputs = sum(m * c for m, c in self.multiplicity_counts.items())
        if total_outputs != 1 << self.domain_bits:
            raise AssertionError(
                f"codomain mismatch: {total_outputs} != 2^{self.domain_bits}"
            )
        if total_inputs != self.domain_size:
            raise AssertionError(
                f"domain mismatch: {total_inputs} != {self.domain_size}"
            )


def _hist_from_counters(counters: np.ndarray) -> np.ndarray:
    """bincount of an uint8 counter array, as int64[256].

    Block-wise: bincount widens its input to int64 internally, so one
    call over a GiB-scale counter array would transiently need 8x its
    size.
    """
    hist = np.zeros(256, dtype=np.int64)
    block = 1 << 24
    for lo in range(0, len(counters), block):
        hist += np.bincount(counters[lo : lo + block], minlength=256).astype(
            np.int64
        )
    return hist


def _merged_chunk_hist(
    counter_arrays: list[np.ndarray], worker_saturated: bool
) -> np.ndarray:
    """Merge per-worker counters by addition and histogram the sums.

    Works in fixed-size blocks to bound temporary memory. Raises
    CounterSaturation if any merged count exceeds 255 or a worker's own
    counter already saturated (in which case its value is a floor, not
    the truth).
    """
    if worker_saturated:
        raise CounterSaturation("a worker counter hit 255 during the pass")
    if len(counter_arrays) == 1:
        hist = _hist_from_counters(counter_arrays[0])
        if hist[255] > 0:
            raise CounterSaturation("multiplicity 255 reached; counts untrustworthy")
        return hist
    size = len(counter_arrays[0])
    block = 1 << 22
    width = 256 * len(counter_arrays)
    hist = np.zeros(width, dtype=np.int64)
    for lo in range(0, size, block):
        hi = min(lo + block, size)
        tot = counter_arrays[0][lo:hi].astype(np.uint16)
        for arr in counter_arrays[1:]:
            tot += arr[lo:hi]
        hist += np.bincount(tot, minlength=width).astype(np.int64)
    if hist[256:].any() or hist[255] > 0:
        raise CounterSaturation("merged multiplicity exceeded the 8-bit budget")
    return hist[:256]


def _checkpoint_path(checkpoint_dir: str, idx: int) -> str:
    return os.path.join(checkpoint_dir, f"chunk_{idx:03d}.json")


def preimage_census(
    map_name: str,
    chunks: int = 16,
    workers: int = 1,
    domain_bits: int = 32,
    shifts: tuple[int, int, int] = DEFAULT_SHIFTS,
    progress=None,
    checkpoint_dir: str | None = None,
    resume: bool = False,
) -> PreimageCensus:
    """Full preimage census of a named map.

    chunks must be a power of two <= 256 (it divides a power-of-two
    codomain evenly). progress, when given, is called with
    (finished_chunk_index, chunks) after each chunk. checkpoint_dir
    stores one JSON file per finished chunk; resume=True skips chunks
    whose file is already present and consistent.
    """
    if map_name not in MAPS:
        raise ValueError(f"unknown map {map_name!r} (have {sorted(MAPS)})")
    if chunks < 1 or chunks > 256 or chunks & (chunks - 1):
        raise ValueError("chunks must be a power of two between 1 and 256")
    if not 8 <= domain_bits <= 32:
        raise ValueError("domain_bits must be in [8, 32]")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    s1, s2, s3 = shifts
    map_id, skip_zero = MAPS[map_name]
    # identity ignores shifts; the fixed maps use the standard triple
    used = (
        None
        if map_id == _kernels.MAP_IDENTITY
        else shifts if map_id == _kernels.MAP_CUSTOM else DEFAULT_SHIFTS
    )
    if used is not None and (max(used) >= domain_bits or min(used) < 1):
        raise ValueError("shift amounts must be in [1, domain_bits)")
    mask = (1 << domain_bits) - 1
    codomain = 1 << domain_bits
    if chunks > codomain:
        raise ValueError("more chunks than codomain values")
    chunk_size = codomain // chunks
    in_lo = 1 if skip_zero else 0
    in_hi = codomain
    header = {
        "map": map_name,
        "domain_bits": domain_bits,
        "chunks": chunks,
        "shifts": list(shifts),
    }
    if checkpoint_dir is not None:
        os.makedirs(checkpoint_dir, exist_ok=True)

    hist = np.zeros(256, dtype=np.int64)
    counter_arrays: list[np.ndarray] | None = None
    for ci in range(chunks):
        if checkpoint_dir is not None and resume:
            path = _checkpoint_path(checkpoint_dir, ci)
            if os.path.exists(path):
                with open(path) as fh:
                    saved = json.load(fh)
                if saved.get("header") != header:
                    raise ValueError(
                        f"checkpoint {path} belongs to a different census config"
                    )
                hist += np.array(saved["hist"], dtype=np.int64)
                if progress is not None:
                    progress(ci, chunks)
                continue
        chunk_lo = ci * chunk_size
        chunk_hi = chunk_lo + chunk_size
        if counter_arrays is None:
            counter_arrays = [
                np.zeros(chunk_size, dtype=np.uint8) for _ in range(workers)
            ]
        else:
            for arr in counter_arrays:
                arr[:] = 0
        spans = split_range(in_lo, in_hi, workers)
        if workers == 1:
            sat = _kernels.census_pass(
                map_id, s1, s2, s3, mask, in_lo, in_hi, chunk_lo, chunk_hi,
                counter_arrays[0],
            )
            saturated = bool(sat)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [
                    pool.submit(
                        _kernels.census_pass,
                        map_id, s1, s2, s3, mask, lo, hi, chunk_lo, chunk_hi,
                        counter_arrays[i],
                    )
                    for i, (lo, hi) in enumerate(spans)
                ]
                saturated = any(bool(f.result()) for f in futs)
        chunk_hist = _merged_chunk_hist(counter_arrays, saturated)
        hist += chunk_hist
        if checkpoint_dir is not None:
            path = _checkpoint_path(checkpoint_dir, ci)
            with open(path, "w") as fh:
                json.dump({"header": header, "hist": chunk_hist.tolist()}, fh)
        if progress is not None:
            progress(ci, chunks)

    top = max(_MIN_TOP_MULTIPLICITY, int(np.nonzero(hist)[0].max()))
    counts = {m: int(hist[m]) for m in range(top + 1)}
    census = PreimageCensus(
        map_name=map_name,
        domain_bits=domain_bits,
        domain_size=in_hi - in_lo,
        chunks=chunks,
        multiplicity_counts=counts,
        shifts=tuple(shifts),
        workers=workers,
    )
    census.check_conservation()
    return census


def low_bits_census(
    map_name: str,
    nbits: int = 7,
    domain_bits: int = 32,
    shifts: tuple[int, int, int] = DEFAULT_SHIFTS,
    workers: int = 1,
) -> np.ndarray:
    """Counts of each low-nbits pattern of map(x) over the map's domain.

    SHR-family maps sweep the nonzero domain (2^bits - 1 inputs), the
    identity map the full domain; the caller can see which from the
    counts' total.
    """
    if map_name not in MAPS:
        raise ValueError(f"unknown map {map_name!r} (have {sorted(MAPS)})")
    if not 1 <= nbits <= 8:
        raise ValueError("nbits must be in [1, 8]")
    if not 8 <= domain_bits <= 32:
        raise ValueError("domain_bits must be in [8, 32]")
    map_id, skip_zero = MAPS[map_name]
    used = (
        None
        if map_id == _kernels.MAP_IDENTITY
        else shifts if map_id == _kernels.MAP_CUSTOM else DEFAULT_SHIFTS
    )
    if used is not None and (max(used) >= domain_bits or min(used) < 1):
        raise ValueError("shift amounts must be in [1, domain_bits)")
    mask = (1 << domain_bits) - 1
    s1, s2, s3 = shifts
    in_lo = 1 if skip_zero else 0
    in_hi = 1 << domain_bits
    spans = split_range(in_lo, in_hi, workers)
    results = [np.zeros(1 << nbits, dtype=np.int64) for _ in spans]
    if workers == 1:
        _kernels.lowbits_pass(
            map_id, s1, s2, s3, mask, in_lo, in_hi, nbits, results[0]
        )
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(
                    _kernels.lowbits_pass,
                    map_id, s1, s2, s3, mask, lo, hi, nbits, results[i],
                )
                for i, (lo, hi) in enumerate(spans)
            ]
            for f in futs:
                f.result()
    total = results[0]
    for arr in results[1:]:
        total = total + arr
    return total
