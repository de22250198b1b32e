"""Adapters between the object API and the flat kernel calling convention.

Kernels take generator state as an int64[5] register file
[jsr, icng, z, w, extra] plus a small-integer variant id, and ziggurat
tables as bare arrays. This module converts both ways so the rest of
the package never hardcodes the layout.
"""

from __future__ import annotations

import numpy as np

from . import _kernels, generators
from .ziggurat import ZigguratTable

VID_BY_VARIANT = {
    generators.VARIANT_SHR3: _kernels.VID_SHR3,
    generators.VARIANT_SHR0: _kernels.VID_SHR0,
    generators.VARIANT_CNG_PLUS_SHR0: _kernels.VID_CNG_PLUS_SHR0,
    generators.VARIANT_MWC32: _kernels.VID_MWC32,
    generators.VARIANT_KISS_XPLUSTX: _kernels.VID_KISS_XPLUSTX,
    generators.VARIANT_SHRCONG_XPLUSTX: _kernels.VID_SHRCONG_XPLUSTX,
    "ideal": _kernels.VID_IDEAL,
    "cng": _kernels.VID_CONG,
}


def make_regs(
    variant: str,
    jsr: int = 1,
    icng: int = generators.ICNG_SEED_DEFAULT,
    z: int = generators.MWC_Z_DEFAULT,
    w: int = generators.MWC_W_DEFAULT,
    extra: int = 0,
) -> np.ndarray:
    """Register file for a kernel run.

    extra seeds the ideal source's 64-bit state; every other variant
    ignores it. The zero-jsr rule is enforced only for variants that
    actually step the xorshift register.
    """
    if variant not in VID_BY_VARIANT:
        raise ValueError(f"unknown variant {variant!r}")
    uses_jsr = variant not in ("ideal", "cng")
    if uses_jsr and (jsr & generators.MASK32) == 0:
        raise generators.ZeroJsrSeed("jsr seed 0 is a fixed point of the xorshift")
    regs = np.zeros(5, dtype=np.int64)
    regs[0] = jsr & generators.MASK32
    regs[1] = icng & generators.MASK32
    regs[2] = z & generators.MASK32
    regs[3] = w & generators.MASK32
    regs[4] = extra & ((1 << 63) - 1)
    return regs


def regs_from_state(state: generators.CombinedState) -> np.ndarray:
    return make_regs(
        state.variant, jsr=state.jsr, icng=state.icng, z=state.z, w=state.w
    )


def state_from_regs(variant: str, regs: np.ndarray) -> generators.CombinedState:
    return generators.CombinedState(
        variant=variant,
        jsr=int(regs[0]),
        icng=int(regs[1]),
        z=int(regs[2]),
        w=int(regs[3]),
    )


def kernel_tables(table: ZigguratTable):
    """(kn, wn, fn, r, kmask) in the dtypes the kernels expect."""
    kn = table.kn.astype(np.int64)
    wn = np.ascontiguousarray(table.wn, dtype=np.float64)
    fn = np.ascontiguousarray(table.fn, dtype=np.float64)
    return kn, wn, fn, float(table.r), table.k - 1
