"""rngfx: bit-exact PRNG reimplementations and the forensics to indict them.

The package has three layers:

* generators / ziggurat: faithful reimplementations of the classic
  32-bit word generators (xorshift, linear-congruential,
  multiply-with-carry, and their sums) and the table-driven normal
  rejection sampler built on them, reproducing the originals bit for
  bit, including their defects.
* forensics: instruments that measure those defects exactly, by
  exhaustive enumeration wherever the state space allows it.
* cli / reports: a command-line front end emitting versioned JSON.
"""

from .errors import (
    CounterSaturation,
    EmptyBin,
    NoConvergence,
    NoDeviations,
    RngfxError,
    ZeroJsrSeed,
)
from .generators import (
    COMBINED_VARIANTS,
    CombinedState,
    CongState,
    MwcRegister,
    SeedSpec,
    ShrState,
    combined_next,
    cong_next,
    make_combined,
    mwc32_next,
    mwc_step,
    randn_uni_next,
    shr0_next,
    shr3_next,
    shr_transform,
    signed32,
    uni_to_real,
)
from .ziggurat import (
    ZigguratSampler,
    ZigguratTable,
    build_table,
    fast_path_rate,
    make_sampler,
    rnor_next,
    table_from_r,
)

__version__ = "0.1.0"

__all__ = [
    "CounterSaturation",
    "EmptyBin",
    "NoConvergence",
    "NoDeviations",
    "RngfxError",
    "ZeroJsrSeed",
    "COMBINED_VARIANTS",
    "CombinedState",
    "CongState",
    "MwcRegister",
    "SeedSpec",
    "ShrState",
    "combined_next",
    "cong_next",
    "make_combined",
    "mwc32_next",
    "mwc_step",
    "randn_uni_next",
    "shr0_next",
    "shr3_next",
    "shr_transform",
    "signed32",
    "uni_to_real",
    "ZigguratSampler",
    "ZigguratTable",
    "build_table",
    "fast_path_rate",
    "make_sampler",
    "rnor_next",
    "table_from_r",
    "__version__",
]
