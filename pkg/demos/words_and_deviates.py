"""
Word generators and the normal sampler
======================================

Every generator in the package is a pure function of a handful of
32-bit registers, so streams are reproducible bit for bit. This demo
prints the first words of each variant, shows the word-to-uniform
mapping's exact range, and draws normal deviates.
"""

import numpy as np

from rngfx.generators import (
    COMBINED_VARIANTS,
    make_combined,
    combined_next,
    uni_to_real,
)
from rngfx.ziggurat import build_table, make_sampler, rnor_next

# The first few words from each combined variant, seeded identically.
# The two xorshift flavours differ only in whether the update is added
# back to the register on output; that one addition is what makes the
# output map non-injective.
for variant in COMBINED_VARIANTS:
    state = make_combined(variant, jsr=1)
    words = []
    for _ in range(4):
        state, w = combined_next(state)
        words.append(w)
    print(f"{variant:18s} {words}")

# The uniform mapping sends a word through its signed reinterpretation,
# so it can never reach 0 or 1; its exact extremes are set by the two
# most extreme signed words.
lo = min(uni_to_real(w) for w in (0, 1, 0x7FFFFFFF, 0x80000000, 0xFFFFFFFF))
hi = max(uni_to_real(w) for w in (0, 1, 0x7FFFFFFF, 0x80000000, 0xFFFFFFFF))
print(f"\nuniform range: [{lo:.17g}, {hi:.17g}]")

# Normal deviates via the 128-strip rejection sampler. The table is
# built once by solving the equal-area closure. The sampler is a value:
# each draw returns the advanced sampler along with the deviate.
table = build_table(128)
sampler = make_sampler(table, make_combined("shr3", jsr=42))
deviates = []
for _ in range(8):
    sampler, d = rnor_next(sampler)
    deviates.append(d)
print("\nfirst deviates:", np.round(deviates, 6).tolist())
print(f"table: k={table.k} r={table.r:.12f} v={table.v:.12e}")
