"""
Preimage census of a 32-bit output map
======================================

A generator whose output map is not a bijection cannot be uniform over
its own state space: some outputs are produced by several states, some
by none. Counting preimages exhaustively turns that observation into
exact integers.

This demo censuses a 24-bit analog in a couple of seconds; the full
2^32 run is a CLI call away and takes minutes:

    rngfx census --map x-plus-tx --chunks 16 -o census.json
"""

import numpy as np

from rngfx.forensics.census import low_bits_census, preimage_census

# x + T(x), the additive xorshift output map, shrunk to 24 bits with
# shifts scaled to match. The multiplicity table says how many outputs
# have 0, 1, 2, ... preimages; a bijection would put everything at 1.
census = preimage_census(
    "custom-shift-triple", shifts=(9, 13, 4), domain_bits=24, chunks=4
)
print("multiplicity  outputs")
for m, c in census.multiplicity_counts.items():
    if c or m <= 4:
        print(f"{m:12d}  {c}")

# The shape is the Poisson profile of a random function, not the flat
# profile of a permutation: about 1/e of all outputs are never hit.
never = census.multiplicity_counts[0]
print(f"\nnever produced: {never} of {1 << 24} outputs "
      f"({never / (1 << 24):.4f}; 1/e is {np.exp(-1.0):.4f})")

# By contrast the plain transform T is a permutation: each xor-shift
# step is invertible over GF(2), so composing three of them loses
# nothing. Only the final addition above destroys the bijection.
x = np.arange(1 << 24, dtype=np.uint64)
m24 = np.uint64((1 << 24) - 1)
y = x.copy()
y ^= (y << np.uint64(9)) & m24
y ^= y >> np.uint64(13)
y ^= (y << np.uint64(4)) & m24
print("\nplain transform is a bijection:",
      len(np.unique(y)) == 1 << 24)

# The low bits of the additive map over its whole domain are visibly
# lumpy as well; a uniform map would put 2^20 in each of 16 classes.
counts = low_bits_census(
    "custom-shift-triple", shifts=(9, 13, 4), nbits=4, domain_bits=24
)
print("\nlow-4-bit counts:", counts.tolist())
print("spread:", int(counts.max() - counts.min()))
