"""
Orbit structure of the carry generators
=======================================

The 16-bit multiply-with-carry step y -> a*(y & 0xFFFF) + (y >> 16) is
multiplication modulo m = a*2^16 - 1 in disguise. For the shipped
multipliers m is prime, so the nonzero states split into exactly two
orbits, quadratic residues and non-residues, each of period (m-1)/2.
Which orbit you land on is decided by the seed, the orbit never mixes
into its twin, and each orbit's exact stationary distribution deviates
from uniform in a way a full walk can tally with no sampling noise.

A toy multiplier makes the structure visible in milliseconds; the real
multipliers take a few seconds per orbit.
"""

import numpy as np

from rngfx.forensics.orbits import (
    combined_period_log2,
    expected_periods,
    fixed_states,
    is_quadratic_residue,
    modulus,
    mwc_orbit_pair,
    second_orbit_start,
)

# %%
# A toy multiplier first. a=12 gives m = 786431, prime, with the same
# residue/non-residue split as the full-size generators. The two
# orbits cover the whole space between the fixed states.
a = 12
m = modulus(a)
orb_a, orb_b = mwc_orbit_pair(a)
print(f"a={a}: m={m}, fixed states {fixed_states(a)}")
print(f"orbit A starts at {orb_a.start_state} (residue), period {orb_a.period}")
print(f"orbit B starts at {orb_b.start_state} (non-residue), period {orb_b.period}")
print(f"together: {orb_a.period + orb_b.period + 2} of {m + 1} states")

# %%
# The full-size multiplier 36969. Seeding with 1 walks the residue
# orbit; the smallest state on the other orbit is 5.
a = 36969
m = modulus(a)
start_b = second_orbit_start(a)
print(f"\na={a}: m={m} (prime), second orbit starts at {start_b}")
print(f"1 is a residue: {is_quadratic_residue(1, m)}")
print(f"{start_b} is a residue: {is_quadratic_residue(start_b, m)}")

orb_a, orb_b = mwc_orbit_pair(a)
pz, pw = expected_periods()
print(f"walked periods: {orb_a.period}, {orb_b.period} (formula: {pz})")

# %%
# Each orbit's census of the top 7 bits of the output word is exact.
# Pattern 21 is overrepresented on the residue orbit and equally
# underrepresented on the other; pattern 106 mirrors it. The two
# orbits' deviations cancel almost perfectly pattern by pattern,
# so only a simulation that restarts or compares seeds sees them.
for pat in (21, 106):
    print(
        f"pattern {pat:3d}: orbit A {orb_a.probabilities[pat]:.9f}  "
        f"orbit B {orb_b.probabilities[pat]:.9f}  (uniform {1 / 128:.9f})"
    )
mirror = np.abs(orb_a.eps + orb_b.eps).max()
print(f"max |eps_A + eps_B| over patterns: {mirror:.2e}")

# %%
# The two carry generators in the combined family contribute their
# orbit periods to the overall cycle length.
pair_log2 = combined_period_log2(pz, pw)
print(f"\ncombined carry period: 2^{pair_log2:.4f}")
