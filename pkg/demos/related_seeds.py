"""
Correlations between related seeds
==================================

Parallel simulations often take seeds like worker_id, worker_id + 1,
or base + 64 * worker_id. Two of the word generators make that unsafe
in ways that persist forever: the congruential register never unlocks
its low bits, and the bare xorshift is linear over GF(2), so seed
relations survive any number of steps.
"""

from rngfx.forensics.seeds import (
    expected_random_quadruples,
    find_zero_xor_quadruples,
    gf2_linearity_check,
    quadruple_lockstep_report,
    related_seed_lowbits_check,
)

# %%
# The congruential step icng -> 69069*icng + 1234567 is a bijection on
# each low-bit window: multiplier odd, increment fixed. Seed two copies
# with icng values that differ by a multiple of 2^6 and their low 6
# bits stay identical at every step of their lives.
locked = related_seed_lowbits_check(12345, icng_a=0, icng_b=64, nsteps=1_000_000)
print(
    f"icng 0 vs 64, low {locked.nlowbits} bits over {locked.nsteps} steps: "
    f"{locked.violations} disagreements"
)

# Any difference not divisible by 2^6 breaks the lock immediately.
broken = related_seed_lowbits_check(12345, icng_a=0, icng_b=7, nsteps=1_000_000)
print(
    f"icng 0 vs 7: {broken.violations} disagreements, "
    f"first at step {broken.first_violation_step}"
)

# %%
# The bare xorshift transform T is a composition of shifts and XORs,
# hence linear over GF(2): streams from seeds u, v, u^v satisfy
# stream(u) ^ stream(v) == stream(u ^ v) at every step.
print(
    "\nGF(2) linearity, seeds 314159 and 271828, 10^6 steps:",
    gf2_linearity_check(314159, 271828, nsteps=1_000_000),
)

# %%
# Linearity compounds: any four seeds whose XOR is zero produce words
# whose XOR is zero forever. Such quadruples are easy to create by
# accident; {1, 2, 5, 6} is one (1^2^5^6 == 0).
pool = list(range(1, 65))
quads = find_zero_xor_quadruples(pool)
print(f"\nzero-XOR quadruples among seeds 1..64: {len(quads)}")
print(f"expected among 64 random 32-bit seeds: "
      f"{expected_random_quadruples(64):.2e}")

# %%
# The lockstep is total. The XOR of the four words vanishes at every
# step, so the XOR of their strip-selector bits and of their sign bits
# vanishes too; four independent streams would zero those XORs at
# rates 1/128 and 1/2.
rep = quadruple_lockstep_report((1, 2, 5, 6), nsteps=100_000)
print(f"\nquadruple {rep.seeds}:")
print(f"word XOR zero at every step: {rep.xor_zero_all_steps}")
print(f"strip-index XOR zero rate: {rep.index_xor_zero_rate}")
print(f"sign-bit XOR zero rate: {rep.sign_xor_zero_rate}")

ref = quadruple_lockstep_report((1, 2, 5, 9), nsteps=100_000)
print(f"\nunrelated {ref.seeds}:")
print(f"word XOR zero at every step: {ref.xor_zero_all_steps}")
print(f"strip-index XOR zero rate: {ref.index_xor_zero_rate:.4f}")
print(f"sign-bit XOR zero rate: {ref.sign_xor_zero_rate:.4f}")
