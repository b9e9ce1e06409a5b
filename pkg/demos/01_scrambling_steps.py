"""
Scrambling steps and pure feedback
==================================

The two step functions, what happens when their output is fed straight back
in as the next seed, and how long it takes each of them to repeat.
"""
from fpga_rng.prng import (Algorithm, find_cycle, iterate, middle_square_step,
                           xorshift_inverse_step, xorshift_period, xorshift_step)

###############################################################################
# One step of each algorithm from the same seed

seed = 0x12345678
print(f"middle-square({seed:#010x}) = {middle_square_step(seed):#010x}")
print(f"xorshift({seed:#010x})      = {xorshift_step(seed):#010x}")

# xorshift is a bijection, so it can be run backwards
print(f"inverse(xorshift(seed))     = {xorshift_inverse_step(xorshift_step(seed)):#010x}")

###############################################################################
# Feedback: each output is the next seed, like a register clocked every 10 ns

for alg in Algorithm:
    print(alg.value, [f"{w:08x}" for w in iterate(alg, seed, 6)])

###############################################################################
# The zero trap. When bits 23..8 of the state are all zero, middle-square
# squares zero and stays there.

print("zero trap:", iterate(Algorithm.MIDDLE_SQUARE, 0xAB0000CD, 5))

###############################################################################
# Static seeds fall into short cycles quickly

for s in (0x19238433, 0x20118433):
    mu, lam = find_cycle(Algorithm.MIDDLE_SQUARE, s)
    print(f"middle-square from {s:#010x}: cycle of length {lam} entered after {mu} steps")

###############################################################################
# xorshift's period is computed exactly from its 32x32 matrix over GF(2)

p = xorshift_period()
print(f"longest xorshift orbit: {p:,} steps ({p / 2**32:.3f} of 2**32)")
print(f"orbit of {seed:#010x}: {xorshift_period(seed):,} steps")
