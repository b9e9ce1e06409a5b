"""
Entropy seeding and the reseeding datapath
==========================================

Converter readings, the voltage conversion used by the display, and how the
top-level datapath mixes entropy with feedback.
"""
import numpy as np

from fpga_rng.datapath import GeneratorState, initial_seed, refresh_seed, run, step
from fpga_rng.entropy import EntropyConfig, VoltageDivider, adc_code, adc_to_microvolts

###############################################################################
# A raw reading is 16 bits with the code in the top 12

for raw in (0x0000, 0x8000, 0xFFF0):
    print(f"raw {raw:#06x}: code {adc_code(raw):4d} -> {adc_to_microvolts(raw):7d} uV")

# The bench check: 3.3 V across a 10k/1k divider, read on the 1k side
print(f"divider: {VoltageDivider(3.3, r_high=10e3, r_low=1e3).vout():.2f} V")

###############################################################################
# Synthetic noise stands in for the floating input pins

noise = EntropyConfig.synthetic(prng_seed=1, mean=2048, sigma=512)
print("first samples:", [f"{x:#06x}" for x in noise.open().draw(6)])

###############################################################################
# Cycle 0 squares a sample; every 1000th cycle after that shifts one in

raw = 0x8000
print(f"initial seed {initial_seed(raw):#010x}, refresh seed {refresh_seed(raw):#010x}")

src = noise.open()
state = GeneratorState(alg="xorshift")
for _ in range(3):
    state, word = step(state, src)
    print(f"cycle {state.cycle - 1}: {word:#010x}")
print("checkpoint:", state.to_line())

###############################################################################
# With a constant input, middle-square repeats every reseed block

flat = EntropyConfig.synthetic(prng_seed=1, mean=2048, sigma=0)
_, words = run(GeneratorState(alg="middle-square"), flat.open(), 4000)
blocks = words[1000:].reshape(-1, 1000)
print("blocks identical:", bool((blocks == blocks[0]).all()),
      "| zero words:", int(np.count_nonzero(words == 0)), "of", words.size)
