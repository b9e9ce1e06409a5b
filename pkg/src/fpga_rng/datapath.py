"""Top-level generator datapath: entropy seeding, feedback, periodic reseed.

One word is produced per clock cycle. Cycle 0 seeds from the square of an
entropy sample; every later cycle feeds the previous word back in, except
every 1000th cycle, which reseeds from a fresh sample shifted left by 8.
Word at cycle ``c`` is therefore ``step**(c % 1000 + 1)`` applied to the
seed of its 1000-cycle block.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace

import numpy as np

from .prng import MASK32, Algorithm, iterate_counts

RESEED_PERIOD = 1000
#: 4 bytes x 868 cycles; see uart.cycles_per_bit
DEFAULT_CAPTURE_INTERVAL = 3472


def initial_seed(raw):
    return (raw * raw) & MASK32


def refresh_seed(raw):
    return (raw << 8) & MASK32


@dataclass(frozen=True)
class GeneratorState:
    """Feedback register contents between clock edges.

    ``seed`` holds the last emitted word, which becomes the next cycle's
    input unless that cycle reseeds.
    """

    seed: int = 0
    seed_count: int = 0
    cycle: int = 0
    alg: Algorithm = Algorithm.XORSHIFT

    def __post_init__(self):
        if not 0 <= self.seed <= MASK32:
            raise ValueError(f"seed out of range: {self.seed}")
        if not 0 <= self.seed_count < RESEED_PERIOD:
            raise ValueError(f"seed_count out of range: {self.seed_count}")
        if self.cycle < 0:
            raise ValueError("cycle must be non-negative")
        object.__setattr__(self, "alg", Algorithm.parse(self.alg))

    def to_line(self):
        return (f"seed={self.seed:08x} seed_count={self.seed_count} "
                f"cycle={self.cycle} alg={self.alg.value}")

    @classmethod
    def from_line(cls, line):
        m = _CHECKPOINT_RE.fullmatch(line.strip())
        if m is None:
            raise ValueError(f"malformed checkpoint line: {line!r}")
        return cls(seed=int(m["seed"], 16), seed_count=int(m["count"]),
                   cycle=int(m["cycle"]), alg=m["alg"])


_CHECKPOINT_RE = re.compile(
    r"seed=(?P<seed>[0-9a-fA-F]{8}) seed_count=(?P<count>\d+) "
    r"cycle=(?P<cycle>\d+) alg=(?P<alg>[\w-]+)"
)


@dataclass(frozen=True)
class SamplerConfig:
    capture_interval: int = DEFAULT_CAPTURE_INTERVAL

    def __post_init__(self):
        if self.capture_interval < 1:
            raise ValueError("capture_interval must be >= 1")


def step(state, entropy):
    """Advance one clock cycle. Returns ``(new_state, word)``."""
    if state.seed_count == 0:
        raw = entropy.sample()
        seed = initial_seed(raw) if state.cycle == 0 else refresh_seed(raw)
    else:
        seed = state.seed
    word = int(state.alg.step(seed))
    new = replace(state, seed=word,
                  seed_count=(state.seed_count + 1) % RESEED_PERIOD,
                  cycle=state.cycle + 1)
    return new, word


def _block_seeds(raws, first_cycle):
    """Seeds for consecutive blocks whose first cycle is ``first_cycle``."""
    raws = np.asarray(raws, dtype=np.uint32)
    seeds = refresh_seed(raws)
    if first_cycle == 0 and len(raws):
        seeds[0] = initial_seed(raws[0])
    return seeds


def run_sampled(state, entropy, sampler=SamplerConfig(), n_words=0):
    """Run ``n_words * capture_interval`` cycles, keeping every interval-th word.

    The word kept from each window is the one from its first cycle, so the
    first word returned is the one produced on ``state.cycle``. Returns
    ``(new_state, words)`` with ``words`` a ``uint32`` array; the new state
    sits right after the last cycle run, so consecutive calls chain
    seamlessly.
    """
    if n_words < 0:
        raise ValueError("n_words must be non-negative")
    k = sampler.capture_interval
    if n_words == 0:
        return state, np.empty(0, dtype=np.uint32)
    if k == 1:
        return _run_full(state, entropy, n_words)

    # Offsets from the start of the current reseed block. The extra final
    # lane is the last cycle run; it becomes the carried seed.
    p0 = state.seed_count
    t = p0 + k * np.arange(n_words, dtype=np.int64)
    t = np.append(t, p0 + k * n_words - 1)
    block = t // RESEED_PERIOD
    pos = t % RESEED_PERIOD

    first_block = 0 if p0 == 0 else 1
    n_draws = int(block[-1]) - first_block + 1
    raws = entropy.draw(n_draws)
    seeds = _block_seeds(raws, state.cycle - p0 + first_block * RESEED_PERIOD)

    carried = block < first_block
    base = np.empty(len(t), dtype=np.uint32)
    counts = pos + 1
    base[carried] = state.seed
    counts[carried] = pos[carried] - p0 + 1
    base[~carried] = seeds[block[~carried] - first_block]

    out = iterate_counts(state.alg, base, counts)
    last_t = int(t[-1])
    new = replace(state, seed=int(out[-1]),
                  seed_count=(last_t + 1) % RESEED_PERIOD,
                  cycle=state.cycle + k * n_words)
    return new, out[:-1]


def _run_full(state, entropy, n):
    """Every word of ``n`` cycles, computed a whole reseed block at a time."""
    out = np.empty(n, dtype=np.uint32)
    i = 0
    while i < n and state.seed_count != 0:
        state, out[i] = step(state, entropy)
        i += 1

    n_blocks = (n - i) // RESEED_PERIOD
    if n_blocks:
        seeds = _block_seeds(entropy.draw(n_blocks), state.cycle)
        f = state.alg.step
        grid = np.empty((RESEED_PERIOD, n_blocks), dtype=np.uint32)
        x = seeds
        for r in range(RESEED_PERIOD):
            x = f(x)
            grid[r] = x
        span = n_blocks * RESEED_PERIOD
        out[i:i + span] = grid.T.ravel()
        i += span
        state = replace(state, seed=int(x[-1]), cycle=state.cycle + span)

    while i < n:
        state, out[i] = step(state, entropy)
        i += 1
    return state, out


def run(state, entropy, n_cycles):
    """Every word of ``n_cycles`` consecutive cycles."""
    return run_sampled(state, entropy, SamplerConfig(1), n_cycles)
