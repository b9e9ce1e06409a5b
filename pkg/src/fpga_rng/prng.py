"""Scrambling algorithms of the generator: middle-square and xorshift.

Both step functions accept a Python ``int`` or a ``numpy`` array of
``uint32``; every shift is logical and every result wraps to 32 bits.
"""
from __future__ import annotations

import enum
import functools

import numpy as np

MASK32 = 0xFFFFFFFF


def middle_square_step(seed):
    """Square bits 23..8 of ``seed``.

    The product of two 16-bit values always fits in 32 bits, so nothing is
    truncated.
    """
    middle = (seed >> 8) & 0xFFFF
    return middle * middle


def xorshift_step(seed):
    """One xorshift round with the right/left/right triple (7, 9, 13)."""
    t = seed ^ (seed >> 7)
    t = (t ^ (t << 9)) & MASK32
    return t ^ (t >> 13)


def _undo_right(y, k):
    x = y
    s = k
    while s < 32:
        x = x ^ (y >> s)
        s += k
    return x


def _undo_left(y, k):
    x = y
    s = k
    while s < 32:
        x = x ^ ((y << s) & MASK32)
        s += k
    return x


def xorshift_inverse_step(out):
    """Invert :func:`xorshift_step` exactly."""
    t = _undo_right(out, 13)
    t = _undo_left(t, 9)
    return _undo_right(t, 7)


class Algorithm(enum.Enum):
    MIDDLE_SQUARE = "middle-square"
    XORSHIFT = "xorshift"

    @property
    def step(self):
        if self is Algorithm.MIDDLE_SQUARE:
            return middle_square_step
        return xorshift_step

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = name.strip().lower().replace("_", "-")
        if key in ("middle-square", "middlesquare", "ms"):
            return cls.MIDDLE_SQUARE
        if key in ("xorshift", "xs"):
            return cls.XORSHIFT
        raise ValueError(f"unknown algorithm: {name!r}")


def iterate(alg, seed, n):
    """Pure feedback: ``[step(seed), step(step(seed)), ...]``, ``n`` items."""
    if n < 0:
        raise ValueError("n must be non-negative")
    step = Algorithm.parse(alg).step
    out = []
    x = int(seed) & MASK32
    for _ in range(n):
        x = step(x)
        out.append(x)
    return out


def iterate_counts(alg, seeds, counts):
    """Apply the step ``counts[i]`` times to ``seeds[i]``, vectorized.

    Work is proportional to ``sum(counts)``: lanes are ordered by count and
    retired from the active tail as they finish.
    """
    step = Algorithm.parse(alg).step
    seeds = np.asarray(seeds, dtype=np.uint32)
    counts = np.asarray(counts, dtype=np.int64)
    if seeds.shape != counts.shape:
        raise ValueError("seeds and counts must have the same shape")
    if counts.size == 0:
        return seeds.copy()
    if counts.min() < 0:
        raise ValueError("counts must be non-negative")
    order = np.argsort(counts, kind="stable")
    sorted_counts = counts[order]
    x = seeds[order]
    for i in range(1, int(sorted_counts[-1]) + 1):
        start = int(np.searchsorted(sorted_counts, i, side="left"))
        x[start:] = step(x[start:])
    out = np.empty_like(x)
    out[order] = x
    return out


def find_cycle(alg, seed, max_steps=1_000_000):
    """Brent's cycle search on the feedback orbit of ``seed``.

    Returns ``(mu, lam)``: the orbit ``seed, step(seed), ...`` first
    repeats at index ``mu`` with period ``lam``. Returns ``None`` if no
    repeat shows up within ``max_steps`` evaluations.
    """
    step = Algorithm.parse(alg).step
    x0 = int(seed) & MASK32
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    evals = 1
    while tortoise != hare:
        if evals >= max_steps:
            return None
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        evals += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    return mu, lam


# -- GF(2) view of xorshift -------------------------------------------------
# A matrix is a tuple of 32 column words: column j is the image of bit j.

def xorshift_matrix():
    return tuple(xorshift_step(1 << j) for j in range(32))


def _apply(cols, x):
    y = 0
    j = 0
    while x:
        if x & 1:
            y ^= cols[j]
        x >>= 1
        j += 1
    return y


def _compose(a, b):
    return tuple(_apply(a, c) for c in b)


@functools.lru_cache(maxsize=None)
def _squares():
    """``[T, T**2, T**4, ...]`` covering every exponent below the order bound."""
    out = [xorshift_matrix()]
    for _ in range(_bound_value().bit_length() - 1):
        out.append(_compose(out[-1], out[-1]))
    return tuple(out)


def _pow_apply(n, v):
    sq = _squares()
    i = 0
    while n:
        if n & 1:
            v = _apply(sq[i], v)
        n >>= 1
        i += 1
    return v


def _prime_factors(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _order_bound():
    # Any invertible 32x32 GF(2) matrix has order dividing
    # 2**5 * lcm(2**d - 1 for d <= 32).
    exps = {2: 5}
    for d in range(1, 33):
        for p, e in _prime_factors((1 << d) - 1).items():
            exps[p] = max(exps.get(p, 0), e)
    return exps


def _bound_value():
    n = 1
    for p, e in _order_bound().items():
        n *= p**e
    return n


def _reduce_order(n, primes, is_identity):
    if not is_identity(n):
        raise ArithmeticError("map is not invertible")
    for p in primes:
        while n % p == 0 and is_identity(n // p):
            n //= p
    return n


def xorshift_period(seed=None):
    """Exact period of the xorshift feedback loop.

    With no ``seed`` this is the order of the 32x32 transition matrix over
    GF(2), i.e. the longest orbit length. With a ``seed`` it is the length
    of that seed's orbit (1 for zero).
    """
    order = _matrix_order()
    if seed is None:
        return order
    s = int(seed) & MASK32
    return _reduce_order(order, _prime_factors(order),
                         lambda n: _pow_apply(n, s) == s)


@functools.lru_cache(maxsize=None)
def _matrix_order():
    return _reduce_order(
        _bound_value(), _order_bound(), lambda m: all(_pow_apply(m, 1 << j) == 1 << j for j in range(32)))
