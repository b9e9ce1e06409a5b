"""Entropy sources standing in for the board's XADC noise reading.

A raw sample is a 16-bit container whose top 12 bits carry the converter
code, exactly as the XADC ``do_out`` bus delivers it. Sources hand out raw
samples one at a time (:meth:`sample`) or in bulk (:meth:`draw`); both paths
walk the same underlying sequence.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ADC_BITS = 12
ADC_MAX = (1 << ADC_BITS) - 1
RAW_MAX = 0xFFFF


def adc_code(raw):
    """The 12 significant bits of a raw sample."""
    return raw >> 4


def adc_to_microvolts(raw):
    """Integer microvolts, using the display path's multiply-then-shift.

    Full scale (code 4095) maps to 999,755 uV, just under 1 V.
    """
    if isinstance(raw, np.ndarray):
        raw = raw.astype(np.int64)
    return ((raw >> 4) * 250000) >> 10


@dataclass(frozen=True)
class VoltageDivider:
    vin: float
    r_high: float
    r_low: float

    def __post_init__(self):
        if self.r_high + self.r_low <= 0:
            raise ValueError("r_high + r_low must be positive")

    def vout(self):
        return divider_vout(self)


def divider_vout(d):
    """Voltage across the bottom resistor ``r_low``."""
    if d.r_high + d.r_low <= 0:
        raise ValueError("r_high + r_low must be positive")
    return d.vin * d.r_low / (d.r_high + d.r_low)


class EntropySource:
    """Base class. Subclasses implement :meth:`_draw`."""

    #: True when two sources opened from the same config yield the same samples
    reproducible = True

    def __init__(self):
        self.draws = 0

    def draw(self, n):
        """Next ``n`` raw samples as a ``uint16`` array."""
        if n < 0:
            raise ValueError("n must be non-negative")
        out = self._draw(n)
        self.draws += n
        return out

    def sample(self):
        return int(self.draw(1)[0])

    def _draw(self, n):
        raise NotImplementedError


class ReplaySource(EntropySource):
    """Little-endian 16-bit words from a headerless file, looping at EOF."""

    def __init__(self, path):
        super().__init__()
        self.path = Path(path)
        data = self.path.read_bytes()
        if len(data) < 2:
            raise ValueError(f"{self.path}: replay file holds no 16-bit samples")
        if len(data) % 2:
            raise ValueError(f"{self.path}: odd byte count {len(data)}")
        self._words = np.frombuffer(data, dtype="<u2").astype(np.uint16)
        self._pos = 0

    def _draw(self, n):
        idx = (self._pos + np.arange(n, dtype=np.int64)) % len(self._words)
        self._pos = (self._pos + n) % len(self._words)
        return self._words[idx]


class OsRandomSource(EntropySource):
    reproducible = False

    def _draw(self, n):
        return np.frombuffer(os.urandom(2 * n), dtype="<u2").astype(np.uint16)


class SyntheticNoiseSource(EntropySource):
    """Gaussian noise quantized to 12 bits and left-aligned in 16."""

    def __init__(self, prng_seed, mean, sigma):
        super().__init__()
        if sigma < 0:
            raise ValueError("sigma must be non-negative")
        self.mean = float(mean)
        self.sigma = float(sigma)
        self._rng = np.random.default_rng(prng_seed)

    def _draw(self, n):
        v = self._rng.normal(self.mean, self.sigma, size=n)
        code = np.clip(np.rint(v), 0, ADC_MAX).astype(np.uint16)
        return code << np.uint16(4)


@dataclass(frozen=True)
class EntropyConfig:
    """Which entropy source to open, and with what parameters.

    ``mode`` is one of ``"replay"``, ``"os"`` or ``"synthetic"``.
    """

    mode: str
    path: str | None = None
    prng_seed: int = 1
    mean: float = 2048.0
    sigma: float = 64.0

    def __post_init__(self):
        if self.mode not in ("replay", "os", "synthetic"):
            raise ValueError(f"unknown entropy mode: {self.mode!r}")
        if self.mode == "replay" and not self.path:
            raise ValueError("replay entropy needs a path")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")

    @classmethod
    def replay(cls, path):
        return cls("replay", path=str(path))

    @classmethod
    def os_random(cls):
        return cls("os")

    @classmethod
    def synthetic(cls, prng_seed=1, mean=2048.0, sigma=64.0):
        return cls("synthetic", prng_seed=int(prng_seed), mean=float(mean),
                   sigma=float(sigma))

    @classmethod
    def parse(cls, text):
        """Parse ``replay:PATH``, ``os`` or ``synthetic[:seed=S,mean=M,sigma=G]``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        if kind == "replay":
            return cls.replay(rest)
        if kind in ("os", "osrandom", "os-random"):
            if rest:
                raise ValueError("os entropy takes no parameters")
            return cls.os_random()
        if kind == "synthetic":
            params = {}
            for item in filter(None, (p.strip() for p in rest.split(","))):
                key, eq, value = item.partition("=")
                if not eq:
                    raise ValueError(f"bad synthetic parameter: {item!r}")
                params[key.strip()] = value.strip()
            unknown = set(params) - {"seed", "mean", "sigma"}
            if unknown:
                raise ValueError(f"unknown synthetic parameters: {sorted(unknown)}")
            return cls.synthetic(
                prng_seed=int(params.get("seed", "1"), 0),
                mean=float(params.get("mean", 2048.0)),
                sigma=float(params.get("sigma", 64.0)),
            )
        raise ValueError(f"unknown entropy source: {text!r}")

    def __str__(self):
        if self.mode == "replay":
            return f"replay:{self.path}"
        if self.mode == "os":
            return "os"
        return f"synthetic:seed={self.prng_seed},mean={self.mean:g},sigma={self.sigma:g}"

    def open(self):
        if self.mode == "replay":
            return ReplaySource(self.path)
        if self.mode == "os":
            return OsRandomSource()
        return SyntheticNoiseSource(self.prng_seed, self.mean, self.sigma)
