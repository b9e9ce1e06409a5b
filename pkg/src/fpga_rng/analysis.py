"""Randomness analysis: normalization, threshold bitmap, and uniformity stats."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

WORD_MAX = 0xFFFFFFFF
DEFAULT_WIDTH = 700
DEFAULT_HEIGHT = 700
#: black_fraction above this is reported as a dark (small-number) bias
DARK_BIAS_THRESHOLD = 0.55
GRAY_BAND = (0.49, 0.51)


class InsufficientSamplesError(ValueError):
    pass


def normalize(words):
    """Map words onto [0, 1] by dividing by 2**32 - 1, in float64."""
    if np.isscalar(words):
        return int(words) / WORD_MAX
    return np.asarray(words, dtype=np.uint32).astype(np.float64) / WORD_MAX


def threshold_bitmap(samples, width=DEFAULT_WIDTH, height=DEFAULT_HEIGHT):
    """Boolean ``(height, width)`` image, ``True`` (black) where sample < 0.5.

    Pixel ``k`` in row-major order comes from ``samples[k]``; anything past
    ``width * height`` is ignored.
    """
    samples = np.asarray(samples, dtype=np.float64)
    need = width * height
    if samples.size < need:
        raise InsufficientSamplesError(
            f"{width}x{height} bitmap needs {need} samples, got {samples.size}")
    return (samples[:need] < 0.5).reshape(height, width)


def black_fraction(bitmap):
    bitmap = np.asarray(bitmap, dtype=bool)
    return int(bitmap.sum()) / bitmap.size


def _as_bytes(words):
    return np.frombuffer(np.asarray(words, dtype=np.uint32).astype("<u4").tobytes(),
                         dtype=np.uint8)


def monobit(words):
    """Frequency test z-score over all 32 bits of every word."""
    b = _as_bytes(words)
    if b.size == 0:
        raise ValueError("monobit needs at least one word")
    n_bits = 8 * b.size
    ones = int(np.unpackbits(b).sum(dtype=np.int64))
    return (2 * ones - n_bits) / math.sqrt(n_bits)


def chi_square_bytes(words):
    """Pearson chi-square of the 256 byte-value counts (255 dof)."""
    b = _as_bytes(words)
    if b.size < 256:
        raise InsufficientSamplesError(f"need at least 256 bytes, got {b.size}")
    counts = np.bincount(b, minlength=256).astype(np.int64)
    # exact integer numerator: sum((256*o - N)**2) / (256*N)
    n = b.size
    num = int(((256 * counts - n) ** 2).sum())
    return num / (256 * n)


@dataclass(frozen=True)
class StatsReport:
    n: int
    black_fraction: float
    monobit_z: float
    byte_chi2: float

    @property
    def gray(self):
        lo, hi = GRAY_BAND
        return lo <= self.black_fraction <= hi

    @property
    def dark_bias(self):
        return self.black_fraction > DARK_BIAS_THRESHOLD

    def to_text(self):
        yn = {True: "yes", False: "no"}
        return (f"n={self.n}\n"
                f"black_fraction={self.black_fraction!r}\n"
                f"monobit_z={self.monobit_z!r}\n"
                f"byte_chi2={self.byte_chi2!r}\n"
                f"gray={yn[self.gray]}\n"
                f"dark_bias={yn[self.dark_bias]}\n")

    @classmethod
    def from_text(cls, text):
        kv = dict(line.split("=", 1) for line in text.splitlines() if line)
        return cls(n=int(kv["n"]), black_fraction=float(kv["black_fraction"]),
                   monobit_z=float(kv["monobit_z"]), byte_chi2=float(kv["byte_chi2"]))


def analyze(words, width=DEFAULT_WIDTH, height=DEFAULT_HEIGHT):
    """Bitmap plus report. Statistics cover every word, the bitmap the first w*h."""
    words = np.asarray(words, dtype=np.uint32)
    bitmap = threshold_bitmap(normalize(words), width, height)
    report = StatsReport(n=int(words.size), black_fraction=black_fraction(bitmap),
                         monobit_z=monobit(words), byte_chi2=chi_square_bytes(words))
    return bitmap, report


# -- PGM ---------------------------------------------------------------------

def write_image(bitmap, path):
    """Binary PGM (P5, maxval 255): black pixels 0, white 255."""
    bitmap = np.asarray(bitmap, dtype=bool)
    height, width = bitmap.shape
    pixels = np.where(bitmap, 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        f.write(pixels.tobytes())


_PGM_HEADER = re.compile(rb"P5\s+(?:#[^\n]*\n\s*)*(\d+)\s+(\d+)\s+(\d+)\s")


def read_pgm(path):
    """8-bit binary PGM to a ``uint8`` array of shape ``(height, width)``."""
    with open(path, "rb") as f:
        data = f.read()
    m = _PGM_HEADER.match(data)
    if m is None:
        raise ValueError(f"{path}: not a binary PGM")
    width, height, maxval = (int(g) for g in m.groups())
    if maxval > 255:
        raise ValueError(f"{path}: 16-bit PGM not supported")
    body = data[m.end():]
    if len(body) != width * height:
        raise ValueError(f"{path}: expected {width * height} pixel bytes, got {len(body)}")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)
