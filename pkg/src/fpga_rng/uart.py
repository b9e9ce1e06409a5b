"""UART 8N1 link: word byte order, frames, line timing, and capture files."""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

FRAME_BITS = 10
BYTES_PER_WORD = 4


class FramingError(ValueError):
    pass


class ShortReadError(ValueError):
    pass


class HexParseError(ValueError):
    def __init__(self, lineno, line, source=None):
        self.lineno = lineno
        self.line = line
        self.source = source
        where = f"{source}:" if source else "line "
        super().__init__(f"{where}{lineno}: not a 32-bit hex word: {line!r}")


@dataclass(frozen=True)
class UartConfig:
    baud: int = 115200
    clock_hz: int = 100_000_000
    data_bits: int = 8
    parity: str = "none"
    stop_bits: int = 1

    def __post_init__(self):
        if self.baud <= 0:
            raise ValueError("baud must be positive")
        if self.clock_hz < self.baud:
            raise ValueError("clock_hz must be >= baud")
        if (self.data_bits, self.parity, self.stop_bits) != (8, "none", 1):
            raise ValueError("only 8N1 framing is supported")


def cycles_per_bit(config=UartConfig()):
    return round(config.clock_hz / config.baud)


def frame_cycles(config=UartConfig()):
    """Clock cycles one 8N1 frame occupies on the line."""
    return FRAME_BITS * cycles_per_bit(config)


# -- words <-> bytes ----------------------------------------------------------

def serialize_word(w):
    """Wire order: least significant byte first."""
    return bytes(((w >> s) & 0xFF) for s in (0, 8, 16, 24))


def deserialize_word(b):
    if len(b) < BYTES_PER_WORD:
        raise ShortReadError(f"need 4 bytes, got {len(b)}")
    if len(b) > BYTES_PER_WORD:
        raise ValueError(f"expected exactly 4 bytes, got {len(b)}")
    return b[0] | b[1] << 8 | b[2] << 16 | b[3] << 24


def words_to_stream(words):
    return np.asarray(words, dtype=np.uint32).astype("<u4").tobytes()


def stream_to_words(data, strict=False):
    """Reassemble little-endian words from a raw capture.

    A trailing partial word is dropped with a warning, or raises
    :class:`ShortReadError` when ``strict``.
    """
    extra = len(data) % BYTES_PER_WORD
    if extra:
        msg = f"dropping {extra} trailing byte(s) of a partial word"
        if strict:
            raise ShortReadError(msg)
        warnings.warn(msg, stacklevel=2)
        data = data[:len(data) - extra]
    return np.frombuffer(data, dtype="<u4").astype(np.uint32)


# -- frames ------------------------------------------------------------------

def encode_frame(byte):
    if not 0 <= byte <= 0xFF:
        raise ValueError(f"not a byte: {byte}")
    return [0] + [(byte >> i) & 1 for i in range(8)] + [1]


def decode_frame(bits):
    bits = list(bits)
    if len(bits) != FRAME_BITS:
        raise FramingError(f"frame must be 10 bits, got {len(bits)}")
    if bits[0] != 0:
        raise FramingError("missing start bit")
    if bits[9] != 1:
        raise FramingError("missing stop bit")
    return sum(b << i for i, b in enumerate(bits[1:9]))


def line_levels(data, config=UartConfig(), idle=0):
    """Per-clock-cycle TX line levels for back-to-back frames of ``data``.

    ``idle`` cycles of high line are added before the first frame.
    """
    cpb = cycles_per_bit(config)
    bits = []
    for b in data:
        bits.extend(encode_frame(b))
    levels = np.repeat(np.array(bits, dtype=np.uint8), cpb)
    return np.concatenate([np.ones(idle, dtype=np.uint8), levels])


def receive_levels(levels, config=UartConfig()):
    """Recover bytes from per-cycle line levels, sampling mid-bit.

    Waits for a falling edge, then samples each of the 10 bits at the centre
    of its bit period. Raises :class:`FramingError` on a bad start/stop bit.
    """
    levels = np.asarray(levels)
    cpb = cycles_per_bit(config)
    out = bytearray()
    i = 0
    n = len(levels)
    while True:
        lows = np.flatnonzero(levels[i:] == 0)
        if lows.size == 0:
            break
        start = i + int(lows[0])
        centres = start + cpb // 2 + cpb * np.arange(FRAME_BITS)
        if centres[-1] >= n:
            raise FramingError(f"truncated frame at cycle {start}")
        out.append(decode_frame(levels[centres].tolist()))
        i = start + FRAME_BITS * cpb - cpb // 2
    return bytes(out)


# -- transmit sequencer ------------------------------------------------------

@dataclass(frozen=True)
class UartTxState:
    byte_count: int = 0
    pending_word: int = 0
    ready: bool = True

    def __post_init__(self):
        if not 0 <= self.byte_count <= 3:
            raise ValueError(f"byte_count out of range: {self.byte_count}")


def tx_sequencer(state, word):
    """One handshake step of the 4-byte sender.

    The word is latched when byte 0 goes out; bytes 1..3 come from the
    latch. Returns ``(state, byte)``, with ``byte`` ``None`` when the
    transmitter is busy.
    """
    if not state.ready:
        return state, None
    pending = word & 0xFFFFFFFF if state.byte_count == 0 else state.pending_word
    byte = (pending >> (8 * state.byte_count)) & 0xFF
    return replace(state, byte_count=(state.byte_count + 1) % 4,
                   pending_word=pending), byte


# -- hex capture files -------------------------------------------------------

_HEX_RE = re.compile(r"(?:0[xX])?([0-9a-fA-F]{8})")


def format_hex(words):
    return "".join(f"{int(w):08x}\n" for w in words)


def write_hex_file(words, path):
    """One word per line, 8 lowercase hex digits, no prefix."""
    with open(path, "w", newline="\n") as f:
        f.write(format_hex(words))


def parse_hex(text, source=None):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    out = np.empty(len(lines), dtype=np.uint32)
    for i, line in enumerate(lines):
        m = _HEX_RE.fullmatch(line.rstrip("\r"))
        if m is None:
            raise HexParseError(i + 1, line, source)
        out[i] = int(m.group(1), 16)
    return out


def read_hex_file(path):
    """Inverse of :func:`write_hex_file`; also accepts ``0x`` and mixed case."""
    return parse_hex(Path(path).read_text(), source=str(path))
