"""
The UART link
=============

Byte order of a word, 8N1 frames, line timing at 100 MHz / 115200 baud, and
the hex capture file.
"""
import tempfile
from pathlib import Path

from fpga_rng.uart import (UartConfig, UartTxState, cycles_per_bit, encode_frame, frame_cycles,
                           line_levels, read_hex_file, receive_levels, serialize_word,
                           tx_sequencer, words_to_stream, write_hex_file)

word = 0x9D9696AE

###############################################################################
# Least significant byte goes out first

print("wire bytes:", serialize_word(word).hex(" "))
print("frame for 0xAE:", encode_frame(0xAE))

###############################################################################
# The sender latches a word and hands out one byte per ready handshake

state = UartTxState()
for _ in range(4):
    state, b = tx_sequencer(state, word)
    print(f"sent {b:#04x}, next byte_count {state.byte_count}")

###############################################################################
# Timing

cfg = UartConfig()
print(f"{cycles_per_bit(cfg)} cycles per bit, {frame_cycles(cfg)} per frame")
print(f"a 4-byte word every {4 * cycles_per_bit(cfg)} cycles if counted per byte, "
      f"{4 * frame_cycles(cfg)} if counted per full frame")

levels = line_levels(serialize_word(word), cfg, idle=100)
print("line cycles:", len(levels), "| received:", receive_levels(levels, cfg).hex(" "))

###############################################################################
# Capture file: 8 hex digits per line, 9 bytes per word

with tempfile.TemporaryDirectory() as d:
    p = Path(d) / "rand.hex"
    write_hex_file([word, 0x12345678], p)
    print(repr(p.read_text()), "->", [f"{w:#010x}" for w in read_hex_file(p)])
    print("raw stream:", words_to_stream(read_hex_file(p)).hex(" "))
