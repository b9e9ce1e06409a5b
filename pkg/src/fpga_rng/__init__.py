"""Software model of an FPGA random-number generator and its analysis chain."""
from .analysis import (StatsReport, analyze, black_fraction, chi_square_bytes, monobit,
                       normalize, read_pgm, threshold_bitmap, write_image)
from .datapath import (GeneratorState, SamplerConfig, initial_seed, refresh_seed,
                       run, run_sampled, step)
from .entropy import EntropyConfig, VoltageDivider, adc_to_microvolts, divider_vout
from .prng import (Algorithm, find_cycle, iterate, middle_square_step, xorshift_inverse_step,
                   xorshift_period, xorshift_step)
from .uart import (UartConfig, UartTxState, cycles_per_bit, decode_frame, deserialize_word,
                   encode_frame, read_hex_file, serialize_word, tx_sequencer, write_hex_file)

__version__ = "0.1.0"
