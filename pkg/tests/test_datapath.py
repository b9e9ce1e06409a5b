import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle
from fpga_rng.datapath import (
    RESEED_PERIOD,
    GeneratorState,
    SamplerConfig,
    initial_seed,
    refresh_seed,
    run,
    run_sampled,
    step,
)
from fpga_rng.entropy import EntropyConfig
from fpga_rng.prng import Algorithm, iterate, xorshift_step

SYNTH = EntropyConfig.synthetic(1, 2048, 400)


def replay(tmp_path, raws):
    p = tmp_path / "noise.bin"
    p.write_bytes(np.asarray(raws, dtype="<u2").tobytes())
    return EntropyConfig.replay(p)


def stepped(state, cfg, n):
    src = cfg.open()
    out = []
    for _ in range(n):
        state, w = step(state, src)
        out.append(w)
    return state, out, src


@pytest.mark.parametrize("raw, seed", [(0x0000, 0), (0xFFF0, 0xFFE00100), (0x0100, 0x00010000)])
def test_initial_seed(raw, seed):
    assert initial_seed(raw) == seed
    assert seed == (raw * raw) % 2**32


@pytest.mark.parametrize("raw, seed", [(0x1234, 0x00123400), (0, 0), (0xFFFF, 0x00FFFF00)])
def test_refresh_seed(raw, seed):
    assert refresh_seed(raw) == seed


def test_first_cycle_squares_the_sample():
    cfg = EntropyConfig.synthetic(1, 2048, 0)
    state, word = step(GeneratorState(alg="xorshift"), cfg.open())
    assert word == oracle.xorshift(0x40000000) == xorshift_step(0x8000 * 0x8000 % 2**32)
    assert (state.seed, state.seed_count, state.cycle) == (word, 1, 1)


def test_zero_trap_until_reseed(tmp_path):
    cfg = replay(tmp_path, [0x0000, 0x1234])
    _, words, src = stepped(GeneratorState(alg="middle-square"), cfg, 1001)
    assert words[:1000] == [0] * 1000
    assert words[1000] == 0x1234 * 0x1234
    assert src.draws == 2


@pytest.mark.parametrize("n", [1, 999, 1000, 1001, 2500, 3000])
def test_reseed_cadence(n):
    _, _, src = stepped(GeneratorState(), SYNTH, n)
    # one draw at cycle 0 and one at every later multiple of 1000 that was run
    assert src.draws == 1 + (n - 1) // RESEED_PERIOD


def test_feedback_within_block(tmp_path):
    cfg = replay(tmp_path, [0x0ABC, 0x0DEF])
    _, words, _ = stepped(GeneratorState(alg="xorshift"), cfg, 2000)
    assert words[:1000] == iterate("xorshift", initial_seed(0x0ABC), 1000)
    assert words[1000:] == iterate("xorshift", refresh_seed(0x0DEF), 1000)


def test_deterministic_with_replay(tmp_path):
    cfg = replay(tmp_path, np.arange(1, 50) * 977)
    a = stepped(GeneratorState(), cfg, 4000)[1]
    b = stepped(GeneratorState(), cfg, 4000)[1]
    assert a == b


def test_zero_variance_middle_square_is_periodic():
    cfg = EntropyConfig.synthetic(1, 2048, 0)
    _, w = run(GeneratorState(alg="middle-square"), cfg.open(), 5000)
    blocks = w[1000:].reshape(-1, 1000)
    assert (blocks == blocks[0]).all()


@pytest.mark.parametrize("alg", list(Algorithm))
@pytest.mark.parametrize("start", [0, 1, 500, 999])
@pytest.mark.parametrize("k", [1, 2, 7, 999, 1000, 1001, 3472])
def test_run_sampled_matches_stepping(alg, start, k):
    if start:
        state = GeneratorState(seed=0x9E3779B9, seed_count=start, cycle=5000 + start, alg=alg)
    else:
        state = GeneratorState(alg=alg)
    n = 4
    end, ref, ref_src = stepped(state, SYNTH, n * k)
    src = SYNTH.open()
    got_end, got = run_sampled(state, src, SamplerConfig(k), n)
    assert got.tolist() == ref[::k]
    assert got_end == end
    assert src.draws == ref_src.draws


def test_run_sampled_degenerate_cases():
    src = SYNTH.open()
    s, w = run_sampled(GeneratorState(), src, SamplerConfig(3472), 0)
    assert w.size == 0 and s == GeneratorState() and src.draws == 0
    with pytest.raises(ValueError):
        run_sampled(GeneratorState(), src, SamplerConfig(1), -1)
    with pytest.raises(ValueError):
        SamplerConfig(0)


def test_interval_one_is_full_stream():
    _, ref, _ = stepped(GeneratorState(), SYNTH, 5)
    _, w = run_sampled(GeneratorState(), SYNTH.open(), SamplerConfig(1), 5)
    assert w.tolist() == ref


def test_interval_3472_takes_cycles_0_and_3472():
    _, full = run(GeneratorState(), SYNTH.open(), 3473)
    _, w = run_sampled(GeneratorState(), SYNTH.open(), SamplerConfig(3472), 2)
    assert w.tolist() == [full[0], full[3472]]


@pytest.mark.parametrize("k", [1, 3, 3472])
def test_runs_chain(k):
    a_src, b_src = SYNTH.open(), SYNTH.open()
    s, first = run_sampled(GeneratorState(), a_src, SamplerConfig(k), 1234)
    s, second = run_sampled(s, a_src, SamplerConfig(k), 777)
    s2, whole = run_sampled(GeneratorState(), b_src, SamplerConfig(k), 2011)
    assert np.concatenate([first, second]).tolist() == whole.tolist()
    assert s == s2 and a_src.draws == b_src.draws


def test_sampled_is_strided_full_stream_small():
    for k in (13, 3472):
        n = 300
        _, full = run(GeneratorState(), SYNTH.open(), n * k)
        _, w = run_sampled(GeneratorState(), SYNTH.open(), SamplerConfig(k), n)
        assert np.array_equal(w, full[::k])


states = st.builds(
    GeneratorState,
    seed=st.integers(0, 2**32 - 1),
    seed_count=st.integers(0, 999),
    cycle=st.integers(0, 10**12),
    alg=st.sampled_from(list(Algorithm)),
)


@given(states)
def test_checkpoint_round_trip(state):
    line = state.to_line()
    assert GeneratorState.from_line(line) == state


def test_checkpoint_format():
    s = GeneratorState(seed=0x9D9696AE, seed_count=12, cycle=3012, alg="xorshift")
    assert s.to_line() == "seed=9d9696ae seed_count=12 cycle=3012 alg=xorshift"
    with pytest.raises(ValueError):
        GeneratorState.from_line("seed=zz")


@pytest.mark.parametrize("kwargs", [dict(seed_count=1000), dict(seed_count=-1),
                                    dict(seed=2**32), dict(cycle=-1), dict(alg="lcg")])
def test_state_invariants(kwargs):
    with pytest.raises(ValueError):
        GeneratorState(**kwargs)


def test_cycle_counts_up():
    s = GeneratorState()
    src = SYNTH.open()
    for i in range(1, 2002):
        s, _ = step(s, src)
        assert s.cycle == i and s.seed_count == i % 1000
