"""Cycle-accurate simulator: cycle counts, equivalence, buffers, traces."""

import numpy as np
import pytest

from polarsc import (
    InvalidParameterError,
    MAX_LLR,
    SimConfig,
    encode,
    make_code_spec,
    quantize,
    run,
    sc_decode,
    verify_equivalence,
)
from polarsc.channel import ChannelConfig, _draw_trials


def noisy_llrs(spec, seed, ebn0_db=1.0, frames=1):
    cfg = ChannelConfig(kind="bpsk_awgn", ebn0_db=ebn0_db, master_seed=seed,
                        code_rate=spec.k_info / spec.n_bits)
    _, llrs = _draw_trials(spec, cfg, frames)
    return llrs


class TestCycleCounts:
    @pytest.mark.parametrize("n", [4, 8, 16, 32, 64, 128, 256, 512, 1024])
    def test_closed_forms(self, n):
        spec = make_code_spec(n, n // 2)
        q_llrs = quantize(np.full(n, MAX_LLR), 6)
        la = run(SimConfig(spec=spec, q=6, architecture="lookahead"), q_llrs)
        assert la.cycles_elapsed == n - 1
        conv = run(SimConfig(spec=spec, q=6, architecture="conventional"), q_llrs)
        assert conv.cycles_elapsed == 2 * (n - 1)
        par = run(SimConfig(spec=spec, q=6, architecture="parallel2"),
                  [q_llrs, q_llrs])
        assert par.cycles_elapsed == n

    def test_architecture_aliases(self):
        spec = make_code_spec(8, 4)
        assert SimConfig(spec=spec, q=6,
                         architecture="conventional_pipelined").architecture == "conventional"
        assert SimConfig(spec=spec, q=6,
                         architecture="lookahead_2parallel").architecture == "parallel2"


class TestDecisionEquivalence:
    @pytest.mark.parametrize("arch", ["conventional", "lookahead"])
    @pytest.mark.parametrize("n", [8, 32, 128])
    def test_noisy_single_stream(self, arch, n):
        spec = make_code_spec(n, n // 2)
        llrs = noisy_llrs(spec, seed=n, frames=25)
        q_llrs = quantize(llrs, 6)
        cfg = SimConfig(spec=spec, q=6, architecture=arch)
        for t in range(q_llrs.shape[0]):
            result = run(cfg, q_llrs[t])
            ref = sc_decode(q_llrs[t], spec, "minsum_q", q=6)
            assert np.array_equal(result.decisions[0], ref.u_hat)
            assert np.array_equal(result.decision_llrs[0], ref.decision_llrs)

    def test_two_parallel_distinct_streams(self):
        spec = make_code_spec(16, 8)
        llrs = noisy_llrs(spec, seed=99, frames=20)
        q_llrs = quantize(llrs, 6)
        cfg = SimConfig(spec=spec, q=6, architecture="parallel2")
        for t in range(0, 20, 2):
            result = run(cfg, [q_llrs[t], q_llrs[t + 1]])
            for s in (0, 1):
                ref = sc_decode(q_llrs[t + s], spec, "minsum_q", q=6)
                assert np.array_equal(result.decisions[s], ref.u_hat)

    def test_conventional_vs_lookahead_identical(self):
        spec = make_code_spec(64, 32)
        q_llrs = quantize(noisy_llrs(spec, seed=5, frames=10), 6)
        for t in range(10):
            a = run(SimConfig(spec=spec, q=6, architecture="conventional"), q_llrs[t])
            b = run(SimConfig(spec=spec, q=6, architecture="lookahead"), q_llrs[t])
            assert np.array_equal(a.decisions[0], b.decisions[0])

    def test_gate_level_pes_match_integer_path(self):
        spec = make_code_spec(8, 4)
        q_llrs = quantize(noisy_llrs(spec, seed=3, frames=10), 5)
        for t in range(10):
            fast = run(SimConfig(spec=spec, q=5, architecture="lookahead"), q_llrs[t])
            gated = run(
                SimConfig(spec=spec, q=5, architecture="lookahead", use_gate_pes=True),
                q_llrs[t],
            )
            assert np.array_equal(fast.decisions[0], gated.decisions[0])
            assert np.array_equal(fast.decision_llrs[0], gated.decision_llrs[0])


class TestVerifyEquivalence:
    def test_noiseless_inputs_match(self):
        for n in (8, 64, 256):
            spec = make_code_spec(n, n // 2)
            msg = np.zeros(spec.k_info, dtype=int)
            x = encode(msg, spec)
            q_llrs = quantize((1 - 2 * x) * MAX_LLR, 6)
            res = run(SimConfig(spec=spec, q=6, architecture="lookahead"), q_llrs)
            ref = sc_decode(q_llrs, spec, "minsum_q", q=6)
            assert np.array_equal(res.decisions[0], ref.u_hat)

    @pytest.mark.parametrize("arch", ["conventional", "lookahead", "parallel2"])
    def test_randomized_campaign(self, arch):
        spec = make_code_spec(32, 16)
        cfg = SimConfig(spec=spec, q=6, architecture=arch)
        report = verify_equivalence(cfg, trials=60, seed=2)
        assert report.passed
        assert report.matches == 60 and report.mismatches == 0
        assert report.first_divergence is None

    def test_report_json_keys(self):
        spec = make_code_spec(8, 4)
        cfg = SimConfig(spec=spec, q=6, architecture="lookahead")
        d = verify_equivalence(cfg, trials=3, seed=0).to_json_dict()
        assert set(d) == {"architecture", "n", "q", "trials", "matches",
                          "mismatches", "passed", "first_divergence"}


class TestActivityAndBuffers:
    def test_parallel_activity_matches_reference_table(self):
        spec = make_code_spec(8, 4)
        q_llrs = quantize(np.full(8, MAX_LLR), 6)
        res = run(SimConfig(spec=spec, q=6, architecture="parallel2"),
                  [q_llrs, q_llrs])
        assert res.activity.counts[0] == (4, 0, 2, 1, 1, 2, 1, 1)
        assert res.activity.counts[1] == (0, 4, 2, 1, 1, 2, 1, 1)
        assert max(res.activity.column_sums()) <= 4

    @pytest.mark.parametrize("n", [8, 16, 64, 256])
    def test_candidate_buffer_peak_bound(self, n):
        spec = make_code_spec(n, n // 2)
        q_llrs = quantize(noisy_llrs(spec, seed=n + 1)[0], 6)
        res = run(SimConfig(spec=spec, q=6, architecture="lookahead"), q_llrs)
        assert res.candidate_buffer_peak <= n - 2
        # the first descent holds one unresolved candidate set per stage
        assert res.candidate_buffer_peak == n - 2

    def test_parallel_peak_within_register_budget(self):
        n, q = 64, 6
        spec = make_code_spec(n, n // 2)
        q_llrs = quantize(noisy_llrs(spec, seed=1, frames=2), q)
        res = run(SimConfig(spec=spec, q=q, architecture="parallel2"),
                  [q_llrs[0], q_llrs[1]])
        assert res.candidate_buffer_peak <= 2 * (n - 2)
        # two words per buffered pair still fit the "other registers" budget
        assert 2 * res.candidate_buffer_peak <= 9 * n // 2 + 4

    def test_conventional_has_no_candidate_buffer(self):
        spec = make_code_spec(16, 8)
        q_llrs = quantize(np.full(16, MAX_LLR), 6)
        res = run(SimConfig(spec=spec, q=6, architecture="conventional"), q_llrs)
        assert res.candidate_buffer_peak == 0


class TestTraceAndValidation:
    def test_trace_rows_recorded(self):
        spec = make_code_spec(8, 4)
        q_llrs = quantize(np.full(8, MAX_LLR), 6)
        res = run(SimConfig(spec=spec, q=6, architecture="lookahead",
                            record_trace=True), q_llrs)
        # one row per PE activation: (N/2) * log2(N)
        assert len(res.trace) == 12
        cycles = sorted({row[0] for row in res.trace})
        assert cycles == list(range(1, 8))

    def test_rejects_wrong_stream_count(self):
        spec = make_code_spec(8, 4)
        q_llrs = quantize(np.full(8, MAX_LLR), 6)
        with pytest.raises(InvalidParameterError):
            run(SimConfig(spec=spec, q=6, architecture="parallel2"), q_llrs)

    def test_rejects_out_of_range_inputs(self):
        spec = make_code_spec(8, 4)
        with pytest.raises(InvalidParameterError):
            run(SimConfig(spec=spec, q=4, architecture="lookahead"),
                np.full(8, 31, dtype=np.int64))

    def test_sim_result_json_keys(self):
        spec = make_code_spec(8, 4)
        q_llrs = quantize(np.full(8, MAX_LLR), 6)
        d = run(SimConfig(spec=spec, q=6, architecture="lookahead"), q_llrs).to_json_dict()
        assert set(d) == {"cycles", "u_hat", "activity", "buffer_peak"}
