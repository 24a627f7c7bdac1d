"""BPSK/AWGN channel simulation and Monte-Carlo error-rate sweeps.

Per-trial determinism: the random stream of trial t is derived from
(master_seed, t) through numpy's SeedSequence spawn mechanism
(``SeedSequence(master_seed).spawn`` keyed by the trial index), so results
do not depend on execution order and trials can be split across workers
without changing aggregate counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .code import encode
from .errors import InvalidParameterError
from .llr import (
    MAX_LLR,
    MODE_EXACT,
    MODE_MINSUM,
    MODE_MINSUM_Q,
    quantize,
    sc_decode_batch,
)

NOISELESS = "noiseless"
BPSK_AWGN = "bpsk_awgn"

FUNCTIONAL = "functional"
_ARCHITECTURES = ("conventional", "lookahead", "parallel2")


@dataclass(frozen=True)
class ChannelConfig:
    """Channel kind, operating point, code rate, and the master seed."""

    kind: str
    ebn0_db: float
    master_seed: int
    code_rate: float = 0.5

    def __post_init__(self):
        if self.kind not in (NOISELESS, BPSK_AWGN):
            raise InvalidParameterError(f"unknown channel kind {self.kind!r}")
        if not np.isfinite(self.ebn0_db):
            raise InvalidParameterError("ebn0_db must be finite")
        if not (0.0 < self.code_rate <= 1.0):
            raise InvalidParameterError("code_rate must lie in (0, 1]")

    @property
    def noise_variance(self):
        return 1.0 / (2.0 * self.code_rate * 10.0 ** (self.ebn0_db / 10.0))


def trial_rng(master_seed, trial):
    """Deterministic per-trial generator, independent of execution order."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),))
    return np.random.default_rng(seq)


def simulate_channel(codeword, cfg, trial):
    """BPSK-modulate a codeword and return the channel LLR vector.

    Bit 0 maps to +1, bit 1 to -1; the AWGN LLR is 2y/sigma^2. The
    noiseless channel returns saturated +/- MAX_LLR certainties.
    """
    bits = np.asarray(codeword, dtype=np.int64)
    symbols = 1.0 - 2.0 * bits
    if cfg.kind == NOISELESS:
        return symbols * MAX_LLR
    var = cfg.noise_variance
    rng = trial_rng(cfg.master_seed, trial)
    y = symbols + rng.normal(0.0, np.sqrt(var), size=bits.shape)
    return np.clip(2.0 * y / var, -MAX_LLR, MAX_LLR)


@dataclass(frozen=True)
class SweepResult:
    """Error counts for one (mode, architecture, Eb/N0) operating point."""

    ebn0_db: float
    trials: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    mode: str
    q: int | None
    architecture: str

    def to_json_dict(self):
        return {
            "ebn0_db": self.ebn0_db,
            "trials": self.trials,
            "bit_errors": self.bit_errors,
            "frame_errors": self.frame_errors,
            "ber": self.ber,
            "fer": self.fer,
            "mode": self.mode,
            "q": self.q,
            "architecture": self.architecture,
        }


def _draw_trials(spec, cfg, trials):
    """Messages and channel LLRs for trials 0..trials-1, one rng per trial."""
    msgs = np.zeros((trials, spec.k_info), dtype=np.int64)
    llrs = np.zeros((trials, spec.n_bits), dtype=float)
    for t in range(trials):
        rng = trial_rng(cfg.master_seed, t)
        msgs[t] = rng.integers(0, 2, size=spec.k_info)
        x = encode(msgs[t], spec)
        symbols = 1.0 - 2.0 * x
        if cfg.kind == NOISELESS:
            llrs[t] = symbols * MAX_LLR
        else:
            var = cfg.noise_variance
            y = symbols + rng.normal(0.0, np.sqrt(var), size=spec.n_bits)
            llrs[t] = np.clip(2.0 * y / var, -MAX_LLR, MAX_LLR)
    return msgs, llrs


def _decode_functional(llrs, spec, mode, q, scale):
    if mode == MODE_MINSUM_Q:
        return sc_decode_batch(quantize(llrs, q, scale), spec, mode, q=q)[0]
    return sc_decode_batch(llrs, spec, mode)[0]


def _decode_architecture(llrs, spec, architecture, q, scale):
    # imported here to keep channel usable without the simulator stack
    from .archsim import SimConfig, run

    cfg = SimConfig(spec=spec, q=q, architecture=architecture)
    q_llrs = quantize(llrs, q, scale)
    out = np.zeros((llrs.shape[0], spec.n_bits), dtype=np.int64)
    for t in range(llrs.shape[0]):
        if architecture == "parallel2":
            # same block on both streams; stream C1 carries the count
            result = run(cfg, [q_llrs[t], q_llrs[t]])
        else:
            result = run(cfg, q_llrs[t])
        out[t] = result.decisions[0]
    return out


def ber_sweep(spec, modes, architectures, ebn0_points, trials, seed,
              channel_kind=BPSK_AWGN, q=6, scale=1.0):
    """Monte-Carlo sweep over operating points, modes, and decoders.

    ``modes`` holds functional decoder modes ("exact", "minsum",
    "minsum_q"); ``architectures`` holds cycle-accurate decoders
    ("conventional", "lookahead", "parallel2"), each run in quantized
    min-sum arithmetic. Every decoder sees the identical per-trial LLR
    vectors, so matching seeds give matching error counts across decoders
    that are exact re-schedulings of each other.
    """
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    for mode in modes:
        if mode not in (MODE_EXACT, MODE_MINSUM, MODE_MINSUM_Q):
            raise InvalidParameterError(f"unknown mode {mode!r}")
    for arch in architectures:
        if arch not in _ARCHITECTURES:
            raise InvalidParameterError(f"unknown architecture {arch!r}")
    rate = spec.k_info / spec.n_bits
    info_mask = ~spec.frozen_mask
    results = []
    for ebn0 in ebn0_points:
        cfg = ChannelConfig(kind=channel_kind, ebn0_db=float(ebn0),
                            master_seed=seed, code_rate=rate)
        msgs, llrs = _draw_trials(spec, cfg, trials)
        decoders = [(m, None) for m in modes] + [(MODE_MINSUM_Q, a) for a in architectures]
        for mode, arch in decoders:
            if arch is None:
                u_hat = _decode_functional(llrs, spec, mode, q, scale)
                label = FUNCTIONAL
            else:
                u_hat = _decode_architecture(llrs, spec, arch, q, scale)
                label = arch
            decoded_msgs = u_hat[:, info_mask]
            bit_err = int(np.sum(decoded_msgs != msgs))
            frame_err = int(np.sum(np.any(decoded_msgs != msgs, axis=1)))
            results.append(SweepResult(
                ebn0_db=float(ebn0), trials=trials,
                bit_errors=bit_err, frame_errors=frame_err,
                ber=bit_err / (trials * spec.k_info),
                fer=frame_err / trials,
                mode=mode, q=q if mode == MODE_MINSUM_Q else None,
                architecture=label,
            ))
    return results


def sweep_results_to_json(results):
    return json.dumps([r.to_json_dict() for r in results], indent=2)
