"""Functional SC decoding in exact, min-sum, and quantized min-sum arithmetic.

Conventions used throughout:

* LLR = ln[P(y|0) / P(y|1)], so a non-negative LLR decides bit 0.
* sgn(0) = +1, hence ties decide 0.
* Real-valued LLRs saturate at +/- MAX_LLR = 50.0; values at the rail are
  treated as exact (certainties stay certain through the combine).
* q-bit integers saturate to the symmetric range [-(2^(q-1)-1), 2^(q-1)-1].
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

MAX_LLR = 50.0

MODE_EXACT = "exact"
MODE_MINSUM = "minsum"
MODE_MINSUM_Q = "minsum_q"
_MODES = (MODE_EXACT, MODE_MINSUM, MODE_MINSUM_Q)


def qmax(q):
    """Largest magnitude representable by a symmetric q-bit quantizer."""
    if q < 2:
        raise InvalidParameterError(f"q must be >= 2, got {q}")
    return (1 << (q - 1)) - 1


def _sign(x):
    # sgn(0) = +1
    return np.where(np.asarray(x) < 0, -1, 1)


def f_minsum(a, b):
    """Min-sum combine: sgn(a) * sgn(b) * min(|a|, |b|).

    Works elementwise on arrays and preserves integer dtypes, so the same
    function serves the float and the quantized decoders.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    return _sign(a) * _sign(b) * np.minimum(np.abs(a), np.abs(b))


def f_exact(a, b):
    """Exact combine ln[(e^(a+b) + 1) / (e^a + e^b)], numerically stable.

    Equal to 2*artanh(tanh(a/2) * tanh(b/2)). Inputs with |x| >= MAX_LLR are
    treated as certainties: if both operands sit at the rail the output
    saturates instead of decaying by ln 2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    lo = np.minimum(np.abs(a), np.abs(b))
    out = _sign(a) * _sign(b) * lo
    out = out + np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))
    out = np.where(lo >= MAX_LLR, _sign(a) * _sign(b) * MAX_LLR, out)
    return np.clip(out, -MAX_LLR, MAX_LLR)


def g_update(a, b, u_sel, q=None):
    """Partial-sum combine: a + b when u_sel = 0, b - a when u_sel = 1.

    With ``q`` given the result saturates to the symmetric q-bit range;
    otherwise it clips at +/- MAX_LLR.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    u = np.asarray(u_sel)
    out = b + (1 - 2 * u) * a
    if q is None:
        return np.clip(out, -MAX_LLR, MAX_LLR)
    m = qmax(q)
    return np.clip(out, -m, m)


def sat_q(x, q):
    """Clip integer values to the symmetric q-bit range."""
    m = qmax(q)
    return np.clip(np.asarray(x), -m, m)


def quantize(x, q, scale=1.0):
    """Quantize real LLRs: scale, round half away from zero, saturate.

    The scale factor is a free knob (default 1.0); fixed-point behaviour
    elsewhere in the toolkit does not depend on a particular choice.
    """
    m = qmax(q)
    y = np.asarray(x, dtype=float) * scale
    mag = np.floor(np.abs(y) + 0.5)
    out = _sign(y) * mag
    return np.clip(out, -m, m).astype(np.int64)


def decide(llr, index, spec):
    """Single-bit decision: frozen positions return their frozen value,
    otherwise LLR >= 0 decides 0 and LLR < 0 decides 1."""
    if not (1 <= index <= spec.n_bits):
        raise InvalidParameterError(f"index must lie in 1..{spec.n_bits}, got {index}")
    if spec.frozen_mask[index - 1]:
        return int(spec.frozen_value_array[index - 1])
    return int(llr < 0)


@dataclass
class DecodeTrace:
    """Decisions plus the LLR seen at each decision instant."""

    u_hat: np.ndarray
    decision_llrs: np.ndarray
    mode: str
    q: int | None = None

    def to_json_dict(self):
        return {
            "u_hat": [int(b) for b in self.u_hat],
            "decision_llrs": [float(v) for v in self.decision_llrs],
            "mode": self.mode,
            "q": self.q,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def _leaf_decide(llr_col, index, spec, u_out, llr_out):
    """Vectorized decision for one leaf index over a batch column."""
    pos = index - 1
    if spec.frozen_mask[pos]:
        bits = np.full(llr_col.shape, int(spec.frozen_value_array[pos]), dtype=np.int64)
    else:
        bits = (llr_col < 0).astype(np.int64)
    u_out[:, pos] = bits
    llr_out[:, pos] = llr_col
    return bits


def _sc_block(llrs, index0, spec, f_fun, g_fun, u_out, llr_out):
    """Depth-first SC over one block; returns the block's u bits and its
    re-encoded codeword bits (the partial sums for the parent's g)."""
    n = llrs.shape[1]
    if n == 1:
        bits = _leaf_decide(llrs[:, 0], index0, spec, u_out, llr_out)
        return bits[:, None], bits[:, None]
    half = n // 2
    a, b = llrs[:, :half], llrs[:, half:]
    u_left, x_left = _sc_block(f_fun(a, b), index0, spec, f_fun, g_fun, u_out, llr_out)
    u_right, x_right = _sc_block(
        g_fun(a, b, x_left), index0 + half, spec, f_fun, g_fun, u_out, llr_out
    )
    return (
        np.concatenate([u_left, u_right], axis=1),
        np.concatenate([x_left ^ x_right, x_right], axis=1),
    )


def sc_decode_batch(channel_llrs, spec, mode, q=None):
    """Decode a (batch, N) array of channel LLRs; returns (u_hat, decision_llrs).

    ``mode`` is one of "exact", "minsum", "minsum_q". In minsum_q mode the
    inputs must already be integers in the symmetric q-bit range.
    """
    if mode not in _MODES:
        raise InvalidParameterError(f"unknown mode {mode!r}")
    llrs = np.asarray(channel_llrs)
    if llrs.ndim != 2 or llrs.shape[1] != spec.n_bits:
        raise InvalidParameterError(
            f"expected shape (batch, {spec.n_bits}), got {llrs.shape}"
        )
    if mode == MODE_EXACT:
        llrs = np.clip(llrs.astype(float), -MAX_LLR, MAX_LLR)
        f_fun = f_exact
        g_fun = lambda a, b, u: g_update(a, b, u)
    elif mode == MODE_MINSUM:
        llrs = np.clip(llrs.astype(float), -MAX_LLR, MAX_LLR)
        f_fun = f_minsum
        g_fun = lambda a, b, u: g_update(a, b, u)
    else:
        if q is None:
            raise InvalidParameterError("minsum_q mode requires q")
        m = qmax(q)
        raw = np.asarray(channel_llrs)
        llrs = raw.astype(np.int64)
        if np.any(llrs != raw):
            raise InvalidParameterError("minsum_q mode expects integer LLRs (quantize first)")
        if np.any(np.abs(llrs) > m):
            raise InvalidParameterError(f"quantized inputs exceed the q={q} range")
        f_fun = f_minsum
        g_fun = lambda a, b, u: g_update(a, b, u, q=q)
    batch = llrs.shape[0]
    u_out = np.zeros((batch, spec.n_bits), dtype=np.int64)
    llr_out = np.zeros((batch, spec.n_bits), dtype=float)
    _sc_block(llrs, 1, spec, f_fun, g_fun, u_out, llr_out)
    return u_out, llr_out


def sc_decode(channel_llrs, spec, mode, q=None):
    """Decode one length-N LLR vector; returns a DecodeTrace."""
    llrs = np.asarray(channel_llrs)
    if llrs.ndim != 1 or llrs.shape[0] != spec.n_bits:
        raise InvalidParameterError(
            f"channel_llrs must have length {spec.n_bits}, got shape {llrs.shape}"
        )
    u, d = sc_decode_batch(llrs[None, :], spec, mode, q=q)
    return DecodeTrace(u_hat=u[0], decision_llrs=d[0], mode=mode, q=q)


def _lr_f(la, lb):
    return (la * lb + 1.0) / (la + lb)


def _lr_g(la, lb, u):
    return np.where(u == 1, lb / la, la * lb)


def _lr_block(lrs, index0, spec, u_out, lnlr_out):
    n = lrs.shape[0]
    if n == 1:
        pos = index0 - 1
        if spec.frozen_mask[pos]:
            bit = int(spec.frozen_value_array[pos])
        else:
            bit = 0 if lrs[0] >= 1.0 else 1
        u_out[pos] = bit
        lnlr_out[pos] = np.log(lrs[0])
        return np.array([bit]), np.array([bit])
    half = n // 2
    a, b = lrs[:half], lrs[half:]
    u_left, x_left = _lr_block(_lr_f(a, b), index0, spec, u_out, lnlr_out)
    u_right, x_right = _lr_block(_lr_g(a, b, x_left), index0 + half, spec, u_out, lnlr_out)
    return (
        np.concatenate([u_left, u_right]),
        np.concatenate([x_left ^ x_right, x_right]),
    )


def lr_recursion_prob(channel_lrs, spec):
    """Probability-domain SC oracle (likelihood ratios, N <= 64).

    Runs the same recursion directly on LRs, deciding with the LR >= 1 rule,
    and records ln(LR) at each decision so results can be cross-checked
    against the log-domain decoder. Returns a DecodeTrace whose
    ``decision_llrs`` hold the decision-time ln(LR) values.
    """
    lrs = np.asarray(channel_lrs, dtype=float)
    if lrs.ndim != 1 or lrs.shape[0] != spec.n_bits:
        raise InvalidParameterError(
            f"channel_lrs must have length {spec.n_bits}, got shape {lrs.shape}"
        )
    if spec.n_bits > 64:
        raise InvalidParameterError("probability-domain oracle is limited to N <= 64")
    if np.any(lrs <= 0.0) or not np.all(np.isfinite(lrs)):
        raise InvalidParameterError("likelihood ratios must be positive and finite")
    u_out = np.zeros(spec.n_bits, dtype=np.int64)
    lnlr_out = np.zeros(spec.n_bits, dtype=float)
    _lr_block(lrs, 1, spec, u_out, lnlr_out)
    return DecodeTrace(u_hat=u_out, decision_llrs=lnlr_out, mode="lr_prob", q=None)
