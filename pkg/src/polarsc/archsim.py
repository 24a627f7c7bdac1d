"""Cycle-accurate simulation of the sequential and look-ahead decoders.

The simulator walks a time chart cycle by cycle. In look-ahead mode every
activation is a merged PE pass producing the f output and both
precomputed g candidates; candidates stay buffered until the partial-sum
network delivers their select bits, at which point a multiplexer resolves
them. Decisions at the final stage resolve their own candidate pair in
the producing cycle (the one place same-cycle selection is required);
every other consumed value must have been produced in a strictly earlier
cycle, and the simulator enforces that.

Arithmetic is saturating q-bit integer min-sum, bit-identical to the
functional quantized decoder; optionally each PE can be evaluated through
the gate-level models instead (slower, used for cross-checks).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelConfig, _draw_trials, BPSK_AWGN
from .errors import InvalidParameterError, NotReadyError, SchedulingError
from .gates import WordQ, merged_pe
from .igc import PartialSumState
from .llr import f_minsum, qmax, quantize, sc_decode_batch, MODE_MINSUM_Q
from .schedule import (
    ActivityTable,
    PE_F,
    build_conventional,
    build_lookahead,
)

CONVENTIONAL = "conventional"
LOOKAHEAD = "lookahead"
PARALLEL2 = "parallel2"

_ALIASES = {
    "conventional_pipelined": CONVENTIONAL,
    "lookahead_2parallel": PARALLEL2,
}
_ARCHS = (CONVENTIONAL, LOOKAHEAD, PARALLEL2)


@dataclass(frozen=True)
class SimConfig:
    """Simulation parameters: code, quantizer width, architecture."""

    spec: object
    q: int
    architecture: str
    record_trace: bool = False
    use_gate_pes: bool = False

    def __post_init__(self):
        arch = _ALIASES.get(self.architecture, self.architecture)
        if arch not in _ARCHS:
            raise InvalidParameterError(f"unknown architecture {self.architecture!r}")
        object.__setattr__(self, "architecture", arch)
        if self.q < 2:
            raise InvalidParameterError(f"q must be >= 2, got {self.q}")
        if self.spec.n_bits < 4:
            raise InvalidParameterError("architectures require N >= 4")


@dataclass
class SimResult:
    """Outcome of one simulated run."""

    decisions: list  # one int array per stream
    decision_llrs: list  # decision-time values per stream
    cycles_elapsed: int
    activity: ActivityTable
    candidate_buffer_peak: int
    trace: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "cycles": self.cycles_elapsed,
            "u_hat": [[int(b) for b in d] for d in self.decisions],
            "activity": self.activity.to_json_dict(),
            "buffer_peak": self.candidate_buffer_peak,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


TRACE_HEADER = ("cycle", "stream", "stage", "pe_index", "op", "inputs", "outputs",
                "select_bit")


class _Stream:
    """Per-stream decoder state: LLR buffers, candidate buffers, partial sums."""

    def __init__(self, spec, q, llrs, label):
        self.spec = spec
        self.q = q
        self.label = label
        self.n = spec.n_bits
        self.m = self.n.bit_length() - 1
        self.channel = np.asarray(llrs, dtype=np.int64)
        if self.channel.shape != (self.n,):
            raise InvalidParameterError(
                f"stream {label}: expected {self.n} LLRs, got {self.channel.shape}"
            )
        if np.any(np.abs(self.channel) > qmax(q)):
            raise InvalidParameterError(f"stream {label}: inputs exceed the q={q} range")
        self.psum = PartialSumState(self.n)
        self.fired = {s: 0 for s in range(1, self.m + 1)}
        self.fbuf = {}      # stage -> (array, produced_cycle)
        self.gbuf = {}      # stage -> (g0, g1, produced_cycle)   [look-ahead]
        self.buf = {}       # stage -> (array, produced_cycle)    [conventional]
        self.sel_cycle = {} # stage -> cycle its selection bits last completed
        self.pending = {}   # stage -> dict(pairs, produced, dead) candidate sets
        self.next_index = 1
        self.decisions = np.zeros(self.n, dtype=np.int64)
        self.dec_llrs = np.zeros(self.n, dtype=np.int64)

    def push(self, bit, cycle):
        k = self.next_index
        self.decisions[k - 1] = bit
        self.psum.push(int(bit), k)
        self.next_index += 1
        # level at which the push settled; stage m - level just became ready
        level = (k & -k).bit_length() - 1
        stage = self.m - level
        if stage >= 1:
            self.sel_cycle[stage] = cycle
            entry = self.pending.get(stage)
            if entry is not None and not entry["dead"]:
                entry["dead"] = True  # selector resolved: pair collapses

    def alive_pairs(self):
        return sum(e["pairs"] for e in self.pending.values() if not e["dead"])


def _sat(x, q):
    m = qmax(q)
    return np.clip(x, -m, m)


def _gate_eval(a_arr, b_arr, q):
    """Evaluate (f, g0, g1) through the bit-true gate models, elementwise."""
    f = np.empty_like(a_arr)
    g0 = np.empty_like(a_arr)
    g1 = np.empty_like(a_arr)
    for i in range(a_arr.shape[0]):
        fw, g0w, g1w = merged_pe(WordQ(int(a_arr[i]), q), WordQ(int(b_arr[i]), q))
        f[i], g0[i], g1[i] = fw.value, g0w.value, g1w.value
    return f, g0, g1


def _merged_outputs(a, b, q, use_gates):
    if use_gates:
        return _gate_eval(a, b, q)
    return f_minsum(a, b), _sat(a + b, q), _sat(b - a, q)


def _fmt(arr):
    return "|".join(str(int(v)) for v in np.atleast_1d(arr))


class _Sim:
    def __init__(self, config, streams):
        self.config = config
        self.spec = config.spec
        self.q = config.q
        self.n = self.spec.n_bits
        self.m = self.n.bit_length() - 1
        self.streams = streams
        self.trace = []
        self.peak = 0

    def _decide(self, llr, index):
        pos = index - 1
        if self.spec.frozen_mask[pos]:
            return int(self.spec.frozen_value_array[pos])
        return int(llr < 0)

    def _record(self, cycle, stream, stage, op, a, b, outs, sel=None):
        if not self.config.record_trace:
            return
        for i in range(len(np.atleast_1d(a))):
            sel_bit = "" if sel is None else str(int(np.atleast_1d(sel)[i]))
            self.trace.append((
                cycle, stream.label, stage, i, op,
                _fmt([np.atleast_1d(a)[i], np.atleast_1d(b)[i]]),
                _fmt([np.atleast_1d(o)[i] for o in outs]),
                sel_bit,
            ))

    def _stage_input(self, st, stage, blk, cycle):
        """Input block for the given firing: channel, the parent's f output,
        or the parent's g candidates resolved through the select MUX."""
        if stage == 1:
            return st.channel
        parent = stage - 1
        if blk % 2 == 0:
            if parent not in st.fbuf:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} needs stage {parent} f output "
                    f"that was never produced"
                )
            arr, produced = st.fbuf[parent]
            if produced >= cycle:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} consumes stage {parent} f output "
                    f"produced in cycle {produced}"
                )
            return arr
        if parent not in st.gbuf:
            raise SchedulingError(
                f"cycle {cycle}: stage {stage} needs stage {parent} g candidates "
                f"that were never produced"
            )
        g0, g1, produced = st.gbuf[parent]
        if produced >= cycle:
            raise SchedulingError(
                f"cycle {cycle}: stage {stage} consumes stage {parent} candidates "
                f"produced in cycle {produced}"
            )
        try:
            sel = st.psum.selection_bits(parent)
        except NotReadyError as exc:
            raise SchedulingError(
                f"cycle {cycle}: stage {parent} select bits not ready: {exc}"
            ) from exc
        if st.sel_cycle.get(parent, -1) > cycle:
            raise SchedulingError(
                f"cycle {cycle}: stage {parent} select bits from the future"
            )
        return np.where(sel == 1, g1, g0)

    def exec_merged(self, st, stage, cycle):
        """One merged-PE activation of the look-ahead decoder."""
        half = self.n >> stage
        blk = st.fired[stage]
        st.fired[stage] += 1
        inp = self._stage_input(st, stage, blk, cycle)
        a, b = inp[:half], inp[half:]
        f_out, g0, g1 = _merged_outputs(a, b, self.q, self.config.use_gate_pes)
        if stage == self.m:
            k = st.next_index
            u_odd = self._decide(f_out[0], k)
            st.dec_llrs[k - 1] = f_out[0]
            st.push(u_odd, cycle)
            # same-cycle select: the fresh decision resolves this PE's pair
            g_val = g1[0] if u_odd else g0[0]
            u_even = self._decide(g_val, k + 1)
            st.dec_llrs[k] = g_val
            st.push(u_even, cycle)
            self._record(cycle, st, stage, "fg", a, b, (f_out, g0, g1), sel=[u_odd])
        else:
            stale = st.pending.get(stage)
            if stale is not None and not stale["dead"]:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} refires with unresolved candidates"
                )
            st.fbuf[stage] = (f_out, cycle)
            st.gbuf[stage] = (g0, g1, cycle)
            st.pending[stage] = {"pairs": half, "produced": cycle, "dead": False}
            self._record(cycle, st, stage, "fg", a, b, (f_out, g0, g1))
        return half

    def exec_conventional(self, st, stage, pe_type, cycle):
        """One f or g activation of the sequential decoder."""
        half = self.n >> stage
        if stage == 1:
            inp = st.channel
        else:
            if stage - 1 not in st.buf:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} input never produced"
                )
            inp, produced = st.buf[stage - 1]
            if produced >= cycle:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} consumes a value from cycle {produced}"
                )
        a, b = inp[:half], inp[half:]
        if pe_type == PE_F:
            out = f_minsum(a, b)
            self._record(cycle, st, stage, "f", a, b, (out,))
        else:
            try:
                sel = st.psum.selection_bits(stage)
            except NotReadyError as exc:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} select bits not ready: {exc}"
                ) from exc
            if st.sel_cycle.get(stage, -1) > cycle:
                raise SchedulingError(
                    f"cycle {cycle}: stage {stage} select bits from the future"
                )
            out = _sat(b + (1 - 2 * sel) * a, self.q)
            self._record(cycle, st, stage, "g", a, b, (out,), sel=sel)
        st.buf[stage] = (out, cycle)
        if stage == self.m:
            k = st.next_index
            bit = self._decide(out[0], k)
            st.dec_llrs[k - 1] = out[0]
            st.push(bit, cycle)
        return half

    def end_of_cycle(self):
        self.peak = max(self.peak, sum(st.alive_pairs() for st in self.streams))


def _build_schedule(config):
    """Per-cycle list of (stream_index, chart_entry) activations."""
    n = config.spec.n_bits
    if config.architecture == CONVENTIONAL:
        chart = build_conventional(n)
        return [[(0, cycle[0])] for cycle in chart.cycles]
    chart = build_lookahead(n)
    entries = [cycle[0] for cycle in chart.cycles]
    if config.architecture == LOOKAHEAD:
        return [[(0, e)] for e in entries]
    # two-stream interleaving: C1 stalls one cycle after its channel-stage
    # cycle, C2 runs the unstalled chart offset by one cycle; span = N
    schedule = [[] for _ in range(n)]
    schedule[0].append((0, entries[0]))
    schedule[1].append((1, entries[0]))
    for t in range(2, n):
        schedule[t].append((0, entries[t - 1]))
        schedule[t].append((1, entries[t - 1]))
    return schedule


def run(config, channel_llrs):
    """Execute the configured architecture on quantized channel LLRs.

    ``channel_llrs`` is one length-N integer vector for the single-stream
    architectures, or a pair of vectors for the 2-parallel one.
    """
    if config.architecture == PARALLEL2:
        if not isinstance(channel_llrs, (list, tuple)) or len(channel_llrs) != 2:
            raise InvalidParameterError("parallel2 expects two LLR blocks")
        streams = [
            _Stream(config.spec, config.q, channel_llrs[0], "C1"),
            _Stream(config.spec, config.q, channel_llrs[1], "C2"),
        ]
    else:
        streams = [_Stream(config.spec, config.q, channel_llrs, "C1")]
    sim = _Sim(config, streams)
    schedule = _build_schedule(config)
    n = config.spec.n_bits
    pe_pool = n // 2
    counts = [[0] * len(schedule) for _ in streams]
    for t, activations in enumerate(schedule, start=1):
        used = 0
        for stream_idx, entry in activations:
            st = streams[stream_idx]
            if config.architecture == CONVENTIONAL:
                active = sim.exec_conventional(st, entry.stage, entry.pe_type, t)
            else:
                active = sim.exec_merged(st, entry.stage, t)
            counts[stream_idx][t - 1] = active
            used += active
        if config.architecture != CONVENTIONAL and used > pe_pool:
            raise SchedulingError(
                f"cycle {t}: {used} merged PEs requested from a pool of {pe_pool}"
            )
        sim.end_of_cycle()
    for st in streams:
        if st.next_index != n + 1:
            raise SchedulingError(
                f"stream {st.label}: only {st.next_index - 1} of {n} bits decided"
            )
    activity = ActivityTable(
        n, tuple(st.label for st in streams), tuple(tuple(c) for c in counts)
    )
    return SimResult(
        decisions=[st.decisions.copy() for st in streams],
        decision_llrs=[st.dec_llrs.copy() for st in streams],
        cycles_elapsed=len(schedule),
        activity=activity,
        candidate_buffer_peak=sim.peak,
        trace=sim.trace,
    )


@dataclass
class EquivalenceReport:
    """Outcome of an architectural-vs-functional comparison campaign."""

    architecture: str
    n: int
    q: int
    trials: int
    matches: int
    mismatches: int
    first_divergence: dict | None

    @property
    def passed(self):
        return self.mismatches == 0

    def to_json_dict(self):
        return {
            "architecture": self.architecture,
            "n": self.n,
            "q": self.q,
            "trials": self.trials,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "passed": self.passed,
            "first_divergence": self.first_divergence,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def verify_equivalence(config, trials, seed, ebn0_db=1.0, scale=1.0):
    """Random-message campaign: the architectural decisions must be
    bit-identical to the functional quantized min-sum decoder.

    Each trial draws fresh messages and noise (two independent frames per
    trial for the 2-parallel architecture), decodes them through the
    simulator, and compares against the functional reference on the very
    same quantized inputs. Returns a report rather than raising.
    """
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    spec = config.spec
    frames_per_trial = 2 if config.architecture == PARALLEL2 else 1
    cfg = ChannelConfig(
        kind=BPSK_AWGN, ebn0_db=ebn0_db, master_seed=seed,
        code_rate=spec.k_info / spec.n_bits,
    )
    _, llrs = _draw_trials(spec, cfg, trials * frames_per_trial)
    q_llrs = quantize(llrs, config.q, scale)
    reference, _ = sc_decode_batch(q_llrs, spec, MODE_MINSUM_Q, q=config.q)
    matches = 0
    mismatches = 0
    first_divergence = None
    for t in range(trials):
        base = t * frames_per_trial
        if config.architecture == PARALLEL2:
            result = run(config, [q_llrs[base], q_llrs[base + 1]])
        else:
            result = run(config, q_llrs[base])
        ok = True
        for s in range(frames_per_trial):
            got = result.decisions[s]
            want = reference[base + s]
            if not np.array_equal(got, want):
                ok = False
                if first_divergence is None:
                    idx = int(np.argmax(got != want))
                    first_divergence = {
                        "trial": t,
                        "stream": s,
                        "first_bit_index": idx + 1,
                        "sim": [int(b) for b in got],
                        "reference": [int(b) for b in want],
                    }
        if ok:
            matches += 1
        else:
            mismatches += 1
    return EquivalenceReport(
        architecture=config.architecture, n=spec.n_bits, q=config.q,
        trials=trials, matches=matches, mismatches=mismatches,
        first_divergence=first_divergence,
    )
