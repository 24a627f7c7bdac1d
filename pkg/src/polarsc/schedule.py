"""Decoding time charts: sequential and look-ahead constructions.

A time chart maps clock cycles to processing-element activations. Stage 1
is the channel side (N/2 PEs), stage log2(N) the decision side (1 PE).
Both charts come out of the same recursive construction: walking the stage
index from the decision side down to the channel side, left-insert one
cycle for the current stage, then duplicate the chart built so far. The
sequential variant inserts a g cycle and retypes the leftmost copy to f
(2(N-1) cycles total); the look-ahead variant inserts a merged f-and-g
cycle and stops the duplication at stage 1 (N-1 cycles total).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

PE_F = "TypeII_f"
PE_G = "TypeI_g"
PE_MERGED = "Merged_fg"

CONVENTIONAL = "conventional"
LOOKAHEAD = "lookahead"


@dataclass(frozen=True)
class ChartEntry:
    """One PE-group activation: stage, PE type, and active-PE count."""

    stage: int
    pe_type: str
    active_pes: int


@dataclass(frozen=True)
class TimeChart:
    """Ordered clock cycles; each cycle holds the entries active in it."""

    n_bits: int
    kind: str
    cycles: tuple  # tuple of tuples of ChartEntry

    def __len__(self):
        return len(self.cycles)

    def stage_sequence(self):
        """Stage index of the single entry in each cycle."""
        return [c[0].stage for c in self.cycles]

    def type_sequence(self):
        """PE type of the single entry in each cycle."""
        return [c[0].pe_type for c in self.cycles]

    def active_sequence(self):
        """Active-PE count of the single entry in each cycle."""
        return [c[0].active_pes for c in self.cycles]

    def to_rows(self):
        """CSV rows: (cycle, stage, pe_type, active_pes), cycle 1-based."""
        rows = []
        for t, cycle in enumerate(self.cycles, start=1):
            for e in cycle:
                rows.append((t, e.stage, e.pe_type, e.active_pes))
        return rows

    def to_json_dict(self):
        return {
            "n": self.n_bits,
            "kind": self.kind,
            "cycles": [
                [
                    {"stage": e.stage, "pe_type": e.pe_type, "active_pes": e.active_pes}
                    for e in cycle
                ]
                for cycle in self.cycles
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def _validate_n(n_bits):
    if n_bits < 4 or (n_bits & (n_bits - 1)) != 0:
        raise InvalidParameterError(f"N must be a power of two >= 4, got {n_bits}")


def build_conventional(n_bits):
    """Sequential SC time chart: 2(N-1) cycles, one PE type per cycle.

    Stage i fires 2^i times (alternating f and g per block) with N/2^i
    active PEs per firing.
    """
    _validate_n(n_bits)
    m = n_bits.bit_length() - 1
    cycles = []
    for stage in range(m, 0, -1):
        count = n_bits >> stage
        cycles = [ChartEntry(stage, PE_G, count)] + cycles
        cycles = cycles + list(cycles)
        cycles[0] = ChartEntry(stage, PE_F, count)
    return TimeChart(n_bits, CONVENTIONAL, tuple((e,) for e in cycles))


def build_lookahead(n_bits):
    """Look-ahead time chart: N-1 cycles of merged f-and-dual-g PEs.

    Each merged activation computes the f output and both g candidates at
    once, so stage i fires only 2^(i-1) times; the channel stage appears
    exactly once.
    """
    _validate_n(n_bits)
    m = n_bits.bit_length() - 1
    cycles = []
    for stage in range(m, 0, -1):
        cycles = [ChartEntry(stage, PE_MERGED, n_bits >> stage)] + cycles
        if stage == 1:
            break
        cycles = cycles + list(cycles)
    return TimeChart(n_bits, LOOKAHEAD, tuple((e,) for e in cycles))


def latency(chart):
    """Cycle count of a chart: 2(N-1) sequential, N-1 look-ahead."""
    return len(chart.cycles)


def default_pe_budget(chart):
    """PE pool the chart is normally folded onto: N-1 for the sequential
    full tree, N/2 merged PEs for the look-ahead decoder."""
    if chart.kind == LOOKAHEAD:
        return chart.n_bits // 2
    return chart.n_bits - 1


def utilization(chart, pe_budget=None):
    """Per-cycle fraction of the PE budget that is active, plus the maximum.

    Returns
    -------
    fractions : ndarray
        One fraction per cycle.
    peak : float
        max(fractions).
    """
    if pe_budget is None:
        pe_budget = default_pe_budget(chart)
    if pe_budget <= 0:
        raise InvalidParameterError("pe_budget must be positive")
    fractions = np.array(
        [sum(e.active_pes for e in cycle) / pe_budget for cycle in chart.cycles]
    )
    return fractions, float(fractions.max())


@dataclass(frozen=True)
class ActivityTable:
    """Active merged-PE counts per stream and clock cycle (0 = idle)."""

    n_bits: int
    streams: tuple  # stream labels
    counts: tuple  # per stream, tuple of per-cycle counts

    @property
    def span(self):
        return len(self.counts[0])

    def column_sums(self):
        return [sum(row[t] for row in self.counts) for t in range(self.span)]

    def to_rows(self):
        """CSV rows: (stream, cycle, active_pes), cycle 1-based."""
        rows = []
        for label, row in zip(self.streams, self.counts):
            for t, c in enumerate(row, start=1):
                rows.append((label, t, c))
        return rows

    def to_json_dict(self):
        return {
            "n": self.n_bits,
            "streams": list(self.streams),
            "counts": [list(row) for row in self.counts],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def parallel_activity_table(n_bits, streams=2):
    """Two-stream interleaving of the look-ahead chart onto one N/2-PE pool.

    Stream C1 stalls for one cycle right after its channel-stage cycle;
    stream C2 runs the unstalled chart offset by one cycle. The joint span
    is N cycles and no column ever exceeds N/2 active PEs.
    """
    if streams != 2:
        raise InvalidParameterError("only the 2-stream schedule is supported")
    _validate_n(n_bits)
    chart = build_lookahead(n_bits)
    active = chart.active_sequence()  # length N-1
    span = n_bits
    c1 = [0] * span
    c2 = [0] * span
    c1[0] = active[0]
    for t in range(2, span):  # cycles 3..N hold chart entries 2..N-1
        c1[t] = active[t - 1]
    for t in range(1, span):  # cycles 2..N hold chart entries 1..N-1
        c2[t] = active[t - 1]
    return ActivityTable(n_bits, ("C1", "C2"), (tuple(c1), tuple(c2)))
