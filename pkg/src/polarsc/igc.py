"""On-the-fly partial-sum generation for the g-candidate selection.

Decided bits stream in one at a time; whenever a size-2^j sub-block
completes, its re-encoded form is combined with the stored transform of
the sibling sub-block (XOR on the upper wires, pass on the lower), exactly
like a streaming real-valued FFT datapath. The transform of the left half
of a stage-s block is precisely the MUX select vector for that stage's
precomputed g candidates.

Storage is in-place: one slot array per combining level, reused block
after block. Levels 1..log2(N)-2 account for the N/2 - 2 memory slots of
the network; the level-0 bit and the topmost N/2-wide output live on wires
within a decision cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NotReadyError, SequencingError


class PartialSumState:
    """In-place accumulator of decided-bit partial sums for one codeword.

    Decisions must be pushed in index order 1..N by a single owner; the
    per-stage selection bits may be read between pushes.
    """

    def __init__(self, n_bits):
        if n_bits < 4 or (n_bits & (n_bits - 1)) != 0:
            raise InvalidParameterError(f"N must be a power of two >= 4, got {n_bits}")
        self.n_bits = n_bits
        self.m = n_bits.bit_length() - 1
        # _acc[j] holds the transform of the most recent completed size-2^j
        # sub-block that is the left half of its parent.
        self._acc = [np.zeros(1 << j, dtype=np.int64) for j in range(self.m)]
        self._count = 0

    @property
    def decided(self):
        """Number of decisions pushed so far."""
        return self._count

    @property
    def storage_slots(self):
        """Persistent memory bits held between decision pairs (levels
        1..log2(N)-2), matching the per-network slot budget N/2 - 2."""
        return sum(1 << j for j in range(1, self.m - 1))

    def push(self, u_hat, index):
        """Fold decision ``u_hat`` (bit, 1-based ``index``) into the sums."""
        if u_hat not in (0, 1):
            raise InvalidParameterError(f"u_hat must be a bit, got {u_hat}")
        if index != self._count + 1:
            raise SequencingError(
                f"expected decision index {self._count + 1}, got {index}"
            )
        if index > self.n_bits:
            raise SequencingError("all decisions already pushed")
        self._count = index
        cur = np.array([u_hat], dtype=np.int64)
        j = 0
        while True:
            size = 1 << j
            rem = index % (size << 1)
            if rem == size:
                # completed block is the left half of its parent: store it;
                # it is also the ready selection vector for stage m - j
                self._acc[j][:] = cur
                break
            # right half completed: butterfly with the stored sibling
            cur = np.concatenate([self._acc[j] ^ cur, cur])
            j += 1
            if (1 << j) == self.n_bits:
                break  # whole codeword folded; nothing above to feed
        return self

    def stage_ready(self, stage):
        """True when the g-selection bits for ``stage`` are current: the
        next undecided index lies in the right half of its stage block."""
        if not (1 <= stage <= self.m):
            raise InvalidParameterError(f"stage must lie in 1..{self.m}, got {stage}")
        half = self.n_bits >> stage
        return (self._count % (half << 1)) >= half

    def selection_bits(self, stage):
        """MUX select lines for ``stage``: transform of the decided left
        half of the current stage-``stage`` block (length N / 2^stage)."""
        if not self.stage_ready(stage):
            raise NotReadyError(
                f"stage {stage} feed incomplete after {self._count} decisions"
            )
        return self._acc[self.m - stage].copy()


def push_decision(state, u_hat, index):
    """Functional form of ``PartialSumState.push``; returns the state."""
    return state.push(u_hat, index)


def selection_bits(state, stage):
    """Functional form of ``PartialSumState.selection_bits``."""
    return state.selection_bits(stage)


@dataclass(frozen=True)
class ControlSignal:
    """Commutator control for one combining level: ``period`` decision
    pairs elapse between phase toggles; level s has period 2^(s-1)."""

    stage: int
    period: int


@dataclass(frozen=True)
class IgcElement:
    """One XOR-pass node, labelled by its combining level."""

    level: int
    index: int


@dataclass(frozen=True)
class IgcNetwork:
    """Structural description of the partial-sum network for one decoder.

    ``n`` counts combining levels (log2(N) - 1). Level 1 is a single
    XOR-pass element; each further level j adds 2^(j-1) elements, so the
    top level contributes N/4 and the whole network has N/2 - 1 elements
    with N/2 - 2 storage slots.
    """

    n: int
    elements: tuple
    control: tuple

    @property
    def n_bits(self):
        return 1 << (self.n + 1)

    @property
    def xor_elements(self):
        return len(self.elements)

    @property
    def storage_slots(self):
        return sum(1 << (j - 1) for j in range(2, self.n + 1))

    def to_json_dict(self):
        return {
            "n": self.n,
            "xor_elements": self.xor_elements,
            "storage_slots": self.storage_slots,
            "control": [{"stage": c.stage, "period": c.period} for c in self.control],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def control_schedule(n_bits):
    """Toggle periods for all combining levels: level 1 toggles every
    decision pair, level s every 2^(s-1) pairs (strictly doubling)."""
    if n_bits < 4 or (n_bits & (n_bits - 1)) != 0:
        raise InvalidParameterError(f"N must be a power of two >= 4, got {n_bits}")
    levels = n_bits.bit_length() - 2
    return tuple(ControlSignal(stage=s, period=1 << (s - 1)) for s in range(1, levels + 1))


def build_network(n_bits):
    """Construct the network recursively: start from the single-element
    unit and add 2^(j-1) XOR-pass elements (N/4 at the top) per level."""
    if n_bits < 4 or (n_bits & (n_bits - 1)) != 0:
        raise InvalidParameterError(f"N must be a power of two >= 4, got {n_bits}")
    levels = n_bits.bit_length() - 2
    elements = []
    for j in range(1, levels + 1):
        elements.extend(IgcElement(level=j, index=i) for i in range(1 << (j - 1)))
    return IgcNetwork(n=levels, elements=tuple(elements), control=control_schedule(n_bits))
