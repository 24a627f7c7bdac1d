"""Hardware consumption and schedule comparison for the two decoder designs.

``proposed`` is the two-stream look-ahead decoder built from merged PEs and
two partial-sum networks; ``line_reference`` is the sequential line-decoder
baseline it is compared against. Every row is an exact expression in
(N, q); the headline totals drop lower-order terms, so the exact sums land
within a few percent of them.

MUX bits convert to XOR-class units with factor 1 per bit. That factor is
derived, not assumed: it is the unique integer under which the component
sums reproduce the headline totals ~17qN/2 and ~(19q-3)N/2. It is recorded
in the report metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidParameterError

PROPOSED = "proposed"
LINE_REFERENCE = "line_reference"

MUX_TO_XOR_FACTOR = 1


@dataclass(frozen=True)
class CostReport:
    """Per-component gate/register/mux counts plus derived totals."""

    design: str
    n: int
    q: int
    n_pes: int
    pe_xor: int
    pe_reg: int
    pe_mux: int
    n_igcs: int
    igc_xor: int
    igc_ram: int
    igc_mux: int
    other_regs: int
    other_muxes: int
    latency: int
    normalized_throughput: float
    mux_to_xor_factor: int = MUX_TO_XOR_FACTOR

    @property
    def xor_equivalent_total(self):
        """XOR-class units of the q-bit datapath (PEs plus other MUX bits,
        converted at the derived factor). The partial-sum network rows
        carry no q factor and stay on their own table lines, mirroring the
        headline total, which is a pure (q, N) expression."""
        total = self.n_pes * (self.pe_xor + self.mux_to_xor_factor * self.pe_mux)
        total += self.mux_to_xor_factor * self.other_muxes
        return total

    @property
    def reg_total(self):
        """Register bits; RAM slots are reported on their own row."""
        return self.n_pes * self.pe_reg + self.other_regs

    def to_json_dict(self):
        return {
            "design": self.design,
            "n": self.n,
            "q": self.q,
            "pe": {"count": self.n_pes, "xor": self.pe_xor, "reg": self.pe_reg,
                   "mux": self.pe_mux},
            "igc": {"count": self.n_igcs, "xor": self.igc_xor, "ram": self.igc_ram,
                    "mux": self.igc_mux},
            "other_regs": self.other_regs,
            "other_muxes": self.other_muxes,
            "xor_equivalent_total": self.xor_equivalent_total,
            "reg_total": self.reg_total,
            "latency": self.latency,
            "normalized_throughput": self.normalized_throughput,
            "mux_to_xor_factor": self.mux_to_xor_factor,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)

    def to_rows(self):
        """CSV rows (line, value), one per comparison-table line."""
        return [
            ("merged_pes", self.n_pes),
            ("pe_xor", self.pe_xor),
            ("pe_reg", self.pe_reg),
            ("pe_mux", self.pe_mux),
            ("igcs", self.n_igcs),
            ("igc_xor", self.igc_xor),
            ("igc_ram", self.igc_ram),
            ("igc_mux", self.igc_mux),
            ("other_regs", self.other_regs),
            ("other_muxes", self.other_muxes),
            ("total_xor_equivalent", self.xor_equivalent_total),
            ("total_reg", self.reg_total),
            ("latency", self.latency),
            ("normalized_throughput", self.normalized_throughput),
        ]


def _validate(n, q):
    if n < 4 or (n & (n - 1)) != 0:
        raise InvalidParameterError(f"N must be a power of two >= 4, got {n}")
    if q < 2:
        raise InvalidParameterError(f"q must be >= 2, got {q}")


def schedule_figures(design, n):
    """(latency in cycles, normalized throughput) for one design."""
    if n < 4 or (n & (n - 1)) != 0:
        raise InvalidParameterError(f"N must be a power of two >= 4, got {n}")
    if design == PROPOSED:
        return n, 2.0
    if design == LINE_REFERENCE:
        return 2 * (n - 1), 1.0
    raise InvalidParameterError(f"unknown design {design!r}")


def component_counts(design, n, q):
    """Exact per-component counts for one design at (N, q)."""
    _validate(n, q)
    lat, thr = schedule_figures(design, n)
    if design == PROPOSED:
        return CostReport(
            design=design, n=n, q=q,
            n_pes=n // 2, pe_xor=9 * q, pe_reg=0, pe_mux=6 * q,
            n_igcs=2, igc_xor=n // 2 - 1, igc_ram=n // 2 - 2, igc_mux=n // 2 - 2,
            other_regs=q * (9 * n // 2 + 4), other_muxes=q * (n + 2),
            latency=lat, normalized_throughput=thr,
        )
    if design == LINE_REFERENCE:
        return CostReport(
            design=design, n=n, q=q,
            n_pes=n // 2, pe_xor=11 * q - 3, pe_reg=1, pe_mux=5 * q,
            n_igcs=0, igc_xor=0, igc_ram=0, igc_mux=0,
            other_regs=q * (n - 1), other_muxes=3 * q * (n // 2 - 1),
            latency=lat, normalized_throughput=thr,
        )
    raise InvalidParameterError(f"unknown design {design!r}")


def xor_equivalent_total(report):
    """XOR-class unit total of a report (MUX bits at factor 1)."""
    return report.xor_equivalent_total


def asymptotic_totals(design, n, q):
    """Headline (lower-order-terms-dropped) totals: (xor_equivalent, reg)."""
    _validate(n, q)
    if design == PROPOSED:
        return 17 * q * n / 2, 9 * q * n / 2
    if design == LINE_REFERENCE:
        return (19 * q - 3) * n / 2, (q + 0.5) * n
    raise InvalidParameterError(f"unknown design {design!r}")
