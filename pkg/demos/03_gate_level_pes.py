"""Gate-level processing elements: the fused adder-subtractor and friends.

The even-index update has only two possible outcomes, a + b and b - a, so
one dual-output adder-subtractor precomputes both. Its 1-bit cell shares
the parity network between the sum and difference paths; the min-sum PE
then borrows the same subtractor as its magnitude comparator.
"""

import itertools

import numpy as np

from polarsc import WordQ, addsub_q, f_minsum, full_addsub_1bit, gate_count, merged_pe
from polarsc.gates import sharing_ratio

print("1-bit fused cell truth table (x, y, z_in -> sd, carry, borrow):")
for x, y, z in itertools.product((0, 1), repeat=3):
    sd, c, b = full_addsub_1bit(x, y, z)
    print(f"  {x} {y} {z} -> {sd} {c} {b}")

# The q-bit unit returns both g candidates at once, saturated to the
# symmetric range.
s, d = addsub_q(WordQ(5, 5), WordQ(9, 5))
print(f"\naddsub_q(5, 9) at q=5: sum {s.value}, diff {d.value}")
s, d = addsub_q(WordQ(13, 5), WordQ(9, 5))
print(f"addsub_q(13, 9) at q=5 saturates the sum: {s.value}, diff {d.value}")

# Merged PE = min-sum output plus both candidates, matching the functional
# arithmetic elementwise.
rng = np.random.default_rng(3)
q = 6
worst = 0
for _ in range(2000):
    a, b = (int(v) for v in rng.integers(-31, 32, size=2))
    f, g0, g1 = merged_pe(WordQ(a, q), WordQ(b, q))
    assert f.value == f_minsum(a, b)
    assert g0.value == max(-31, min(31, a + b))
    assert g1.value == max(-31, min(31, b - a))
print(f"\nmerged PE == (min-sum, a+b, b-a) on 2000 random pairs at q={q}")

# Cost accounting. The per-PE rows of the comparison table:
for cell in ("merged_pe", "reference_pe"):
    gc = gate_count(cell, q=6)
    print(f"{cell:13s}: XOR-class {gc.xor:3d}, MUX bits {gc.mux_bits:2d}, "
          f"registers {gc.reg_bits}")

# The fused 1-bit cell against a discrete full adder + full subtractor,
# counted as two-input AND/OR networks (each XOR expands to three gates):
fused = gate_count("full_addsub").unit_total
separate = gate_count("separate_add_plus_sub").unit_total
print(f"\nfused cell {fused} gates vs discrete FA+FS {separate} gates "
      f"-> ratio {sharing_ratio():.3f}")
