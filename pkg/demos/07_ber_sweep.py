"""Monte-Carlo error rates, and why the architectures add zero coding loss.

Every decoder sees identical per-trial LLR vectors (trial streams are
derived from (seed, trial), so splitting work across processes changes
nothing). Because the look-ahead transform is an exact re-scheduling, its
error counts coincide with the functional quantized decoder's, trial for
trial.
"""

from polarsc import ber_sweep, make_code_spec

spec = make_code_spec(64, 32)
points = [0.0, 1.0, 2.0, 3.0]

results = ber_sweep(
    spec,
    modes=["exact", "minsum", "minsum_q"],
    architectures=["lookahead"],
    ebn0_points=points,
    trials=400,
    seed=2718,
    q=6,
)

print(f"N={spec.n_bits}, K={spec.k_info}, 400 trials per point\n")
print(f"{'decoder':22s}" + "".join(f"{p:>10.1f}dB" for p in points))
table = {}
for r in results:
    key = f"{r.mode}/{r.architecture}"
    table.setdefault(key, {})[r.ebn0_db] = r.ber
for key, bers in table.items():
    print(f"{key:22s}" + "".join(f"{bers[p]:>12.4f}" for p in points))

qlabel = "minsum_q/functional"
alabel = "minsum_q/lookahead"
identical = all(
    abs(table[qlabel][p] - table[alabel][p]) == 0.0 for p in points
)
print(f"\nfunctional quantized vs cycle-accurate look-ahead identical: {identical}")
print("min-sum trades a fraction of a dB against exact combining; the",
      "\nschedule transformation itself costs nothing.")
