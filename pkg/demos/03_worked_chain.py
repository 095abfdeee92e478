"""
The chain C <= B <= A end to end
================================

``A`` is the linear quiver ``6 -> 4 -> 1 -> 3 -> 2 -> 5`` with its longest
path killed, so ``A`` is Nakayama with 20 indecomposables.  ``B`` and ``C``
are subalgebras built from generator sets.  ``rad(C)`` is a left ideal of
``B`` and ``rad(B)`` a left ideal of ``A``, but ``rad(C)`` is not a left
ideal of ``A``, and ``rad^3(C)`` is nonzero, so none of the classical
criteria for ``C`` applies directly.  The chain does.
"""

from finitistic.harness import example1_scenario

rep = example1_scenario(seed=0)

for key in ("dim_A", "dim_B", "dim_C", "A_indecomposables", "rad_C_left_ideal_of_B",
            "rad_B_left_ideal_of_A", "rad_C_left_ideal_of_A", "dim_rad3_C"):
    print(f"{key:24s} {rep['checks'][key]}")

print()
print("bound on fd(C):", rep["bound"], f"({rep['verdict']})")
print("formula:", rep["trace"]["formula"])
print("psi", rep["trace"]["psi"], "n", rep["trace"]["n"])

# %% probe modules of C against the bound, with the torsionless lifting steps
for row in rep["probe_results"]:
    steps = " -> ".join(f"{s['level']}:{s['dim']}" for s in row.get("steps", []))
    print(f"  dim {row['dim']:2d}  pd {row['pd']:>18s}  {row['status']:15s} lifting {steps}")

print()
print("not verified:", "; ".join(rep["unverified"]))
