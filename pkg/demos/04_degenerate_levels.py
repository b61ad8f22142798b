"""
Degenerate levels in closed form
================================

With e1 == e0 the eigenpairs of W^T have closed forms.  We evaluate them and
measure them against the general machinery.
"""
import numpy as np

from lindblad_atom import AtomModel
from lindblad_atom import special_case as sc

m = AtomModel(0.0, 0.0, 1.0, 2.0, 2.0)
sol = sc.special_spectrum(m)
print("eigenvalues:", np.round(sol.eigenvalues, 12))
print("branch:", sol.branch, " discriminant:", sol.discriminant)
print("eigen-residuals:", sc.eigen_residuals(m, sol))

# %%
# Random draws on each side of the real/complex boundary.
rng = np.random.default_rng(0)
for branch in ("real", "complex"):
    worst = 0.0
    for _ in range(100):
        rep = sc.cross_check_special(sc.random_special_model(rng, branch))
        worst = max(worst, rep["eigenvalue_error"], rep["max_angle"], max(rep["residuals"]))
    print(f"{branch:8s} worst discrepancy over 100 draws: {worst:.2e}")
