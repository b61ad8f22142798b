"""
Splitting coherent and dissipative parts
========================================

exp(t(H + D)) is replaced by exp(tD) exp(tH), both of which are known in
closed form.  How good is it, and how fast does the error shrink with t?
"""
import numpy as np

from lindblad_atom import AtomModel, build_w
from lindblad_atom import matrix_core as mc
from lindblad_atom import perturbation as pt
from lindblad_atom.model import basis_state, vectorize

m = AtomModel(0.0, 1.0, 0.7 + 0.2j, 0.4, 0.3)
l = build_w(m)
parts = pt.split(l)

psi0 = vectorize(basis_state(2, 0))
for t in (0.1, 1.0, 10.0, 100 / (m.mu + m.nu)):
    exact = mc.expm(l.w, t) @ psi0
    approx = pt.approx_evolve(l, basis_state(2, 0), t)
    print(f"t={t:7.2f}  |approx - exact| = {np.linalg.norm(approx - exact):.3e}")

print("large-t limit of the split form:", np.diag(pt.approx_steady_state(m)).real)

# %%
# Ordered-product error: second order without the commutator factor, third
# order with it.  Halving t should divide the errors by about 4 and 8.
for t in (0.2, 0.1, 0.05):
    e1, e2 = pt.zassenhaus_check(parts.h_hat, parts.d_hat, t)
    print(f"t={t:5.3f}  plain={e1:.3e}  corrected={e2:.3e}")
print("ratios at t=0.05:", pt.zassenhaus_ratios(parts.h_hat, parts.d_hat, 0.05))
