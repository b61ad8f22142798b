"""
Spectrum through the shifted cubic
==================================

Apart from the trivial zero, the eigenvalues of W come from a real cubic in
L = lambda + (mu + nu)/2.  One real root sits between -(mu+nu)/2 and 0 and
the rest follows from a quadratic.
"""
import numpy as np

from lindblad_atom import AtomModel, build_w, spectrum
from lindblad_atom import matrix_core as mc
from lindblad_atom.liouvillian import cubic_coefficients

m = AtomModel(0.0, 1.0, 1.0, 2.0, 2.0)
l = build_w(m)
report = spectrum(l)

a, b, c = cubic_coefficients(m)
print(f"cubic: L^3 + {a:g} L^2 + {b:g} L + {c:g}")
print("bracket for L0:", report.lambda0_bracket, " L0 =", report.shifted_roots[0])
for z, kind in zip(report.eigenvalues, report.classes):
    print(f"  {z:.6f}  {kind}")

# %%
# Independent check: roots of det(lambda - W) via the companion matrix.
oracle = mc.companion_roots(mc.char_poly(l.w))
print("max distance to companion roots:", mc.match_distance(report.eigenvalues, oracle))

# %%
# The bracket holds at least one root, not always exactly one.  Small level
# splitting with moderate coupling can put all three real roots inside it.
bad = AtomModel(0.0, 0.02560584715740033, 0.29166757947627314, 1.697540860607215, 1.5469714159178605)
r = spectrum(build_w(bad))
s = bad.half_rate
print("half rate:", s)
print("shifted roots:", np.round(np.asarray(r.shifted_roots), 6))
