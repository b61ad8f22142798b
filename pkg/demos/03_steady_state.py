"""
Where everything ends up
========================

Three independent routes to the fixed point of W, and a look at the
limiting propagator lim exp(tW).
"""
import numpy as np

from lindblad_atom import AtomModel, build_w
from lindblad_atom.steady import all_steady_states, asymptotic_projector, horizon

np.set_printoptions(precision=5, suppress=True)

m = AtomModel(-0.2, 0.9, 0.45 - 0.3j, 0.6, 0.25)
l = build_w(m)

states, deviations = all_steady_states(l)
print(states["cofactor"])
print(deviations)
print("propagation horizon 50/gap =", horizon(l))

# %%
# The limit has a rank-one structure: the coherence columns vanish and both
# population columns carry the same state, so |0><0| and |1><1| relax to the
# same rho.
proj = asymptotic_projector(l)
print(proj.projector)
print("det O relation residual:", proj.one_relation_residual())

# %%
# Weak coupling: the steady state tends to diag(nu, mu)/(mu + nu).
for g in (1e-1, 1e-2, 1e-3):
    rho = all_steady_states(build_w(AtomModel(0.0, 1.0, g, 0.3, 0.1)))[0]["nullspace"]
    print(g, np.diag(rho).real, abs(rho[0, 1]))
