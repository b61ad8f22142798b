"""
The generator of the two-level atom
===================================

Build the 4x4 generator W for one set of parameters, two ways, and watch a
state relax under it.
"""
import numpy as np

from lindblad_atom import AtomModel, build_w, build_w_tensor, hamiltonian_spectrum
from lindblad_atom.model import basis_state
from lindblad_atom.steady import evolve

np.set_printoptions(precision=4, suppress=True)

# %%
# Energies e0 < e1, a complex coupling, decay rate mu and excitation rate nu.
m = AtomModel(e0=0.0, e1=1.0, gamma=0.5 + 0.2j, mu=0.3, nu=0.1)

lam_plus, lam_minus, ket = hamiltonian_spectrum(m)
print("dressed energies:", lam_minus, lam_plus)
print("ground ket:", ket)

# %%
# W acts on (a, b, conj(b), d), the row-major stacking of rho.
l = build_w(m)
print(l.w)
print("entrywise vs kron construction:", np.max(np.abs(l.w - build_w_tensor(m).w)))

# the trace row (1, 0, 0, 1) kills W from the left, so tr rho is conserved
print("trace row @ W:", l.trace_row() @ l.w)

# %%
# Start in the lower level and follow the populations.
traj = evolve(l, basis_state(2, 0), np.linspace(0, 40, 9))
for t, psi in zip(traj.times, traj.states):
    print(f"t={t:5.1f}  a={psi[0].real:.4f}  d={psi[3].real:.4f}  |b|={abs(psi[1]):.4f}")
