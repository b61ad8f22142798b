"""
Two-level atom: ladder operators, the coupled Hamiltonian and its spectrum,
plus density-matrix helpers shared by the rest of the package.

Units have hbar = 1.  Vectorization is row-major throughout, so a 2x2
density matrix [[a, b], [conj(b), d]] becomes (a, b, conj(b), d).
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import ModelError


@dataclass(frozen=True)
class AtomModel:
    """Level energies ``e0 <= e1``, complex coupling ``gamma`` and rates ``mu, nu > 0``."""

    e0: float
    e1: float
    gamma: complex
    mu: float
    nu: float

    def __post_init__(self):
        for name in ("e0", "e1", "mu", "nu"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ModelError(name, "must be finite")
        if not (math.isfinite(self.gamma.real) and math.isfinite(self.gamma.imag)):
            raise ModelError("gamma", "must be finite")
        if self.mu <= 0:
            raise ModelError("mu", f"rate must be positive, got {self.mu}")
        if self.nu <= 0:
            raise ModelError("nu", f"rate must be positive, got {self.nu}")
        if self.e0 > self.e1:
            raise ModelError("e0", f"expected e0 <= e1, got e0={self.e0} > e1={self.e1}")
        object.__setattr__(self, "gamma", complex(self.gamma))

    @property
    def gap(self):
        """Level splitting ``e1 - e0``."""
        return self.e1 - self.e0

    @property
    def is_special(self):
        """Degenerate levels ``e1 == e0``."""
        return self.e0 == self.e1

    @property
    def half_rate(self):
        return 0.5 * (self.mu + self.nu)


def ladder_operators():
    """Return ``(sigma_plus, sigma_minus, sigma_plus @ sigma_minus, sigma_minus @ sigma_plus)``."""
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sm = np.array([[0, 0], [1, 0]], dtype=complex)
    return sp, sm, sp @ sm, sm @ sp


def pauli():
    """Pauli matrices ``(sigma_1, sigma_2, sigma_3)``."""
    return (np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex))


def hamiltonian(m):
    return np.array([[m.e0, m.gamma], [np.conj(m.gamma), m.e1]], dtype=complex)


def hamiltonian_spectrum(m):
    """
    Closed-form eigenvalues of the coupled Hamiltonian and the ground ket.

    Returns
    -------
    lam_plus, lam_minus : float
    ket_minus : ndarray, shape (2,)
        Normalized eigenvector of ``lam_minus`` with a real, non-negative
        first component.  For ``gamma == 0`` this is the lower basis ket.
    """
    root = math.sqrt(m.gap ** 2 + 4 * abs(m.gamma) ** 2)
    lam_plus = 0.5 * (m.e0 + m.e1 + root)
    lam_minus = 0.5 * (m.e0 + m.e1 - root)
    g = m.gamma
    if g == 0:
        return lam_plus, lam_minus, np.array([1, 0], dtype=complex)
    shift = m.e0 - lam_minus
    norm = math.sqrt(abs(g) ** 2 + shift ** 2)
    ket = abs(g) / norm * np.array([1, -shift / g], dtype=complex)
    return lam_plus, lam_minus, ket


def ket_plus(m):
    """Excited eigenvector, obtained as the vector orthogonal to the ground ket."""
    _, _, k = hamiltonian_spectrum(m)
    v = np.array([-np.conj(k[1]), np.conj(k[0])])
    if abs(v[0]) > 0:
        v = v * abs(v[0]) / v[0]
    return v


# --------------------------------------------------------------------------
# density matrices

def vectorize(rho):
    """Row-major stacking: ``[[a, b], [c, d]] -> (a, b, c, d)``."""
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvectorize(psi):
    psi = np.asarray(psi, dtype=complex)
    n = math.isqrt(psi.size)
    if n * n != psi.size:
        raise ValueError(f"length {psi.size} is not a perfect square")
    return psi.reshape(n, n)


def basis_state(n, k):
    """Projector ``|k><k|`` on an ``n``-level system."""
    rho = np.zeros((n, n), dtype=complex)
    rho[k, k] = 1.0
    return rho


def density_violations(rho):
    """Hermiticity, trace and positivity deviations of ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
    trace = abs(np.trace(rho) - 1.0)
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    return {"hermiticity": herm, "trace": trace, "min_eigenvalue": min_eig}


def check_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10):
    """Raise ``ValueError`` unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    v = density_violations(rho)
    if v["hermiticity"] > herm_tol:
        raise ValueError(f"not Hermitian (deviation {v['hermiticity']:.3g})")
    if v["trace"] > trace_tol:
        raise ValueError(f"trace differs from 1 by {v['trace']:.3g}")
    if v["min_eigenvalue"] < -psd_tol:
        raise ValueError(f"not positive semidefinite (min eigenvalue {v['min_eigenvalue']:.3g})")
    return rho
