"""
Split-operator approximation ``exp(t(H + D)) ~ exp(tD) exp(tH)``.

``H`` is the coherent part of the generator, ``D`` the dissipative part.
Both factors have closed forms: ``exp(tD)`` through the 2x2 population
matrix ``K = [[-mu, nu], [mu, -nu]]``, and ``exp(tH)`` as
``exp(-itH) kron exp(itH^T)``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import matrix_core as mc
from .liouvillian import hamiltonian_superoperator
from .model import check_density_matrix, hamiltonian, vectorize


@dataclass(frozen=True, eq=False)
class SplitGenerator:
    h_hat: np.ndarray
    d_hat: np.ndarray


@dataclass(frozen=True, eq=False)
class PropagatorFactors:
    """Closed-form pieces of ``exp(tH)`` at one time ``t``.

    ``a`` is the 2x2 SU(2) factor of ``exp(-itH)`` (the global phase
    ``exp(-it delta_plus)`` removed), ``c_top``/``c_bottom`` the first and
    last rows of ``exp_tH``.
    """

    t: float
    a: np.ndarray
    exp_tH: np.ndarray
    c_top: np.ndarray
    c_bottom: np.ndarray
    delta_plus: float
    delta_minus: float
    frequency: float

    def c_row_sums(self):
        return self.c_top + self.c_bottom


def split(l):
    """Coherent and dissipative parts of a two-level generator."""
    m = l.model
    s = m.half_rate
    d_hat = np.array([
        [-m.mu, 0, 0, m.nu],
        [0, -s, 0, 0],
        [0, 0, -s, 0],
        [m.mu, 0, 0, -m.nu],
    ], dtype=complex)
    return SplitGenerator(l.w - d_hat, d_hat)


def population_propagator(mu, nu, t):
    """``exp(tK)`` for ``K = [[-mu, nu], [mu, -nu]]``."""
    e = math.exp(-t * (mu + nu))
    return np.array([[nu + mu * e, nu - nu * e],
                     [mu - mu * e, mu + nu * e]]) / (mu + nu)


def exp_dissipative(m, t):
    """Closed form of ``exp(t D)``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    k = population_propagator(m.mu, m.nu, t)
    coh = math.exp(-t * m.half_rate)
    return np.array([
        [k[0, 0], 0, 0, k[0, 1]],
        [0, coh, 0, 0],
        [0, 0, coh, 0],
        [k[1, 0], 0, 0, k[1, 1]],
    ], dtype=complex)


def dissipative_limit(m):
    """``lim exp(tD)`` for large ``t``."""
    return np.array([
        [m.nu, 0, 0, m.nu],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [m.mu, 0, 0, m.mu],
    ], dtype=complex) / (m.mu + m.nu)


def su2_components(m, t):
    """``exp(-it [[-dm, g], [conj(g), dm]])`` with ``dm = (e1 - e0)/2``."""
    dm = 0.5 * (m.e1 - m.e0)
    g = m.gamma
    omega = math.sqrt(dm * dm + abs(g) ** 2)
    # sin(omega t)/omega, finite at omega = 0
    sinc = t * np.sinc(omega * t / math.pi)
    cos = math.cos(omega * t)
    a11 = cos + 1j * sinc * dm
    a12 = -1j * sinc * g
    a21 = -1j * sinc * np.conj(g)
    a22 = cos - 1j * sinc * dm
    return np.array([[a11, a12], [a21, a22]]), omega


def exp_coherent(m, t):
    """``exp(tH)`` assembled from the SU(2) components; see :class:`PropagatorFactors`."""
    a, omega = su2_components(m, t)
    dp = 0.5 * (m.e1 + m.e0)
    dm = 0.5 * (m.e1 - m.e0)
    left = np.exp(-1j * t * dp) * a                       # exp(-itH)
    right = np.exp(1j * t * dp) * np.array([[a[1, 1], -a[1, 0]],
                                            [-a[0, 1], a[0, 0]]])  # exp(itH^T)
    exp_th = mc.kron(left, right)
    return PropagatorFactors(
        t=t, a=a, exp_tH=exp_th,
        c_top=exp_th[0].copy(), c_bottom=exp_th[3].copy(),
        delta_plus=dp, delta_minus=dm, frequency=omega,
    )


def coherent_generator(m):
    """``-i (H kron 1 - 1 kron H^T)``."""
    return hamiltonian_superoperator(hamiltonian(m))


def approx_propagator(m, t):
    """``exp(tD) exp(tH)``: dissipative factor applied last."""
    return exp_dissipative(m, t) @ exp_coherent(m, t).exp_tH


def approx_evolve(l, rho0, t):
    """Approximate vectorized state at time ``t``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    rho0 = check_density_matrix(rho0, herm_tol=1e-10, trace_tol=1e-10, psd_tol=1e-10)
    return approx_propagator(l.model, t) @ vectorize(rho0)


def approx_steady_state(m):
    """``diag(nu, mu) / (mu + nu)``, the large-``t`` limit of :func:`approx_evolve`."""
    return np.diag([m.nu, m.mu]).astype(complex) / (m.mu + m.nu)


def zassenhaus_check(a, b, t):
    """
    Errors of the ordered product formula truncated after one and two factors.

    Returns
    -------
    (err1, err2) : floats
        ``|exp(t(A+B)) - exp(tB) exp(tA)|`` and
        ``|exp(t(A+B)) - exp(t^2/2 [A,B]) exp(tB) exp(tA)|`` (spectral norms).
        ``err1`` is O(t^2) and ``err2`` is O(t^3).
    """
    a = mc.as_matrix(a)
    b = mc.as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    exact = mc.expm(a + b, t)
    product = mc.expm(b, t) @ mc.expm(a, t)
    corrected = mc.expm(mc.commutator(a, b), 0.5 * t * t) @ product
    return (float(np.linalg.norm(exact - product, 2)),
            float(np.linalg.norm(exact - corrected, 2)))


def zassenhaus_ratios(a, b, t):
    """Error ratios ``err(t) / err(t/2)``; about 4 and 8 in the asymptotic regime."""
    e_full = zassenhaus_check(a, b, t)
    e_half = zassenhaus_check(a, b, 0.5 * t)
    return e_full[0] / e_half[0], e_full[1] / e_half[1]
