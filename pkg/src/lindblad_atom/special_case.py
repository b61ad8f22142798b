"""
Closed-form eigenpairs of ``W^T`` for degenerate levels (``e1 == e0``).

Every closed-form eigenvector is checked against the eigen-equation
before it is trusted.
"""
import cmath
from dataclasses import dataclass

import numpy as np

from . import matrix_core as mc
from .errors import DegenerateSpectrumError, ModelError
from .liouvillian import build_w, spectrum, wt_eigenbasis

MARGIN = 1e-3


@dataclass(frozen=True, eq=False)
class SpecialCaseSolution:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns are round-kets
    discriminant: float
    fallback: tuple = ()  # indices where the closed form was replaced

    @property
    def branch(self):
        return "real" if self.discriminant > 0 else "complex"


def discriminant(m):
    return (0.5 * (m.mu + m.nu)) ** 2 - 16 * abs(m.gamma) ** 2


def denominators(m, sign):
    """The two inner denominators of the closed-form ``|lambda_3>`` (sign=+1) / ``|lambda_4>``."""
    root = cmath.sqrt(discriminant(m))
    return ((m.mu - 7 * m.nu) / 4 + sign * root / 2,
            -(m.mu + m.nu) / 4 + sign * root / 2)


def closed_form_eigenvalues(m):
    s = m.mu + m.nu
    root = cmath.sqrt(discriminant(m))
    return np.array([0.0, -s / 2, -0.75 * s + root / 2, -0.75 * s - root / 2], dtype=complex)


def closed_form_eigenvector(m, sign):
    g, gb = m.gamma, np.conj(m.gamma)
    d1, d2 = denominators(m, sign)
    ratio = -1 + (m.mu - m.nu) / d1
    return np.array([
        -1 + 2 * (m.mu - m.nu) / d1,
        2j * gb * ratio / d2,
        -2j * g * ratio / d2,
        1.0,
    ], dtype=complex)


def special_spectrum(m, tol=1e-12):
    """
    Eigenvalues and round-ket eigenvectors of ``W^T`` for ``e1 == e0``.

    Where a closed-form denominator vanishes, the eigenvector is rebuilt with
    :func:`matrix_core.eigenvector_from_eigenvalue` and its index recorded
    in ``fallback``.
    """
    if not m.is_special:
        raise ModelError("e1", "special case requires e1 == e0")
    if m.gamma == 0:
        raise DegenerateSpectrumError("gamma = 0: lambda2 == lambda3 == -(mu+nu)/2", [(1, 2)])
    disc = discriminant(m)
    if abs(disc) <= tol * (0.5 * (m.mu + m.nu)) ** 2:
        raise DegenerateSpectrumError("discriminant vanishes: lambda3 == lambda4", [(2, 3)])
    eig = closed_form_eigenvalues(m)
    vecs = [np.array([1, 0, 0, 1], dtype=complex),
            np.array([0, np.conj(m.gamma), m.gamma, 0], dtype=complex)]
    fallback = []
    wt = build_w(m).w.T
    for k, sign in ((2, +1), (3, -1)):
        if min(abs(d) for d in denominators(m, sign)) <= tol:
            vecs.append(mc.eigenvector_from_eigenvalue(wt, eig[k]))
            fallback.append(k)
        else:
            vecs.append(closed_form_eigenvector(m, sign))
    return SpecialCaseSolution(eig, np.column_stack(vecs), disc, tuple(fallback))


def eigen_residuals(m, sol):
    """Relative residuals ``|W^T v - lam v| / (|W^T| |v|)`` per eigenpair."""
    wt = build_w(m).w.T
    norm = np.linalg.norm(wt, 2)
    return np.array([
        np.linalg.norm(wt @ v - lam * v) / (norm * np.linalg.norm(v))
        for lam, v in zip(sol.eigenvalues, sol.eigenvectors.T)
    ])


def _subspace_angle(u, v):
    # arcsin of the orthogonal residual; arccos(|<u,v>|) loses half the digits near 0
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    perp = u - np.vdot(v, u) * v
    return float(np.arcsin(min(1.0, np.linalg.norm(perp))))


def cross_check_special(m, threshold=1e-8):
    """
    Compare the closed forms with the generic cubic/cofactor machinery.

    Returns a dict with the largest eigenvalue discrepancy, the largest
    angle between matching eigenvectors, the closed-form eigen-residuals and
    a ``passed`` flag.
    """
    sol = special_spectrum(m)
    l = build_w(m)
    report = spectrum(l)
    o = wt_eigenbasis(l, report)
    generic = report.eigenvalues
    # generic ordering already matches: 0, -(mu+nu)/2, L+ - s, L- - s
    eig_err = mc.match_distance(generic, sol.eigenvalues)
    angles = []
    for k in range(4):
        j = int(np.argmin(np.abs(generic - sol.eigenvalues[k])))
        angles.append(_subspace_angle(sol.eigenvectors[:, k], o[:, j]))
    resid = eigen_residuals(m, sol)
    max_angle = max(angles)
    return {
        "eigenvalue_error": eig_err,
        "max_angle": max_angle,
        "residuals": resid.tolist(),
        "branch": sol.branch,
        "fallback": list(sol.fallback),
        "passed": bool(eig_err <= threshold and max_angle <= threshold
                       and np.max(resid) <= 1e-9),
    }


def random_special_model(rng, branch, margin=MARGIN, rate_range=(0.05, 2.0), gamma_max=1.0):
    """Draw ``AtomModel`` with ``e1 == e0`` on the requested discriminant branch.

    Parameter sets with ``|discriminant|`` or a closed-form denominator
    within ``margin`` of zero are rejected.
    """
    from .model import AtomModel

    while True:
        mu, nu = rng.uniform(*rate_range, size=2)
        g = rng.uniform(0.0, gamma_max) * cmath.exp(1j * rng.uniform(0, 2 * np.pi))
        e = rng.uniform(-1, 1)
        m = AtomModel(e, e, g, mu, nu)
        disc = discriminant(m)
        if abs(disc) < margin or abs(g) < margin:
            continue
        if (disc > 0) != (branch == "real"):
            continue
        dens = denominators(m, 1) + denominators(m, -1)
        if min(abs(d) for d in dens) < margin:
            continue
        return m
