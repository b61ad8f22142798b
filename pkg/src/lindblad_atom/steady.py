"""
Long-time state of the master equation and finite-time trajectories.

The steady state can be computed three independent ways:

``cofactor``
    the rank-one limit ``lim exp(tW) = (O^T)^{-1} |0))((0| O^T`` written
    through the first-column cofactors of the eigenvector matrix ``O``;
``nullspace``
    the trace-normalized null vector of ``W``;
``propagate``
    ``exp(t_max W) psi0`` with ``t_max = 50 / gap``.
"""
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import matrix_core as mc
from . import numerics
from .errors import ConvergenceError, NonUniqueSteadyStateError
from .liouvillian import spectrum, wt_eigenbasis
from .model import AtomModel, basis_state, check_density_matrix, density_violations, unvectorize, vectorize

HORIZON_FACTOR = 50.0
METHODS = ("cofactor", "nullspace", "propagate")


@dataclass(frozen=True, eq=False)
class AsymptoticProjector:
    """``projector = outer(cofactors, O[:, 0]) / det_o``; ``o`` is kept for inspection."""

    cofactors: np.ndarray
    det_o: complex
    projector: np.ndarray
    o: np.ndarray

    @property
    def steady_vector(self):
        return self.cofactors / self.det_o

    def one_relation_residual(self):
        """``|det O - (C11 + C14)| / |det O|``."""
        return abs(self.det_o - (self.cofactors[0] + self.cofactors[3])) / abs(self.det_o)


def first_column_cofactors(o):
    """Cofactors ``C_k1`` of the first column; ``(O^{-1})_{1k} = C_k1 / det O``."""
    n = o.shape[0]
    out = np.empty(n, dtype=complex)
    for k in range(n):
        minor = np.delete(np.delete(o, k, axis=0), 0, axis=1)
        out[k] = (-1) ** k * np.linalg.det(minor)
    return out


def _eigenvalues(l):
    if l.n == 2 and isinstance(l.model, AtomModel):
        return spectrum(l).eigenvalues
    return np.linalg.eigvals(l.w)


def spectral_gap(l, eigenvalues=None):
    """Smallest ``|Re lambda|`` over the nonzero eigenvalues."""
    eig = _eigenvalues(l) if eigenvalues is None else np.asarray(eigenvalues)
    scale = max(1.0, float(np.max(np.abs(eig))))
    nonzero = eig[np.abs(eig) > 1e-10 * scale]
    if nonzero.size == 0:
        raise NonUniqueSteadyStateError("generator has no nonzero eigenvalue")
    return float(np.min(np.abs(nonzero.real)))


def asymptotic_projector(l):
    """
    Limit of ``exp(tW)`` as ``t -> infinity`` from the cofactors of ``O``.

    Raises
    ------
    DegenerateSpectrumError
        Propagated from :func:`wt_eigenbasis`.
    ConvergenceError
        A nonzero eigenvalue does not have negative real part.
    """
    report = spectrum(l)
    if np.any(report.nonzero().real >= 0):
        raise ConvergenceError(f"nonzero eigenvalue with Re >= 0: {report.eigenvalues}")
    o = wt_eigenbasis(l, report)
    cof = first_column_cofactors(o)
    det_o = np.linalg.det(o)
    projector = np.outer(cof, o[:, 0]) / det_o
    return AsymptoticProjector(cof, det_o, projector, o)


def horizon(l):
    return HORIZON_FACTOR / spectral_gap(l)


def steady_state(l, method="cofactor", rho0=None, t_max=None, tol=None):
    """
    Fixed point of the generator as a density matrix.

    Parameters
    ----------
    l : Liouvillian
    method : {'cofactor', 'nullspace', 'propagate'}
    rho0 : ndarray, optional
        Initial state for ``propagate`` (default ``|0><0|``).
    t_max : float, optional
        Propagation horizon (default ``50 / gap``).
    """
    if method == "cofactor":
        if l.n != 2:
            raise ValueError("cofactor method is only available for two-level generators")
        return unvectorize(asymptotic_projector(l).steady_vector)
    if method == "nullspace":
        basis = mc.null_space(l.w)
        if len(basis) != 1:
            raise NonUniqueSteadyStateError(f"null space has dimension {len(basis)}")
        rho = unvectorize(basis[0])
        return rho / np.trace(rho)
    if method == "propagate":
        tol = numerics.resolve(tol)
        rho0 = basis_state(l.n, 0) if rho0 is None else rho0
        t_max = horizon(l) if t_max is None else t_max
        psi = mc.expm(l.w, t_max) @ vectorize(rho0)
        drift = np.linalg.norm(l.w @ psi)
        if drift > tol * max(1.0, np.linalg.norm(l.w, 2)):
            raise ConvergenceError(f"state still moving at t={t_max:g} (|W psi|={drift:.3g})")
        return unvectorize(psi)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def all_steady_states(l, rho0=None, tol=None):
    """Steady state by every available method plus pairwise max-abs deviations."""
    methods = METHODS if l.n == 2 else METHODS[1:]
    states = {name: steady_state(l, name, rho0=rho0, tol=tol) for name in methods}
    deviations = {}
    for i, a in enumerate(methods):
        for b in methods[i + 1:]:
            deviations[f"{a}-{b}"] = float(np.max(np.abs(states[a] - states[b])))
    return states, deviations


# --------------------------------------------------------------------------
# trajectories

@dataclass(frozen=True, eq=False)
class Trajectory:
    """Vectorized states ``states[k]`` at ``times[k]``."""

    times: np.ndarray
    states: np.ndarray
    method: str
    model: object = field(default=None, repr=False)

    @property
    def n(self):
        return math.isqrt(self.states.shape[1])

    def density_matrices(self):
        return [unvectorize(s) for s in self.states]

    def violations(self):
        """Worst trace, Hermiticity and positivity deviations over all samples."""
        rows = [density_violations(r) for r in self.density_matrices()]
        return {
            "trace": max(r["trace"] for r in rows),
            "hermiticity": max(r["hermiticity"] for r in rows),
            "min_eigenvalue": min(r["min_eigenvalue"] for r in rows),
        }

    def header(self):
        if self.n == 2:
            names = ("a", "b", "bbar", "d")
        else:
            names = tuple(f"rho{i}{j}" for i in range(self.n) for j in range(self.n))
        cols = ["t"]
        for name in names:
            cols += [f"{name}_re", f"{name}_im"]
        return cols

    def to_csv(self, fh=None):
        """Write CSV to ``fh`` (or return it as a string)."""
        out = io.StringIO() if fh is None else fh
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.header())
        for t, psi in zip(self.times, self.states):
            row = [_fmt(t)]
            for z in psi:
                row += [_fmt(z.real), _fmt(z.imag)]
            writer.writerow(row)
        return out.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, text, method="csv"):
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(x) for x in r] for r in rows[1:]])
        times = data[:, 0]
        states = data[:, 1::2] + 1j * data[:, 2::2]
        return cls(times, states, method)


def _fmt(x):
    x = float(x)
    return f"{x + 0.0:.12e}"


def rk4_step_bound(l):
    """
    ``min(0.01, 0.1 / |W|_2)``.

    Stepping at this bound does not by itself keep RK4 within 1e-8 of
    ``expm`` on long, weakly damped runs; :func:`evolve` defaults to a
    quarter of it.
    """
    return min(0.01, 0.1 / np.linalg.norm(l.w, 2))


def _rk4(w, psi, dt, h_max):
    steps = max(1, int(math.ceil(dt / h_max - 1e-12)))
    hw = (dt / steps) * w
    eye = np.eye(w.shape[0])
    # for constant W one classical RK4 step is exactly 1 + hW + (hW)^2/2 + (hW)^3/6 + (hW)^4/24
    step = eye + hw @ (eye + hw @ (eye + hw @ (eye + hw / 4) / 3) / 2)
    return np.linalg.matrix_power(step, steps) @ psi


def evolve(l, rho0, grid, method="expm", step=None):
    """
    Propagate ``rho0`` to every time in ``grid``.

    Parameters
    ----------
    l : Liouvillian
    rho0 : ndarray (n, n)
    grid : array_like
        Non-negative, strictly increasing times.
    method : {'expm', 'rk4'}
    step : float, optional
        RK4 step; defaults to a quarter of :func:`rk4_step_bound`.
    """
    rho0 = check_density_matrix(rho0, herm_tol=1e-10, trace_tol=1e-10, psd_tol=1e-10)
    if rho0.shape != (l.n, l.n):
        raise ValueError(f"rho0 has shape {rho0.shape}, generator is for n={l.n}")
    times = np.atleast_1d(np.asarray(grid, dtype=float))
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a non-empty 1-d sequence")
    if times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be non-negative and strictly increasing")
    psi0 = vectorize(rho0)
    if method == "expm":
        states = np.array([mc.expm(l.w, t) @ psi0 for t in times])
    elif method == "rk4":
        h_max = rk4_step_bound(l) / 4 if step is None else float(step)
        if not h_max > 0:
            raise ValueError(f"RK4 step must be positive, got {step}")
        states = []
        psi, t_prev = psi0, 0.0
        for t in times:
            if t > t_prev:
                psi = _rk4(l.w, psi, t - t_prev, h_max)
            states.append(psi)
            t_prev = t
        states = np.array(states)
    else:
        raise ValueError(f"unknown method {method!r}; expected 'expm' or 'rk4'")
    return Trajectory(times, states, method, l.model)
