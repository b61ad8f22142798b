"""
N-level generalization and a numerical probe of the steady-state conjecture.

For each coupled pair of levels ``j < k`` the generator gets a Lindblad
pair: ``|k><j|`` at rate ``mu_jk`` and ``|j><k|`` at rate ``nu_jk``.  For
``n = 2`` with the single transition (0, 1) this is exactly the two-level
generator (``|1><0|`` is ``sigma_minus``).

The conjecture states that ``lim exp(tW)`` has nonzero columns only at the
vectorized-diagonal positions ``k(n+1)``, all equal, so every basis state
relaxes to the same final state.
"""
from dataclasses import dataclass, field
import json
import math

import numpy as np

from . import matrix_core as mc
from .errors import ConvergenceError, ModelError, NonUniqueSteadyStateError
from .liouvillian import Liouvillian, hamiltonian_superoperator, lindblad_superoperator
from .serialization import complex_from_json, complex_to_json, dumps, fmt_float

FAMILIES = ("pairs", "collective")


@dataclass(frozen=True)
class Transition:
    j: int
    k: int
    gamma: complex
    mu: float
    nu: float


@dataclass(frozen=True)
class NLevelModel:
    """Energies, coupled transitions and the dissipator family."""

    energies: tuple
    transitions: tuple
    family: str = "pairs"

    def __post_init__(self):
        energies = tuple(float(e) for e in self.energies)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "transitions", tuple(self.transitions))
        n = len(energies)
        if n < 2:
            raise ModelError("energies", "need at least two levels")
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ModelError("energies", "must be ascending")
        if self.family not in FAMILIES:
            raise ModelError("family", f"expected one of {FAMILIES}, got {self.family!r}")
        seen = set()
        for i, tr in enumerate(self.transitions):
            if not 0 <= tr.j < tr.k < n:
                raise ModelError(f"transitions[{i}]", f"need 0 <= j < k < {n}, got ({tr.j}, {tr.k})")
            if (tr.j, tr.k) in seen:
                raise ModelError(f"transitions[{i}]", f"duplicate transition ({tr.j}, {tr.k})")
            seen.add((tr.j, tr.k))
            if not tr.mu > 0:
                raise ModelError(f"transitions[{i}].mu", f"rate must be positive, got {tr.mu}")
            if not tr.nu > 0:
                raise ModelError(f"transitions[{i}].nu", f"rate must be positive, got {tr.nu}")

    @property
    def n(self):
        return len(self.energies)

    @property
    def degenerate(self):
        return any(b == a for a, b in zip(self.energies, self.energies[1:]))

    def hamiltonian(self):
        h = np.diag(self.energies).astype(complex)
        for tr in self.transitions:
            h[tr.j, tr.k] = tr.gamma
            h[tr.k, tr.j] = np.conj(tr.gamma)
        return h

    @classmethod
    def from_atom(cls, m):
        return cls((m.e0, m.e1), (Transition(0, 1, m.gamma, m.mu, m.nu),))


def ladder_model(energies, gammas, mus, nus, family="pairs"):
    """Nearest-neighbour chain ``0 <-> 1 <-> ... <-> n-1``."""
    trs = tuple(Transition(i, i + 1, complex(g), float(mu), float(nu))
                for i, (g, mu, nu) in enumerate(zip(gammas, mus, nus)))
    return NLevelModel(tuple(energies), trs, family)


def _ket_bra(n, i, j):
    op = np.zeros((n, n), dtype=complex)
    op[i, j] = 1.0
    return op


def build_nlevel_w(m):
    n = m.n
    w = hamiltonian_superoperator(m.hamiltonian())
    if m.family == "pairs":
        for tr in m.transitions:
            w = w + lindblad_superoperator(_ket_bra(n, tr.k, tr.j), tr.mu)
            w = w + lindblad_superoperator(_ket_bra(n, tr.j, tr.k), tr.nu)
    else:
        down = sum(math.sqrt(tr.mu) * _ket_bra(n, tr.k, tr.j) for tr in m.transitions)
        up = sum(math.sqrt(tr.nu) * _ket_bra(n, tr.j, tr.k) for tr in m.transitions)
        w = w + lindblad_superoperator(down) + lindblad_superoperator(up)
    return Liouvillian(n, w, m)


# --------------------------------------------------------------------------
# conjecture harness

@dataclass(frozen=True, eq=False)
class ConjectureReport:
    n: int
    limit_matrix: np.ndarray
    pattern_pass: bool
    equal_final_states_pass: bool
    max_pattern_violation: float
    max_state_discrepancy: float
    projector_discrepancy: float = 0.0
    t_horizon: float = 0.0
    final_state: np.ndarray = field(default=None)

    def to_dict(self):
        return {
            "n": self.n,
            "t_horizon": fmt_float(self.t_horizon),
            "pattern_pass": self.pattern_pass,
            "equal_final_states_pass": self.equal_final_states_pass,
            "max_pattern_violation": fmt_float(self.max_pattern_violation),
            "max_state_discrepancy": fmt_float(self.max_state_discrepancy),
            "projector_discrepancy": fmt_float(self.projector_discrepancy),
            "final_state": [[complex_to_json(z) for z in row] for row in self.final_state],
            "limit_matrix": [[complex_to_json(z) for z in row] for row in self.limit_matrix],
        }

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        mat = lambda rows: np.array([[complex_from_json(z) for z in row] for row in rows])
        return cls(
            n=int(d["n"]),
            limit_matrix=mat(d["limit_matrix"]),
            pattern_pass=bool(d["pattern_pass"]),
            equal_final_states_pass=bool(d["equal_final_states_pass"]),
            max_pattern_violation=float(d["max_pattern_violation"]),
            max_state_discrepancy=float(d["max_state_discrepancy"]),
            projector_discrepancy=float(d["projector_discrepancy"]),
            t_horizon=float(d["t_horizon"]),
            final_state=mat(d["final_state"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def is_well_formed(self):
        n2 = self.n ** 2
        return (self.limit_matrix.shape == (n2, n2)
                and self.final_state.shape == (self.n, self.n)
                and np.all(np.isfinite(self.limit_matrix))
                and math.isfinite(self.max_pattern_violation)
                and math.isfinite(self.max_state_discrepancy)
                and self.max_pattern_violation >= 0
                and self.max_state_discrepancy >= 0)


def spectral_projector(l):
    """Rank-one projector ``r l^T / (l^T r)`` onto the unique null vector of ``W``."""
    right = mc.null_space(l.w)
    left = mc.null_space(l.w.T)
    if len(right) != 1 or len(left) != 1:
        raise NonUniqueSteadyStateError(f"null space has dimension {len(right)}")
    r, lv = right[0], left[0]
    return np.outer(r, lv) / (lv @ r)


def check_conjecture(m, t_horizon=None, pattern_tol=1e-7, state_tol=1e-9, zero_tol=1e-9):
    """
    Measure how far ``lim exp(tW)`` is from the conjectured sparsity pattern.

    Parameters
    ----------
    m : NLevelModel or Liouvillian
    t_horizon : float, optional
        Propagation time; defaults to ``50 / gap``.

    Raises
    ------
    NonUniqueSteadyStateError
        Zero is a repeated eigenvalue; the conjecture does not apply.
    ConvergenceError
        A nonzero eigenvalue has non-negative real part.
    """
    l = m if isinstance(m, Liouvillian) else build_nlevel_w(m)
    n = l.n
    eig = np.linalg.eigvals(l.w)
    scale = max(1.0, float(np.max(np.abs(eig))))
    is_zero = np.abs(eig) <= zero_tol * scale
    if np.count_nonzero(is_zero) != 1:
        raise NonUniqueSteadyStateError(
            f"zero eigenvalue has multiplicity {np.count_nonzero(is_zero)}")
    nonzero = eig[~is_zero]
    if np.any(nonzero.real >= 0):
        raise ConvergenceError(f"nonzero eigenvalue with Re >= 0: {nonzero[nonzero.real >= 0]}")
    if t_horizon is None:
        t_horizon = 50.0 / float(np.min(np.abs(nonzero.real)))
    limit = mc.expm(l.w, t_horizon)
    proj = spectral_projector(l)

    norm = np.linalg.norm(limit)
    diag_idx = [k * (n + 1) for k in range(n)]
    off_idx = [i for i in range(n * n) if i not in diag_idx]
    off = max((np.linalg.norm(limit[:, i]) for i in off_idx), default=0.0)
    spread = max(np.linalg.norm(limit[:, i] - limit[:, diag_idx[0]]) for i in diag_idx)
    violation = float(max(off, spread) / norm)
    nonzero_diag = all(np.linalg.norm(limit[:, i]) > pattern_tol * norm for i in diag_idx)

    finals = [limit[:, i].reshape(n, n) for i in diag_idx]
    discrepancy = float(max(np.max(np.abs(f - finals[0])) for f in finals))
    return ConjectureReport(
        n=n,
        limit_matrix=limit,
        pattern_pass=bool(violation <= pattern_tol and nonzero_diag),
        equal_final_states_pass=bool(discrepancy <= state_tol),
        max_pattern_violation=violation,
        max_state_discrepancy=discrepancy,
        projector_discrepancy=float(np.max(np.abs(limit - proj))),
        t_horizon=float(t_horizon),
        final_state=finals[0],
    )
