"""
Vectorized master-equation generator W for the two-level atom.

The state vector is the row-major stacking (a, b, conj(b), d) of the density
matrix [[a, b], [conj(b), d]].  Note this is *not* the column-major
convention used by many quantum-optics packages; with row-major stacking

    vec(A rho B) = (A kron B^T) vec(rho).
"""
from dataclasses import dataclass, field
import itertools

import numpy as np

from . import matrix_core as mc
from . import numerics
from .errors import DegenerateSpectrumError
from .model import AtomModel, hamiltonian, ladder_operators
from .serialization import complex_from_json, complex_to_json, fmt_float


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Generator ``w`` (shape n^2 x n^2) together with the model it came from."""

    n: int
    w: np.ndarray
    model: object = field(default=None, repr=False)

    def __post_init__(self):
        w = np.array(self.w, dtype=complex)
        if w.shape != (self.n ** 2, self.n ** 2):
            raise ValueError(f"generator must have shape {(self.n ** 2,) * 2}, got {w.shape}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def trace_row(self):
        """Row vector with ones at the vectorized diagonal positions."""
        row = np.zeros(self.n ** 2)
        row[:: self.n + 1] = 1.0
        return row

    def apply(self, psi):
        return self.w @ psi


# --------------------------------------------------------------------------
# superoperator building blocks (row-major vectorization)

def hamiltonian_superoperator(h):
    """Coherent part ``-i (H kron 1 - 1 kron H^T)``."""
    h = mc.as_matrix(h)
    eye = np.eye(h.shape[0])
    return -1j * (mc.kron(h, eye) - mc.kron(eye, h.T))


def lindblad_superoperator(op, rate=1.0):
    """Vectorized ``rate * (L rho L^+ - 1/2 L^+L rho - 1/2 rho L^+L)``."""
    op = mc.as_matrix(op)
    eye = np.eye(op.shape[0])
    ldl = op.conj().T @ op
    return rate * (mc.kron(op, op.conj())
                   - 0.5 * mc.kron(ldl, eye)
                   - 0.5 * mc.kron(eye, ldl.T))


def dissipator(m, rho):
    """Dissipator acting on a 2x2 matrix ``rho`` (not vectorized)."""
    rho = mc.as_matrix(rho)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got shape {rho.shape}")
    sp, sm, spsm, smsp = ladder_operators()
    return (m.mu * (sm @ rho @ sp - 0.5 * spsm @ rho - 0.5 * rho @ spsm)
            + m.nu * (sp @ rho @ sm - 0.5 * smsp @ rho - 0.5 * rho @ smsp))


def build_w(m):
    """Generator written out entry by entry in the (a, b, conj(b), d) ordering."""
    g, gb = m.gamma, np.conj(m.gamma)
    delta, s = m.gap, m.half_rate
    mu, nu = m.mu, m.nu
    w = np.array([
        [-mu, 1j * gb, -1j * g, nu],
        [1j * g, 1j * delta - s, 0, -1j * g],
        [-1j * gb, 0, -1j * delta - s, 1j * gb],
        [mu, -1j * gb, 1j * g, -nu],
    ], dtype=complex)
    return Liouvillian(2, w, m)


def build_w_tensor(m):
    """Same generator assembled from Kronecker products (independent route)."""
    _, sm, _, _ = ladder_operators()
    sp = sm.conj().T
    w = (hamiltonian_superoperator(hamiltonian(m))
         + lindblad_superoperator(sm, m.mu)
         + lindblad_superoperator(sp, m.nu))
    return Liouvillian(2, w, m)


# --------------------------------------------------------------------------
# spectrum

TRIVIAL_ZERO = "trivial-zero"
REAL_NEGATIVE = "real-negative"
COMPLEX_PAIR = "complex-pair-member"


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """
    Eigenvalues ``[0, lam2, lam3, lam4]`` of W and how they were obtained.

    ``shifted_roots`` are the cubic's roots ``(L0, L+, L-)`` in the variable
    ``L = lam + (mu + nu)/2``; ``lambda0_bracket`` is the interval searched
    for ``L0`` and ``discriminant`` decides between the real and the
    complex-pair branch of ``(lam3, lam4)``.
    """

    eigenvalues: np.ndarray
    classes: tuple
    lambda0_bracket: tuple
    shifted_roots: tuple
    discriminant: float
    cubic: tuple
    used_cardano: bool = False

    @property
    def branch(self):
        return "complex" if self.discriminant < 0 else "real"

    def nonzero(self):
        return self.eigenvalues[1:]

    def to_dict(self):
        a, b, c = self.cubic
        return {
            "eigenvalues": [{"value": complex_to_json(z), "class": k}
                            for z, k in zip(self.eigenvalues, self.classes)],
            "branch": self.branch,
            "shifted_roots": [complex_to_json(z) for z in self.shifted_roots],
            "lambda0_bracket": [fmt_float(x) for x in self.lambda0_bracket],
            "discriminant": fmt_float(self.discriminant),
            "cubic": {"a": fmt_float(a), "b": fmt_float(b), "c": fmt_float(c)},
            "used_cardano": self.used_cardano,
        }

    @classmethod
    def from_dict(cls, d):
        roots = [complex_from_json(z) for z in d["shifted_roots"]]
        return cls(
            eigenvalues=np.array([complex_from_json(e["value"]) for e in d["eigenvalues"]]),
            classes=tuple(e["class"] for e in d["eigenvalues"]),
            lambda0_bracket=tuple(d["lambda0_bracket"]),
            shifted_roots=(roots[0].real, roots[1], roots[2]),
            discriminant=float(d["discriminant"]),
            cubic=(d["cubic"]["a"], d["cubic"]["b"], d["cubic"]["c"]),
            used_cardano=bool(d["used_cardano"]),
        )


def cubic_coefficients(m):
    """``(a, b, c)`` of the shifted cubic ``L^3 + a L^2 + b L + c``."""
    s = m.half_rate
    return s, m.gap ** 2 + 4 * abs(m.gamma) ** 2, m.gap ** 2 * s


def spectrum(l):
    """Eigenvalues of a two-level generator via the shifted cubic."""
    m = l.model
    if l.n != 2 or not isinstance(m, AtomModel):
        raise ValueError("spectrum() needs a two-level Liouvillian built from an AtomModel")
    a, b, c = cubic_coefficients(m)
    s = m.half_rate
    fac = mc.factor_cubic(a, b, c, bracket=(-s, 0.0))
    eig = np.array([0.0, fac.root0 - s, fac.root_plus - s, fac.root_minus - s], dtype=complex)
    pair_class = COMPLEX_PAIR if fac.discriminant < 0 else REAL_NEGATIVE
    classes = (TRIVIAL_ZERO, REAL_NEGATIVE, pair_class, pair_class)
    return SpectrumReport(
        eigenvalues=eig,
        classes=classes,
        lambda0_bracket=fac.bracket,
        shifted_roots=(fac.root0, fac.root_plus, fac.root_minus),
        discriminant=fac.discriminant,
        cubic=(a, b, c),
        used_cardano=fac.used_cardano,
    )


def find_collisions(eigenvalues, tol=None):
    """Index pairs of eigenvalues closer than ``tol`` (relative to the largest)."""
    tol = numerics.settings.degeneracy_tol if tol is None else tol
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    return [(i, j) for i, j in itertools.combinations(range(len(eigenvalues)), 2)
            if abs(eigenvalues[i] - eigenvalues[j]) <= tol * scale]


def wt_eigenbasis(l, report=None, tol=None):
    """
    Matrix ``O`` whose columns are round-ket eigenvectors of ``W^T``.

    Column 0 is ``(1, 0, 0, 1)`` (trace preservation).  Column 1 is scaled
    to unit norm; columns 2 and 3 are scaled so their last component is 1
    whenever that component does not vanish.

    Raises
    ------
    DegenerateSpectrumError
        Two eigenvalues coincide (including the real/complex boundary).
    """
    report = spectrum(l) if report is None else report
    eig = report.eigenvalues
    collisions = find_collisions(eig)
    if collisions:
        pairs = ", ".join(f"lambda{i + 1}=lambda{j + 1}" for i, j in collisions)
        raise DegenerateSpectrumError(f"degenerate spectrum: {pairs} ({eig})", collisions)
    wt = l.w.T
    cols = [np.array([1, 0, 0, 1], dtype=complex)]
    for k in (1, 2, 3):
        v = mc.eigenvector_from_eigenvalue(wt, eig[k], tol=tol)
        if k == 1:
            v = v / np.linalg.norm(v)
        elif abs(v[-1]) > 1e-12 * np.linalg.norm(v):
            v = v / v[-1]
            v[-1] = 1.0  # exact, not 1 - ulp
        cols.append(v)
    return np.column_stack(cols)
