"""
Small dense complex linear algebra for matrices of size N <= ~16.

Matrices are plain ``numpy.ndarray`` objects of complex dtype.  Polynomials
are :class:`numpy.polynomial.Polynomial` instances (ascending coefficients).

The routines here are deliberately self-contained (Taylor scaling and
squaring, Faddeev-LeVerrier, cofactor eigenvectors, bracket-and-deflate
cubic roots) so they can serve as oracles independent of LAPACK's
eigensolvers.
"""
import itertools
import math
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial

from . import numerics
from .errors import DegenerateEigenvectorError, NotAnEigenvalueError

_EPS = np.finfo(float).eps


def as_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def _square(a):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    return a


def kron(a, b):
    """Kronecker product ``a (x) b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def commutator(a, b):
    return a @ b - b @ a


# --------------------------------------------------------------------------
# matrix exponential

def _taylor_order(theta, target=1e-13):
    # smallest m with  theta^(m+1)/(m+1)! * e^theta < target
    m = 1
    while theta ** (m + 1) / math.factorial(m + 1) * math.exp(theta) >= target:
        m += 1
    return m


_THETA = 0.5
_ORDER = _taylor_order(_THETA)


def expm(a, t=1.0):
    """
    Matrix exponential ``exp(t * a)`` by scaling and squaring.

    The scaled matrix has 1-norm at most 0.5 and is exponentiated with a
    truncated Taylor series whose remainder bound is below 1e-13.

    Parameters
    ----------
    a : array_like, shape (n, n)
    t : float, optional

    Returns
    -------
    ndarray, shape (n, n)
    """
    a = _square(a) * t
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    squarings = 0
    if norm > _THETA:
        squarings = int(math.ceil(math.log2(norm / _THETA)))
    a = a / 2.0 ** squarings
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, _ORDER + 1):
        term = term @ a / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


# --------------------------------------------------------------------------
# characteristic polynomial

def char_poly(a):
    """
    Monic characteristic polynomial ``det(lambda*1 - a)``.

    Uses the Faddeev-LeVerrier recursion, which is adequate (and exact in
    rational arithmetic) for the small matrices handled here.
    """
    a = _square(a)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(a @ m) / k
    return Polynomial(coeffs)


def poly_residual(p, x):
    """``|p(x)|`` relative to ``sum_k |c_k| |x|^k``."""
    coef = np.asarray(p.coef)
    scale = np.sum(np.abs(coef) * np.abs(x) ** np.arange(len(coef)))
    return abs(p(x)) / max(scale, np.finfo(float).tiny)


def companion_roots(p):
    """Roots as eigenvalues of the companion matrix (an independent oracle)."""
    coef = np.asarray(p.coef, dtype=complex)
    coef = coef / coef[-1]
    n = len(coef) - 1
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -coef[:-1]
    return np.linalg.eigvals(comp)


# --------------------------------------------------------------------------
# eigenvectors and null spaces

def _cofactor(m, r, j):
    minor = np.delete(np.delete(m, r, axis=0), j, axis=1)
    return (-1) ** (r + j) * np.linalg.det(minor)


def eigenvector_from_eigenvalue(a, lam, tol=None):
    """
    Unnormalized eigenvector of ``a`` for the eigenvalue ``lam``.

    Drop one row of ``lam*1 - a``, keep one component free, and solve the
    remaining square subsystem by Cramer's rule.  The result is the row of
    cofactors belonging to the dropped row, divided by its largest modulus
    so that tiny or huge matrices do not underflow or overflow.  Rows are dropped starting from
    the last (so the first n-1 rows are used first) and the free component
    starts at the last one; when the pivot sub-determinant vanishes the
    next combination is tried.

    Raises
    ------
    NotAnEigenvalueError
        ``lam`` does not make ``lam*1 - a`` singular.
    DegenerateEigenvectorError
        Every sub-determinant vanished (eigenspace of dimension > 1).
    """
    tol = numerics.resolve(tol)
    a = _square(a)
    n = a.shape[0]
    if n == 1:
        return np.ones(1, dtype=complex)
    if poly_residual(char_poly(a), lam) > tol:
        raise NotAnEigenvalueError(f"{lam!r} is not an eigenvalue (tol={tol:g})")
    m = lam * np.eye(n) - a
    anorm = max(np.linalg.norm(a, 2), abs(lam), np.finfo(float).tiny)
    row_norms = np.linalg.norm(m, axis=1)
    for r in reversed(range(n)):
        # Hadamard bound for the minor obtained by deleting row r
        hadamard = np.prod(np.delete(row_norms, r))
        for f in reversed(range(n)):
            pivot = _cofactor(m, r, f)
            if abs(pivot) <= tol * hadamard:
                continue
            v = np.array([_cofactor(m, r, j) for j in range(n)])
            peak = np.max(np.abs(v))
            if not 0 < peak < np.inf:
                continue
            v = v / peak
            resid = np.linalg.norm(a @ v - lam * v)
            if resid <= tol * anorm * np.linalg.norm(v):
                return v
    raise DegenerateEigenvectorError(
        f"all sub-determinants vanish for eigenvalue {lam!r}")


def match_distance(x, y):
    """Largest gap between two equal-length root sets under the best pairing."""
    x, y = np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise ValueError(f"root sets differ in size: {x.shape} vs {y.shape}")
    if x.size > 8:
        return float(np.max(np.abs(np.sort_complex(x) - np.sort_complex(y))))
    return float(min(np.max(np.abs(x - y[list(p)]))
                     for p in itertools.permutations(range(x.size))))


def null_space(a, rtol=1e-10):
    """
    Orthonormal basis of ``{v : a v = 0}`` as a list of vectors.

    Singular values below ``rtol * max(singular values)`` count as zero.
    """
    a = _square(a)
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    cutoff = max(rtol * smax, 100 * _EPS * smax, np.finfo(float).tiny)
    return [vh[k].conj() for k in range(len(s)) if s[k] <= cutoff]


def normalize(v):
    """Turn a round-ket into a unit vector, first nonzero component real positive."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v) > 1e-14))
    return v * (abs(v[k]) / v[k])


# --------------------------------------------------------------------------
# cubic roots

class CubicFactorization(NamedTuple):
    """Real root ``root0`` and the deflated quadratic's two roots."""

    root0: float
    root_plus: complex
    root_minus: complex
    quad_linear: float
    quad_const: float
    discriminant: float
    bracket: tuple
    used_cardano: bool

    @property
    def roots(self):
        return np.array([self.root0, self.root_plus, self.root_minus], dtype=complex)


def _bracketed_root(a, b, c, lo, hi):
    f = lambda x: ((x + a) * x + b) * x + c
    df = lambda x: (3 * x + 2 * a) * x + b
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    x = 0.5 * (lo + hi)
    for _ in range(400):
        fx = f(x)
        if fx == 0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi = x
        d = df(x)
        xn = x - fx / d if d != 0 else math.nan
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 2 * _EPS * abs(x) or hi - lo <= 2 * _EPS * max(abs(lo), abs(hi)):
            return xn
        x = xn
    return x


def _cardano_real_root(a, b, c, prefer=None):
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    shift = -a / 3.0
    if disc > 0:
        sq = math.sqrt(disc)
        roots = [np.cbrt(-q / 2.0 + sq) + np.cbrt(-q / 2.0 - sq) + shift]
    elif p == 0:
        roots = [shift]
    else:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (p * r)))
        phi = math.acos(arg) / 3.0
        roots = [r * math.cos(phi - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]
    if prefer is not None:
        inside = [x for x in roots if prefer[0] <= x <= prefer[1]]
        if inside:
            roots = inside
    x = max(roots, key=abs)
    # two Newton polishing steps
    for _ in range(2):
        d = (3 * x + 2 * a) * x + b
        if d == 0:
            break
        x = x - (((x + a) * x + b) * x + c) / d
    return x


def _quadratic_roots(lin, const):
    disc = lin * lin - 4.0 * const
    if disc >= 0:
        q = -0.5 * (lin + math.copysign(math.sqrt(disc), lin))
        r1 = q
        r2 = const / q if q != 0 else 0.0
        hi_, lo_ = max(r1, r2), min(r1, r2)
        return complex(hi_, 0.0), complex(lo_, 0.0), disc
    im = 0.5 * math.sqrt(-disc)
    re = -0.5 * lin
    return complex(re, im), complex(re, -im), disc


def factor_cubic(a, b, c, bracket=None):
    """
    Factor ``x^3 + a x^2 + b x + c`` (real coefficients) as
    ``(x - x0)(x^2 + (x0 + a) x + (x0^2 + a x0 + b))``.

    ``x0`` is searched on ``bracket`` (default ``[-a, 0]``) by safeguarded
    Newton-bisection.  If the bracket carries no sign change, the real root
    comes from Cardano's formula instead.

    Returns
    -------
    CubicFactorization
    """
    a, b, c = float(a), float(b), float(c)
    if bracket is None:
        bracket = (min(-a, 0.0), max(-a, 0.0))
    lo, hi = float(bracket[0]), float(bracket[1])
    f = lambda x: ((x + a) * x + b) * x + c
    flo, fhi = f(lo), f(hi)
    used_cardano = False
    if flo == 0:
        x0 = lo
    elif fhi == 0:
        x0 = hi
    elif lo < hi and (flo < 0) != (fhi < 0):
        x0 = _bracketed_root(a, b, c, lo, hi)
    else:
        x0 = _cardano_real_root(a, b, c, prefer=(lo, hi))
        used_cardano = True
    lin = x0 + a
    const = x0 * x0 + a * x0 + b
    rp, rm, disc = _quadratic_roots(lin, const)
    return CubicFactorization(x0, rp, rm, lin, const, disc, (lo, hi), used_cardano)


def solve_cubic(p, bracket=None):
    """
    Three roots of a real cubic.

    Parameters
    ----------
    p : Polynomial or sequence
        Cubic polynomial, ascending coefficients.  Normalized to monic.
    bracket : (float, float), optional
        Interval expected to contain a real root; defaults to ``[-a, 0]``
        where ``a`` is the quadratic coefficient.

    Returns
    -------
    ndarray of 3 complex
        ``[x0, x_plus, x_minus]``; real roots have exactly zero imaginary
        part, complex roots come as a conjugate pair.
    """
    coef = np.asarray(p.coef if isinstance(p, Polynomial) else p, dtype=complex)
    coef = np.trim_zeros(coef, "b")
    if len(coef) != 4:
        raise ValueError(f"expected a cubic, got degree {len(coef) - 1}")
    if np.any(np.abs(coef.imag) > 1e-14 * np.max(np.abs(coef))):
        raise ValueError("cubic must have real coefficients")
    coef = coef.real / coef[3].real
    return factor_cubic(coef[2], coef[1], coef[0], bracket).roots
