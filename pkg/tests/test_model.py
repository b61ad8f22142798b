import math

import numpy as np
import pytest
from hypothesis import given, settings

from lindblad_atom.errors import ModelError
from lindblad_atom.model import (AtomModel, basis_state, check_density_matrix, density_violations,
                                 hamiltonian, hamiltonian_spectrum, ket_plus, ladder_operators,
                                 pauli, unvectorize, vectorize)

from conftest import atom_models


def test_ladder_operator_algebra():
    sp, sm, spsm, smsp = ladder_operators()
    np.testing.assert_array_equal(sp, [[0, 1], [0, 0]])
    np.testing.assert_array_equal(sm, sp.conj().T)
    np.testing.assert_array_equal(spsm, np.diag([1, 0]))
    np.testing.assert_array_equal(smsp, np.diag([0, 1]))
    s1, s2, _ = pauli()
    np.testing.assert_allclose(sp, 0.5 * (s1 + 1j * s2))


@pytest.mark.parametrize("field,kwargs", [
    ("mu", dict(mu=0.0)),
    ("mu", dict(mu=-1.0)),
    ("nu", dict(nu=0.0)),
    ("e0", dict(e0=2.0)),
    ("e1", dict(e1=math.inf)),
    ("gamma", dict(gamma=complex(math.nan, 0))),
])
def test_invalid_models_name_the_field(field, kwargs):
    base = dict(e0=0.0, e1=1.0, gamma=0.5, mu=0.3, nu=0.1)
    base.update(kwargs)
    with pytest.raises(ModelError) as err:
        AtomModel(**base)
    assert err.value.field == field
    assert str(err.value).startswith(field)


def test_model_is_immutable():
    m = AtomModel(0.0, 1.0, 0.5, 0.3, 0.1)
    with pytest.raises(Exception):
        m.mu = 1.0
    assert isinstance(m.gamma, complex)
    assert m.gap == 1.0 and m.half_rate == 0.2 and not m.is_special


def test_hamiltonian_examples():
    np.testing.assert_array_equal(hamiltonian(AtomModel(0.0, 2.0, 0, 1, 1)), np.diag([0, 2]))
    np.testing.assert_array_equal(hamiltonian(AtomModel(0.0, 2.0, 1j, 1, 1)), [[0, 1j], [-1j, 2]])


def test_spectrum_example_imaginary_coupling():
    lp, lm, _ = hamiltonian_spectrum(AtomModel(1.0, 3.0, 1j, 1, 1))
    assert lp == pytest.approx(2 + math.sqrt(2), abs=1e-14)
    assert lm == pytest.approx(2 - math.sqrt(2), abs=1e-14)


def test_spectrum_example_symmetric():
    lp, lm, ket = hamiltonian_spectrum(AtomModel(0.0, 0.0, 1.0, 1, 1))
    assert (lp, lm) == (1.0, -1.0)
    np.testing.assert_allclose(ket, np.array([1, -1]) / math.sqrt(2), atol=1e-15)


def test_zero_coupling_returns_basis_ket():
    lp, lm, ket = hamiltonian_spectrum(AtomModel(0.0, 1.0, 0, 1, 1))
    assert (lp, lm) == (1.0, 0.0)
    np.testing.assert_array_equal(ket, [1, 0])


@settings(max_examples=300)
@given(atom_models())
def test_spectrum_properties(m):
    h = hamiltonian(m)
    np.testing.assert_array_equal(h, h.conj().T)
    lp, lm, ket = hamiltonian_spectrum(m)
    assert lp > m.e1 > m.e0 > lm
    assert lp + lm == pytest.approx(m.e0 + m.e1, abs=1e-12)
    assert lp * lm == pytest.approx(m.e0 * m.e1 - abs(m.gamma) ** 2, abs=1e-12)
    assert abs(np.linalg.norm(ket) - 1) <= 1e-12
    assert ket[0].real > 0 and ket[0].imag == 0
    assert np.linalg.norm(h @ ket - lm * ket) <= 1e-10
    kp = ket_plus(m)
    assert np.linalg.norm(h @ kp - lp * kp) <= 1e-10
    assert abs(np.vdot(ket, kp)) <= 1e-12


@settings(max_examples=100)
@given(atom_models(special=True))
def test_degenerate_levels_allowed(m):
    lp, lm, ket = hamiltonian_spectrum(m)
    assert lp - m.e0 == pytest.approx(abs(m.gamma), abs=1e-12)
    assert m.e0 - lm == pytest.approx(abs(m.gamma), abs=1e-12)


def test_vectorization_is_row_major():
    rho = np.array([[0.7, 0.1 + 0.2j], [0.1 - 0.2j, 0.3]])
    np.testing.assert_array_equal(vectorize(rho), [0.7, 0.1 + 0.2j, 0.1 - 0.2j, 0.3])
    np.testing.assert_array_equal(unvectorize(vectorize(rho)), rho)
    with pytest.raises(ValueError):
        unvectorize(np.zeros(3))


def test_density_checks():
    rho = basis_state(3, 1)
    assert density_violations(rho) == {"hermiticity": 0.0, "trace": 0.0, "min_eigenvalue": 0.0}
    check_density_matrix(rho)
    with pytest.raises(ValueError, match="trace"):
        check_density_matrix(np.diag([0.5, 0.4]))
    with pytest.raises(ValueError, match="Hermitian"):
        check_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))
    with pytest.raises(ValueError, match="semidefinite"):
        check_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError, match="square"):
        check_density_matrix(np.zeros(4))
