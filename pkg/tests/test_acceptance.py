"""
End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (collected again in the
terminal summary).  Run directly with ``python3 tests/test_acceptance.py``
or through pytest.
"""
import sys
import time

import numpy as np

from lindblad_atom import matrix_core as mc
from lindblad_atom import perturbation as pt
from lindblad_atom import special_case as sc
from lindblad_atom import steady as ss
from lindblad_atom.liouvillian import build_w, build_w_tensor, spectrum
from lindblad_atom.model import AtomModel, basis_state, hamiltonian, hamiltonian_spectrum, unvectorize
from lindblad_atom.nlevel import NLevelModel, check_conjecture, ladder_model

from make_goldens import COMMANDS, FIXTURES, golden_path, run

RESULTS = []


def report(number, title, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    return passed


def half_open(rng, hi=2.0, size=None):
    """Uniform on (0, hi]."""
    return hi - rng.uniform(0.0, hi, size)


def draw_model(rng):
    e0 = rng.uniform(-1.0, 1.0)
    g = half_open(rng) * np.exp(2j * np.pi * rng.uniform())
    return AtomModel(e0, e0 + half_open(rng), g, half_open(rng), half_open(rng))


def test_c01_hamiltonian_spectrum():
    rng = np.random.default_rng(101)
    worst, order_ok = 0.0, True
    for _ in range(1000):
        m = draw_model(rng)
        lp, lm, _ = hamiltonian_spectrum(m)
        oracle = np.linalg.eigvalsh(hamiltonian(m))
        worst = max(worst, abs(lm - oracle[0]), abs(lp - oracle[1]))
        order_ok &= lp > m.e1 > m.e0 > lm
    ok = worst <= 1e-12 and order_ok
    assert report(1, "Hamiltonian spectrum", ok,
                  f"max |closed form - eigvalsh| = {worst:.2e} (tol 1e-12), ordering holds: {order_ok}")


def test_c02_generator_equivalence():
    rng = np.random.default_rng(102)
    worst = max(float(np.max(np.abs(build_w(m).w - build_w_tensor(m).w)))
                for m in (draw_model(rng) for _ in range(1000)))
    assert report(2, "W construction equivalence", worst <= 1e-14,
                  f"max entrywise difference = {worst:.2e} (tol 1e-14)")


def test_c03_cubic_factorization():
    rng = np.random.default_rng(103)
    worst_match, stable, multiple = 0.0, True, []
    for _ in range(1000):
        m = draw_model(rng)
        l = build_w(m)
        rep = spectrum(l)
        s = m.half_rate
        oracle = mc.companion_roots(mc.char_poly(l.w))
        worst_match = max(worst_match, mc.match_distance(rep.eigenvalues, oracle))
        stable &= bool(np.all(rep.nonzero().real < 0))
        roots = np.asarray(rep.shifted_roots, dtype=complex)
        inside = [r for r in roots if abs(r.imag) <= 1e-12 * s and -s < r.real < 0]
        if len(inside) != 1:
            multiple.append((m, len(inside)))
    ok = worst_match <= 1e-8 and stable and not multiple
    detail = (f"max |spectrum - companion roots| = {worst_match:.2e} (tol 1e-8), "
              f"Re<0 in every draw: {stable}, draws with !=1 shifted root in (-s,0): {len(multiple)}/1000")
    if multiple:
        m, k = multiple[0]
        detail += (f"; first: gap={m.gap:.4g} |gamma|={abs(m.gamma):.4g} mu={m.mu:.4g} "
                   f"nu={m.nu:.4g} has {k} roots there")
    assert report(3, "cubic factorization", ok, detail)


def test_c04_special_case():
    m = AtomModel(0.0, 0.0, 1.0, 2.0, 2.0)
    expected = [0, -2, -3 + 1j * np.sqrt(3), -3 - 1j * np.sqrt(3)]
    eig_err = max(mc.match_distance(sc.special_spectrum(m).eigenvalues, expected),
                  mc.match_distance(spectrum(build_w(m)).eigenvalues, expected))
    rng = np.random.default_rng(104)
    worst, failures = 0.0, []
    for branch in ("real", "complex"):
        for _ in range(100):
            sm = sc.random_special_model(rng, branch)
            r = max(sc.eigen_residuals(sm, sc.special_spectrum(sm)))
            worst = max(worst, r)
            if r > 1e-9:
                failures.append((branch, sm))
    ok = eig_err <= 1e-10 and not failures
    assert report(4, "special case", ok,
                  f"eigenvalue error = {eig_err:.2e} (tol 1e-10), max eigen-residual over 200 draws "
                  f"= {worst:.2e} (tol 1e-9), failing draws: {len(failures)}")


def test_c05_steady_three_ways():
    rng = np.random.default_rng(105)
    worst_dev = worst_rel = worst_final = 0.0
    for _ in range(500):
        l = build_w(draw_model(rng))
        _, dev = ss.all_steady_states(l)
        worst_dev = max(worst_dev, max(dev.values()))
        proj = ss.asymptotic_projector(l)
        worst_rel = max(worst_rel, proj.one_relation_residual())
        finals = [ss.steady_state(l, "propagate", rho0=basis_state(2, k)) for k in (0, 1)]
        worst_final = max(worst_final,
                          float(np.max(np.abs(finals[0] - finals[1]))),
                          float(np.max(np.abs(proj.projector[:, 0] - proj.projector[:, 3]))))
    ok = worst_dev <= 1e-7 and worst_rel <= 1e-10 and worst_final <= 1e-9
    assert report(5, "steady state three ways", ok,
                  f"max pairwise deviation = {worst_dev:.2e} (tol 1e-7), one relation = {worst_rel:.2e} "
                  f"(tol 1e-10), rho0(inf) vs rho1(inf) = {worst_final:.2e} (tol 1e-9)")


def test_c06_trajectory_physicality():
    rng = np.random.default_rng(106)
    worst = {"trace": 0.0, "hermiticity": 0.0, "min_eigenvalue": np.inf}
    grid = np.linspace(0.0, 10.0, 200)
    for _ in range(100):
        m = draw_model(rng)
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho0 = x @ x.conj().T
        rho0 /= np.trace(rho0)
        for method in ("expm", "rk4"):
            v = ss.evolve(build_w(m), rho0, grid, method).violations()
            worst["trace"] = max(worst["trace"], v["trace"])
            worst["hermiticity"] = max(worst["hermiticity"], v["hermiticity"])
            worst["min_eigenvalue"] = min(worst["min_eigenvalue"], v["min_eigenvalue"])
    ok = worst["trace"] <= 1e-10 and worst["hermiticity"] <= 1e-10 and worst["min_eigenvalue"] >= -1e-8
    assert report(6, "trajectory physicality", ok,
                  f"trace dev = {worst['trace']:.2e}, hermiticity dev = {worst['hermiticity']:.2e} "
                  f"(tol 1e-10), min eigenvalue = {worst['min_eigenvalue']:.2e} (tol -1e-8)")


def test_c07_perturbation():
    rng = np.random.default_rng(107)
    worst_d = worst_c = worst_lim = 0.0
    for _ in range(200):
        m = draw_model(rng)
        t = rng.uniform(0.0, 5.0)
        d_hat = pt.split(build_w(m)).d_hat
        worst_d = max(worst_d, float(np.max(np.abs(pt.exp_dissipative(m, t) - mc.expm(d_hat, t)))))
        f = pt.exp_coherent(m, t)
        worst_c = max(worst_c, float(np.max(np.abs(f.c_row_sums() - [1, 0, 0, 1]))))
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho0 = x @ x.conj().T
        rho0 /= np.trace(rho0)
        psi = pt.approx_evolve(build_w(m), rho0, 100.0 / (m.mu + m.nu))
        worst_lim = max(worst_lim, float(np.max(np.abs(unvectorize(psi) - pt.approx_steady_state(m)))))
    errs = []
    for g in (1e-3, 1e-4, 1e-5):
        m = AtomModel(0.0, 1.0, g, 0.3, 0.1)
        errs.append(float(np.max(np.abs(ss.steady_state(build_w(m)) - pt.approx_steady_state(m)))))
    monotone = errs[0] > errs[1] > errs[2]
    ok = worst_d <= 1e-12 and worst_c <= 1e-12 and worst_lim <= 1e-6 and monotone
    assert report(7, "perturbation", ok,
                  f"exp_dissipative = {worst_d:.2e}, c-row = {worst_c:.2e} (tol 1e-12), "
                  f"approx limit = {worst_lim:.2e} (tol 1e-6), |gamma|->0 errors "
                  f"{', '.join(f'{e:.1e}' for e in errs)} decreasing: {monotone}")


def test_c08_zassenhaus_order():
    m = AtomModel(0.0, 1.0, 0.7 + 0.2j, 0.4, 0.3)
    parts = pt.split(build_w(m))
    r1, r2 = pt.zassenhaus_ratios(parts.h_hat, parts.d_hat, 0.05)
    ok = abs(r1 - 4) <= 0.8 and abs(r2 - 8) <= 1.6
    assert report(8, "Zassenhaus order", ok,
                  f"ratio without correction = {r1:.3f} (4 +/- 20%), with correction = {r2:.3f} (8 +/- 20%)")


def test_c09_conjecture_harness():
    rng = np.random.default_rng(109)
    worst, flags = 0.0, True
    for _ in range(50):
        m = draw_model(rng)
        rep = check_conjecture(NLevelModel.from_atom(m))
        proj = ss.asymptotic_projector(build_w(m)).projector
        worst = max(worst, float(np.max(np.abs(rep.limit_matrix - proj))))
        flags &= rep.pattern_pass and rep.equal_final_states_pass
    m3 = ladder_model([0.0, 1.0, 2.3], [0.4 + 0.1j, 0.25 - 0.3j], [0.3, 0.5], [0.1, 0.2])
    rep3 = check_conjecture(m3)
    ok = worst <= 1e-10 and flags and rep3.is_well_formed()
    assert report(9, "conjecture harness", ok,
                  f"n=2 limit vs cofactor projector = {worst:.2e} (tol 1e-10), n=2 flags: {flags}; "
                  f"n=3 well-formed: {rep3.is_well_formed()}, pattern violation = "
                  f"{rep3.max_pattern_violation:.2e}, state discrepancy = {rep3.max_state_discrepancy:.2e}")


def test_c10_cli_golden(tmp_path):
    mismatches = []
    for fixture in FIXTURES:
        for command in COMMANDS:
            outs = []
            for k in range(2):
                out = tmp_path / f"{fixture}.{command}.{k}"
                assert run(fixture, command, out) == 0
                outs.append(out.read_bytes())
            if outs[0] != outs[1] or outs[0] != golden_path(fixture, command).read_bytes():
                mismatches.append(f"{fixture}/{command}")
    n = len(FIXTURES) * len(COMMANDS)
    assert report(10, "CLI golden files", not mismatches,
                  f"{n - len(mismatches)}/{n} outputs byte-identical across runs and to golden"
                  + (f"; mismatched: {mismatches}" if mismatches else ""))


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_c")):
        start = time.perf_counter()
        try:
            fn(Path(tempfile.mkdtemp())) if fn.__code__.co_argcount else fn()
        except AssertionError:
            failed += 1
        print(f"      ({time.perf_counter() - start:.1f} s)")
    sys.exit(1 if failed else 0)
