"""
Command-line front end.

    python -m lindblad_atom spectrum --config model.json
    python -m lindblad_atom evolve --config model.json --method rk4 --out traj.csv
    python -m lindblad_atom steady --config model.json
    python -m lindblad_atom conjecture --config three_level.json
    python -m lindblad_atom verify --seed 7

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
import argparse
import sys

import numpy as np

from . import liouvillian as lv
from . import matrix_core as mc
from . import nlevel, special_case
from . import steady as ss
from .config import ConfigError, RunConfig
from .errors import (ConvergenceError, DegenerateSpectrumError, ModelError,
                     NonUniqueSteadyStateError)
from .model import AtomModel, unvectorize
from .serialization import dumps, fmt_float, matrix_to_json

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

TRACE_TOL = 1e-10
HERM_TOL = 1e-10
PSD_TOL = 1e-8


class NumericalFailure(RuntimeError):
    pass


def _generator(cfg):
    if isinstance(cfg.model, AtomModel):
        return lv.build_w(cfg.model)
    return nlevel.build_nlevel_w(cfg.model)


def cmd_spectrum(cfg):
    if not isinstance(cfg.model, AtomModel):
        raise ConfigError("model", "spectrum needs a two-level model (e0, e1, gamma, mu, nu)")
    return dumps(lv.spectrum(lv.build_w(cfg.model)).to_dict())


def cmd_evolve(cfg):
    l = _generator(cfg)
    grid = np.linspace(0.0, cfg.run.t_max, cfg.run.steps + 1)
    if cfg.run.steps == 0:
        grid = np.array([0.0])
    traj = ss.evolve(l, cfg.initial_state(), grid, method=cfg.run.method)
    v = traj.violations()
    if v["trace"] > TRACE_TOL or v["hermiticity"] > HERM_TOL or v["min_eigenvalue"] < -PSD_TOL:
        raise NumericalFailure(f"trajectory left the set of density matrices: {v}")
    return traj.to_csv()


def _state_summary(rho):
    off = float(np.max(np.abs(rho - np.diag(np.diag(rho)))))
    return {
        "rho": matrix_to_json(rho),
        "trace": fmt_float(np.trace(rho).real),
        "purity": fmt_float(np.trace(rho @ rho).real),
        "max_offdiagonal": fmt_float(off),
    }


def cmd_steady(cfg):
    l = _generator(cfg)
    states, deviations = ss.all_steady_states(l, rho0=cfg.initial_state(), tol=cfg.run.tol)
    out = {
        "methods": {name: _state_summary(rho) for name, rho in states.items()},
        "deviations": {k: fmt_float(v) for k, v in deviations.items()},
        "max_deviation": fmt_float(max(deviations.values())),
    }
    if isinstance(cfg.model, AtomModel):
        proj = ss.asymptotic_projector(l)
        out["one_relation_residual"] = fmt_float(proj.one_relation_residual())
        finals = [unvectorize(proj.projector[:, i]) for i in (0, 3)]
        out["initial_state_discrepancy"] = fmt_float(np.max(np.abs(finals[0] - finals[1])))
    return dumps(out)


def cmd_conjecture(cfg):
    m = cfg.model
    if isinstance(m, AtomModel):
        m = nlevel.NLevelModel.from_atom(m)
    report = nlevel.check_conjecture(m, t_horizon=cfg.run.t_horizon)
    return report.to_json()


def _random_model(rng):
    g = rng.uniform(0.05, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    e0 = rng.uniform(-1, 1)
    return AtomModel(e0, e0 + rng.uniform(0.05, 2), g, rng.uniform(0.05, 2), rng.uniform(0.05, 2))


def cmd_verify(cfg, draws=50):
    """Randomized cross-check battery; returns (text, all_passed)."""
    rng = np.random.default_rng(cfg.run.seed)
    worst = {"w_equivalence": 0.0, "spectrum_vs_eig": 0.0, "steady_three_ways": 0.0,
             "one_relation": 0.0, "special_case": 0.0}
    for _ in range(draws):
        m = _random_model(rng)
        l = lv.build_w(m)
        worst["w_equivalence"] = max(worst["w_equivalence"],
                                     float(np.max(np.abs(l.w - lv.build_w_tensor(m).w))))
        err = mc.match_distance(lv.spectrum(l).eigenvalues, np.linalg.eigvals(l.w))
        worst["spectrum_vs_eig"] = max(worst["spectrum_vs_eig"], err)
        _, dev = ss.all_steady_states(l)
        worst["steady_three_ways"] = max(worst["steady_three_ways"], max(dev.values()))
        worst["one_relation"] = max(worst["one_relation"],
                                    ss.asymptotic_projector(l).one_relation_residual())
        branch = "real" if rng.uniform() < 0.5 else "complex"
        sm = special_case.random_special_model(rng, branch)
        rep = special_case.cross_check_special(sm)
        worst["special_case"] = max(worst["special_case"], rep["eigenvalue_error"],
                                    rep["max_angle"], max(rep["residuals"]))
    limits = {"w_equivalence": 1e-14, "spectrum_vs_eig": 1e-8, "steady_three_ways": 1e-7,
              "one_relation": 1e-10, "special_case": 1e-8}
    checks = {k: {"max_error": fmt_float(worst[k]), "limit": limits[k],
                  "passed": bool(worst[k] <= limits[k])} for k in worst}
    passed = all(c["passed"] for c in checks.values())
    return dumps({"seed": cfg.run.seed, "draws": draws, "checks": checks, "passed": passed}), passed


COMMANDS = ("spectrum", "evolve", "steady", "conjecture", "verify")


def build_parser():
    parser = argparse.ArgumentParser(prog="lindblad-atom", description=__doc__.splitlines()[1])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--method", choices=("expm", "rk4"), help="evolve: propagation method")
    parser.add_argument("--tol", type=float, help="residual tolerance override")
    parser.add_argument("--t-max", type=float, dest="t_max", help="evolve: final time")
    parser.add_argument("--steps", type=int, help="evolve: number of time intervals")
    parser.add_argument("--seed", type=int, help="verify: RNG seed")
    parser.add_argument("--draws", type=int, default=50, help="verify: number of random models")
    return parser


def _load(args):
    if args.config is None:
        if args.command != "verify":
            raise ConfigError("config", "--config is required")
        cfg = RunConfig(AtomModel(0.0, 1.0, 0.5, 0.3, 0.1))
    else:
        try:
            cfg = RunConfig.load(args.config)
        except OSError as exc:
            raise ConfigError("config", str(exc)) from exc
    if args.steps is not None and args.steps < 0:
        raise ConfigError("steps", "must be non-negative")
    if args.t_max is not None and not args.t_max >= 0:
        raise ConfigError("t-max", "must be non-negative")
    return cfg.with_overrides(method=args.method, tol=args.tol, t_max=args.t_max,
                              steps=args.steps, seed=args.seed)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        passed = True
        if args.command == "verify":
            text, passed = cmd_verify(cfg, draws=args.draws)
        else:
            text = globals()[f"cmd_{args.command}"](cfg)
    except (DegenerateSpectrumError, ConvergenceError, NonUniqueSteadyStateError,
            NumericalFailure, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ModelError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
