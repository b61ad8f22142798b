"""
Run configuration: JSON text with explicit re/im fields for complex values.

Two-level model::

    {"model": {"e0": 0.0, "e1": 1.0, "gamma": {"re": 0.5, "im": 0.0},
               "mu": 0.3, "nu": 0.1},
     "run": {"t_max": 10.0, "steps": 100, "method": "expm"}}

N-level model::

    {"model": {"energies": [0, 1, 2.5], "family": "pairs",
               "transitions": [{"j": 0, "k": 1, "gamma": {"re": 0.4, "im": 0},
                                "mu": 0.3, "nu": 0.1}, ...]}}
"""
from dataclasses import dataclass, field, fields, replace
import json

import numpy as np

from .errors import ModelError
from .model import AtomModel, basis_state
from .nlevel import NLevelModel, Transition
from .serialization import dumps, matrix_from_json


def _exact(z):
    z = complex(z)
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


class ConfigError(ValueError):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RunSettings:
    t_max: float = 10.0
    steps: int = 100
    method: str = "expm"
    tol: float = 1e-9
    seed: int = 0
    t_horizon: float = None
    rho0: tuple = None  # nested tuples of complex, default |0><0|


@dataclass(frozen=True)
class RunConfig:
    model: object
    run: RunSettings = field(default_factory=RunSettings)

    @property
    def n(self):
        return 2 if isinstance(self.model, AtomModel) else self.model.n

    def initial_state(self):
        if self.run.rho0 is None:
            return basis_state(self.n, 0)
        return np.array(self.run.rho0, dtype=complex)

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, run=replace(self.run, **kw)) if kw else self

    # ------------------------------------------------------------------
    def to_dict(self):
        m = self.model
        if isinstance(m, AtomModel):
            model = {"e0": m.e0, "e1": m.e1, "gamma": _exact(m.gamma),
                     "mu": m.mu, "nu": m.nu}
        else:
            model = {
                "energies": list(m.energies),
                "family": m.family,
                "transitions": [{"j": t.j, "k": t.k, "gamma": _exact(t.gamma),
                                 "mu": t.mu, "nu": t.nu} for t in m.transitions],
            }
        run = {f.name: getattr(self.run, f.name) for f in fields(RunSettings)}
        if run["rho0"] is not None:
            run["rho0"] = [[_exact(z) for z in row] for row in run["rho0"]]
        return {"model": model, "run": run}

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or "model" not in d:
            raise ConfigError("model", "missing 'model' section")
        try:
            model = _parse_model(d["model"])
        except ModelError as exc:
            raise ConfigError(exc.field, str(exc).split(": ", 1)[1]) from exc
        run = _parse_run(d.get("run", {}) or {})
        return cls(model, run)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())


def _number(d, key, where, default=None):
    if key not in d:
        if default is not None:
            return default
        raise ConfigError(f"{where}{key}", "missing")
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}{key}", f"expected a number, got {value!r}")
    return float(value)


def _complex(d, key, where):
    value = d.get(key, {"re": 0.0, "im": 0.0})
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise ConfigError(f"{where}{key}", f"unknown fields {sorted(unknown)}")
        return complex(_number(value, "re", f"{where}{key}.", 0.0),
                       _number(value, "im", f"{where}{key}.", 0.0))
    raise ConfigError(f"{where}{key}", "expected an object with 're' and 'im'")


def _parse_model(d):
    if not isinstance(d, dict):
        raise ConfigError("model", "expected an object")
    if "energies" in d:
        trs = []
        for i, t in enumerate(d.get("transitions", [])):
            where = f"transitions[{i}]."
            trs.append(Transition(int(_number(t, "j", where)), int(_number(t, "k", where)),
                                  _complex(t, "gamma", where),
                                  _number(t, "mu", where), _number(t, "nu", where)))
        return NLevelModel(tuple(float(e) for e in d["energies"]), tuple(trs),
                           d.get("family", "pairs"))
    return AtomModel(_number(d, "e0", ""), _number(d, "e1", ""), _complex(d, "gamma", ""),
                     _number(d, "mu", ""), _number(d, "nu", ""))


def _parse_run(d):
    known = {f.name for f in fields(RunSettings)}
    unknown = set(d) - known
    if unknown:
        raise ConfigError("run", f"unknown fields {sorted(unknown)}")
    kw = dict(d)
    if kw.get("rho0") is not None:
        kw["rho0"] = tuple(tuple(row) for row in matrix_from_json(kw["rho0"]).tolist())
    if "steps" in kw:
        kw["steps"] = int(kw["steps"])
        if kw["steps"] < 0:
            raise ConfigError("run.steps", "must be non-negative")
    if "seed" in kw:
        kw["seed"] = int(kw["seed"])
    for name in ("t_max", "tol"):
        if name in kw and not float(kw[name]) >= 0:
            raise ConfigError(f"run.{name}", "must be non-negative")
    return RunSettings(**kw)
