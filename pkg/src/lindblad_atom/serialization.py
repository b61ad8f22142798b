"""JSON helpers with explicit re/im fields and fixed 12-digit precision.

Rounding every float to 12 significant digits makes output stable across
runs and makes serialize -> parse -> serialize byte-identical.
"""
import json

import numpy as np

DIGITS = 12


def fmt_float(x):
    x = float(x)
    if not np.isfinite(x):
        return x
    return float(f"{x:.{DIGITS - 1}e}") + 0.0


def complex_to_json(z):
    z = complex(z)
    return {"re": fmt_float(z.real), "im": fmt_float(z.imag)}


def complex_from_json(d):
    if isinstance(d, (int, float)):
        return complex(d)
    return complex(float(d["re"]), float(d.get("im", 0.0)))


def matrix_to_json(a):
    return [[complex_to_json(z) for z in row] for row in np.asarray(a)]


def matrix_from_json(rows):
    return np.array([[complex_from_json(z) for z in row] for row in rows], dtype=complex)


def vector_to_json(v):
    return [complex_to_json(z) for z in np.asarray(v)]


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"
