"""Shared numerical tolerances.

Every public routine that needs a tolerance takes an optional ``tol``
argument; ``None`` means "use :data:`settings`".
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Numerics:
    residual_tol: float = 1e-9
    degeneracy_tol: float = 1e-8
    zero_tol: float = 1e-12


settings = Numerics()


def with_residual_tol(tol):
    """Return a copy of the global settings with a different residual tolerance."""
    return replace(settings, residual_tol=float(tol))


def resolve(tol):
    return settings.residual_tol if tol is None else float(tol)
