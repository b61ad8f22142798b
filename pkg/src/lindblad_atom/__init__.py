"""Exact and perturbative solutions of the two-level atom master equation."""
from .errors import (ConvergenceError, DegenerateEigenvectorError, DegenerateSpectrumError,
                     ModelError, NonUniqueSteadyStateError, NotAnEigenvalueError)
from .liouvillian import Liouvillian, SpectrumReport, build_w, build_w_tensor, dissipator, spectrum, wt_eigenbasis
from .model import AtomModel, hamiltonian, hamiltonian_spectrum, ladder_operators, unvectorize, vectorize
from .nlevel import ConjectureReport, NLevelModel, Transition, build_nlevel_w, check_conjecture, ladder_model
from .steady import AsymptoticProjector, Trajectory, asymptotic_projector, evolve, steady_state

__version__ = "0.1.0"
