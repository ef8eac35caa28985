"""Exact rational LP solving with verifiable optimality certificates."""

from .certify import (
    Certificate,
    Checks,
    Infeasible,
    Optimal,
    check_certificate,
    dual_bound,
    find_feasible_point,
    nondegenerate_vertex_test,
    optimal_working_set_at,
    solve,
    transfer_check,
    verify,
)
from .errors import LPError
from .exact_arith import LexValue, format_rational, parse_rational
from .farkas import Combination, Separation, farkas
from .linalg import Matrix
from .model import MixedLP, make_lp, parse_lp
from .perturb import Unbounded, perturb, solve_perturbed, unperturb
from .vertex import descend_to_vertex, enumerate_vertices

__all__ = [
    "Certificate",
    "Checks",
    "Infeasible",
    "Optimal",
    "check_certificate",
    "dual_bound",
    "find_feasible_point",
    "nondegenerate_vertex_test",
    "optimal_working_set_at",
    "solve",
    "transfer_check",
    "verify",
    "LPError",
    "LexValue",
    "format_rational",
    "parse_rational",
    "Combination",
    "Separation",
    "farkas",
    "Matrix",
    "MixedLP",
    "make_lp",
    "parse_lp",
    "Unbounded",
    "perturb",
    "solve_perturbed",
    "unperturb",
    "descend_to_vertex",
    "enumerate_vertices",
]

__version__ = "0.1.0"
