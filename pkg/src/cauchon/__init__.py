"""H-invariant primes of quantum n x n matrices through Cauchon diagrams.

The package restores each quotient O_q(M_n)/J_w inside a quantum torus,
evaluates quantum minors there, and checks the resulting rank census against
the closed form (t! S(n+1, t+1))^2.
"""

from .counting import (
    cauchon_S,
    gamma_size,
    kaneko_sum_squares,
    poly_bernoulli_nn,
    rank_count,
    stirling2,
)
from .diagrams import (
    Diagram,
    build_w_r,
    build_w_r_gamma,
    enumerate_Gamma,
    enumerate_W,
    is_diagram,
    parse_diagram,
    surviving_diagrams,
)
from .qcoeff import QLaurent, parse_qlaurent
from .qminors import ClassificationRecord, MinorIndex, classify_rank, det_q, rank_census
from .qtorus import QuantumMatrix, TorusElement, TorusPresentation, presentation
from .restoration import delete_derivations, restore

__all__ = [
    "ClassificationRecord",
    "Diagram",
    "MinorIndex",
    "QLaurent",
    "QuantumMatrix",
    "TorusElement",
    "TorusPresentation",
    "build_w_r",
    "build_w_r_gamma",
    "cauchon_S",
    "classify_rank",
    "delete_derivations",
    "det_q",
    "enumerate_Gamma",
    "enumerate_W",
    "gamma_size",
    "is_diagram",
    "kaneko_sum_squares",
    "parse_diagram",
    "parse_qlaurent",
    "poly_bernoulli_nn",
    "presentation",
    "rank_census",
    "rank_count",
    "restore",
    "stirling2",
    "surviving_diagrams",
]

__version__ = "0.1.0"
