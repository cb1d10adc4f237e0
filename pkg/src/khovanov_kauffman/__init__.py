"""Khovanov homology of links and Khovanov-Kauffman homology of embedded graphs."""

__version__ = "0.1.0"

from .cube import DEFAULT_CAP, build_complex, khovanov_dims
from .diagram import (
    LinkDiagram,
    add_r1_kink,
    add_r2_fingers,
    braid_closure,
    crossing_signs,
    disjoint_union,
    mirror,
    parse_pd,
)
from .homology import GradedDims, homology_dims, poincare_polynomial, rank_exact
from .kauffman import GraphDiagram, enumerate_choices, family, parse_graph
from .kkh import KKhResult, kkh
from .oracle import euler_characteristic, state_sum_jones
from .polynomial import LaurentPolynomial

__all__ = [
    "DEFAULT_CAP",
    "GradedDims",
    "GraphDiagram",
    "KKhResult",
    "LaurentPolynomial",
    "LinkDiagram",
    "add_r1_kink",
    "add_r2_fingers",
    "braid_closure",
    "build_complex",
    "crossing_signs",
    "disjoint_union",
    "enumerate_choices",
    "euler_characteristic",
    "family",
    "homology_dims",
    "khovanov_dims",
    "kkh",
    "mirror",
    "parse_graph",
    "parse_pd",
    "poincare_polynomial",
    "rank_exact",
    "state_sum_jones",
]
