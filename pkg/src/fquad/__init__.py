"""Quadratic spaces over F2, the cospan category of nondegenerate spaces, and
functors on it with their exact sequences and filtrations."""

from .f2core import F2Matrix, Subspace
from .quadspace import H0, H1, QuadSpace, classify, line, orthogonal_sum, parse_space
from .category import TqMorphism, compose_tq, identity, lift_linear
from .functors import parse_functor

__version__ = "0.1.0"
