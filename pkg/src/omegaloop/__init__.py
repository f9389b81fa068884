"""Combinatorial loop spaces of finite simplicial complexes."""

__version__ = "0.1.0"

from .complex import SimplicialComplex, SimplicialMap, bundled, load_complex, read_complex
from .loopspace import build_skeleton, omega_is_simplex
