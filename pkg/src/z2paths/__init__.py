"""Hadamard/Toffoli circuits as Z2 polynomial systems, evaluated by exact root counting."""
from ._accel import active as active_kernel
from .circuit import CNOT, H, Toffoli, CircuitGrid, ElementaryGate, lower_to_grid, parse_circuit, render_grid, validate_grid
from .counting import Amplitude, SolutionCounts, amplitude, brute_force_count, count_paths, full_matrix
from .errors import Z2PathsError
from .gf2poly import Monomial, Polynomial, Variable, a, b, x
from .groebner import buchberger, count_points
from .pathsum import BoundSystem, PolynomialSystem, bind_system, export_system, extract_system
from .simulator import oracle_amplitude, oracle_matrix

__version__ = "0.1.0"
