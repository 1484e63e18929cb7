import random
from itertools import product

import pytest
from hypothesis import given, settings

from circuitgen import FIXTURE_TEXT, circuits, enumerate_roots, random_circuit, random_path_poly
from z2paths import _accel
from z2paths.circuit import CircuitGrid, H, lower_to_grid, parse_circuit
from z2paths.counting import (
    Amplitude,
    SolutionCounts,
    amplitude,
    amplitude_value,
    bitstrings,
    brute_force_count,
    count_paths,
    format_amplitude,
    full_matrix,
)
from z2paths.errors import ResourceCapError, Z2PathsError
from z2paths.gf2poly import parse_polynomial
from z2paths.pathsum import BoundSystem, bind_system, extract_system
from z2paths.simulator import oracle_matrix

P = parse_polynomial
FIXTURE = parse_circuit(FIXTURE_TEXT)


@pytest.fixture(params=sorted(_accel.KERNELS))
def kernel(request):
    return request.param


class TestAmplitudeType:
    @pytest.mark.parametrize("m, h, nm, nh", [
        (2, 4, 1, 2),
        (0, 7, 0, 0),
        (4, 4, 1, 0),
        (4, 3, 2, 1),
        (-8, 6, -1, 0),
        (3, 5, 3, 5),
        (2, 1, 2, 1),
    ])
    def test_normalization(self, m, h, nm, nh):
        amp = Amplitude(m, h)
        assert (amp.m, amp.h) == (nm, nh)

    def test_equality_is_value_equality(self):
        assert Amplitude(2, 4) == Amplitude(1, 2) == Amplitude(4, 6)
        assert Amplitude(1, 1) != Amplitude(1, 2)

    def test_values(self):
        assert amplitude_value(Amplitude(1, 2)) == 0.5
        assert amplitude_value(Amplitude(0, 0)) == 0.0
        assert amplitude_value(Amplitude(1, 1)) == pytest.approx(0.7071067811865476, abs=1e-15)
        assert amplitude_value(Amplitude(-3, 3)) == pytest.approx(-3 / 8 ** 0.5, abs=1e-15)

    def test_format(self):
        assert format_amplitude(Amplitude(2, 4)) == "1/sqrt(2^2) = 0.5"
        assert format_amplitude(Amplitude(2, 4), raw=(2, 4)) == "2/sqrt(2^4) = 1/sqrt(2^2) = 0.5"


class TestBruteForce:
    def test_trivial(self, kernel):
        assert brute_force_count([P("x1 + 1")], 1, kernel=kernel) == 1
        assert brute_force_count([P("x1 + x2")], 2, kernel=kernel) == 2

    def test_fixture_f0(self, kernel):
        polys = [P("x2*x4 + x3"), P("x2"), P("x4"), P("x1*x3 + x4 + x1*x2*x4")]
        assert enumerate_roots(polys, 4) == 2
        assert brute_force_count(polys, 4, kernel=kernel) == 2

    def test_empty_system(self, kernel):
        assert brute_force_count([], 5, kernel=kernel) == 32

    def test_exponents_are_harmless(self, kernel):
        assert brute_force_count([P("x1^2 + x1")], 1, kernel=kernel) == 2

    def test_cap(self):
        with pytest.raises(ResourceCapError, match="groebner"):
            brute_force_count([], 25)
        assert brute_force_count([], 3, h_cap=3) == 8

    def test_rejects_non_path_variables(self):
        with pytest.raises(Z2PathsError):
            brute_force_count([P("a1 + x1")], 1)

    def test_rejects_index_beyond_h(self):
        with pytest.raises(Z2PathsError):
            brute_force_count([P("x3")], 2)

    def test_random_against_enumeration(self, kernel):
        rng = random.Random(7)
        for _ in range(200):
            h = rng.randint(0, 6)
            polys = [random_path_poly(rng, h) for _ in range(rng.randint(0, 4))]
            assert brute_force_count(polys, h, kernel=kernel) == enumerate_roots(polys, h)

    @pytest.mark.parametrize("workers", [2, 3, 8])
    def test_partitioning_does_not_change_result(self, kernel, workers):
        rng = random.Random(workers)
        h = 14
        polys = [random_path_poly(rng, h, max_terms=6) for _ in range(2)]
        assert brute_force_count(polys, h, kernel=kernel, workers=workers) == \
            brute_force_count(polys, h, kernel=kernel)


class TestCountPaths:
    def test_fixture_001(self):
        bound = bind_system(extract_system(FIXTURE), "001", "000")
        assert count_paths(bound) == SolutionCounts(2, 0)
        assert count_paths(bound, "groebner") == SolutionCounts(2, 0)

    def test_fixture_111(self):
        bound = bind_system(extract_system(FIXTURE), "111", "000")
        assert count_paths(bound) == SolutionCounts(1, 1)
        assert count_paths(bound, "groebner") == SolutionCounts(1, 1)

    def test_empty_circuit(self):
        bound = bind_system(extract_system(CircuitGrid.empty(1)), "0", "0")
        assert count_paths(bound) == SolutionCounts(1, 0)

    def test_unknown_backend(self):
        bound = bind_system(extract_system(CircuitGrid.empty(1)), "0", "0")
        with pytest.raises(ValueError):
            count_paths(bound, "sat")


class TestAmplitude:
    def test_fixture_half(self):
        amp = amplitude(FIXTURE, "001", "000")
        assert (amp.m, amp.h) == (1, 2)
        assert amp.value == 0.5

    def test_fixture_zero(self):
        assert amplitude(FIXTURE, "111", "000") == Amplitude(0)

    def test_identity(self):
        empty = CircuitGrid.empty(2)
        for a_bits, b_bits in product(bitstrings(2), repeat=2):
            assert amplitude(empty, a_bits, b_bits) == Amplitude(int(a_bits == b_bits))


class TestFullMatrix:
    def test_identity(self):
        m = full_matrix(CircuitGrid.empty(2))
        assert m == [[Amplitude(int(i == j)) for j in range(4)] for i in range(4)]

    def test_hadamard(self):
        m = full_matrix(lower_to_grid([H(1)], 1))
        assert m == [[Amplitude(1, 1), Amplitude(1, 1)], [Amplitude(1, 1), Amplitude(-1, 1)]]

    def test_fixture_matches_oracle(self):
        assert full_matrix(FIXTURE) == oracle_matrix(list(FIXTURE.source), 3)

    def test_wire_cap(self):
        with pytest.raises(ResourceCapError):
            full_matrix(CircuitGrid.empty(7))

    def test_bitstring_order(self):
        assert bitstrings(2) == ["00", "01", "10", "11"]


@settings(max_examples=40, deadline=None)
@given(circuits())
def test_unitarity_and_completeness(circ):
    n, gates = circ
    sys = extract_system(lower_to_grid(gates, n))
    for a_bits in bitstrings(n):
        diff2 = total = 0
        for b_bits in bitstrings(n):
            c = count_paths(bind_system(sys, a_bits, b_bits))
            diff2 += c.difference ** 2
            total += c.total
        assert diff2 == total == 2 ** sys.hadamards


@settings(max_examples=40, deadline=None)
@given(circuits())
def test_full_matrix_matches_oracle(circ):
    n, gates = circ
    assert full_matrix(lower_to_grid(gates, n)) == oracle_matrix(gates, n)


def test_backend_agreement_up_to_h12():
    rng = random.Random(99)
    for _ in range(40):
        h = rng.randint(0, 12)
        constraints = tuple(random_path_poly(rng, h, max_terms=4) for _ in range(rng.randint(0, 3)))
        phase = random_path_poly(rng, h, max_terms=5)
        bound = BoundSystem(constraints, phase, h)
        assert count_paths(bound, "brute") == count_paths(bound, "groebner")


def test_python_kernel_end_to_end():
    before = _accel.active()
    rng = random.Random(5)
    try:
        _accel.use("python")
        for _ in range(10):
            n, gates = random_circuit(rng)
            assert full_matrix(lower_to_grid(gates, n)) == oracle_matrix(gates, n)
    finally:
        _accel.use(before)
