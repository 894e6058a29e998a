import itertools

import pytest
from hypothesis import given, strategies as st

from akproj.catalog import j2_star
from akproj.graded import (AlgebraMap, AlgebraMismatch, GeneratorIdeal, GradedAlgebra, InhomogeneousError,
                           NoSolution, apply_map, basis_of_degree, poly_mul, reduce_mod_ideal,
                           solve_in_subalgebra, solve_linear_mod_p)
from akproj.steenrod import RootModel, p1_generator_roots

PRIMES = [3, 5, 7, 13]


def algebra(p):
    return GradedAlgebra([("a", 4), ("b", 6), ("c", 8)], p, "test")


@st.composite
def polys(draw, p):
    A = algebra(p)
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(0, p - 1), max_size=5))
    return A.poly(terms)


@st.composite
def triples(draw):
    p = draw(st.sampled_from(PRIMES))
    return draw(polys(p)), draw(polys(p)), draw(polys(p))


@given(triples())
def test_ring_axioms(t):
    x, y, z = t
    assert poly_mul(poly_mul(x, y), z) == poly_mul(x, poly_mul(y, z))
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x - x == x.algebra.zero()


def test_parse_print_roundtrip():
    A = algebra(7)
    P = A.parse("3*c*a + 2*b^2 - a^3 + 1/2*a*c")
    assert A.parse(str(P)) == P
    assert P.coefficient(A.parse_monomial("a*c")) == (3 + 4) % 7
    assert P.homogeneous_degree() == 12


def test_term_order_is_deterministic():
    A = algebra(5)
    P = A.parse("a^3 + c*a + b^2")
    assert str(P) == str(A.parse("b^2 + a^3 + a*c"))


def test_inhomogeneous_rejected():
    A = algebra(5)
    with pytest.raises(InhomogeneousError):
        A.parse("a + b").require_homogeneous()


def test_mismatched_algebras():
    with pytest.raises(AlgebraMismatch):
        algebra(5).gen("a") + algebra(7).gen("a")


def _partition_count(d, degs):
    return sum(1 for e in itertools.product(*[range(d // g + 1) for g in degs])
               if sum(x * g for x, g in zip(e, degs)) == d)


@pytest.mark.parametrize("d", range(0, 61, 2))
def test_basis_matches_brute_force(d):
    A = GradedAlgebra([("x4", 4), ("x12", 12), ("x16", 16), ("x24", 24), ("x28", 28), ("x36", 36)], 7)
    B = basis_of_degree(A, d)
    assert len(B) == len(set(B)) == _partition_count(d, A.degrees)
    assert all(A.degree(m) == d for m in B)


def test_ideal_reduction_kills_exactly_multiples():
    A = algebra(5)
    I = GeneratorIdeal(A, {"a"})
    P = A.parse("a*c + b^2 + a^3")
    assert reduce_mod_ideal(P, I) == A.parse("b^2")


def _random_map(p):
    A = algebra(p)
    T = GradedAlgebra([("u", 2), ("v", 4)], p)
    return AlgebraMap(A, T, {"a": T.parse("u^2 + v"), "b": T.parse("2*u*v + u^3"), "c": T.parse("v^2")})


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(polys(p), polys(p))))
def test_map_is_multiplicative(pq):
    P, Q = pq
    f = _random_map(P.algebra.p)
    assert apply_map(f, P * Q) == apply_map(f, P) * apply_map(f, Q)
    assert f(P + Q) == f(P) + f(Q)


def test_linear_solver():
    cols = [{0: 1, 1: 2}, {0: 1, 1: 1}]
    part, kern = solve_linear_mod_p(cols, {0: 3, 1: 4}, [0, 1], 5)
    assert kern == []
    assert [(part[0] + part[1]) % 5, (2 * part[0] + part[1]) % 5] == [3, 4]
    assert solve_linear_mod_p([{0: 1}, {0: 2}], {0: 1, 1: 1}, [0, 1], 5) is None


def test_solve_p1_basis_element():
    f = j2_star(13)
    sol = solve_in_subalgebra(f.target.gen("p1"), f)
    assert sol.to_json() == [{"monomial": "x4", "coefficient": 1, "status": "unique"}]


def test_degree_28_needs_quotient_at_13():
    f = j2_star(13)
    target = p1_generator_roots(RootModel("pontrjagin", 7), "p1", 13)
    with pytest.raises(NoSolution):
        solve_in_subalgebra(target, f)
    sol = solve_in_subalgebra(target, f, quotient=GeneratorIdeal(f.target, {"p1"}))
    assert all(sol.is_unique(m) for m in sol.basis_monomials if not m[0])


@pytest.mark.parametrize("p", [7, 11, 13, 17])
def test_solution_round_trip(p):
    # degrees 16..36: every BE8 generator involved has a known image
    f = j2_star(p)
    Q = GeneratorIdeal(f.target, {"p1"})
    target = p1_generator_roots(RootModel("pontrjagin", 7), "p1", p)
    sol = solve_in_subalgebra(target, f, quotient=Q)
    vectors = [sol.particular] + [[(a + b) % p for a, b in zip(sol.particular, k)] for k in sol.kernel_basis]
    for vec in vectors:
        assert reduce_mod_ideal(f(sol.polynomial(vec)), Q) == reduce_mod_ideal(target, Q)


def test_anchor_row_pins_x36_x24():
    f = j2_star(29)
    Q = GeneratorIdeal(f.target, {"p1"})
    target = p1_generator_roots(RootModel("pontrjagin", 7), "p1", 29)
    anchored = solve_in_subalgebra(target, f, quotient=Q, anchor=f.target.parse_monomial("p7*p6*p2"))
    free = solve_in_subalgebra(target, f, quotient=Q)
    assert anchored.is_unique("x36*x24")
    assert anchored.status("x36*x24") == free.status("x36*x24")
    assert not anchored.is_unique("x60")
