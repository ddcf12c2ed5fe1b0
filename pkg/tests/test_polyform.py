import random
from fractions import Fraction

from orbcheck.polyform import PolyForm, Polynomial, PolyVectorField


def rand_poly(rng, d, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, 2) for _ in range(d))
        terms[mono] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(d, terms)


def rand_form(rng, d, degree):
    from itertools import combinations

    coeffs = {}
    idx = list(combinations(range(d), degree))
    for _ in range(rng.randint(1, 3)):
        coeffs[rng.choice(idx)] = rand_poly(rng, d)
    return PolyForm(d, degree, coeffs)


def test_polynomial_arithmetic_and_diff():
    x = Polynomial.variable(3, 0)
    y = Polynomial.variable(3, 1)
    p = x * x * y + 2 * y
    assert p.diff(0) == 2 * x * y
    assert p.diff(1) == x * x + 2
    assert p.evaluate([2, 3, 0]) == Fraction(18)
    assert p.evaluate([0.5, 1.0, 0.0]) == 0.25 + 2.0


def test_wedge_antisymmetry_and_square_zero():
    d = 4
    dx = [PolyForm.dx(d, k) for k in range(d)]
    assert dx[0].wedge(dx[1]) == dx[1].wedge(dx[0]).scale(-1)
    assert dx[2].wedge(dx[2]).is_zero()


def test_exterior_derivative_of_function():
    d = 2
    x = Polynomial.variable(d, 0)
    y = Polynomial.variable(d, 1)
    f = PolyForm.function(x * x * y)
    df = f.exterior_derivative()
    assert df.coeffs[(0,)] == 2 * x * y
    assert df.coeffs[(1,)] == x * x


def test_d_squared_zero_on_random_forms():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randint(2, 4)
        degree = rng.randint(0, d - 1)
        alpha = rand_form(rng, d, degree)
        assert alpha.exterior_derivative().exterior_derivative().is_zero()


def test_leibniz_rule_on_random_forms():
    rng = random.Random(5)
    for _ in range(100):
        d = rng.randint(2, 4)
        p = rng.randint(0, d - 1)
        q = rng.randint(0, d - 1 - 0)
        a = rand_form(rng, d, p)
        b = rand_form(rng, d, q)
        lhs = a.wedge(b).exterior_derivative()
        rhs = a.exterior_derivative().wedge(b) + a.wedge(
            b.exterior_derivative()
        ).scale((-1) ** p)
        assert lhs == rhs


def test_cartan_contraction_rule_on_random_forms():
    rng = random.Random(7)
    for _ in range(100):
        d = rng.randint(2, 4)
        p = rng.randint(1, d - 1)
        q = rng.randint(1, d - 1)
        a = rand_form(rng, d, p)
        b = rand_form(rng, d, q)
        field = PolyVectorField([rand_poly(rng, d) for _ in range(d)])
        lhs = a.wedge(b).contract(field)
        rhs = a.contract(field).wedge(b) + a.wedge(b.contract(field)).scale(
            (-1) ** p
        )
        assert lhs == rhs


def test_contraction_of_two_form_matches_matrix():
    d = 3
    omega = PolyForm(d, 2, {(0, 2): Polynomial.constant(d, 1)})
    mat = omega.evaluate_two_form([0.0, 0.0, 0.0])
    assert mat[0][2] == 1.0 and mat[2][0] == -1.0
    e0 = PolyVectorField.coordinate(d, 0)
    contracted = omega.contract(e0)
    assert contracted.coeffs.get((2,)) == Polynomial.constant(d, 1)
