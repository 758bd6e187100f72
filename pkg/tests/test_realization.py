import numpy as np
import pytest

from heckecat.exceptions import NonExactDivision, RealizationError
from heckecat.realization import (
    GradedPoly,
    PolyMatrix,
    RatFunc,
    Realization,
    SamplePoints,
    monomials,
    q_nullspace,
    q_rank,
    slice_dim,
)
from heckecat.utils import make_rng


def poly(p, nvars, terms):
    return GradedPoly(p, nvars, terms)


def test_monomials_and_slices():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert slice_dim(2, 4) == 3
    assert slice_dim(2, 3) == 0
    assert slice_dim(1, -2) == 0


def test_arithmetic_reduces_mod_p():
    x = GradedPoly.var(5, 2, 0)
    y = GradedPoly.var(5, 2, 1)
    square = (x + y) ** 2
    assert square == poly(5, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert (x * 5).is_zero
    assert square.degree == 4
    assert square.is_homogeneous
    assert (square + 1).homogeneous_part(0) == 1


def test_exact_division():
    x = GradedPoly.var(3, 1, 0)
    f = x ** 3 - x
    assert f.exact_div(x) == x ** 2 - 1
    with pytest.raises(NonExactDivision):
        (x ** 2 + 1).exact_div(x)


def test_ratfunc_reduces():
    x = GradedPoly.var(5, 1, 0)
    r = RatFunc(x ** 2 - 1, x - 1)
    assert r == RatFunc(x + 1)
    assert r.den == 1
    assert RatFunc(x) / RatFunc(x) == 1


def test_ratfunc_lowest_terms_in_several_variables():
    x1 = GradedPoly.var(5, 2, 0)
    x2 = GradedPoly.var(5, 2, 1)
    r = RatFunc(x1 * x2 + x1, x2 + 1)
    assert r.num == x1
    assert r.den == 1
    assert r == RatFunc(x1)
    assert hash(r) == hash(RatFunc(x1))
    scaled = RatFunc(x1 * 2, x2 * 3 + x1 * 3)
    assert scaled.den == x1 + x2
    assert scaled == RatFunc(x1 * 4, x1 * 6 + x2 * 6)
    assert hash(scaled) == hash(RatFunc(x1 * 4, x1 * 6 + x2 * 6))
    assert (r - RatFunc(x1)).is_zero
    with pytest.raises(RealizationError):
        RatFunc(x1, x1 * 0)


def test_q_rank_and_nullspace():
    x = GradedPoly.var(5, 2, 0)
    y = GradedPoly.var(5, 2, 1)
    rows = [[x, y], [x * y, y * y]]
    assert q_rank(rows) == 1
    null = q_nullspace(rows)
    assert len(null) == 1
    c0, c1 = null[0]
    assert c0 * RatFunc(x) + c1 * RatFunc(x * y) == 0


def test_poly_matrix_products():
    x = GradedPoly.var(3, 1, 0)
    one = GradedPoly.const(3, 1, 1)
    zero = GradedPoly(3, 1)
    A = PolyMatrix.from_rows([[one, x], [zero, one]], 3, 1)
    B = PolyMatrix.from_rows([[one, -x], [zero, one]], 3, 1)
    assert A @ B == PolyMatrix.identity(2, 3, 1)
    assert A.constant_part().tolist() == [[1, 0], [0, 1]]


def test_a1_roots_and_deltas(a1_p3):
    R = Realization(a1_p3)
    x = R.variables[0]
    assert R.roots[1] == x
    # delta = x / 2
    assert R.deltas[1] == x * 2
    for s in a1_p3.generators:
        assert R.reflect(s, R.roots[s]) == -R.roots[s]
        assert R.demazure(s, R.deltas[s]) == 1


def test_affine_generator_acts_like_finite_one(a1_p3):
    R = Realization(a1_p3)
    f = R.variables[0] ** 3 + 1
    assert R.reflect(0, f) == R.reflect(1, f)


def test_invariant_split(a2ad_p3):
    R = Realization(a2ad_p3)
    rng = make_rng(7)
    for s in a2ad_p3.generators:
        f = R.random_poly(rng, 6)
        a, b = R.invariant_split(s, f)
        assert a + b * R.deltas[s] == f
        assert R.is_invariant(s, a) and R.is_invariant(s, b)
        assert R.reflect(s, R.reflect(s, f)) == f


def test_sample_points_are_w_stable(a2ad_p3):
    R = Realization(a2ad_p3)
    pts = SamplePoints(R, count=1, seed=3, min_order=100)
    assert len(pts) == len(a2ad_p3.W)
    f = R.variables[0] + R.variables[1] * 2
    values = f.evaluate(pts.array)
    for w in a2ad_p3.W:
        moved = R.act(w, f).evaluate(pts.array)
        assert all(moved[idx] == values[pts.image(w, idx)] for idx in range(len(pts)))


def test_sample_points_avoid_root_hyperplanes(a1_p3):
    R = Realization(a1_p3)
    pts = SamplePoints(R, count=2, seed=0, min_order=100)
    assert pts.GF.order >= 100
    assert not np.any(R.roots[1].evaluate(pts.array) == 0)


def test_demazure_small_cases(a1_p5):
    R = Realization(a1_p5)
    h = R.roots[1]
    assert R.demazure(1, h) == 2
    assert R.demazure(1, R.one()).is_zero
    assert R.act(a1_p5.identity, h ** 3) == h ** 3


@pytest.mark.parametrize('s', [0, 1, 2])
def test_demazure_squares_to_zero(a2_p5, s):
    R = Realization(a2_p5)
    rng = make_rng(11 + s)
    for _ in range(20):
        f = R.random_poly(rng, 8)
        assert R.demazure(s, R.demazure(s, f)).is_zero
        assert R.is_invariant(s, R.demazure(s, f))


@pytest.mark.parametrize('s', [1, 2, 0])
def test_twisted_leibniz_rule(a2_p5, s):
    R = Realization(a2_p5)
    rng = make_rng(5 + s)
    a1, a2 = R.roots[1], R.roots[2]
    assert R.demazure(s, a1 * a2) == R.demazure(s, a1) * a2 + R.reflect(s, a1) * R.demazure(s, a2)
    for _ in range(50):
        f, g = R.random_poly(rng, 4), R.random_poly(rng, 4)
        expected = R.demazure(s, f) * g + R.reflect(s, f) * R.demazure(s, g)
        assert R.demazure(s, f * g) == expected


def test_braid_relations_on_polynomials(a2_p5):
    R = Realization(a2_p5)
    rng = make_rng(3)

    def chain(op, word, f):
        for s in reversed(word):
            f = op(s, f)
        return f

    for _ in range(20):
        f = R.random_poly(rng, 8)
        assert chain(R.reflect, [1, 2, 1], f) == chain(R.reflect, [2, 1, 2], f)
        assert chain(R.reflect, [1, 0, 1], f) == chain(R.reflect, [0, 1, 0], f)
        assert chain(R.demazure, [1, 2, 1], f) == chain(R.demazure, [2, 1, 2], f)
