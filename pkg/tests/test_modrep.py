import numpy as np
import pytest

from heckecat.exceptions import CentralPointError, PreconditionError
from heckecat.linalg import field
from heckecat.modrep import (
    CentralPoint,
    UChiAlgebra,
    borels_agree,
    build_baby_verma,
    casimir,
    casimir_scalar,
    centralizer_dim,
    dot_reflect,
    hc_center_check,
    hc_center_separation,
    in_t_circ,
    is_simple,
    sample_points,
    sample_xis,
    simple_module,
    splitting_fiber_rank,
    splitting_triple,
    translation_fiber,
    verify_matrix_algebra,
    wall_crossing_fiber,
)
from heckecat.utils import make_rng


def semisimple(p):
    # p + 2 encodes x + 2, which lies outside F_p
    return CentralPoint.standard(p, 2, p + 2)


@pytest.mark.parametrize('p', [3, 5, 7])
def test_baby_verma_has_dimension_p(p):
    pt = semisimple(p)
    assert pt.is_compatible()
    for borel in ('+', '-'):
        module = build_baby_verma(pt, borel)
        assert module.dim == p
        assert module.check()


def test_baby_verma_weights():
    module = build_baby_verma(CentralPoint.standard(5, 1, 1))
    assert module.weights() == [1, 4, 2, 0, 3]
    assert module.to_json()['dim'] == 5


def test_kostant_point_is_compatible():
    pt = CentralPoint.kostant(5, 2, 3)
    assert pt.eta[0] == 0 and pt.eta[2] == 1
    assert pt.is_compatible()
    assert build_baby_verma(pt).dim == 5


def test_baby_verma_rejects_mismatched_points():
    GF = field(5)
    with pytest.raises(CentralPointError):
        build_baby_verma(CentralPoint.from_values(GF, (0, 1, 0), 0))
    with pytest.raises(CentralPointError):
        build_baby_verma(CentralPoint.kostant(5, 1, 0), '-')
    with pytest.raises(PreconditionError):
        build_baby_verma(CentralPoint.standard(5, 1, 0), 'x')


def test_scalar_helpers():
    GF = field(5, 2)
    xi = GF(7)
    assert casimir_scalar(dot_reflect(xi)) == casimir_scalar(xi)
    assert in_t_circ(xi)
    assert in_t_circ(-GF(1))
    assert not in_t_circ(GF(2))


def test_casimir_acts_by_scalar_on_simples():
    GF = field(5)
    for n in range(5):
        C = casimir(simple_module(GF, n))
        assert np.array_equal(C, casimir_scalar(GF(n)) * GF.Identity(n + 1))
    with pytest.raises(PreconditionError):
        simple_module(GF, 5)


def test_centralizer_dimension():
    assert centralizer_dim(semisimple(5)) == 1
    assert centralizer_dim(CentralPoint.kostant(5, 1, 0)) == 1
    assert centralizer_dim(CentralPoint.standard(5, 1, 0)) == 3


def test_reduced_algebra_relations():
    algebra = UChiAlgebra(CentralPoint.kostant(3, 1, 1))
    assert algebra.dim == 27
    assert algebra.check_relations()


def test_matrix_algebra_at_kostant_point():
    report = verify_matrix_algebra(CentralPoint.kostant(3, 1, 0))
    assert report['dim_reduced_algebra'] == 9
    assert report['image_rank'] == 9
    assert report['bijective']


def test_matrix_algebra_needs_regular_point():
    with pytest.raises(PreconditionError):
        verify_matrix_algebra(CentralPoint.standard(3, 1, 0))


def test_borels_agree():
    assert borels_agree(semisimple(5))


@pytest.mark.parametrize('pt', [semisimple(5), CentralPoint.kostant(5, 2, 7)])
def test_harish_chandra_center(pt):
    report = hc_center_check(pt)
    assert report['passed']
    assert len(report['orbit']) == 2


@pytest.mark.parametrize('lam', [-1, 0, 1])
def test_translation_fiber(lam):
    report = translation_fiber(lam, semisimple(5))
    assert report['dim'] == 5
    assert report['hom_to_verma'] == 1
    assert report['bimodule_dim'] == 25
    assert report['passed']


def test_translation_fiber_needs_t_circ():
    with pytest.raises(CentralPointError):
        translation_fiber(0, CentralPoint.standard(5, 1, 1))


@pytest.mark.parametrize('w,sub_is', [('e', 'w.lambda'), ('s', 'ws.lambda')])
def test_wall_crossing(w, sub_is):
    report = wall_crossing_fiber(w, 1, 5)
    assert report['dim'] == 10
    assert report['sub_dim'] == report['quotient_dim'] == 5
    assert report['sub_is'] == sub_is
    assert report['sub_weight'] == 0
    assert report['quotient_weight'] == 3
    assert report['passed']


def test_wall_crossing_preconditions():
    with pytest.raises(PreconditionError):
        wall_crossing_fiber('x', 1, 5)
    with pytest.raises(PreconditionError):
        wall_crossing_fiber('e', 1, 5, mu=0)
    with pytest.raises(PreconditionError):
        wall_crossing_fiber('e', 0, 5)


@pytest.mark.parametrize('p', [3, 5])
def test_splitting_fiber(p):
    pt = semisimple(p)
    assert splitting_fiber_rank(0, 0, splitting_triple(0, 0, pt)) == p * p


@pytest.mark.parametrize('p', [3, 5])
def test_splitting_fiber_on_random_triples(p):
    rng = make_rng(p)
    for pt in sample_points(p, 2, rng, 10):
        lam, mu = (int(v) for v in rng.integers(-1, p - 1, 2))
        top, mid, low = splitting_triple(lam, mu, pt)
        assert mid == pt
        assert top.eta == low.eta == pt.eta
        assert splitting_fiber_rank(lam, mu, (top, mid, low)) == p * p


def test_splitting_fiber_preconditions():
    pt = semisimple(5)
    with pytest.raises(PreconditionError):
        splitting_fiber_rank(4, 0, splitting_triple(4, 0, pt))
    top, mid, low = splitting_triple(0, 1, pt)
    with pytest.raises(PreconditionError):
        splitting_fiber_rank(0, 0, (top, mid, low))


@pytest.mark.parametrize('p', [3, pytest.param(5, marks=pytest.mark.slow)])
@pytest.mark.parametrize('degree', [1, 2, 3, 4])
def test_matrix_algebra_on_regular_points(p, degree):
    rng = make_rng(10 * p + degree)
    kind = 'kostant' if degree == 1 else 'semisimple'
    for pt in sample_points(p, degree, rng, 10, kind):
        report = verify_matrix_algebra(pt)
        assert report['bijective']
        assert report['simple']


def test_sampled_xis_are_generic():
    GF = field(5, 2)
    for xi in sample_xis(5, 2, make_rng(1), 30):
        assert in_t_circ(xi)
        assert xi != -GF(1)
        assert xi ** 5 != xi
    with pytest.raises(PreconditionError):
        sample_xis(5, 1, make_rng(1), 3)
    with pytest.raises(PreconditionError):
        sample_points(5, 2, make_rng(1), 3, kind='nilpotent')


def test_harish_chandra_center_separates_orbits():
    report = hc_center_separation(5, 2, make_rng(4), pairs=20)
    assert report['pairs'] == 20
    assert not report['failures']
    assert report['passed']
    assert 0 < report['linked_pairs'] < 20


def test_regular_semisimple_baby_verma_is_simple():
    for pt in (semisimple(5), CentralPoint.standard(3, 2, 4)):
        assert is_simple(build_baby_verma(pt).rho)
    # xi = 3 in F_5 at eta = 0: Z(3) has L(3) as a proper quotient
    assert not is_simple(build_baby_verma(CentralPoint.standard(5, 1, 3)).rho)
