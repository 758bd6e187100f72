import pytest

from heckecat.config import EngineConfig
from heckecat.exceptions import NotAffineError, PreconditionError
from heckecat.hecke import (
    V,
    V_INV,
    HeckeAlgebra,
    LaurentInt,
    antispherical_pkl,
    compare_with_oracle,
    p_canonical,
    sl2_engine_tilting,
    sl2_tilting_oracle,
    tilting_multiplicities,
    weyl_weights,
)
from heckecat.sbim import SoergelCategory
from heckecat.weyl import root_datum


@pytest.fixture(scope='module')
def algebra(a1_p5):
    return HeckeAlgebra(a1_p5)


def test_laurent_arithmetic():
    f = V + V_INV
    assert f.is_self_dual
    assert (f * f).coeffs == {2: 1, 0: 2, -2: 1}
    assert V.in_positive_part()
    assert not LaurentInt.const(1).in_positive_part()
    assert (V - 1).is_nonnegative() is False
    assert f.at_one() == 2
    assert str(LaurentInt()) == '0'


def test_quadratic_relation(algebra):
    for s in algebra.datum.generators:
        H = algebra.generator(s)
        assert H * H == H.scale(V_INV - V) + algebra.one()


def test_bar_of_generator(algebra):
    H = algebra.generator(1)
    assert algebra.bar(H) == H + algebra.one().scale(V - V_INV)
    b = algebra.bs_character(1)
    assert algebra.bar(b) == b


def test_kl_basis_of_length_two(algebra):
    datum = algebra.datum
    w = datum.from_word([1, 0])
    b = algebra.kl_basis(w)
    assert b[w] == 1
    assert b[datum.simple_reflection(1)] == V
    assert b[datum.simple_reflection(0)] == V
    assert b[datum.identity] == V * V
    assert algebra.bar(b) == b


def test_kl_basis_is_self_dual_up_to_length_four(algebra):
    for w in algebra.datum.elements_up_to(4):
        b = algebra.kl_basis(w)
        assert algebra.bar(b) == b
        assert all(c.in_positive_part() for y, c in b.items() if y != w)


def test_kl_expansion_of_product(algebra):
    datum = algebra.datum
    prod = algebra.bs_character(1) * algebra.bs_character(1)
    expansion = algebra.kl_expansion(prod)
    assert expansion == {datum.simple_reflection(1): V + V_INV}


def test_length_zero_element_acts_by_conjugation(algebra):
    datum = algebra.datum
    omega = next(x for x in datum.length_zero_elements if not x.is_identity)
    left = algebra.standard(omega) * algebra.generator(1)
    right = algebra.generator(0) * algebra.standard(omega)
    assert left == right


def test_epsilon_is_graded_rank(a1_category):
    algebra = a1_category.hecke
    assert algebra.epsilon(algebra.bs_character(1)) == V + V_INV
    obj = a1_category.bott_samelson([1, 0, 1])
    assert algebra.epsilon(obj.character) == obj.grk


def test_p_canonical_equals_kl_in_low_length(a1_category):
    datum = a1_category.datum
    for word in ([1], [0], [1, 0], [0, 1]):
        w = datum.from_word(word)
        assert p_canonical(a1_category, w) == a1_category.hecke.kl_basis(w)


def test_p_canonical_needs_affine_element(a1_category):
    datum = a1_category.datum
    omega = next(x for x in datum.length_zero_elements if not x.is_identity)
    with pytest.raises(NotAffineError):
        p_canonical(a1_category, omega)


def test_antispherical_image_of_b_s0(a1_category):
    datum = a1_category.datum
    s0 = datum.simple_reflection(0)
    assert antispherical_pkl(a1_category, s0, s0) == 1
    assert antispherical_pkl(a1_category, datum.identity, s0) == V
    assert tilting_multiplicities(a1_category, s0) == {s0: 1, datum.identity: 1}


def test_antispherical_needs_coset_representatives(a1_category):
    s1 = a1_category.datum.simple_reflection(1)
    with pytest.raises(PreconditionError):
        tilting_multiplicities(a1_category, s1)


@pytest.mark.parametrize('n,p,expected', [
    (2, 3, {2: 1}),
    (4, 3, {4: 1, 0: 1}),
    (10, 3, {10: 1, 6: 1}),
    (12, 3, {12: 1, 10: 1, 6: 1, 4: 1}),
    (5, 5, {5: 1, 3: 1}),
    (8, 5, {8: 1, 0: 1}),
    (9, 5, {9: 1}),
    (14, 5, {14: 1}),
])
def test_donkin_oracle(n, p, expected):
    assert sl2_tilting_oracle(n, p) == expected


def test_oracle_rejects_bad_input():
    with pytest.raises(PreconditionError):
        sl2_tilting_oracle(-1, 5)
    with pytest.raises(PreconditionError):
        sl2_tilting_oracle(3, 2)


def test_weyl_weights():
    assert weyl_weights({2: 1, 0: 1}) == {2: 1, 0: 2, -2: 1}


def test_engine_matches_oracle_p5(a1_p5_category):
    engine = sl2_engine_tilting(a1_p5_category, 12)
    assert sorted(engine) == list(range(13))
    for n, chars in engine.items():
        assert chars == sl2_tilting_oracle(n, 5), n


def test_compare_with_oracle_p5(a1_p5_category):
    assert compare_with_oracle(a1_p5_category, 2) == []


@pytest.mark.slow
@pytest.mark.parametrize('prime', [5, 3])
def test_oracle_agrees_up_to_length_six(prime):
    datum = root_datum('A1', prime)
    category = SoergelCategory(datum, EngineConfig(p=prime, samples=1, max_len=6))
    assert compare_with_oracle(category, 6) == []
    anti = datum.antispherical_elements(6)
    assert [datum.length(w) for w in anti] == list(range(7))


@pytest.mark.slow
def test_engine_tilting_p3(a1_category):
    engine = sl2_engine_tilting(a1_category, 12)
    assert engine[10] == {10: 1, 6: 1}
    assert engine[12] == sl2_tilting_oracle(12, 3)


@pytest.mark.slow
def test_p_canonical_equals_kl_on_finite_a2(a2_category):
    datum = a2_category.datum
    assert len(datum.W) == 6
    for w in datum.W:
        x = datum.finite(w)
        assert p_canonical(a2_category, x) == a2_category.hecke.kl_basis(x), datum.name(x)


def test_rank_two_has_no_sl2_oracle(a2_p5):
    category = SoergelCategory(a2_p5, EngineConfig(p=5, samples=1, max_len=1))
    with pytest.raises(PreconditionError):
        compare_with_oracle(category, 1)
