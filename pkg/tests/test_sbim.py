from itertools import product

import pytest

from heckecat.config import EngineConfig
from heckecat.exceptions import BudgetExceeded, PreconditionError
from heckecat.hecke import V, V_INV, LaurentInt
from heckecat.sbim import SoergelCategory
from heckecat.utils import make_rng


def test_bs_generator_shape(a1_category):
    datum = a1_category.datum
    for s in datum.generators:
        B = a1_category.bs_gen(s)
        assert B.degrees == (-1, 1)
        assert B.labels == {datum.identity: 1, datum.simple_reflection(s): 1}
        assert B.grk == V + V_INV
        assert a1_category.bs_gen(s) is B


def test_std_character_recovers_labels(a1_category):
    datum = a1_category.datum
    B = a1_category.bs_gen(1)
    assert a1_category.std_character(B) == {datum.identity: V, datum.simple_reflection(1): LaurentInt.const(1)}


def test_delta_objects(a1_category):
    datum = a1_category.datum
    s1 = datum.simple_reflection(1)
    D = a1_category.delta(s1)
    assert D.rank == 1
    assert D.labels == {s1: 1}
    assert a1_category.shift(D, 1).degrees == (-1,)
    prod = a1_category.tensor(D, a1_category.delta(s1))
    assert prod.labels == {datum.identity: 1}


def test_direct_sum_adds_labels(a1_category):
    datum = a1_category.datum
    B = a1_category.bs_gen(1)
    S = a1_category.direct_sum(B, a1_category.unit())
    assert S.rank == 3
    assert S.labels[datum.identity] == 2
    assert S.character == B.character + a1_category.hecke.one()


def test_bott_samelson_character_is_multiplicative(a1_category):
    algebra = a1_category.hecke
    word = [1, 0, 1]
    obj = a1_category.bott_samelson(word)
    expected = algebra.one()
    for s in word:
        expected = expected * algebra.bs_character(s)
    assert obj.character == expected
    assert obj.rank == 8
    a1_category.std_character(obj)


@pytest.mark.parametrize('s', [1, 0])
def test_exact_sequences(a1_category, s):
    report = a1_category.verify_exact_sequences(s, 10)
    assert report['exact']
    assert [seq['failing_degree'] for seq in report['sequences']] == [None, None]


def test_hom_dimensions_respect_bound(a1_category):
    B = a1_category.bs_gen(1)
    dims = a1_category.graded_hom_dims(B, B, range(0, 5))
    assert dims[0]['dim'] == 1
    for row in dims.values():
        assert row['dim'] <= row['bound']
    assert len(a1_category.hom_space(B, a1_category.unit(), 1)) == 1


def test_bs_squared_decomposes(a1_category):
    B = a1_category.bs_gen(0)
    summands = a1_category.decompose(a1_category.tensor(B, B))
    assert sorted(sm.shift for sm in summands) == [-1, 1]
    assert all(sm.obj is B and sm.multiplicity == 1 for sm in summands)


def test_indecomposable_of_length_two(a1_category):
    datum = a1_category.datum
    w = datum.from_word([0, 1])
    B = a1_category.indecomposable(w)
    assert B.rank == 4
    assert B.character == a1_category.hecke.kl_basis(w)
    assert a1_category.indecomposable(w) is B


def test_conjugation_isomorphism(a1_category):
    datum = a1_category.datum
    x, t = datum.conjugate_to_finite(0)
    F = a1_category.conjugation_isom(0, t, x)
    assert a1_category.is_morphism(F)
    assert a1_category.is_compatible(F)
    with pytest.raises(PreconditionError):
        a1_category.conjugation_isom(0, 1, datum.identity)


def test_delta_product_map(a1_category):
    datum = a1_category.datum
    elements = [datum.simple_reflection(s) for s in datum.generators] + list(datum.length_zero_elements)
    for x in elements:
        for y in elements:
            F = a1_category.delta_product_map(x, y)
            assert F.target.labels == {x * y: 1}


def test_length_budget(a1_p3):
    category = SoergelCategory(a1_p3, EngineConfig(p=3, samples=1, max_len=1))
    category.indecomposable(a1_p3.simple_reflection(1))
    with pytest.raises(BudgetExceeded) as exc:
        category.indecomposable(a1_p3.from_word([1, 0]))
    assert 's1' in exc.value.partial


@pytest.mark.parametrize('s', [1, 2, 0])
def test_exact_sequences_a2(a2_category, s):
    report = a2_category.verify_exact_sequences(s, 10)
    assert report['exact']
    assert all(seq['euler'] for seq in report['sequences'])


def test_standard_objects_are_orthogonal(a1_category):
    datum = a1_category.datum
    elements = [datum.identity, datum.simple_reflection(1), datum.simple_reflection(0),
                datum.from_word([1, 0])] + list(datum.length_zero_elements)
    for x in elements:
        assert len(a1_category.hom_space(a1_category.delta(x), a1_category.delta(x), 0)) == 1
        for y in elements:
            if x == y:
                continue
            for d in range(0, 7):
                assert a1_category.hom_space(a1_category.delta(x), a1_category.delta(y), d) == []


@pytest.mark.parametrize('s', [1, 0])
def test_unit_maps_into_shifted_generator(a1_category, s):
    target = a1_category.shift(a1_category.bs_gen(s), 1)
    assert target.degrees == (-2, 0)
    assert len(a1_category.hom_space(a1_category.unit(), target, 0)) == 1


def test_decompose_is_idempotent(a1_category):
    datum = a1_category.datum
    w = datum.from_word([0, 1])
    B = a1_category.indecomposable(w)
    (only,) = a1_category.decompose(B)
    assert only.obj is B and only.top == w
    assert (only.shift, only.multiplicity) == (0, 1)
    for summand in a1_category.decompose(a1_category.tensor(B, a1_category.bs_gen(0))):
        again = a1_category.decompose(summand.obj)
        assert [(sm.top, sm.multiplicity) for sm in again] == [(summand.top, 1)]


def test_bott_samelson_contains_top_once(a1_category):
    datum = a1_category.datum
    w = datum.from_word([1, 0, 1])
    summands = a1_category.decompose(a1_category.bott_samelson([1, 0, 1]))
    top = [sm for sm in summands if sm.top == w]
    assert len(top) == 1
    assert (top[0].shift, top[0].multiplicity) == (0, 1)
    assert top[0].obj is a1_category.indecomposable(w)


def test_delta_group_law_on_random_pairs(a1_category):
    datum = a1_category.datum
    pool = [w * omega for w in datum.elements_up_to(4) for omega in datum.length_zero_elements]
    rng = make_rng(29)
    for _ in range(20):
        x, y = (pool[int(i)] for i in rng.integers(0, len(pool), 2))
        F = a1_category.delta_product_map(x, y)
        assert F.source.labels == {x * y: 1}
        assert F.target.labels == {x * y: 1}
        assert a1_category.is_morphism(F)


def test_conjugation_isomorphism_a2(a2_category):
    datum = a2_category.datum
    x, t = datum.conjugate_to_finite(0)
    F = a2_category.conjugation_isom(0, t, x)
    assert a2_category.is_morphism(F)
    assert F.matrix[(1, 1)].total_degree == 0


def test_bs_square_character(a1_category):
    for s in a1_category.datum.generators:
        B = a1_category.bs_gen(s)
        assert a1_category.tensor(B, B).character == B.character.scale(V + V_INV)


@pytest.mark.slow
def test_character_is_multiplicative_on_short_words(a1_category):
    datum = a1_category.datum
    algebra = a1_category.hecke
    words = [w for n in range(6) for w in product(datum.generators, repeat=n)]
    objects = {w: a1_category.bott_samelson(list(w)) for w in words}
    for left in words:
        for right in words:
            if len(left) + len(right) > 5:
                continue
            T = a1_category.tensor(objects[left], objects[right])
            assert T.character == objects[left + right].character
            assert T.character.at_one() == T.labels
            assert algebra.epsilon(T.character) == T.grk
    for omega in datum.length_zero_elements:
        D = a1_category.delta(omega)
        for w in words:
            if len(w) > 4:
                continue
            T = a1_category.tensor(D, objects[w])
            assert T.character == algebra.standard(omega) * objects[w].character
            assert T.character.at_one() == T.labels
