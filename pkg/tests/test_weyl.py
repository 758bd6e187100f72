import pytest

from heckecat.exceptions import RootDatumError, TorsionError
from heckecat.utils import string_to_word
from heckecat.weyl import RootDatum, root_datum


def test_linkage_class_a1(a1_p5):
    orbit = a1_p5.linkage_class((0,), 20, lower=0)
    assert orbit == {(0,), (8,), (10,), (18,), (20,)}


def test_linkage_class_matches_extended_group(a1_p5):
    assert a1_p5.linkage_class_ext((0,), 20, lower=0) == a1_p5.linkage_class((0,), 20, lower=0)


def test_dot_action(a1_p5):
    s1, s0 = a1_p5.simple_reflection(1), a1_p5.simple_reflection(0)
    assert a1_p5.dot(s1, (3,)) == (-5,)
    assert a1_p5.dot(s0, (0,)) == (8,)
    assert a1_p5.dot(s1, (-1,)) == (-1,)


def test_involutions_and_lengths(a1_p5):
    for s in a1_p5.generators:
        gen = a1_p5.simple_reflection(s)
        assert (gen * gen).is_identity
        assert a1_p5.length(gen) == 1
    assert a1_p5.length(a1_p5.from_word([1, 0, 1])) == 3


def test_reduced_word_is_lex_least(a1_p5, a2_p5):
    x = a1_p5.from_word([0, 1, 0, 1, 1])
    assert a1_p5.reduced_word(x) == [0, 1, 0]
    longest = a2_p5.from_word([2, 1, 2])
    assert a2_p5.reduced_word(longest) == [1, 2, 1]
    assert a1_p5.name(a1_p5.identity) == 'e'


def test_type_name_does_not_hide_element_names(a1_p5, a2_p5):
    assert a1_p5.type_name == 'A1'
    assert a2_p5.type_name == 'A2'
    assert callable(a1_p5.name)
    assert a1_p5.name(a1_p5.from_word([1, 0])) == 's1s0'
    assert repr(a1_p5) == 'RootDatum(A1, rank=1, p=5)'
    custom = RootDatum.from_config({'cartan': '2'}, prime=3)
    assert custom.type_name == 'custom'
    assert custom.name(custom.simple_reflection(0)) == 's0'


def test_alcove_records(a1_p5):
    inside = a1_p5.alcove_record((0,))
    assert inside.in_fundamental and not inside.walls
    upper = a1_p5.alcove_record((4,))
    assert upper.in_closure and not upper.in_fundamental
    assert upper.walls == ('s0',)
    lower = a1_p5.alcove_record((-1,))
    assert lower.in_lower_closure
    assert lower.walls == ('s1',)


def test_dot_stabilizer_on_wall(a1_p5):
    stab = a1_p5.dot_stabilizer((-1,))
    assert stab.walls == ('s1',)
    assert len(stab.finite_image) == 2
    assert a1_p5.dot_stabilizer((0,)).is_trivial


def test_torsion_check():
    with pytest.raises(TorsionError):
        root_datum('A2', 3)
    assert root_datum('A2ad', 3).rank == 2


def test_bad_root_data():
    with pytest.raises(RootDatumError):
        root_datum('A1', 4)
    with pytest.raises(RootDatumError):
        RootDatum.preset('B2', 5)
    with pytest.raises(RootDatumError):
        RootDatum.from_config({'cartan': '2,x'}, prime=5)


def test_from_config():
    datum = RootDatum.from_config({'cartan': '2,-1;-1,2', 'lattice': 'adjoint'}, prime=3)
    assert datum.rank == 2
    assert len(datum.length_zero_elements) == 1


def test_conjugate_affine_generator(a1_p5):
    x, t = a1_p5.conjugate_to_finite(0)
    assert x * a1_p5.simple_reflection(t) * x.inverse == a1_p5.simple_reflection(0)
    assert t == 1
    assert x == a1_p5.translation((1,))
    assert x.finite.is_identity
    assert a1_p5.length(x) == 1
    assert a1_p5.conjugate_to_finite(1) == (a1_p5.identity, 1)


def test_conjugate_affine_generator_a2(a2_p5):
    x, t = a2_p5.conjugate_to_finite(0)
    assert t in a2_p5.finite_generators
    assert x * a2_p5.simple_reflection(t) * x.inverse == a2_p5.simple_reflection(0)
    assert any(x.translation)


def test_length_zero_elements(a1_p5, a2_p5, a2ad_p3):
    assert len(a1_p5.length_zero_elements) == 2
    assert len(a2_p5.length_zero_elements) == 3
    assert len(a2ad_p3.length_zero_elements) == 1


def test_enumeration(a1_p5):
    assert len(a1_p5.elements_up_to(2)) == 5
    anti = a1_p5.antispherical_elements(3)
    assert [a1_p5.length(x) for x in anti] == [0, 1, 2, 3]


def test_bruhat_order(a1_p5):
    s0s1 = a1_p5.from_word([0, 1])
    s1 = a1_p5.simple_reflection(1)
    assert a1_p5.bruhat_le(a1_p5.identity, s0s1)
    assert a1_p5.bruhat_le(s1, s0s1)
    assert not a1_p5.bruhat_le(s0s1, s1)


def test_word_parsing():
    assert string_to_word('s1 s0s1') == [1, 0, 1]
    assert string_to_word('e') == []
    with pytest.raises(ValueError, match='position 2'):
        string_to_word('s1x0')


@pytest.mark.parametrize('lam,expected', [((18,), (0,)), ((-1,), (-1,)), ((9,), (-1,)), ((3,), (3,))])
def test_orbit_representative(a1_p5, lam, expected):
    assert a1_p5.orbit_representative(lam) == expected


def test_orbit_representative_rank_two(a2_p5):
    lam = (3, 4)
    rep = a2_p5.orbit_representative(lam)
    assert a2_p5.alcove_record(rep).in_closure
    assert rep in a2_p5.linkage_class(lam, 20)
