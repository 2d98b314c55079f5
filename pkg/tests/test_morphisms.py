import pytest

from magmakit.actions import Action, associated_action, semidirect, trivial_action
from magmakit.core import Hom, are_isomorphic, direct_product, identity, trivial_magma, zero_map
from magmakit.errors import EquationViolation, HomViolation
from magmakit.extensions import scramble_extension
from magmakit.morphisms import (
    ActionMorphism,
    act_to_splext,
    canonical_iso,
    comparison_morphisms,
    complete_morphism,
    compose_morphisms,
    equivariance_witness,
    identity_morphism,
    is_set_pullback,
    pullback,
    splext_to_act,
    validate_morphism,
)


def test_identity_morphism(twist):
    e = semidirect(twist).extension
    m = validate_morphism(e, e, [0, 1], [0, 1], [0, 1, 2, 3])
    assert m == identity_morphism(e)
    assert splext_to_act(m).f == identity(e.b)


def test_comparison_morphisms_are_inverse(twist, rng):
    e, _ = scramble_extension(semidirect(twist).extension, rng)
    there, back = comparison_morphisms(e)
    assert compose_morphisms(back, there) == identity_morphism(e)
    assert compose_morphisms(there, back) == identity_morphism(there.target)


def test_wrong_middle_map_is_rejected(z2):
    # on Z2 x Z2 swapping the factors is an automorphism, so only the
    # morphism equalities can catch it
    e = semidirect(trivial_action(z2, z2)).extension
    with pytest.raises(EquationViolation) as info:
        validate_morphism(e, e, identity(z2), identity(z2), [0, 2, 1, 3])
    assert info.value.equation == "p_kappa"
    assert info.value.witness == {"x": 1}


def test_non_hom_middle_map_is_rejected(twist):
    e = semidirect(twist).extension
    with pytest.raises(HomViolation):
        validate_morphism(e, e, [0, 1], [0, 1], [0, 2, 1, 3])


def test_complete_morphism_examples(z2, twist):
    triv = semidirect(trivial_action(z2, z2)).extension
    m = complete_morphism(triv, triv, identity(z2), identity(z2))
    assert m.p == identity(triv.a)
    m = complete_morphism(triv, triv, zero_map(z2, z2), identity(z2))
    d = semidirect(trivial_action(z2, z2))
    assert [d.unpair(v) for v in m.p.values] == [(x, 0) for x in (0, 0, 1, 1)]
    e = semidirect(twist).extension
    assert complete_morphism(e, triv, identity(z2), identity(z2)) is None
    assert equivariance_witness(twist, trivial_action(z2, z2), identity(z2), identity(z2)) == (1, 1)


def test_act_to_splext_pairs_componentwise(z2, orm):
    h = trivial_action(z2, orm)
    m = act_to_splext(ActionMorphism(h, h, zero_map(z2, z2), identity(orm)))
    d = semidirect(h)
    assert [d.unpair(v) for v in m.p.values] == [(x, 0) for x in (0, 0, 1, 1)]
    back = splext_to_act(m)
    assert back.f == zero_map(z2, z2) and back.u == identity(orm)


def test_pullback_examples(z2, twist, z2z2):
    e = semidirect(twist).extension
    ef, m = pullback(e, identity(z2))
    assert ef == canonical_iso(e).diagram.extension
    assert is_set_pullback(m)
    ef, m = pullback(e, zero_map(z2, z2))
    assert associated_action(ef) == trivial_action(z2, z2)
    assert ef.a == direct_product(z2, z2)
    assert is_set_pullback(m)
    one = trivial_magma()
    ef, m = pullback(e, zero_map(one, z2))
    assert are_isomorphic(ef.a, z2) is not None
    assert is_set_pullback(m)
    h = Action(z2z2, z2, [[0, 1], [0, 0], [0, 1], [0, 0]])
    ef, m = pullback(semidirect(h).extension, Hom(z2, z2z2, [0, 1]))
    assert associated_action(ef) == twist
    assert is_set_pullback(m)
