"""Classification and h-set/h-prop witness construction.

Witness terms have independently stated types (hset_witness_type and
hprop_witness_type built directly from the definition of h-sets and
h-props); the kernel re-checks every emitted term at that type.
"""

import pytest

from hdtt.classify import (
    ClassVariant,
    NotHElementary,
    build_hset_witness,
    classify_ctx,
    classify_type,
    hprop_witness_for_id,
    hprop_witness_type,
    hset_witness_type,
)
from hdtt.kernel import Accept, HasType, IllTyped, Judgement, Theory, ptt_check
from hdtt.syntax import (
    Const,
    Id,
    Pair,
    Pi,
    Refl,
    Sig,
    Signature,
    Telescope,
    Var,
    shift,
)

from golden_corpus import sig0

A = Const("A")
a, b, q = Const("a"), Const("b"), Const("q")


def make_sig():
    s = sig0()
    s.add_type("U", hset=False)
    s.add_term("u", Const("U"))
    return s


SIG = make_sig()
EMPTY = Telescope()


def assert_checks(ctx, term, ty):
    res = ptt_check(SIG, Judgement(Theory.PTT, ctx, HasType(term, ty)))
    assert isinstance(res, Accept), res


# ---------------------------------------------------------------------------
# classification decisions


def test_hset_atom_is_helementary():
    tag = classify_type(SIG, EMPTY, A)
    assert tag.variant is ClassVariant.HELEMENTARY


def test_identity_over_hset_atom_is_helementary():
    tag = classify_type(SIG, EMPTY, Id(A, a, b))
    assert tag.variant is ClassVariant.HELEMENTARY


def test_non_hset_atom_is_neither():
    tag = classify_type(SIG, EMPTY, Const("U"))
    assert tag.variant is ClassVariant.NEITHER


def test_pi_sigma_require_both_components():
    good = Pi(A, Id(A, Var(0), shift(a, 1, 0)))
    assert classify_type(SIG, EMPTY, good).variant is ClassVariant.HELEMENTARY
    bad = Pi(A, Const("U"))
    assert classify_type(SIG, EMPTY, bad).variant is ClassVariant.NEITHER
    bad2 = Sig(Const("U"), A)
    assert classify_type(SIG, EMPTY, bad2).variant is ClassVariant.NEITHER


def test_helementary_implies_hprop_identities():
    for ty in (A, Id(A, a, b), Pi(A, A), Sig(A, Id(A, Var(0), shift(a, 1, 0)))):
        tag = classify_type(SIG, EMPTY, ty)
        assert tag.at_least(ClassVariant.HPROP_IDENTITIES)


def test_registered_hprop_witness_widens_the_class():
    loop = Id(Const("U"), Const("u"), Const("u"))
    assert classify_type(SIG, EMPTY, loop).variant is ClassVariant.NEITHER
    tag = classify_type(SIG, EMPTY, loop, hprop_registry={loop: Const("u")})
    assert tag.variant is ClassVariant.HPROP_IDENTITIES


def test_classify_ctx_empty_and_prefixwise():
    assert classify_ctx(SIG, EMPTY).variant is ClassVariant.HELEMENTARY
    good = Telescope().extend("x", A).extend(
        "p", Id(shift(A, 1, 0), Var(0), shift(a, 1, 0))
    )
    assert classify_ctx(SIG, good).variant is ClassVariant.HELEMENTARY
    bad = Telescope().extend("u", Const("U"))
    assert classify_ctx(SIG, bad).variant is ClassVariant.NEITHER


def test_classify_rejects_ill_typed():
    with pytest.raises(IllTyped):
        classify_type(SIG, EMPTY, Id(A, a, Const("c_missing")))


# ---------------------------------------------------------------------------
# h-set witnesses


def test_atom_witness_is_the_uip_axiom():
    w = build_hset_witness(SIG, EMPTY, A)
    assert w == Const("uip_A")
    assert_checks(EMPTY, w, hset_witness_type(A))


@pytest.mark.parametrize(
    "name,ctx,ty",
    [
        ("id", EMPTY, Id(A, a, b)),
        ("pi", EMPTY, Pi(A, Id(A, Var(0), shift(a, 1, 0)))),
        ("sigma", EMPTY, Sig(A, Id(A, Var(0), shift(a, 1, 0)))),
        ("pi_nondep", EMPTY, Pi(A, A)),
        ("sigma_nested", EMPTY, Sig(A, Sig(A, Id(A, Var(1), Var(0))))),
        ("pi_over_paths", EMPTY, Pi(Id(A, a, b), Id(Id(A, a, b), Var(0), Var(0)))),
        ("open_ctx", Telescope().extend("x", A), Id(A, Var(0), a)),
    ],
)
def test_hset_witness_kernel_checks(name, ctx, ty):
    w = build_hset_witness(SIG, ctx, ty)
    assert_checks(ctx, w, hset_witness_type(ty))


def test_hset_witness_refuses_non_helementary():
    with pytest.raises(NotHElementary):
        build_hset_witness(SIG, EMPTY, Const("U"))
    with pytest.raises(NotHElementary):
        build_hset_witness(SIG, EMPTY, Id(Const("U"), Const("u"), Const("u")))


# ---------------------------------------------------------------------------
# h-prop witnesses for identity types


def test_hprop_witness_for_id_checks():
    idty = Id(A, a, b)
    w = hprop_witness_for_id(SIG, EMPTY, idty)
    assert_checks(EMPTY, w, hprop_witness_type(idty))


def test_hprop_witness_nested_identity():
    idty = Id(Id(A, a, b), q, q)
    w = hprop_witness_for_id(SIG, EMPTY, idty)
    assert_checks(EMPTY, w, hprop_witness_type(idty))


def test_hprop_witness_negative_control():
    with pytest.raises(NotHElementary):
        hprop_witness_for_id(SIG, EMPTY, Id(Const("U"), Const("u"), Const("u")))
