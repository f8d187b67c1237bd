import pytest

from hdtt.kernel import (
    Accept,
    CheckBudget,
    EqTerm,
    HasType,
    IllTyped,
    Judgement,
    NotEqual,
    Reject,
    Theory,
    Undecided,
    check_morphism,
    ett_check,
    ett_equal,
    ptt_check,
    ptt_infer,
)
from hdtt.syntax import (
    Const,
    CtxMorphism,
    Ev,
    Id,
    Lam,
    P1,
    P2,
    Pair,
    Pi,
    Refl,
    Sig,
    Signature,
    Telescope,
    Var,
    id_morphism,
)

from golden_corpus import CORPUS, sig0, A, a, b, q

BUDGET = CheckBudget()


@pytest.mark.parametrize("name,sig,j,expected", CORPUS, ids=[c[0] for c in CORPUS])
def test_golden_corpus(name, sig, j, expected):
    if j.theory is Theory.PTT:
        result = ptt_check(sig, j)
    else:
        result = ett_check(sig, j, BUDGET)
    if expected == "accept":
        assert isinstance(result, Accept), result
    else:
        assert isinstance(result, Reject), result


def test_infer_then_check_roundtrip():
    # subject reduction surrogate on every accepted PTT HasType instance
    for name, sig, j, expected in CORPUS:
        if j.theory is Theory.PTT and isinstance(j.form, HasType) and expected == "accept":
            ty = ptt_infer(sig, j.ctx, j.form.term)
            assert not isinstance(ty, Reject), (name, ty)
            res = ptt_check(sig, Judgement(Theory.PTT, j.ctx, HasType(j.form.term, ty)))
            assert isinstance(res, Accept), (name, res)


def test_infer_atomic_path_constant():
    assert ptt_infer(sig0(), Telescope(), q) == Id(A, a, b)


def test_infer_refl_of_variable():
    ctx = Telescope().extend("x", A)
    assert ptt_infer(sig0(), ctx, Refl(Var(0))) == Id(A, Var(0), Var(0))


def test_infer_nested_sigma_projection_chain():
    # u : Sig(A, Sig(A, Sig(A, A))); p2(p2(p2 u)) : A, via a hand derivation
    ty = Sig(A, Sig(A, Sig(A, A)))
    ctx = Telescope().extend("u", ty)
    term = P2(P2(P2(Var(0))))
    # hand derivation: each projection peels one constant-family layer
    t1 = ptt_infer(sig0(), ctx, P2(Var(0)))
    assert t1 == Sig(A, Sig(A, A))
    t2 = ptt_infer(sig0(), ctx, P2(P2(Var(0))))
    assert t2 == Sig(A, A)
    assert ptt_infer(sig0(), ctx, term) == A
    res = ptt_check(sig0(), Judgement(Theory.PTT, ctx, HasType(term, A)))
    assert isinstance(res, Accept)


def test_ett_equal_requires_well_typed_inputs():
    with pytest.raises(IllTyped):
        ett_equal(sig0(), Telescope(), Lam(A, Var(0)), a, A, BUDGET)


def test_ett_equal_undecided_on_tiny_budget():
    tiny = CheckBudget(max_rewrite_steps=1, max_closure_terms=2000)
    big = Ev(Lam(A, Ev(Lam(A, Var(0)), Var(0))), a)
    r = ett_equal(sig0(), Telescope(), big, a, A, tiny)
    assert isinstance(r, (Undecided,))


def test_ett_negative_soundness_against_evaluator():
    # two closed points with no connecting path stay distinct
    sig = Signature()
    sig.add_type("A", hset=True)
    sig.add_term("a", A)
    sig.add_term("b", A)
    r = ett_equal(sig, Telescope(), Ev(Lam(A, Var(0)), a), b, A, BUDGET)
    assert isinstance(r, NotEqual)


def test_check_morphism_identity():
    ctx = Telescope().extend("x", A).extend("p", Id(A, Var(0), Var(0)))
    assert isinstance(check_morphism(sig0(), Theory.PTT, id_morphism(ctx)), Accept)


def test_check_morphism_permuted_components_rejected():
    src = Telescope().extend("x", A).extend("y", A)
    tgt = Telescope().extend("x", A).extend("p", Id(A, Var(0), Var(0)))
    ok = CtxMorphism(src, tgt, (Var(1), Refl(Var(1))))
    bad = CtxMorphism(src, tgt, (Refl(Var(1)), Var(1)))
    assert isinstance(check_morphism(sig0(), Theory.PTT, ok), Accept)
    assert isinstance(check_morphism(sig0(), Theory.PTT, bad), Reject)


def test_substitution_stability():
    # accepted term stays accepted after substitution along a checked morphism
    sig = sig0()
    tgt = Telescope().extend("x", A)
    src = Telescope()
    f = CtxMorphism(src, tgt, (a,))
    assert isinstance(check_morphism(sig, Theory.PTT, f), Accept)
    term, ty = Refl(Var(0)), Id(A, Var(0), Var(0))
    assert isinstance(
        ptt_check(sig, Judgement(Theory.PTT, tgt, HasType(term, ty))), Accept
    )
    assert isinstance(
        ptt_check(sig, Judgement(Theory.PTT, src, HasType(f.apply(term), f.apply(ty)))),
        Accept,
    )


def test_non_hset_atom_invisible_to_ett():
    sig = Signature()
    sig.add_type("U", hset=False)
    sig.add_term("u", Const("U"))
    j = Judgement(Theory.ETT, Telescope(), HasType(Const("u"), Const("U")))
    assert isinstance(ett_check(sig, j, BUDGET), Reject)
    jp = Judgement(Theory.PTT, Telescope(), HasType(Const("u"), Const("U")))
    assert isinstance(ptt_check(sig, jp), Accept)


def test_ptt_witness_forms_rejected_by_ett():
    from hdtt.syntax import BetaPi

    sig = sig0()
    wit = BetaPi(Var(0), a)
    j = Judgement(Theory.ETT, Telescope(), HasType(wit, Id(A, Ev(Lam(A, Var(0)), a), a)))
    assert isinstance(ett_check(sig, j, BUDGET), Reject)


def test_ill_scoped_judgement_rejected():
    j = Judgement(Theory.ETT, Telescope(), HasType(Var(3), A))
    assert isinstance(ett_check(sig0(), j, BUDGET), Reject)
