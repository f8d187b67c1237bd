"""Path algebra: every emitted term is re-checked by the PTT kernel."""

import pytest

from hdtt.kernel import Accept, HasType, Judgement, Theory, ptt_check
from hdtt.paths import (
    EndpointMismatch,
    GroupoidLaw,
    MotiveNotGeneralizable,
    PathCtx,
    PathError,
    ap,
    ap_term,
    comp_terms,
    compose,
    derived_split,
    gen_path_induction,
    gen_path_induction_witness,
    groupoid_law,
    ident_prop_eq,
    ident_proofs,
    ident_transport_witness,
    inv_term,
    inverse,
    op_transport,
    pair_path,
    pair_transport_witness,
    proof_type,
    transport,
    transport_refl_witness,
    transport_tele,
    transport_term,
    word_eq,
    word_normalize,
)
from hdtt.syntax import (
    Const,
    CtxMorphism,
    Id,
    Pair,
    Refl,
    Sig,
    Signature,
    Telescope,
    Var,
    inst,
    shift,
    subst,
)

from golden_corpus import sig0


def paths_sig() -> Signature:
    """Atoms and free paths with no truncation assumptions."""
    s = Signature()
    s.add_type("A", hset=False)
    A = Const("A")
    for nm in ("a", "b", "c", "d"):
        s.add_term(nm, A)
    s.add_term("q", Id(A, Const("a"), Const("b")))
    s.add_term("q2", Id(A, Const("a"), Const("b")))
    s.add_term("s", Id(A, Const("b"), Const("c")))
    s.add_term("u", Id(A, Const("c"), Const("d")))
    return s


SIG = paths_sig()
A = Const("A")
a, b, c, d = Const("a"), Const("b"), Const("c"), Const("d")
q, s, u = Const("q"), Const("s"), Const("u")
EMPTY = Telescope()


def checks(term, ty, sig=SIG, ctx=EMPTY):
    res = ptt_check(sig, Judgement(Theory.PTT, ctx, HasType(term, ty)))
    assert isinstance(res, Accept), res
    return True


def pc(l, r, p, carrier=A):
    return PathCtx(EMPTY, carrier, l, r, p)


PC_Q = pc(a, b, q)
PC_S = pc(b, c, s)
PC_U = pc(c, d, u)


class TestTransport:
    def test_constant_family(self):
        # transport through a family that ignores the path's carrier
        t = transport(PC_Q, shift(A, 1, 0), a)
        checks(t, A)

    def test_dependent_family(self):
        # transport(q : a=b, x. x=b, Refl b) : a=b
        fam = Id(shift(A, 1, 0), Var(0), shift(b, 1, 0))
        t = transport(PC_Q, fam, Refl(b))
        checks(t, Id(A, a, b))

    def test_refl_transport_witness(self):
        fam = Id(shift(A, 1, 0), shift(a, 1, 0), Var(0))
        moved = transport_term(A, b, b, Refl(b), fam, q)
        w = transport_refl_witness(A, b, fam, q)
        checks(w, Id(Id(A, a, b), moved, q))


class TestComposeInverseAp:
    def test_inverse(self):
        checks(inverse(PC_Q), Id(A, b, a))

    def test_compose(self):
        checks(compose(PC_Q, PC_S), Id(A, a, c))

    def test_compose_endpoint_mismatch(self):
        with pytest.raises(EndpointMismatch):
            compose(PC_Q, PC_U)

    def test_compose_refl_left_collapses(self):
        # compose(Refl a, q) carries a unit-law witness back to q
        t = comp_terms(A, a, a, b, Refl(a), q)
        w = groupoid_law(GroupoidLaw.UNIT_L, PC_Q)
        checks(t, Id(A, a, b))
        checks(w, Id(Id(A, a, b), t, q))

    def test_inverse_refl_witness(self):
        from hdtt.paths import refl_inverse_witness

        w = refl_inverse_witness(A, a)
        checks(w, Id(Id(A, a, a), inv_term(A, a, a, Refl(a)), Refl(a)))

    def test_ap_identity_witness(self):
        from hdtt.paths import ap_id

        t = ap_term(A, a, b, q, Var(0), A)
        checks(t, Id(A, a, b))
        checks(ap_id(PC_Q), Id(Id(A, a, b), t, q))

    def test_composable_triples_depth(self):
        # nested composites and inverses remain well-typed to depth 4
        t1 = comp_terms(A, a, b, c, q, s)
        t2 = comp_terms(A, a, c, d, t1, u)
        t3 = comp_terms(A, a, d, a, t2, inv_term(A, a, d, t2))
        t4 = comp_terms(A, a, a, c, t3, t1)
        checks(t4, Id(A, a, c))


class TestGroupoidLaws:
    def test_assoc(self):
        w = groupoid_law(GroupoidLaw.ASSOC, PC_Q, PC_S, PC_U)
        lhs = comp_terms(A, a, c, d, comp_terms(A, a, b, c, q, s), u)
        rhs = comp_terms(A, a, b, d, q, comp_terms(A, b, c, d, s, u))
        checks(w, Id(Id(A, a, d), lhs, rhs))

    def test_units(self):
        l = groupoid_law(GroupoidLaw.UNIT_L, PC_Q)
        r = groupoid_law(GroupoidLaw.UNIT_R, PC_Q)
        checks(l, Id(Id(A, a, b), comp_terms(A, a, a, b, Refl(a), q), q))
        checks(r, Id(Id(A, a, b), comp_terms(A, a, b, b, q, Refl(b)), q))

    def test_inverses(self):
        il = groupoid_law(GroupoidLaw.INV_L, PC_Q)
        ir = groupoid_law(GroupoidLaw.INV_R, PC_Q)
        iq = inv_term(A, a, b, q)
        checks(il, Id(Id(A, b, b), comp_terms(A, b, a, b, iq, q), Refl(b)))
        checks(ir, Id(Id(A, a, a), comp_terms(A, a, b, a, q, iq), Refl(a)))

    def test_ap_comp(self):
        w = groupoid_law(GroupoidLaw.AP_COMP, Var(0), A, PC_Q, PC_S)
        lhs = ap_term(A, a, c, comp_terms(A, a, b, c, q, s), Var(0), A)
        rhs = comp_terms(
            A, a, b, c, ap_term(A, a, b, q, Var(0), A), ap_term(A, b, c, s, Var(0), A)
        )
        checks(w, Id(Id(A, a, c), lhs, rhs))

    def test_ap_transport(self):
        fam = Id(shift(A, 1, 0), shift(a, 1, 0), Var(0))
        t = comp_terms(A, a, b, c, q, s)
        w = groupoid_law(GroupoidLaw.AP_TRANSPORT, A, A, Var(0), fam, PC_S, t)
        checks(
            w,
            Id(
                subst(fam, 0, b),
                transport_term(A, b, c, ap_term(A, b, c, s, Var(0), A), fam, t),
                transport_term(A, b, c, s, fam, t),
            ),
        )


class TestWordNormalization:
    def test_full_cancellation(self):
        t = comp_terms(A, a, b, c, q, s)
        loop = comp_terms(A, c, a, c, inv_term(A, a, c, t), t)
        canon, proof = word_normalize(A, c, c, loop)
        assert canon == Refl(c)
        checks(proof, Id(Id(A, c, c), loop, canon))

    def test_partial_cancellation(self):
        t = comp_terms(A, a, c, b, comp_terms(A, a, b, c, q, s), inv_term(A, b, c, s))
        canon, proof = word_normalize(A, a, b, t)
        assert canon == q
        checks(proof, Id(Id(A, a, b), t, canon))

    def test_word_eq_assoc_instances(self):
        lhs = comp_terms(A, a, c, d, comp_terms(A, a, b, c, q, s), u)
        rhs = comp_terms(A, a, b, d, q, comp_terms(A, b, c, d, s, u))
        checks(word_eq(A, a, d, lhs, rhs), Id(Id(A, a, d), lhs, rhs))

    def test_word_eq_accepts_unit_padding(self):
        padded = comp_terms(A, a, a, b, Refl(a), q)
        checks(word_eq(A, a, b, q, padded), Id(Id(A, a, b), q, padded))

    def test_word_eq_rejects_distinct_words(self):
        # two atomic paths with the same endpoints reduce to distinct words
        with pytest.raises(PathError):
            word_eq(A, a, b, q, Const("q2"))


class TestGenPathInduction:
    def test_refl_case_witness(self):
        # motive (x, x', w) |-> A; base x |-> x: J at Refl recovers the base
        motive = shift(A, 3, 0)
        base = Var(0)
        t = gen_path_induction(motive, base, pc(a, a, Refl(a)), sig=SIG)
        checks(t, A)
        w = gen_path_induction_witness(motive, base, a)
        checks(w, Id(A, t, a))

    def test_constant_motive_is_transport(self):
        # motive ignoring the path slot acts as transport in both endpoints
        motive = Id(shift(A, 3, 0), Var(2), Var(1))
        base = Refl(Var(0))
        t = gen_path_induction(motive, base, PC_Q, sig=SIG)
        checks(t, Id(A, a, b))

    def test_not_generalizable_reported(self):
        # base does not inhabit the motive's diagonal
        motive = Id(shift(A, 3, 0), Var(2), shift(b, 3, 0))
        base = Refl(Var(0))
        with pytest.raises(MotiveNotGeneralizable):
            gen_path_induction(motive, base, PC_Q, sig=SIG)


def pair_sig():
    s = Signature()
    s.add_type("A", hset=False)
    A = Const("A")
    for nm in ("a0", "a1", "u0", "v0"):
        s.add_term(nm, A)
    s.add_term("q01", Id(A, Const("a0"), Const("a1")))
    s.add_term("pv", Id(A, Const("u0"), Const("v0")))
    s.add_term("tb", Id(A, Const("a0"), Const("v0")))
    s.add_term("pp", Sig(A, Id(A, Const("a0"), Var(0))))
    return s


PSIG = pair_sig()
a0, a1, u0, v0 = Const("a0"), Const("a1"), Const("u0"), Const("v0")
q01, pv, tb = Const("q01"), Const("pv"), Const("tb")
FAM_B = Id(A, a0, Var(0))
S = Sig(A, FAM_B)


class TestPairPaths:
    def test_pair_path(self):
        s_tr = transport_term(A, u0, v0, pv, FAM_B, tb)
        w = pair_path(A, FAM_B, u0, v0, s_tr, tb, pv, Refl(s_tr))
        checks(w, Id(S, Pair(u0, s_tr, FAM_B), Pair(v0, tb, FAM_B)), sig=PSIG)

    def test_pair_transport_agrees_with_telescope_transport(self):
        from hdtt.paths import _hat_family

        fam_c = Id(shift(S, 1, 0), Var(0), Var(0))
        s_tr = transport_term(A, u0, v0, pv, FAM_B, tb)
        qr = Refl(s_tr)
        ppw = pair_path(A, FAM_B, u0, v0, s_tr, tb, pv, qr)
        w2 = Refl(Pair(v0, tb, FAM_B))
        pt = pair_transport_witness(A, FAM_B, fam_c, u0, v0, s_tr, tb, pv, qr, w2)
        lhs = transport_term(
            S, Pair(u0, s_tr, FAM_B), Pair(v0, tb, FAM_B), ppw, fam_c, w2
        )
        rhs = op_transport(
            (A, FAM_B), (u0, s_tr), (v0, tb), (pv, qr), _hat_family(fam_c, FAM_B), w2
        )
        checks(
            pt,
            Id(subst(fam_c, 0, Pair(u0, s_tr, FAM_B)), lhs, rhs),
            sig=PSIG,
        )


class TestDerivedSplit:
    def test_constant_family_literal_pair(self):
        # branch repairs the pair; split is propositionally the same pair
        branch = Pair(Var(1), Var(0), shift(FAM_B, 2, 1))
        scrut = Pair(a1, q01, FAM_B)
        split, sigma = derived_split(A, FAM_B, S, branch, scrut)
        checks(split, S, sig=PSIG)
        checks(sigma, Id(S, split, scrut), sig=PSIG)

    def test_constant_family_split_shape(self):
        # split is branch applied to the projections, under one transport
        branch = Pair(Var(1), Var(0), shift(FAM_B, 2, 1))
        scrut = Const("pp")
        split, sigma = derived_split(A, FAM_B, S, branch, scrut)
        assert sigma is None
        from hdtt.syntax import P1, P2, Ev, J

        assert isinstance(split, Ev) and isinstance(split.fun, J)
        assert split.arg == inst(branch, (P2(scrut), P1(scrut)))
        checks(split, S, sig=PSIG)

    def test_dependent_family(self):
        fam_c = Id(shift(S, 1, 0), Var(0), Var(0))
        branch = Refl(Pair(Var(1), Var(0), shift(FAM_B, 2, 1)))
        scrut = Pair(a1, q01, FAM_B)
        split, sigma = derived_split(A, FAM_B, fam_c, branch, scrut)
        checks(split, subst(fam_c, 0, scrut), sig=PSIG)
        checks(sigma, Id(subst(fam_c, 0, scrut), split, Refl(scrut)), sig=PSIG)


DELTAS = (A, Id(A, a0, Var(0)), Id(Id(A, a0, Var(1)), Var(0), Var(0)))
POINTS = (a1, q01, Refl(q01))


class TestTelescopeTransport:
    def test_single_entry_reduces_to_transport(self):
        fam = Id(shift(A, 1, 0), shift(a0, 1, 0), Var(0))
        t = op_transport((A,), (u0,), (v0,), (pv,), fam, tb)
        assert t == transport_term(A, u0, v0, pv, fam, tb)
        checks(t, Id(A, a0, u0), sig=PSIG)

    def test_identity_proofs_check(self):
        ps = ident_proofs(DELTAS, POINTS)
        for i in range(3):
            checks(ps[i], proof_type(DELTAS, POINTS, POINTS, ps, i), sig=PSIG)

    def test_identity_transport_witness_arity2(self):
        fam = Id(Id(A, a0, Var(1)), Var(0), Var(0))
        t = Refl(q01)
        ps = ident_proofs(DELTAS[:2], POINTS[:2])
        w = ident_transport_witness(DELTAS[:2], POINTS[:2], fam, t)
        moved = op_transport(DELTAS[:2], POINTS[:2], POINTS[:2], ps, fam, t)
        checks(w, Id(inst(fam, (q01, a1)), moved, t), sig=PSIG)

    def test_length2_hand_elaboration_on_sig0(self):
        # over the hset corpus signature: telescope (x : A, y : a = x),
        # endpoints (b, q) on both sides related by identity proofs
        s0 = sig0()
        deltas = (A, Id(A, Const("a"), Var(0)))
        points = (Const("b"), Const("q"))
        ps = ident_proofs(deltas, points)
        fam = Id(Id(A, Const("a"), Var(1)), Var(0), Var(0))
        t = Refl(Const("q"))
        moved = op_transport(deltas, points, points, ps, fam, t)
        w = ident_transport_witness(deltas, points, fam, t)
        checks(moved, inst(fam, tuple(reversed(points))), sig=s0)
        checks(w, Id(inst(fam, tuple(reversed(points))), moved, t), sig=s0)

    def test_transport_tele_matches_operator(self):
        mor = CtxMorphism(
            EMPTY,
            Telescope((("x", DELTAS[0]), ("y", DELTAS[1]), ("z", DELTAS[2]))),
            POINTS,
        )
        peq = ident_prop_eq(mor)
        fam = Id(Id(A, a0, Var(2)), Var(1), Var(1))
        t = Refl(q01)
        ps = ident_proofs(DELTAS, POINTS)
        assert transport_tele(peq, fam, t) == op_transport(
            DELTAS, POINTS, POINTS, ps, fam, t
        )
