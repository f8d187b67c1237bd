"""Witness-carrying homotopy equivalences between types and between contexts.

A context equivalence packages a pair of context morphisms with componentwise
round-trip paths; a type equivalence packages a pair of term-level maps,
relative to a context equivalence, with round-trip paths and an optional
half-adjoint coherence cell.  Canonical equivalences additionally carry a
derivation tree recording which formation clause produced each component:
the identity clause for closed types, the Pi/Sigma clauses for matching
binders, and the identity-type clause consuming two endpoint paths.

Scope conventions (de Bruijn, Var(0) innermost):
  - ce.fwd : Gamma -> Delta, ce.bwd : Delta -> Gamma.
  - te.src_ty lives over Gamma, te.tgt_ty over Delta.
  - te.fwd is a body over Gamma.x:src_ty with type fwd_tgt := ce.fwd.apply(tgt_ty)
    shifted under the binder; te.bwd is a body over Gamma.x':fwd_tgt.
  - te.hom_p over Gamma.x proves x = bwd(fwd(x)); te.hom_q over Gamma.x'
    proves x' = fwd(bwd(x')); the coherence cell relates hom_q at fwd(x)
    to the fwd-image of hom_p.

Several round-trip and uniqueness witnesses over h-elementary carriers are
discharged through h-propositionality of the relevant identity types; the
transport scaffolding that reduces each goal to its diagonal instance is in
_diag_transport below.  All emitted terms are validated only by the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .classify import (
    NotHElementary,
    build_hprop_witness,
    build_hset_witness,
    hprop_id,
)
from .kernel import (
    Accept,
    HasType,
    IllTyped,
    IsType,
    Judgement,
    Reject,
    Theory,
    ptt_check,
    ptt_infer,
)
from . import paths
from .paths import (
    PathCtx,
    ap_term,
    comp_terms,
    ident_proofs,
    ident_prop_eq,
    ident_transport_witness,
    inv_term,
    op_transport,
    path_chain,
    proof_type,
    refl_ap_witness,
    tele_types_at,
    word_eq,
)
from .syntax import (
    Const,
    CtxMorphism,
    CtxPropEq,
    Ev,
    Expr,
    Id,
    Lam,
    Pi,
    Refl,
    Rho,
    Sig,
    Signature,
    SourceTargetMismatch,
    Telescope,
    Var,
    compose_mor,
    id_morphism,
    inst,
    shift,
    subst,
)


class BaseMismatch(Exception):
    pass


class NotCanonical(Exception):
    pass


class NotHPropContext(Exception):
    pass


class OutOfScope(Exception):
    """The witness construction for this input shape is not implemented."""


@dataclass(frozen=True)
class NotEquivalent:
    reason: str


@dataclass(frozen=True)
class SearchUndecided:
    reason: str


# ---------------------------------------------------------------------------
# derivation trees


@dataclass(frozen=True)
class Base:
    """Identity maps on a closed type appearing on both sides."""


@dataclass(frozen=True)
class PiRule:
    d1: "TypeDerivation"
    d2: "TypeDerivation"


@dataclass(frozen=True)
class SigmaRule:
    d1: "TypeDerivation"
    d2: "TypeDerivation"


@dataclass(frozen=True)
class IdRule:
    d: "TypeDerivation"
    r1: Expr
    r2: Expr


TypeDerivation = Base | PiRule | SigmaRule | IdRule


@dataclass(frozen=True)
class CtxEmpty:
    pass


@dataclass(frozen=True)
class CtxExtend:
    sub: "DerivationTree"
    tyrule: TypeDerivation


DerivationTree = CtxEmpty | CtxExtend


# ---------------------------------------------------------------------------
# equivalence records


@dataclass(frozen=True)
class CtxEquiv:
    fwd: CtxMorphism
    bwd: CtxMorphism
    hom_p: CtxPropEq  # componentwise gamma = bwd(fwd(gamma))
    hom_q: CtxPropEq  # componentwise delta = fwd(bwd(delta))
    canon: DerivationTree | None = None

    @property
    def source(self) -> Telescope:
        return self.fwd.source

    @property
    def target(self) -> Telescope:
        return self.fwd.target


@dataclass(frozen=True)
class TypeEquiv:
    base: CtxEquiv
    src_ty: Expr  # over base.source
    tgt_ty: Expr  # over base.target
    fwd: Expr  # body over Gamma.x : src_ty
    bwd: Expr  # body over Gamma.x' : fwd_tgt
    hom_p: Expr  # body over Gamma.x
    hom_q: Expr  # body over Gamma.x'
    coherence: Expr | None = None  # body over Gamma.x
    tyrule: TypeDerivation | None = None

    @property
    def fwd_tgt(self) -> Expr:
        """tgt_ty pulled back to the source context along base.fwd."""
        return self.base.fwd.apply(self.tgt_ty)


def _at(body: Expr, t: Expr) -> Expr:
    """Instantiate a 1-binder body at a term of the ambient scope."""
    return inst(body, (t,))


def _comp_body(outer: Expr, inner: Expr) -> Expr:
    """Compose 1-binder bodies: (outer o inner) as a 1-binder body."""
    return inst(shift(outer, 1, 1), (inner,))


def _under(e: Expr, n: int = 1) -> Expr:
    """Move an ambient-scope expression under n extra binders."""
    return shift(e, n, 0)


# ---------------------------------------------------------------------------
# kernel-facing validation helpers (used by tests and constructors)


def _check(sig: Signature, ctx: Telescope, form) -> None:
    res = ptt_check(sig, Judgement(Theory.PTT, ctx, form))
    if not isinstance(res, Accept):
        raise IllTyped(res.reason)


def check_prop_eq(sig: Signature, peq: CtxPropEq) -> None:
    """Kernel-check a componentwise morphism equality."""
    lhs, rhs = peq.lhs, peq.rhs
    if lhs.source is not rhs.source and lhs.source.entries != rhs.source.entries:
        raise IllTyped("componentwise equality between different sources")
    gamma = lhs.source
    deltas = lhs.target.types()
    for i, pf in enumerate(peq.proofs):
        want = proof_type(deltas, lhs.comps, rhs.comps, peq.proofs, i)
        _check(sig, gamma, HasType(pf, want))


def check_ctx_equiv(sig: Signature, ce: CtxEquiv) -> None:
    """Kernel-check all four components of a context equivalence."""
    from .kernel import check_morphism

    for mor in (ce.fwd, ce.bwd):
        res = check_morphism(sig, Theory.PTT, mor)
        if not isinstance(res, Accept):
            raise IllTyped(res.reason)
    gf = compose_mor(ce.fwd, ce.bwd)
    if ce.hom_p.lhs.comps != gf.comps or ce.hom_p.rhs.comps != id_morphism(ce.source).comps:
        raise IllTyped("hom_p endpoints are not bwd(fwd) and the identity")
    fg = compose_mor(ce.bwd, ce.fwd)
    if ce.hom_q.lhs.comps != fg.comps or ce.hom_q.rhs.comps != id_morphism(ce.target).comps:
        raise IllTyped("hom_q endpoints are not fwd(bwd) and the identity")
    check_prop_eq(sig, ce.hom_p)
    check_prop_eq(sig, ce.hom_q)


def check_type_equiv(sig: Signature, te: TypeEquiv) -> None:
    """Kernel-check the five components of a type equivalence."""
    gamma = te.base.source
    delta = te.base.target
    _check(sig, gamma, IsType(te.src_ty))
    _check(sig, delta, IsType(te.tgt_ty))
    ft = te.fwd_tgt
    _check(sig, gamma.extend("x", te.src_ty), HasType(te.fwd, _under(ft)))
    _check(sig, gamma.extend("x'", ft), HasType(te.bwd, _under(te.src_ty)))
    gf = _comp_body(te.bwd, te.fwd)
    _check(
        sig,
        gamma.extend("x", te.src_ty),
        HasType(te.hom_p, Id(_under(te.src_ty), Var(0), gf)),
    )
    fg = _comp_body(te.fwd, te.bwd)
    _check(
        sig,
        gamma.extend("x'", ft),
        HasType(te.hom_q, Id(_under(ft), Var(0), fg)),
    )
    if te.coherence is not None:
        fgf = _comp_body(fg, te.fwd)
        cell = Id(
            Id(_under(ft), te.fwd, fgf),
            _at(shift(te.hom_q, 1, 1), te.fwd),
            ap_term(_under(te.src_ty), Var(0), gf, te.hom_p, shift(te.fwd, 1, 1), _under(ft)),
        )
        _check(sig, gamma.extend("x", te.src_ty), HasType(te.coherence, cell))


# ---------------------------------------------------------------------------
# h-prop discharge and diagonal transport


def _hprop_eq(sig: Signature, ctx: Telescope, carrier: Expr, t1: Expr, t2: Expr) -> Expr:
    """A path t1 = t2 obtained from h-propositionality of the carrier."""
    w = build_hprop_witness(sig, ctx, carrier)
    if w is None:
        raise NotHElementary(f"no h-prop witness for {carrier}")
    return Ev(Ev(w, t1), t2)


def _diag_transport(
    sig: Signature,
    ctx: Telescope,
    entries: tuple[Expr, ...],
    u: tuple[Expr, ...],
    v: tuple[Expr, ...],
    rho: tuple[Expr | None, ...],
    family: Expr,
    base: Expr,
) -> Expr:
    """Transport a family instance from the point v to the point u.

    entries is a telescope over ctx (entry i binds i earlier ones); family
    binds len(entries).  base : family[v].  rho supplies, per slot, a path
    u_i = (rho_<i)^* v_i; a None slot is filled from h-propositionality of
    the slot's carrier at u.  Returns a term of type family[u].
    """
    filled: list[Expr] = []
    for i, r in enumerate(rho):
        if r is None:
            carrier = inst(entries[i], tuple(reversed(u[:i])))
            moved = op_transport(
                entries[:i], u[:i], v[:i], tuple(filled), entries[i], v[i]
            )
            r = _hprop_eq(sig, ctx, carrier, u[i], moved)
        filled.append(r)
    return op_transport(entries, u, v, tuple(filled), family, base)


def _alpha_entries(deltas: tuple[Expr, ...], amb_extra: int = 0) -> tuple[Expr, ...]:
    """Telescope (z_1..z_m, w_1..w_m) with w_i : z_i = (w_<i)^* gamma_i.

    deltas are the entry types of a length-m prefix of the ambient context,
    in their own scopes.  Before the z/w binders are introduced, gamma_i sits
    at index (m - 1 - i) + amb_extra of the ambient scope (amb_extra counts
    ambient binders inside of the prefix, e.g. 1 for an extended context).
    """
    m = len(deltas)
    out: list[Expr] = list(deltas)
    for i in range(m):
        depth = m + i  # binders introduced so far: all z's, then w_1..w_i
        zs = tuple(Var(depth - 1 - j) for j in range(i))
        gammas = tuple(
            Var(depth + amb_extra + m - 1 - j) for j in range(i + 1)
        )
        d_at_z = inst(shift(deltas[i], depth, i), tuple(reversed(zs)))
        ws = tuple(Var(i - 1 - j) for j in range(i))
        moved = op_transport(
            deltas[:i],
            zs,
            gammas[:i],
            ws,
            deltas[i],
            gammas[i],
        )
        out.append(Id(d_at_z, Var(depth - 1 - i), moved))
    return tuple(out)

# ---------------------------------------------------------------------------
# clause constructors


def _is_closed(e: Expr) -> bool:
    return e == shift(e, 1, 0)


def empty_ctx_equiv() -> CtxEquiv:
    e = Telescope()
    m = id_morphism(e)
    pe = CtxPropEq(m, m, ())
    return CtxEquiv(m, m, pe, pe, canon=CtxEmpty())


def base_type_equiv(ce: CtxEquiv, ty: Expr) -> TypeEquiv:
    """Identity maps on a closed type, relative to any base equivalence."""
    if not _is_closed(ty):
        raise IllTyped("identity-clause type must not mention context variables")
    tau = inv_term(
        Id(_under(ty), Var(0), Var(0)),
        ap_term(_under(ty), Var(0), Var(0), Refl(Var(0)), Var(0), _under(ty)),
        Refl(Var(0)),
        refl_ap_witness(_under(ty), Var(0), _under(ty), Var(0)),
    )
    return TypeEquiv(
        base=ce,
        src_ty=ty,
        tgt_ty=ty,
        fwd=Var(0),
        bwd=Var(0),
        hom_p=Refl(Var(0)),
        hom_q=Refl(Var(0)),
        coherence=tau,
        tyrule=Base(),
    )


def to_half_adjoint(sig: Signature, te: TypeEquiv) -> TypeEquiv:
    """Fill in the half-adjoint coherence cell.

    The cell inhabits an identity type over fwd_tgt, so when fwd_tgt is an
    h-set (in particular whenever it is h-elementary) the cell follows from
    h-propositionality of that identity type.  Outside that class the general
    Vogt-style correction chain is not implemented.
    """
    if te.coherence is not None:
        return te
    gamma = te.base.source
    ft = te.fwd_tgt
    fg = _comp_body(te.fwd, te.bwd)
    fgf = _comp_body(fg, te.fwd)
    cell_carrier = Id(_under(ft), te.fwd, fgf)
    ctx = gamma.extend("x", te.src_ty)
    try:
        tau = _hprop_eq(
            sig,
            ctx,
            cell_carrier,
            _at(shift(te.hom_q, 1, 1), te.fwd),
            ap_term(_under(te.src_ty), Var(0), _comp_body(te.bwd, te.fwd), te.hom_p,
                    shift(te.fwd, 1, 1), _under(ft)),
        )
    except NotHElementary as exc:
        raise OutOfScope(
            f"half-adjoint coherence needs an h-set target: {exc}"
        ) from exc
    return replace(te, coherence=tau)


def _mor_body_inst(mor: CtxMorphism, body: Expr, arg: Expr) -> Expr:
    """Instantiate a 1-binder body over mor.target along mor, then plug arg.

    arg lives over mor.source extended by one binder; so does the result.
    """
    return inst(shift(mor.apply_under(body, 1), 1, 1), (arg,))


def extend_ctx_equiv(sig: Signature, ce: CtxEquiv, te: TypeEquiv) -> CtxEquiv:
    """Extend a context equivalence by a type equivalence over it."""
    if te.base is not ce and (
        te.base.fwd != ce.fwd or te.base.bwd != ce.bwd
    ):
        raise BaseMismatch("type equivalence is relative to a different base")
    gamma, delta = ce.source, ce.target
    m, n = len(gamma.entries), len(delta.entries)
    if m > 0:
        te = to_half_adjoint(sig, te)
    gamma2 = gamma.extend("x", te.src_ty)
    delta2 = delta.extend("x'", te.tgt_ty)
    fwd2 = CtxMorphism(
        gamma2, delta2, tuple(shift(c, 1, 0) for c in ce.fwd.comps) + (te.fwd,)
    )
    thetas = delta.types()
    q_moved = op_transport(
        thetas,
        tuple(shift(c, 1, 0) for c in compose_mor(ce.bwd, ce.fwd).comps),
        tuple(Var(n - i) for i in range(n)),
        tuple(shift(p, 1, 0) for p in ce.hom_q.proofs),
        te.tgt_ty,
        Var(0),
    )
    g_last = _mor_body_inst(ce.bwd, te.bwd, q_moved)
    bwd2 = CtxMorphism(
        delta2, gamma2, tuple(shift(c, 1, 0) for c in ce.bwd.comps) + (g_last,)
    )

    if m == 0:
        gf_body = _comp_body(te.bwd, te.fwd)
        hom_p_last = inv_term(te.src_ty, Var(0), gf_body, te.hom_p)
    else:
        hom_p_last = _ext_hom_p_last(sig, ce, te)
    hom_p2 = CtxPropEq(
        compose_mor(fwd2, bwd2),
        id_morphism(gamma2),
        tuple(shift(p, 1, 0) for p in ce.hom_p.proofs) + (hom_p_last,),
    )

    hq_inst = _mor_body_inst(ce.bwd, te.hom_q, q_moved)
    fg_last = compose_mor(bwd2, fwd2).comps[n]
    # hq_inst : q_moved = fwd(bwd(q_moved)) over delta2; its carrier is
    # tgt_ty at the composite prefix, which is also the carrier of the
    # stated proof type for the last hom_q slot.
    carrier = inst(te.tgt_ty, tuple(
        reversed(tuple(shift(c, 1, 0) for c in compose_mor(ce.bwd, ce.fwd).comps))
    ))
    hom_q_last = inv_term(carrier, q_moved, fg_last, hq_inst)
    hom_q2 = CtxPropEq(
        compose_mor(bwd2, fwd2),
        id_morphism(delta2),
        tuple(shift(p, 1, 0) for p in ce.hom_q.proofs) + (hom_q_last,),
    )
    canon = None
    if ce.canon is not None and te.tyrule is not None:
        canon = CtxExtend(ce.canon, te.tyrule)
    return CtxEquiv(fwd2, bwd2, hom_p2, hom_q2, canon=canon)


def _ext_hom_p_last(sig: Signature, ce: CtxEquiv, te: TypeEquiv) -> Expr:
    """The final round-trip path of an extended context equivalence.

    Over Gamma.x the goal relates g(gf(gamma), q(f(gamma))^* f(gamma,x)) to
    the hom_p-transport of x.  The goal is transported from its diagonal
    instance (where every proof is an identity proof and the base follows
    from te.hom_p plus identity-transport collapse) along the telescope
    (z_1..z_m, w_1..w_m, v_1..v_n): z mirrors Gamma, the w слots carry the
    hom_p proofs, and the v slots carry the hom_q proofs at f(gamma).  The
    proof-slot legs are discharged by h-propositionality, which confines
    this construction to h-elementary inputs.
    """
    gamma, delta = ce.source, ce.target
    m, n = len(gamma.entries), len(delta.entries)
    gdeltas = gamma.types()
    thetas = delta.types()
    src, tgt = te.src_ty, te.tgt_ty
    ft = te.fwd_tgt
    ctx = gamma.extend("x", src)

    # --- the transport telescope ------------------------------------------
    entries = list(_alpha_entries(gdeltas, amb_extra=1))
    for i in range(n):
        depth = 2 * m + i
        fz = tuple(shift(c, m + i, 0) for c in ce.fwd.comps)
        famb = tuple(shift(c, depth + 1, 0) for c in ce.fwd.comps)
        vs = tuple(Var(i - 1 - j) for j in range(i))
        carrier = inst(thetas[i], tuple(reversed(fz[:i])))
        moved = op_transport(thetas[:i], fz[:i], famb[:i], vs, thetas[i], famb[i])
        entries.append(Id(carrier, fz[i], moved))
    entries = tuple(entries)

    # --- the goal family ---------------------------------------------------
    depth = 2 * m + n
    z_vars = tuple(Var(depth - 1 - j) for j in range(m))
    w_vars = tuple(Var(n + m - 1 - j) for j in range(m))
    v_vars = tuple(Var(n - 1 - j) for j in range(n))
    gamma_amb = tuple(Var(depth + m - j) for j in range(m))
    x_amb = Var(depth)
    fz_comps = tuple(shift(c, m + n, 0) for c in ce.fwd.comps)
    famb_comps = tuple(shift(c, depth + 1, 0) for c in ce.fwd.comps)
    arg = op_transport(
        thetas, fz_comps, famb_comps, v_vars, tgt, shift(te.fwd, depth, 0)
    )
    g_at_z = subst(shift(te.bwd, m + n, 1), 0, arg)
    family = Id(
        shift(src, m + n, 0),
        g_at_z,
        op_transport(gdeltas, z_vars, gamma_amb, w_vars, src, x_amb),
    )

    # --- instantiation points ---------------------------------------------
    gf = compose_mor(ce.fwd, ce.bwd)
    u_z = tuple(shift(c, 1, 0) for c in gf.comps)
    u_w = tuple(shift(p, 1, 0) for p in ce.hom_p.proofs)
    u_v = tuple(shift(ce.fwd.apply(q), 1, 0) for q in ce.hom_q.proofs)
    v_z = tuple(Var(m - j) for j in range(m))
    v_w = ident_proofs(gdeltas, v_z)
    f_up = tuple(shift(c, 1, 0) for c in ce.fwd.comps)
    v_v = ident_proofs(thetas, f_up)
    rho: tuple[Expr | None, ...] = u_w + (None,) * (m + n)

    # --- the diagonal base -------------------------------------------------
    itw_q = ident_transport_witness(thetas, f_up, tgt, te.fwd)
    arg_diag = op_transport(thetas, f_up, f_up, v_v, tgt, te.fwd)
    g_head = subst(shift(te.bwd, 1, 1), 0, arg_diag)
    gf_body = _comp_body(te.bwd, te.fwd)
    itw_w = ident_transport_witness(gdeltas, v_z, src, Var(0))
    optr_diag = op_transport(gdeltas, v_z, v_z, v_w, src, Var(0))
    c_src = _under(src)
    base = path_chain(
        c_src,
        [g_head, gf_body, Var(0), optr_diag],
        [
            ap_term(_under(ft), arg_diag, te.fwd, itw_q, shift(te.bwd, 1, 1), c_src),
            inv_term(c_src, Var(0), gf_body, te.hom_p),
            inv_term(c_src, optr_diag, Var(0), itw_w),
        ],
    )
    return _diag_transport(
        sig, ctx, entries, u_z + u_w + u_v, v_z + v_w + v_v, rho, family, base
    )

# ---------------------------------------------------------------------------
# identity-type clause


def id_equiv(
    sig: Signature,
    ce: CtxEquiv,
    eqA: TypeEquiv,
    r1: Expr,
    r2: Expr,
    endpoints: tuple[tuple[Expr, Expr], tuple[Expr, Expr]] | None = None,
) -> TypeEquiv:
    """Equivalence between identity types, by conjugation with r1 and r2.

    r1 : f(gamma, s1) = t1(fwd(gamma)) and r2 : f(gamma, s2) = t2(fwd(gamma)),
    where f is eqA.fwd and s_i/t_i are the endpoint terms.  When eqA's maps
    are not the literal variable, the endpoints must be passed explicitly
    since they cannot be read back from the types of r1/r2.
    """
    gamma = ce.source
    A, A2 = eqA.src_ty, eqA.tgt_ty
    ftA = eqA.fwd_tgt
    if endpoints is None:
        if eqA.fwd != Var(0):
            raise IllTyped("endpoint terms are required for a non-identity map")
        infer1 = ptt_infer(sig, gamma, r1)
        infer2 = ptt_infer(sig, gamma, r2)
        if isinstance(infer1, Reject) or isinstance(infer2, Reject):
            bad = infer1 if isinstance(infer1, Reject) else infer2
            raise IllTyped(bad.reason)
        if not isinstance(infer1, Id) or not isinstance(infer2, Id):
            raise IllTyped("endpoint witnesses must be paths")
        s1, t1 = infer1.lhs, infer1.rhs
        s2, t2 = infer2.lhs, infer2.rhs
    else:
        (s1, s2), (t1, t2) = endpoints
    src_ty = Id(A, s1, s2)
    tgt_ty = Id(A2, t1, t2)

    ident_map = eqA.fwd == Var(0) and eqA.bwd == Var(0)
    t1f = _under(ce.fwd.apply(t1))
    t2f = _under(ce.fwd.apply(t2))
    fs1 = _under(_at(eqA.fwd, s1))
    fs2 = _under(_at(eqA.fwd, s2))
    cA2 = _under(ftA)
    action = (
        Var(0)
        if eqA.fwd == Var(0)
        else ap_term(_under(A), _under(s1), _under(s2), Var(0),
                     shift(eqA.fwd, 1, 1), cA2)
    )
    fwd = path_chain(
        cA2,
        [t1f, fs1, fs2, t2f],
        [inv_term(cA2, fs1, t1f, _under(r1)), action, _under(r2)],
    )

    cA = _under(A)
    if ident_map:
        bwd = path_chain(
            cA,
            [_under(s1), t1f, t2f, _under(s2)],
            [_under(r1), Var(0), inv_term(cA, _under(s2), t2f, _under(r2))],
        )
    else:
        gs = shift(eqA.bwd, 1, 1)

        def g_at(t: Expr) -> Expr:
            return _at(gs, t)

        hp1 = _under(_at(eqA.hom_p, s1))
        hp2 = _under(_at(eqA.hom_p, s2))
        bwd = path_chain(
            cA,
            [_under(s1), g_at(fs1), g_at(t1f), g_at(t2f), g_at(fs2), _under(s2)],
            [
                hp1,
                ap_term(cA2, fs1, t1f, _under(r1), gs, cA),
                ap_term(cA2, t1f, t2f, Var(0), gs, cA),
                ap_term(cA2, t2f, fs2,
                        inv_term(cA2, fs2, t2f, _under(r2)), gs, cA),
                inv_term(cA, _under(s2), g_at(fs2), hp2),
            ],
        )

    def roundtrip(ctx: Telescope, carrier: Expr, l: Expr, r: Expr, comp: Expr) -> Expr:
        if ident_map:
            try:
                return word_eq(carrier, l, r, Var(0), comp)
            except paths.PathError:
                pass
        return _hprop_eq(sig, ctx, Id(carrier, l, r), Var(0), comp)

    ctx_p = gamma.extend("p", src_ty)
    hom_p = roundtrip(ctx_p, cA, _under(s1), _under(s2), _comp_body(bwd, fwd))
    ft = Id(cA2, t1f, t2f)
    ctx_q = gamma.extend("p'", ce.fwd.apply(tgt_ty))
    hom_q = roundtrip(ctx_q, cA2, t1f, t2f, _comp_body(fwd, bwd))
    tyrule = None
    if eqA.tyrule is not None:
        tyrule = IdRule(eqA.tyrule, r1, r2)
    return TypeEquiv(
        base=ce,
        src_ty=src_ty,
        tgt_ty=tgt_ty,
        fwd=fwd,
        bwd=bwd,
        hom_p=hom_p,
        hom_q=hom_q,
        tyrule=tyrule,
    )
