"""Syntactic classification of types and contexts, with witness construction.

A type is *h-elementary* when it is generated from h-set atoms by Pi, Sigma,
and identity formation; every such type is an h-set.  The class with
*h-propositional identities* is wider only at identity formers: an identity
clause is admitted when its carrier is h-elementary or when the caller has
registered an h-prop witness for that exact identity type.

The h-set witnesses are ordinary PTT terms validated only by the kernel.
All three closure cases share one engine (refl_rel_hset): any reflexive,
prop-valued relation that implies identity collapses the identity proofs of
its carrier onto a canonical conjugate, making the carrier an h-set.
  - identity types use the constant relation (they are h-props over h-sets),
  - Pi types use the pointwise-equality relation (rho gives funext),
  - Sigma types use the component-paths relation (pair paths glue it).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .kernel import Accept, HasType, IllTyped, IsType, Judgement, Theory, ptt_check
from .paths import (
    PathCtx,
    comp_terms,
    inv_l,
    inv_term,
    pair_path,
    path_chain,
    refl_inverse_witness,
    transport_refl_witness,
    transport_term,
)
from .paths import ap_term
from .syntax import (
    Const,
    Ev,
    EtaSig,
    Expr,
    Id,
    Lam,
    P1,
    P2,
    Pair,
    Pi,
    Refl,
    Rho,
    Sig,
    Signature,
    Telescope,
    Var,
    _uip_type,
    inst,
    shift,
    subst,
)


class NotHElementary(Exception):
    pass


class ClassVariant(Enum):
    HELEMENTARY = "HElementary"
    HPROP_IDENTITIES = "HPropIdentities"
    NEITHER = "Neither"


_RANK = {
    ClassVariant.HELEMENTARY: 2,
    ClassVariant.HPROP_IDENTITIES: 1,
    ClassVariant.NEITHER: 0,
}


@dataclass(frozen=True)
class ClassTag:
    variant: ClassVariant
    trace: tuple[str, ...] = ()

    def at_least(self, v: ClassVariant) -> bool:
        return _RANK[self.variant] >= _RANK[v]


def hset_witness_type(ty: Expr) -> Expr:
    """Pi x y (p q : x=y). p=q over ty."""
    return _uip_type(ty)


def hprop_witness_type(ty: Expr) -> Expr:
    """Pi x y. x=y over ty."""
    return Pi(ty, Pi(shift(ty, 1, 0), Id(shift(ty, 2, 0), Var(1), Var(0))))


# ---------------------------------------------------------------------------
# classification


def _classify(
    sig: Signature, ty: Expr, registry: dict[Expr, Expr] | None, path: str
) -> tuple[ClassVariant, list[str]]:
    if isinstance(ty, Const):
        atom = sig.lookup(ty.name)
        if atom is not None and atom.kind == "type" and atom.hset:
            return ClassVariant.HELEMENTARY, [f"{path}: h-set atom {ty.name}"]
        return ClassVariant.NEITHER, [f"{path}: atom {ty.name} lacks the h-set flag"]
    if isinstance(ty, (Pi, Sig)):
        former = "Pi" if isinstance(ty, Pi) else "Sigma"
        v1, t1 = _classify(sig, ty.dom, registry, path + ".dom")
        v2, t2 = _classify(sig, ty.cod, registry, path + ".cod")
        rank = min(_RANK[v1], _RANK[v2])
        variant = next(v for v, r in _RANK.items() if r == rank)
        return variant, t1 + t2 + [f"{path}: {former} of the two components"]
    if isinstance(ty, Id):
        v, t = _classify(sig, ty.carrier, registry, path + ".carrier")
        if v is ClassVariant.HELEMENTARY:
            return ClassVariant.HELEMENTARY, t + [f"{path}: identity over h-elementary carrier"]
        if registry is not None and ty in registry:
            return ClassVariant.HPROP_IDENTITIES, t + [f"{path}: registered h-prop witness"]
        return ClassVariant.NEITHER, t + [f"{path}: identity carrier not h-elementary"]
    return ClassVariant.NEITHER, [f"{path}: {type(ty).__name__} is not a type former"]


def classify_type(
    sig: Signature,
    ctx: Telescope,
    ty: Expr,
    hprop_registry: dict[Expr, Expr] | None = None,
) -> ClassTag:
    res = ptt_check(sig, Judgement(Theory.PTT, ctx, IsType(ty)))
    if not isinstance(res, Accept):
        raise IllTyped(res.reason)
    variant, trace = _classify(sig, ty, hprop_registry, "ty")
    return ClassTag(variant, tuple(trace))


def classify_ctx(
    sig: Signature,
    ctx: Telescope,
    hprop_registry: dict[Expr, Expr] | None = None,
) -> ClassTag:
    rank = _RANK[ClassVariant.HELEMENTARY]
    trace: list[str] = ["ctx: empty prefix"] if not ctx.entries else []
    pre = Telescope()
    for name, ty in ctx.entries:
        tag = classify_type(sig, pre, ty, hprop_registry)
        rank = min(rank, _RANK[tag.variant])
        trace.extend(f"{name}.{line}" for line in tag.trace)
        pre = pre.extend(name, ty)
    variant = next(v for v, r in _RANK.items() if r == rank)
    return ClassTag(variant, tuple(trace))


# ---------------------------------------------------------------------------
# h-prop closure helpers


def hprop_id(hset_w: Expr, s: Expr, t: Expr) -> Expr:
    """HPROP(Id(A,s,t)) from HSET(A): identity proofs in an h-set collapse."""
    return Ev(Ev(hset_w, s), t)


def hprop_pi(dom: Expr, cod: Expr, w_fn: Expr) -> Expr:
    """HPROP(Pi(dom, cod)) from w_fn : Pi x:dom. HPROP(cod[x]), via funext.

    cod binds 1 over dom.
    """
    fn_ty = Pi(dom, cod)
    # two function binders u, v; rho's pointwise family adds 3 more (z, z', x)
    ptw = Ev(
        Ev(Ev(shift(w_fn, 5, 0), Var(0)), Ev(Var(4), Var(0))),
        Ev(Var(3), Var(0)),
    )
    return Lam(fn_ty, Lam(shift(fn_ty, 1, 0), Rho(ptw, Var(1), Var(0))))


def hprop_sigma(dom: Expr, cod: Expr, w_dom: Expr, w_cod_fn: Expr) -> Expr:
    """HPROP(Sig(dom, cod)) from HPROP(dom) and Pi p:dom. HPROP(cod[p]).

    Componentwise collapse glued by a pair path, conjugated by surjective
    pairing on both sides.
    """
    pair_ty = Sig(dom, cod)
    t2 = shift(pair_ty, 2, 0)
    dom2, cod2 = shift(dom, 2, 0), shift(cod, 2, 1)
    s, t = Var(1), Var(0)
    p = Ev(Ev(shift(w_dom, 2, 0), P1(s)), P1(t))
    moved = transport_term(dom2, P1(s), P1(t), p, cod2, P2(t))
    q = Ev(Ev(Ev(shift(w_cod_fn, 2, 0), P1(s)), P2(s)), moved)
    pp = pair_path(dom2, cod2, P1(s), P1(t), P2(s), P2(t), p, q)
    pair_s = Pair(P1(s), P2(s), cod2)
    pair_t = Pair(P1(t), P2(t), cod2)
    body = path_chain(
        t2,
        [s, pair_s, pair_t, t],
        [EtaSig(s), pp, inv_term(t2, t, pair_t, EtaSig(t))],
    )
    return Lam(pair_ty, Lam(shift(pair_ty, 1, 0), body))


# ---------------------------------------------------------------------------
# the h-set collapse engine


def _rel_at(rel: Expr, u: Expr, v: Expr) -> Expr:
    """rel binds 2 (left argument outer); instantiate at ambient u, v."""
    return inst(rel, (v, u))


def _rel_family(rel: Expr, u: Expr) -> Expr:
    """z |-> rel(u, z), binding 1, for ambient u."""
    return subst(rel, 1, u)


def refl_rel_hset(
    ty: Expr, rel: Expr, refl_fn: Expr, to_path: Expr, prop_fn: Expr
) -> Expr:
    """HSET(ty) from a reflexive prop-valued relation implying identity.

    rel binds 2 over ty; refl_fn : Pi x. rel(x,x);
    to_path : Pi x y. rel(x,y) -> x=y; prop_fn : Pi x y. HPROP(rel(x,y)).

    Every p : x=y equals the conjugate inv(h x x (r x)) . h x y (s_p) where
    s_p transports r x along inv(p); the relation being prop-valued makes the
    conjugates of any two proofs agree.
    """

    def T(n):
        return shift(ty, n, 0)

    def H(n):
        return shift(to_path, n, 0)

    def R(n):
        return shift(refl_fn, n, 0)

    def W(n):
        return shift(prop_fn, n, 0)

    def Rb(n):
        return shift(rel, n, 2)

    def c(n, x):
        return Ev(Ev(Ev(H(n), x), x), Ev(R(n), x))

    def happ(n, x, y, s):
        return Ev(Ev(Ev(H(n), x), y), s)

    def conj(n, x, y, s):
        return comp_terms(
            T(n), x, x, y, inv_term(T(n), x, x, c(n, x)), happ(n, x, y, s)
        )

    # J motive, 3 binders over the body scope (body scope is ambient + 4)
    s_hat = transport_term(
        T(7),
        Var(1),
        Var(2),
        inv_term(T(7), Var(2), Var(1), Var(0)),
        _rel_family(Rb(7), Var(2)),
        Ev(R(7), Var(2)),
    )
    motive = Id(Id(T(7), Var(2), Var(1)), Var(0), conj(7, Var(2), Var(1), s_hat))

    # J base, 1 binder over the body scope
    i0 = inv_term(T(5), Var(0), Var(0), Refl(Var(0)))
    fam = _rel_family(Rb(5), Var(0))
    r_at = Ev(R(5), Var(0))
    s0 = transport_term(T(5), Var(0), Var(0), i0, fam, r_at)
    riw = refl_inverse_witness(T(5), Var(0))
    fn_tr = transport_term(
        T(6), Var(1), Var(1), Var(0), shift(fam, 1, 1), Ev(R(6), Var(1))
    )
    rel_xx = _rel_at(Rb(5), Var(0), Var(0))
    step_a = ap_term(Id(T(5), Var(0), Var(0)), i0, Refl(Var(0)), riw, fn_tr, rel_xx)
    step_b = transport_refl_witness(T(5), Var(0), fam, r_at)
    tr_refl = transport_term(T(5), Var(0), Var(0), Refl(Var(0)), fam, r_at)
    sc = path_chain(rel_xx, [s0, tr_refl, r_at], [step_a, step_b])
    e_base = conj(5, Var(0), Var(0), s0)
    fn_conj = conj(6, Var(1), Var(1), Var(0))
    cid = Id(T(5), Var(0), Var(0))
    g1 = ap_term(rel_xx, s0, r_at, sc, fn_conj, cid)
    c0 = c(5, Var(0))
    comp_ic = comp_terms(T(5), Var(0), Var(0), Var(0), inv_term(T(5), Var(0), Var(0), c0), c0)
    g2 = inv_l(PathCtx(Telescope(), T(5), Var(0), Var(0), c0))
    chain = path_chain(cid, [e_base, comp_ic, Refl(Var(0))], [g1, g2])
    base = inv_term(cid, e_base, Refl(Var(0)), chain)

    # body: x, y, p, q are Var 3..0
    from .syntax import J

    def s_of(path):
        return transport_term(
            T(4),
            Var(2),
            Var(3),
            inv_term(T(4), Var(3), Var(2), path),
            _rel_family(Rb(4), Var(3)),
            Ev(R(4), Var(3)),
        )

    s_p, s_q = s_of(Var(1)), s_of(Var(0))
    e1 = conj(4, Var(3), Var(2), s_p)
    e2 = conj(4, Var(3), Var(2), s_q)
    collapse_p = J(motive, base, Var(3), Var(2), Var(1))
    collapse_q = J(motive, base, Var(3), Var(2), Var(0))
    prp = Ev(Ev(Ev(Ev(W(4), Var(3)), Var(2)), s_p), s_q)
    bridge = ap_term(
        _rel_at(Rb(4), Var(3), Var(2)),
        s_p,
        s_q,
        prp,
        conj(5, Var(4), Var(3), Var(0)),
        Id(T(4), Var(3), Var(2)),
    )
    goal = Id(T(4), Var(3), Var(2))
    body = path_chain(
        goal,
        [Var(1), e1, e2, Var(0)],
        [collapse_p, bridge, inv_term(goal, Var(0), e2, collapse_q)],
    )
    return Lam(
        ty,
        Lam(
            T(1),
            Lam(Id(T(2), Var(1), Var(0)), Lam(Id(T(3), Var(2), Var(1)), body)),
        ),
    )


def hprop_to_hset(ty: Expr, w: Expr) -> Expr:
    """HSET(ty) from HPROP(ty): use ty itself as the constant relation."""
    rel = shift(ty, 2, 0)
    refl_fn = Lam(ty, Var(0))
    to_path = Lam(
        ty,
        Lam(
            shift(ty, 1, 0),
            Lam(shift(ty, 2, 0), Ev(Ev(shift(w, 3, 0), Var(2)), Var(1))),
        ),
    )
    prop_fn = Lam(ty, Lam(shift(ty, 1, 0), shift(w, 2, 0)))
    return refl_rel_hset(ty, rel, refl_fn, to_path, prop_fn)


# ---------------------------------------------------------------------------
# h-set witnesses for the full class


def _pi_hset(sig: Signature, ctx: Telescope, ty: Pi) -> Expr:
    wb = _hset(sig, ctx.extend("x", ty.dom), ty.cod)
    # relation: pointwise equality, binding (f, g)
    rel = Pi(
        shift(ty.dom, 2, 0),
        Id(shift(ty.cod, 2, 1), Ev(Var(2), Var(0)), Ev(Var(1), Var(0))),
    )
    refl_fn = Lam(ty, Lam(shift(ty.dom, 1, 0), Refl(Ev(Var(1), Var(0)))))
    rel_uv = _rel_at(shift(rel, 2, 2), Var(1), Var(0))
    to_path = Lam(
        ty,
        Lam(shift(ty, 1, 0), Lam(rel_uv, Rho(Ev(Var(3), Var(0)), Var(2), Var(1)))),
    )
    inner = rel_uv.cod  # Id(cod[x], f x, g x) under (f, g, x)
    w_fam = Lam(rel_uv.dom, hprop_id(shift(wb, 2, 1), inner.lhs, inner.rhs))
    prop_fn = Lam(
        ty, Lam(shift(ty, 1, 0), hprop_pi(rel_uv.dom, rel_uv.cod, w_fam))
    )
    return refl_rel_hset(ty, rel, refl_fn, to_path, prop_fn)


def _sig_hset(sig: Signature, ctx: Telescope, ty: Sig) -> Expr:
    wa = _hset(sig, ctx, ty.dom)
    wb = _hset(sig, ctx.extend("x", ty.dom), ty.cod)
    # relation: a path between the first components plus a transported path
    # between the second components, binding (u, v)
    first = Id(shift(ty.dom, 2, 0), P1(Var(1)), P1(Var(0)))
    moved = transport_term(
        shift(ty.dom, 3, 0),
        P1(Var(2)),
        P1(Var(1)),
        Var(0),
        shift(ty.cod, 3, 1),
        P2(Var(1)),
    )
    second = Id(subst(shift(ty.cod, 3, 1), 0, P1(Var(2))), P2(Var(2)), moved)
    rel = Sig(first, second)
    # reflexivity: refl on the first, collapsed transport on the second
    fam1 = shift(ty.cod, 1, 1)
    trw = transport_refl_witness(
        shift(ty.dom, 1, 0), P1(Var(0)), fam1, P2(Var(0))
    )
    tr0 = transport_term(
        shift(ty.dom, 1, 0), P1(Var(0)), P1(Var(0)), Refl(P1(Var(0))), fam1, P2(Var(0))
    )
    snd_ty = subst(shift(ty.cod, 1, 1), 0, P1(Var(0)))
    refl_rel = _rel_at(shift(rel, 1, 2), Var(0), Var(0))
    refl_fn = Lam(
        ty,
        Pair(
            Refl(P1(Var(0))),
            inv_term(snd_ty, tr0, P2(Var(0)), trw),
            refl_rel.cod,
        ),
    )
    # the relation implies identity via a pair path between the etas
    rel_uv = _rel_at(shift(rel, 2, 2), Var(1), Var(0))
    t3 = shift(ty, 3, 0)
    a3, b3 = shift(ty.dom, 3, 0), shift(ty.cod, 3, 1)
    u, v, w = Var(2), Var(1), Var(0)
    pp = pair_path(a3, b3, P1(u), P1(v), P2(u), P2(v), P1(w), P2(w))
    pair_u = Pair(P1(u), P2(u), b3)
    pair_v = Pair(P1(v), P2(v), b3)
    chain = path_chain(
        t3,
        [u, pair_u, pair_v, v],
        [EtaSig(u), pp, inv_term(t3, v, pair_v, EtaSig(v))],
    )
    to_path = Lam(ty, Lam(shift(ty, 1, 0), Lam(rel_uv, chain)))
    # prop-valuedness: both components are identities in h-sets
    w_dom = hprop_id(shift(wa, 2, 0), P1(Var(1)), P1(Var(0)))
    ric = rel_uv.cod
    hb = subst(shift(wb, 3, 1), 0, P1(Var(2)))
    w_cod = Lam(rel_uv.dom, hprop_id(hb, ric.lhs, ric.rhs))
    prop_fn = Lam(
        ty,
        Lam(shift(ty, 1, 0), hprop_sigma(rel_uv.dom, rel_uv.cod, w_dom, w_cod)),
    )
    return refl_rel_hset(ty, rel, refl_fn, to_path, prop_fn)


def _hset(sig: Signature, ctx: Telescope, ty: Expr) -> Expr:
    if isinstance(ty, Const):
        atom = sig.lookup(ty.name)
        if atom is not None and atom.kind == "type" and atom.hset:
            return Const(f"uip_{ty.name}")
        raise NotHElementary(f"atom {ty} lacks the h-set flag")
    if isinstance(ty, Id):
        return hprop_to_hset(ty, hprop_id(_hset(sig, ctx, ty.carrier), ty.lhs, ty.rhs))
    if isinstance(ty, Pi):
        return _pi_hset(sig, ctx, ty)
    if isinstance(ty, Sig):
        return _sig_hset(sig, ctx, ty)
    raise NotHElementary(f"{type(ty).__name__} is not h-elementary")


def build_hset_witness(sig: Signature, ctx: Telescope, ty: Expr) -> Expr:
    """A PTT term of type Pi x y (p q : x=y). p=q over ty."""
    tag = classify_type(sig, ctx, ty)
    if tag.variant is not ClassVariant.HELEMENTARY:
        raise NotHElementary("; ".join(tag.trace))
    return _hset(sig, ctx, ty)


def build_hprop_witness(sig: Signature, ctx: Telescope, ty: Expr) -> Expr | None:
    """A PTT term of type Pi x y. x=y over ty, when the h-prop property is
    derivable: identities over h-elementary carriers, Pi into such an h-prop,
    and Sigma of such h-props.  Returns None otherwise."""
    if isinstance(ty, Id):
        try:
            return hprop_id(_hset(sig, ctx, ty.carrier), ty.lhs, ty.rhs)
        except NotHElementary:
            return None
    if isinstance(ty, Pi):
        w_cod = build_hprop_witness(sig, ctx.extend("x", ty.dom), ty.cod)
        if w_cod is None:
            return None
        return hprop_pi(ty.dom, ty.cod, Lam(ty.dom, w_cod))
    if isinstance(ty, Sig):
        w_dom = build_hprop_witness(sig, ctx, ty.dom)
        w_cod = build_hprop_witness(sig, ctx.extend("x", ty.dom), ty.cod)
        if w_dom is None or w_cod is None:
            return None
        return hprop_sigma(ty.dom, ty.cod, w_dom, Lam(ty.dom, w_cod))
    return None


def hprop_witness_for_id(sig: Signature, ctx: Telescope, id_ty: Expr) -> Expr:
    """A PTT term of type Pi (p q : s=t). p=q for an identity over an
    h-elementary carrier."""
    if not isinstance(id_ty, Id):
        raise NotHElementary(f"{type(id_ty).__name__} is not an identity type")
    return hprop_id(build_hset_witness(sig, ctx, id_ty.carrier), id_ty.lhs, id_ty.rhs)
