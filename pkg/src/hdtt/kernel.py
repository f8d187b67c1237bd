"""Type checkers for the two theories.

The propositional theory (PTT) has no judgmental computation: conversion is
alpha-equality, every beta/eta/J-computation rule exists only as a
propositional witness term.  The extensional theory (ETT) has judgmental
beta/eta, equality reflection, and identity-proof irrelevance; its equality
is a budgeted semi-decision procedure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from . import paths
from .syntax import (
    Beta1,
    Beta2,
    BetaPi,
    Const,
    CtxMorphism,
    EtaPi,
    EtaSig,
    Ev,
    Expr,
    Hcomp,
    Id,
    J,
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
    _map_subterms,
    alpha_eq,
    inst,
    shift,
    subst,
)


class Theory(Enum):
    PTT = "PTT"
    ETT = "ETT"


@dataclass(frozen=True)
class IsType:
    ty: Expr


@dataclass(frozen=True)
class HasType:
    term: Expr
    ty: Expr


@dataclass(frozen=True)
class EqType:
    ty1: Expr
    ty2: Expr


@dataclass(frozen=True)
class EqTerm:
    t1: Expr
    t2: Expr
    ty: Expr


@dataclass(frozen=True)
class Judgement:
    theory: Theory
    ctx: Telescope
    form: IsType | HasType | EqType | EqTerm


@dataclass(frozen=True)
class CheckBudget:
    max_rewrite_steps: int = 10000
    max_closure_terms: int = 2000

    def __post_init__(self):
        if self.max_rewrite_steps <= 0 or self.max_closure_terms <= 0:
            raise ValueError("budget fields must be positive")


@dataclass(frozen=True)
class Accept:
    pass


@dataclass(frozen=True)
class Reject:
    reason: str


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class NotEqual:
    pass


@dataclass(frozen=True)
class Undecided:
    reason: str = ""


class _RejectErr(Exception):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path
        self.msg = msg


class _UndecidedErr(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class IllTyped(Exception):
    pass


# ---------------------------------------------------------------------------
# PTT


def _ptt_is_type(sig: Signature, ctx: Telescope, e: Expr, path: str) -> None:
    if isinstance(e, Const):
        atom = sig.lookup(e.name)
        if atom is None:
            raise _RejectErr(path, f"unknown atom {e.name}")
        if atom.kind != "type":
            raise _RejectErr(path, f"atom {e.name} is a term, not a type")
        return
    if isinstance(e, (Pi, Sig)):
        _ptt_is_type(sig, ctx, e.dom, path + ".dom")
        _ptt_is_type(sig, ctx.extend("x", e.dom), e.cod, path + ".cod")
        return
    if isinstance(e, Id):
        _ptt_is_type(sig, ctx, e.carrier, path + ".carrier")
        _ptt_check_has(sig, ctx, e.lhs, e.carrier, path + ".lhs")
        _ptt_check_has(sig, ctx, e.rhs, e.carrier, path + ".rhs")
        return
    raise _RejectErr(path, f"{type(e).__name__} is not a type former")


def _ptt_check_has(sig: Signature, ctx: Telescope, e: Expr, ty: Expr, path: str) -> None:
    got = _ptt_infer(sig, ctx, e, path)
    if not alpha_eq(got, ty):
        raise _RejectErr(path, f"type mismatch: inferred {got}, expected {ty}")


def _j_motive_ctx(ctx: Telescope, carrier: Expr) -> Telescope:
    """ctx, x : A, x' : A, q : x = x'."""
    return (
        ctx.extend("x", carrier)
        .extend("x'", shift(carrier, 1, 0))
        .extend("q", Id(shift(carrier, 2, 0), Var(1), Var(0)))
    )


def _check_j_parts(
    sig: Signature, ctx: Telescope, carrier: Expr, motive: Expr, base: Expr, path: str
) -> None:
    _ptt_is_type(sig, _j_motive_ctx(ctx, carrier), motive, path + ".motive")
    base_ctx = ctx.extend("x", carrier)
    # the base lives under one binder; re-express the motive there
    want = inst(shift(motive, 1, 3), (Refl(Var(0)), Var(0), Var(0)))
    _ptt_check_has(sig, base_ctx, base, want, path + ".base")


def _ptt_infer(sig: Signature, ctx: Telescope, e: Expr, path: str = "") -> Expr:
    if isinstance(e, Var):
        if not 0 <= e.ix < len(ctx):
            raise _RejectErr(path, f"variable {e.ix} out of scope")
        return ctx.ty_of_var(e.ix)
    if isinstance(e, Const):
        atom = sig.lookup(e.name)
        if atom is None:
            raise _RejectErr(path, f"unknown atom {e.name}")
        if atom.kind != "term":
            raise _RejectErr(path, f"NotInferable: atom {e.name} is a type")
        return atom.ty
    if isinstance(e, Lam):
        _ptt_is_type(sig, ctx, e.dom, path + ".dom")
        body_ty = _ptt_infer(sig, ctx.extend("x", e.dom), e.body, path + ".body")
        return Pi(e.dom, body_ty)
    if isinstance(e, Ev):
        fun_ty = _ptt_infer(sig, ctx, e.fun, path + ".fun")
        if not isinstance(fun_ty, Pi):
            raise _RejectErr(path + ".fun", f"not a dependent product: {fun_ty}")
        _ptt_check_has(sig, ctx, e.arg, fun_ty.dom, path + ".arg")
        return subst(fun_ty.cod, 0, e.arg)
    if isinstance(e, Pair):
        fst_ty = _ptt_infer(sig, ctx, e.fst, path + ".fst")
        _ptt_is_type(sig, ctx.extend("x", fst_ty), e.cod, path + ".cod")
        _ptt_check_has(sig, ctx, e.snd, subst(e.cod, 0, e.fst), path + ".snd")
        return Sig(fst_ty, e.cod)
    if isinstance(e, P1):
        pair_ty = _ptt_infer(sig, ctx, e.pair, path + ".pair")
        if not isinstance(pair_ty, Sig):
            raise _RejectErr(path + ".pair", f"not a dependent sum: {pair_ty}")
        return pair_ty.dom
    if isinstance(e, P2):
        pair_ty = _ptt_infer(sig, ctx, e.pair, path + ".pair")
        if not isinstance(pair_ty, Sig):
            raise _RejectErr(path + ".pair", f"not a dependent sum: {pair_ty}")
        return subst(pair_ty.cod, 0, P1(e.pair))
    if isinstance(e, Refl):
        ty = _ptt_infer(sig, ctx, e.point, path + ".point")
        return Id(ty, e.point, e.point)
    if isinstance(e, J):
        carrier = _ptt_infer(sig, ctx, e.lhs, path + ".lhs")
        _ptt_check_has(sig, ctx, e.rhs, carrier, path + ".rhs")
        _ptt_check_has(sig, ctx, e.path, Id(carrier, e.lhs, e.rhs), path + ".path")
        _check_j_parts(sig, ctx, carrier, e.motive, e.base, path)
        return inst(e.motive, (e.path, e.rhs, e.lhs))
    if isinstance(e, Hcomp):
        carrier = _ptt_infer(sig, ctx, e.point, path + ".point")
        _check_j_parts(sig, ctx, carrier, e.motive, e.base, path)
        at_pt = inst(e.motive, (Refl(e.point), e.point, e.point))
        return Id(
            at_pt,
            J(e.motive, e.base, e.point, e.point, Refl(e.point)),
            subst(e.base, 0, e.point),
        )
    if isinstance(e, BetaPi):
        arg_ty = _ptt_infer(sig, ctx, e.arg, path + ".arg")
        body_ty = _ptt_infer(sig, ctx.extend("x", arg_ty), e.body, path + ".body")
        return Id(
            subst(body_ty, 0, e.arg),
            Ev(Lam(arg_ty, e.body), e.arg),
            subst(e.body, 0, e.arg),
        )
    if isinstance(e, EtaPi):
        fun_ty = _ptt_infer(sig, ctx, e.fun, path + ".fun")
        if not isinstance(fun_ty, Pi):
            raise _RejectErr(path + ".fun", f"not a dependent product: {fun_ty}")
        return Id(fun_ty, e.fun, Lam(fun_ty.dom, Ev(shift(e.fun, 1, 0), Var(0))))
    if isinstance(e, Rho):
        fun_ty = _ptt_infer(sig, ctx, e.z1, path + ".z1")
        if not isinstance(fun_ty, Pi):
            raise _RejectErr(path + ".z1", f"not a dependent product: {fun_ty}")
        _ptt_check_has(sig, ctx, e.z2, fun_ty, path + ".z2")
        # ptw binds (z, z', x); check it with z, z' instantiated at z1, z2
        ptw_inst = subst(subst(e.ptw, 2, e.z1), 1, e.z2)
        want = Id(
            fun_ty.cod,
            Ev(shift(e.z1, 1, 0), Var(0)),
            Ev(shift(e.z2, 1, 0), Var(0)),
        )
        _ptt_check_has(sig, ctx.extend("x", fun_ty.dom), ptw_inst, want, path + ".ptw")
        return Id(fun_ty, e.z1, e.z2)
    if isinstance(e, (Beta1, Beta2)):
        fst_ty = _ptt_infer(sig, ctx, e.fst, path + ".fst")
        _ptt_is_type(sig, ctx.extend("x", fst_ty), e.cod, path + ".cod")
        _ptt_check_has(sig, ctx, e.snd, subst(e.cod, 0, e.fst), path + ".snd")
        pair = Pair(e.fst, e.snd, e.cod)
        beta1 = Beta1(e.fst, e.snd, e.cod)
        if isinstance(e, Beta1):
            return Id(fst_ty, P1(pair), e.fst)
        moved = paths.transport_term(fst_ty, P1(pair), e.fst, beta1, e.cod, e.snd)
        return Id(subst(e.cod, 0, P1(pair)), P2(pair), moved)
    if isinstance(e, EtaSig):
        pair_ty = _ptt_infer(sig, ctx, e.pair, path + ".pair")
        if not isinstance(pair_ty, Sig):
            raise _RejectErr(path + ".pair", f"not a dependent sum: {pair_ty}")
        return Id(pair_ty, e.pair, Pair(P1(e.pair), P2(e.pair), pair_ty.cod))
    raise _RejectErr(path, f"cannot infer {type(e).__name__}")


def _check_telescope(sig: Signature, ctx: Telescope, theory: Theory, budget=None):
    pre = Telescope()
    for hint, ty in ctx.entries:
        if theory is Theory.PTT:
            _ptt_is_type(sig, pre, ty, f"ctx.{hint}")
        else:
            _ett_is_type(sig, pre, ty, budget, f"ctx.{hint}")
        pre = pre.extend(hint, ty)


def ptt_infer(sig: Signature, ctx: Telescope, e: Expr) -> Expr | Reject:
    try:
        return _ptt_infer(sig, ctx, e)
    except _RejectErr as err:
        return Reject(str(err))


def ptt_check(sig: Signature, j: Judgement) -> Accept | Reject:
    if j.theory is not Theory.PTT:
        return Reject("judgement is not a PTT judgement")
    try:
        _check_telescope(sig, j.ctx, Theory.PTT)
        f = j.form
        if isinstance(f, IsType):
            _ptt_is_type(sig, j.ctx, f.ty, "ty")
        elif isinstance(f, HasType):
            _ptt_check_has(sig, j.ctx, f.term, f.ty, "term")
        elif isinstance(f, EqType):
            _ptt_is_type(sig, j.ctx, f.ty1, "ty1")
            _ptt_is_type(sig, j.ctx, f.ty2, "ty2")
            if not alpha_eq(f.ty1, f.ty2):
                raise _RejectErr("eq", "types not alpha-equal")
        elif isinstance(f, EqTerm):
            _ptt_check_has(sig, j.ctx, f.t1, f.ty, "t1")
            _ptt_check_has(sig, j.ctx, f.t2, f.ty, "t2")
            if not alpha_eq(f.t1, f.t2):
                raise _RejectErr("eq", "terms not alpha-equal (no judgmental computation)")
        else:
            raise _RejectErr("form", "unknown judgement form")
        return Accept()
    except _RejectErr as err:
        return Reject(str(err))


# ---------------------------------------------------------------------------
# ETT

_PTT_ONLY = (J, Hcomp, BetaPi, EtaPi, Rho, Beta1, Beta2, EtaSig)


class _Fuel:
    def __init__(self, budget: CheckBudget):
        self.steps = budget.max_rewrite_steps
        self.max_terms = budget.max_closure_terms

    def tick(self):
        self.steps -= 1
        if self.steps < 0:
            raise _UndecidedErr("rewrite budget exhausted")


def _ett_nf(e: Expr, fuel: _Fuel) -> Expr:
    """Full beta/eta/projection normal form."""
    while True:
        e2 = _map_subterms(e, 0, lambda sub, _d: _ett_nf(sub, fuel))
        red = _ett_step(e2)
        if red is None:
            return e2
        fuel.tick()
        e = red


def _ett_step(e: Expr) -> Expr | None:
    if isinstance(e, Ev) and isinstance(e.fun, Lam):
        return subst(e.fun.body, 0, e.arg)
    if isinstance(e, P1) and isinstance(e.pair, Pair):
        return e.pair.fst
    if isinstance(e, P2) and isinstance(e.pair, Pair):
        return e.pair.snd
    if isinstance(e, Lam):
        # eta: \x. ev(f^, x) -> f
        b = e.body
        if isinstance(b, Ev) and b.arg == Var(0):
            try:
                return shift(b.fun, -1, 0)
            except Exception:
                return None
    if isinstance(e, Pair):
        if isinstance(e.fst, P1) and isinstance(e.snd, P2) and e.fst.pair == e.snd.pair:
            return e.fst.pair
    return None


class _Closure:
    """Naive congruence closure over a finite set of scope-level subterms."""

    def __init__(self, fuel: _Fuel):
        self.terms: list[Expr] = []
        self.index: dict[Expr, int] = {}
        self.parent: list[int] = []
        self.fuel = fuel

    def add(self, e: Expr) -> int:
        if e in self.index:
            return self.index[e]
        if len(self.terms) >= self.fuel.max_terms:
            raise _UndecidedErr("closure term budget exhausted")
        i = len(self.terms)
        self.terms.append(e)
        self.index[e] = i
        self.parent.append(i)
        # register children of transparent nodes
        if isinstance(e, Ev):
            self.add(e.fun)
            self.add(e.arg)
        elif isinstance(e, (P1, P2)):
            self.add(e.pair)
        elif isinstance(e, Refl):
            self.add(e.point)
        return i

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        self.parent[max(ri, rj)] = min(ri, rj)
        return True

    def _children(self, e: Expr):
        if isinstance(e, Ev):
            return ("Ev", (self.index[e.fun], self.index[e.arg]))
        if isinstance(e, P1):
            return ("P1", (self.index[e.pair],))
        if isinstance(e, P2):
            return ("P2", (self.index[e.pair],))
        if isinstance(e, Refl):
            return ("Refl", (self.index[e.point],))
        return (repr(e), ())

    def saturate(self) -> None:
        changed = True
        while changed:
            changed = False
            self.fuel.tick()
            sigs: dict[tuple, int] = {}
            for i, e in enumerate(self.terms):
                tag, kids = self._children(e)
                key = (tag, tuple(self.find(k) for k in kids))
                if key in sigs:
                    if self.union(sigs[key], i):
                        changed = True
                else:
                    sigs[key] = i

    def equal(self, a: Expr, b: Expr) -> bool:
        return self.find(self.add(a)) == self.find(self.add(b))


def _has_binders(e: Expr) -> bool:
    if isinstance(e, (Lam, Pair, Pi, Sig)) or isinstance(e, _PTT_ONLY):
        return True
    found = False

    def check(sub, _d):
        nonlocal found
        if not found and _has_binders(sub):
            found = True
        return sub

    _map_subterms(e, 0, check)
    return found


def _ctx_equations(sig: Signature, ctx: Telescope, fuel: _Fuel) -> list[tuple[Expr, Expr]]:
    eqs = []
    for ix in range(len(ctx)):
        ty = _ett_nf(ctx.ty_of_var(ix), fuel)
        if isinstance(ty, Id):
            eqs.append((ty.lhs, ty.rhs))
    for name, atom in sig.atoms.items():
        if atom.kind == "term" and sig.ett_visible(name):
            ty = _ett_nf(atom.ty, fuel)
            if isinstance(ty, Id):
                eqs.append((ty.lhs, ty.rhs))
    return eqs


def _ett_terms_equal(
    sig: Signature, ctx: Telescope, t1: Expr, t2: Expr, ty: Expr, fuel: _Fuel
) -> Equal | NotEqual | Undecided:
    ty = _ett_nf(ty, fuel)
    if isinstance(ty, Id):
        return Equal()  # identity proof irrelevance
    if isinstance(ty, Pi):
        ext = ctx.extend("x", ty.dom)
        a = Ev(shift(t1, 1, 0), Var(0))
        b = Ev(shift(t2, 1, 0), Var(0))
        return _ett_terms_equal(sig, ext, a, b, ty.cod, fuel)
    if isinstance(ty, Sig):
        r1 = _ett_terms_equal(sig, ctx, P1(t1), P1(t2), ty.dom, fuel)
        if not isinstance(r1, Equal):
            return r1
        return _ett_terms_equal(
            sig, ctx, P2(t1), P2(t2), subst(ty.cod, 0, P1(t1)), fuel
        )
    # base type: normalize then congruence closure over hypotheses
    n1, n2 = _ett_nf(t1, fuel), _ett_nf(t2, fuel)
    if n1 == n2:
        return Equal()
    cl = _Closure(fuel)
    cl.add(n1)
    cl.add(n2)
    for l, r in _ctx_equations(sig, ctx, fuel):
        cl.union(cl.add(l), cl.add(r))
    _saturate_with_irrelevance(sig, ctx, cl, fuel)
    if cl.equal(n1, n2):
        return Equal()
    if _has_binders(n1) or _has_binders(n2):
        return Undecided("terms contain higher-order structure beyond the decided fragment")
    return NotEqual()


def _node_id_type(sig: Signature, ctx: Telescope, e: Expr, fuel: _Fuel) -> Id | None:
    """Identity type of a node when cheaply known (variables, atoms, refl)."""
    ty = None
    if isinstance(e, Var) and 0 <= e.ix < len(ctx):
        ty = ctx.ty_of_var(e.ix)
    elif isinstance(e, Const):
        atom = sig.lookup(e.name)
        if atom is not None and atom.kind == "term":
            ty = atom.ty
    elif isinstance(e, Refl):
        return Id(Const("?"), e.point, e.point)  # carrier unused by the merge
    if ty is None:
        return None
    ty = _ett_nf(ty, fuel)
    return ty if isinstance(ty, Id) else None


def _saturate_with_irrelevance(
    sig: Signature, ctx: Telescope, cl: "_Closure", fuel: _Fuel
) -> None:
    """Saturate, additionally merging identity proofs whose endpoints are
    already identified (proof irrelevance inside first-order terms)."""
    typed: list[tuple[int, Id]] = []
    for i, e in enumerate(list(cl.terms)):
        idty = _node_id_type(sig, ctx, e, fuel)
        if idty is not None:
            cl.add(idty.lhs)
            cl.add(idty.rhs)
            typed.append((i, idty))
    while True:
        cl.saturate()
        merged = False
        for (i, ti), (j, tj) in itertools.combinations(typed, 2):
            if cl.find(i) == cl.find(j):
                continue
            if cl.equal(ti.lhs, tj.lhs) and cl.equal(ti.rhs, tj.rhs):
                cl.union(i, j)
                merged = True
        if not merged:
            return


def ett_equal(
    sig: Signature, ctx: Telescope, t1: Expr, t2: Expr, ty: Expr, budget: CheckBudget
) -> Equal | NotEqual | Undecided:
    fuel = _Fuel(budget)
    for t in (t1, t2):
        r = _ett_check_has_result(sig, ctx, t, ty, budget)
        if isinstance(r, Reject):
            raise IllTyped(r.reason)
        if isinstance(r, Undecided):
            return r
    try:
        return _ett_terms_equal(sig, ctx, t1, t2, ty, fuel)
    except _UndecidedErr as err:
        return Undecided(err.reason)


def _ett_type_equal(
    sig: Signature, ctx: Telescope, a: Expr, b: Expr, fuel: _Fuel
) -> bool:
    a, b = _ett_nf(a, fuel), _ett_nf(b, fuel)
    if isinstance(a, Const) and isinstance(b, Const):
        return a.name == b.name
    if isinstance(a, Pi) and isinstance(b, Pi) or isinstance(a, Sig) and isinstance(b, Sig):
        if not _ett_type_equal(sig, ctx, a.dom, b.dom, fuel):
            return False
        return _ett_type_equal(sig, ctx.extend("x", a.dom), a.cod, b.cod, fuel)
    if isinstance(a, Id) and isinstance(b, Id):
        if not _ett_type_equal(sig, ctx, a.carrier, b.carrier, fuel):
            return False
        for u, v in ((a.lhs, b.lhs), (a.rhs, b.rhs)):
            r = _ett_terms_equal(sig, ctx, u, v, a.carrier, fuel)
            if isinstance(r, Undecided):
                raise _UndecidedErr(r.reason or "endpoint comparison undecided")
            if isinstance(r, NotEqual):
                return False
        return True
    return False


def _ett_is_type(sig: Signature, ctx: Telescope, e: Expr, budget: CheckBudget, path: str):
    if isinstance(e, Const):
        atom = sig.lookup(e.name)
        if atom is None or atom.kind != "type":
            raise _RejectErr(path, f"{e.name} is not a type atom")
        if not atom.hset:
            raise _RejectErr(path, f"atom {e.name} is not visible to the extensional theory")
        return
    if isinstance(e, (Pi, Sig)):
        _ett_is_type(sig, ctx, e.dom, budget, path + ".dom")
        _ett_is_type(sig, ctx.extend("x", e.dom), e.cod, budget, path + ".cod")
        return
    if isinstance(e, Id):
        _ett_is_type(sig, ctx, e.carrier, budget, path + ".carrier")
        _ett_check_has(sig, ctx, e.lhs, e.carrier, budget, path + ".lhs")
        _ett_check_has(sig, ctx, e.rhs, e.carrier, budget, path + ".rhs")
        return
    raise _RejectErr(path, f"{type(e).__name__} is not a type former")


def _ett_check_has(
    sig: Signature, ctx: Telescope, e: Expr, ty: Expr, budget: CheckBudget, path: str
):
    got = _ett_infer(sig, ctx, e, budget, path)
    fuel = _Fuel(budget)
    if not _ett_type_equal(sig, ctx, got, ty, fuel):
        raise _RejectErr(path, f"type mismatch: inferred {got}, expected {ty}")


def _ett_whnf_ty(e: Expr, budget: CheckBudget) -> Expr:
    return _ett_nf(e, _Fuel(budget))


def _ett_infer(
    sig: Signature, ctx: Telescope, e: Expr, budget: CheckBudget, path: str
) -> Expr:
    if isinstance(e, _PTT_ONLY):
        raise _RejectErr(path, f"{type(e).__name__} is a propositional-theory witness form")
    if isinstance(e, Var):
        if not 0 <= e.ix < len(ctx):
            raise _RejectErr(path, f"variable {e.ix} out of scope")
        return ctx.ty_of_var(e.ix)
    if isinstance(e, Const):
        atom = sig.lookup(e.name)
        if atom is None:
            raise _RejectErr(path, f"unknown atom {e.name}")
        if not sig.ett_visible(e.name):
            raise _RejectErr(path, f"atom {e.name} is not visible to the extensional theory")
        if atom.kind != "term":
            raise _RejectErr(path, f"atom {e.name} is a type")
        return atom.ty
    if isinstance(e, Lam):
        _ett_is_type(sig, ctx, e.dom, budget, path + ".dom")
        body_ty = _ett_infer(sig, ctx.extend("x", e.dom), e.body, budget, path + ".body")
        return Pi(e.dom, body_ty)
    if isinstance(e, Ev):
        fun_ty = _ett_whnf_ty(_ett_infer(sig, ctx, e.fun, budget, path + ".fun"), budget)
        if not isinstance(fun_ty, Pi):
            raise _RejectErr(path + ".fun", f"not a dependent product: {fun_ty}")
        _ett_check_has(sig, ctx, e.arg, fun_ty.dom, budget, path + ".arg")
        return subst(fun_ty.cod, 0, e.arg)
    if isinstance(e, Pair):
        fst_ty = _ett_infer(sig, ctx, e.fst, budget, path + ".fst")
        _ett_is_type(sig, ctx.extend("x", fst_ty), e.cod, budget, path + ".cod")
        _ett_check_has(sig, ctx, e.snd, subst(e.cod, 0, e.fst), budget, path + ".snd")
        return Sig(fst_ty, e.cod)
    if isinstance(e, P1):
        pair_ty = _ett_whnf_ty(_ett_infer(sig, ctx, e.pair, budget, path + ".pair"), budget)
        if not isinstance(pair_ty, Sig):
            raise _RejectErr(path + ".pair", f"not a dependent sum: {pair_ty}")
        return pair_ty.dom
    if isinstance(e, P2):
        pair_ty = _ett_whnf_ty(_ett_infer(sig, ctx, e.pair, budget, path + ".pair"), budget)
        if not isinstance(pair_ty, Sig):
            raise _RejectErr(path + ".pair", f"not a dependent sum: {pair_ty}")
        return subst(pair_ty.cod, 0, P1(e.pair))
    if isinstance(e, Refl):
        ty = _ett_infer(sig, ctx, e.point, budget, path + ".point")
        return Id(ty, e.point, e.point)
    raise _RejectErr(path, f"cannot infer {type(e).__name__}")


def _ett_check_has_result(sig, ctx, t, ty, budget):
    try:
        _ett_check_has(sig, ctx, t, ty, budget, "term")
        return Accept()
    except _RejectErr as err:
        return Reject(str(err))
    except _UndecidedErr as err:
        return Undecided(err.reason)


def ett_check(
    sig: Signature, j: Judgement, budget: CheckBudget
) -> Accept | Reject | Undecided:
    if j.theory is not Theory.ETT:
        return Reject("judgement is not an ETT judgement")
    try:
        _check_telescope(sig, j.ctx, Theory.ETT, budget)
        f = j.form
        if isinstance(f, IsType):
            _ett_is_type(sig, j.ctx, f.ty, budget, "ty")
        elif isinstance(f, HasType):
            _ett_check_has(sig, j.ctx, f.term, f.ty, budget, "term")
        elif isinstance(f, EqType):
            _ett_is_type(sig, j.ctx, f.ty1, budget, "ty1")
            _ett_is_type(sig, j.ctx, f.ty2, budget, "ty2")
            if not _ett_type_equal(sig, j.ctx, f.ty1, f.ty2, _Fuel(budget)):
                raise _RejectErr("eq", "types not provably equal")
        elif isinstance(f, EqTerm):
            _ett_check_has(sig, j.ctx, f.t1, f.ty, budget, "t1")
            _ett_check_has(sig, j.ctx, f.t2, f.ty, budget, "t2")
            r = ett_equal(sig, j.ctx, f.t1, f.t2, f.ty, budget)
            if isinstance(r, Undecided):
                return r
            if isinstance(r, NotEqual):
                raise _RejectErr("eq", "terms not equal")
        else:
            raise _RejectErr("form", "unknown judgement form")
        return Accept()
    except _RejectErr as err:
        return Reject(str(err))
    except _UndecidedErr as err:
        return Undecided(err.reason)


# ---------------------------------------------------------------------------
# morphisms


def check_morphism(
    sig: Signature,
    theory: Theory,
    m: CtxMorphism,
    budget: CheckBudget | None = None,
) -> Accept | Reject | Undecided:
    budget = budget or CheckBudget()
    for tele in (m.source, m.target):
        try:
            _check_telescope(sig, tele, theory, budget)
        except _RejectErr as err:
            return Reject(str(err))
        except _UndecidedErr as err:
            return Undecided(err.reason)
    for i in range(len(m.comps)):
        want = m.instantiated_ty(i)
        form = HasType(m.comps[i], want)
        if theory is Theory.PTT:
            r = ptt_check(sig, Judgement(Theory.PTT, m.source, form))
        else:
            r = ett_check(sig, Judgement(Theory.ETT, m.source, form), budget)
        if not isinstance(r, Accept):
            return r
    return Accept()
