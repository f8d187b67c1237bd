"""Search for propositional-equality witnesses.

Every returned term is an explicit PTT proof; nothing is trusted beyond the
kernel.  The strategies, in order:

  1. reflexivity on alpha-equal endpoints;
  2. h-prop collapse when the goal's carrier provably has at most one
     element (identities over h-elementary carriers and their Pi/Sigma
     closures);
  3. propositional normalization of both endpoints: beta, projection,
     J-at-refl, and constant-family transport collapses, applied through
     ap-congruence at type-preserving positions, then comparison of the
     normal forms;
  4. pointwise reduction under Pi (rho funext) and componentwise reduction
     under Sigma (pair paths conjugated by surjective pairing);
  5. groupoid word normalization when the goal relates two path terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import build_hprop_witness
from .kernel import Reject, ptt_infer
from .paths import (
    comp_terms,
    inv_term,
    pair_path,
    path_chain,
    transport_const,
    transport_motive,
    transport_term,
    word_eq,
)
from .paths import ap_term
from .syntax import (
    Beta1,
    Beta2,
    BetaPi,
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
    alpha_eq,
    free_in,
    shift,
    subst,
)


class NotProved(Exception):
    pass


def _chain(carrier: Expr, points: list[Expr], steps: list[Expr | None]) -> Expr | None:
    """Compose optional steps, dropping identity links."""
    live_pts = [points[0]]
    live = []
    for pt, st in zip(points[1:], steps):
        if st is None:
            continue
        live.append(st)
        live_pts.append(pt)
    if not live:
        return None
    return path_chain(carrier, live_pts, live)


@dataclass
class Prover:
    sig: Signature
    max_rounds: int = 128
    _hprop_cache: dict = field(default_factory=dict)

    # -- typing ------------------------------------------------------------

    def infer(self, ctx: Telescope, e: Expr) -> Expr:
        ty = ptt_infer(self.sig, ctx, e)
        if isinstance(ty, Reject):
            raise NotProved(f"endpoint does not type-check: {ty.reason}")
        return ty

    # -- head reductions with witnesses ------------------------------------

    def _head_step(self, ctx: Telescope, e: Expr) -> tuple[Expr, Expr] | None:
        if isinstance(e, Ev) and isinstance(e.fun, Lam):
            arg_ty = self.infer(ctx, e.arg)
            if alpha_eq(arg_ty, e.fun.dom):
                return subst(e.fun.body, 0, e.arg), BetaPi(e.fun.body, e.arg)
        if isinstance(e, P1) and isinstance(e.pair, Pair):
            p = e.pair
            return p.fst, Beta1(p.fst, p.snd, p.cod)
        if isinstance(e, P2) and isinstance(e.pair, Pair):
            p = e.pair
            fst_ty = self.infer(ctx, p.fst)
            beta1 = Beta1(p.fst, p.snd, p.cod)
            moved = transport_term(fst_ty, P1(p), p.fst, beta1, p.cod, p.snd)
            return moved, Beta2(p.fst, p.snd, p.cod)
        if isinstance(e, J) and isinstance(e.path, Refl):
            pt = e.path.point
            if alpha_eq(e.lhs, pt) and alpha_eq(e.rhs, pt):
                return subst(e.base, 0, pt), Hcomp(e.motive, e.base, pt)
        if (
            isinstance(e, Ev)
            and isinstance(e.fun, J)
            and isinstance(e.fun.base, Lam)
            and e.fun.base.body == Var(0)
        ):
            # a transport whose family ignores its argument
            fam = e.fun.base.dom
            j = e.fun
            if not free_in(fam, 0) and alpha_eq(j.motive, transport_motive(fam)):
                path_ty = self.infer(ctx, j.path)
                if isinstance(path_ty, Id) and not isinstance(j.path, Refl):
                    w = transport_const(
                        path_ty.carrier, j.lhs, j.rhs, j.path, fam, e.arg
                    )
                    return e.arg, w
        return None

    # -- congruence positions ----------------------------------------------

    def _child_slots(self, ctx: Telescope, e: Expr):
        """Yield (child, rebuild, hole_body) for type-preserving positions.

        rebuild(c) replaces the child; hole_body is the whole term with the
        child replaced by Var(0) and everything else shifted under it.
        """
        if isinstance(e, Ev):
            yield e.fun, lambda c: Ev(c, e.arg), Ev(Var(0), shift(e.arg, 1, 0))
            fun_ty = self.infer(ctx, e.fun)
            if isinstance(fun_ty, Pi) and not free_in(fun_ty.cod, 0):
                yield e.arg, lambda c: Ev(e.fun, c), Ev(shift(e.fun, 1, 0), Var(0))
        elif isinstance(e, P1):
            yield e.pair, lambda c: P1(c), P1(Var(0))
        elif isinstance(e, P2):
            pair_ty = self.infer(ctx, e.pair)
            if isinstance(pair_ty, Sig) and not free_in(pair_ty.cod, 0):
                yield e.pair, lambda c: P2(c), P2(Var(0))
        elif isinstance(e, Pair):
            yield (
                e.snd,
                lambda c: Pair(e.fst, c, e.cod),
                Pair(shift(e.fst, 1, 0), Var(0), shift(e.cod, 1, 1)),
            )
            if not free_in(e.cod, 0):
                yield (
                    e.fst,
                    lambda c: Pair(c, e.snd, e.cod),
                    Pair(Var(0), shift(e.snd, 1, 0), shift(e.cod, 1, 1)),
                )

    # -- normalization -----------------------------------------------------

    def normalize(self, ctx: Telescope, e: Expr) -> tuple[Expr, Expr | None]:
        """Reduce e, returning (normal form, proof e = nf or None)."""
        ty = self.infer(ctx, e)
        cur, proof = e, None
        for _ in range(self.max_rounds):
            nxt = self._one_round(ctx, cur, ty)
            if nxt is None:
                return cur, proof
            cur2, step = nxt
            if proof is None:
                proof = step
            else:
                proof = comp_terms(ty, e, cur, cur2, proof, step)
            cur = cur2
        return cur, proof

    def _one_round(self, ctx: Telescope, e: Expr, ty: Expr):
        st = self._head_step(ctx, e)
        if st is not None:
            return st
        for child, rebuild, hole in self._child_slots(ctx, e):
            child_ty = self.infer(ctx, child)
            c2, pc = self.normalize(ctx, child)
            if pc is None:
                continue
            new = rebuild(c2)
            glue = ap_term(child_ty, child, c2, pc, hole, ty)
            return new, glue
        return None

    # -- h-prop collapse ---------------------------------------------------

    def _hprop(self, ctx: Telescope, ty: Expr) -> Expr | None:
        key = ty
        if key not in self._hprop_cache:
            self._hprop_cache[key] = build_hprop_witness(self.sig, ctx, ty)
        return self._hprop_cache[key]

    # -- entry point ---------------------------------------------------------

    def prove(self, ctx: Telescope, carrier: Expr, lhs: Expr, rhs: Expr) -> Expr:
        """A term of type Id(carrier, lhs, rhs), or NotProved."""
        if alpha_eq(lhs, rhs):
            return Refl(lhs)
        w = self._hprop(ctx, carrier)
        if w is not None:
            return Ev(Ev(w, lhs), rhs)
        l2, pl = self.normalize(ctx, lhs)
        r2, pr = self.normalize(ctx, rhs)
        if alpha_eq(l2, r2):
            core = None
        else:
            core = self._structural(ctx, carrier, l2, r2)
        back = None if pr is None else inv_term(carrier, rhs, r2, pr)
        out = _chain(carrier, [lhs, l2, r2, rhs], [pl, core, back])
        if out is None:
            return Refl(lhs)
        return out

    def _structural(self, ctx: Telescope, carrier: Expr, lhs: Expr, rhs: Expr) -> Expr:
        if isinstance(carrier, Pi):
            inner = ctx.extend("x", carrier.dom)
            lx = Ev(shift(lhs, 1, 0), Var(0))
            rx = Ev(shift(rhs, 1, 0), Var(0))
            pw = self.prove(inner, carrier.cod, lx, rx)
            return Rho(shift(pw, 2, 1), lhs, rhs)
        if isinstance(carrier, Sig):
            p = self.prove(ctx, carrier.dom, P1(lhs), P1(rhs))
            moved = transport_term(
                carrier.dom, P1(lhs), P1(rhs), p, carrier.cod, P2(rhs)
            )
            q = self.prove(ctx, subst(carrier.cod, 0, P1(lhs)), P2(lhs), moved)
            pp = pair_path(
                carrier.dom, carrier.cod, P1(lhs), P1(rhs), P2(lhs), P2(rhs), p, q
            )
            pair_l = Pair(P1(lhs), P2(lhs), carrier.cod)
            pair_r = Pair(P1(rhs), P2(rhs), carrier.cod)
            return path_chain(
                carrier,
                [lhs, pair_l, pair_r, rhs],
                [EtaSig(lhs), pp, inv_term(carrier, rhs, pair_r, EtaSig(rhs))],
            )
        if isinstance(carrier, Id):
            try:
                return word_eq(carrier.carrier, carrier.lhs, carrier.rhs, lhs, rhs)
            except Exception as err:
                raise NotProved(f"word normalization failed: {err}") from err
        raise NotProved(f"no strategy closed the goal between {lhs} and {rhs}")
