"""Derived path combinators: every function here elaborates an explicit term
of the propositional theory.  Nothing is trusted; callers re-check outputs
with the kernel.

Convention: for p : u = v the transport operator p^* maps family(v) to
family(u) (backward), so proofs can be read left to right along a telescope.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from functools import wraps

from .syntax import (
    BetaPi,
    Beta1,
    Beta2,
    Const,
    CtxMorphism,
    CtxPropEq,
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
    Telescope,
    NegativeShiftEscape,
    Var,
    alpha_eq,
    free_in,
    inst,
    _map_subterms,
    shift,
    subst,
)


class PathError(Exception):
    pass


class MotiveNotGeneralizable(PathError):
    pass


class EndpointMismatch(PathError):
    pass


@dataclass(frozen=True)
class PathCtx:
    """A path packaged with its typing data: path : Id(carrier, lhs, rhs) in ctx."""

    ctx: Telescope
    carrier: Expr
    lhs: Expr
    rhs: Expr
    path: Expr


def _fam_at(family: Expr, point: Expr) -> Expr:
    """family binds 1; plug in a point from the ambient scope."""
    return subst(family, 0, point)


def transport_motive(family: Expr) -> Expr:
    """The J motive for transport: (x, x', q) |-> family(x') -> family(x)."""
    fam3 = shift(family, 3, 1)
    at_tgt = subst(fam3, 0, Var(1))  # family(x')
    at_src = subst(fam3, 0, Var(2))  # family(x)
    return Pi(at_tgt, shift(at_src, 1, 0))


def transport_fn(carrier: Expr, lhs: Expr, rhs: Expr, path: Expr, family: Expr) -> Expr:
    """The coercion function family(rhs) -> family(lhs), as a term."""
    return J(transport_motive(family), Lam(family, Var(0)), lhs, rhs, path)


def transport_term(
    carrier: Expr, lhs: Expr, rhs: Expr, path: Expr, family: Expr, t: Expr
) -> Expr:
    """p^* t : family(lhs), for p : Id(carrier, lhs, rhs) and t : family(rhs)."""
    return Ev(transport_fn(carrier, lhs, rhs, path, family), t)


def transport(pc: PathCtx, family: Expr, t: Expr) -> Expr:
    return transport_term(pc.carrier, pc.lhs, pc.rhs, pc.path, family, t)


def inverse(pc: PathCtx) -> Expr:
    """p^-1 : Id(carrier, rhs, lhs)."""
    a3 = shift(pc.carrier, 3, 0)
    motive = Id(a3, Var(1), Var(2))  # x' = x
    base = Refl(Var(0))
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def _compose_parts(carrier: Expr, lhs: Expr) -> tuple[Expr, Expr]:
    """Motive and base of the J used by compose, as functions of the first
    path's carrier and left endpoint."""
    a3 = shift(carrier, 3, 0)
    # J on the second path; motive (x, x', w) |-> (lhs = x) -> (lhs = x')
    l3 = shift(lhs, 3, 0)
    motive = Pi(Id(a3, l3, Var(2)), Id(shift(a3, 1, 0), shift(l3, 1, 0), Var(2)))
    base = Lam(Id(shift(carrier, 1, 0), shift(lhs, 1, 0), Var(0)), Var(0))
    return motive, base


def compose(first: PathCtx, second: PathCtx) -> Expr:
    """first • second : Id(carrier, first.lhs, second.rhs)."""
    if first.rhs != second.lhs or first.carrier != second.carrier:
        raise EndpointMismatch("composition endpoints do not meet")
    return comp_terms(
        first.carrier, first.lhs, first.rhs, second.rhs, first.path, second.path
    )


def comp_terms(carrier: Expr, a: Expr, b: Expr, c: Expr, p: Expr, q: Expr) -> Expr:
    """p • q : Id(carrier, a, c) for p : a=b, q : b=c."""
    motive, base = _compose_parts(carrier, a)
    return Ev(J(motive, base, b, c, q), p)


def inv_term(carrier: Expr, lhs: Expr, rhs: Expr, path: Expr) -> Expr:
    return inverse(PathCtx(Telescope(), carrier, lhs, rhs, path))


def ap(pc: PathCtx, fn_body: Expr, cod: Expr) -> Expr:
    """ap of (x |-> fn_body) along pc: Id(cod, fn_body[lhs], fn_body[rhs]).

    fn_body binds 1 over the carrier; cod lives in the ambient scope (the
    codomain may not depend on the binder).
    """
    c3 = shift(cod, 3, 0)
    body3 = shift(fn_body, 3, 1)
    motive = Id(c3, subst(body3, 0, Var(2)), subst(body3, 0, Var(1)))
    base = Refl(fn_body)  # under 1 binder, fn_body[x] with x = Var 0
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def ap_term(
    carrier: Expr, lhs: Expr, rhs: Expr, path: Expr, fn_body: Expr, cod: Expr
) -> Expr:
    return ap(PathCtx(Telescope(), carrier, lhs, rhs, path), fn_body, cod)


# ---------------------------------------------------------------------------
# collapse of J at a literal reflexivity path


def transport_refl_witness(carrier: Expr, point: Expr, family: Expr, t: Expr) -> Expr:
    """Witness that transport along Refl(point) returns t, propositionally.

    : Id(family(point), transport(Refl point, family, t), t)
    """
    motive = transport_motive(family)
    base = Lam(family, Var(0))
    fam_pt = _fam_at(family, point)
    # Hcomp: J(..., Refl pt) = (\d. d) at the coercion type
    h = Hcomp(motive, base, point)
    coerce_ty = Pi(fam_pt, shift(fam_pt, 1, 0))
    j_term = J(motive, base, point, point, Refl(point))
    # apply both sides to t
    applied = ap(
        PathCtx(Telescope(), coerce_ty, j_term, Lam(fam_pt, Var(0)), h),
        Ev(Var(0), shift(t, 1, 0)),
        fam_pt,
    )
    beta = BetaPi(Var(0), t)  # ev(\d. d, t) = t
    return comp_terms(
        fam_pt, Ev(j_term, t), Ev(Lam(fam_pt, Var(0)), t), t, applied, beta
    )


def transport_const(
    carrier: Expr, lhs: Expr, rhs: Expr, path: Expr, family: Expr, t: Expr
) -> Expr:
    """Transport in a family that ignores its argument returns the input.

    family binds 1 but must not mention Var(0);
    : Id(family, transport(path, family, t), t) with family read as a type
    in the ambient scope (the binder is vacuous).
    """
    if free_in(family, 0):
        raise PathError("family depends on its argument")
    amb = shift(family, -1, 1)  # erase the vacuous binder
    c3 = shift(carrier, 3, 0)
    f3 = shift(family, 3, 1)
    a3 = shift(amb, 3, 0)
    t3 = shift(t, 3, 0)
    motive = Id(a3, transport_term(c3, Var(2), Var(1), Var(0), f3, t3), t3)
    c1 = shift(carrier, 1, 0)
    f1 = shift(family, 1, 1)
    t1 = shift(t, 1, 0)
    base = transport_refl_witness(c1, Var(0), f1, t1)
    return J(motive, base, lhs, rhs, path)


def _spine_collapse(
    motive: Expr, base: Expr, point: Expr, args: tuple[Expr, ...]
) -> tuple[Expr, Expr]:
    """Collapse Ev(...Ev(J(motive, base, pt, pt, Refl pt), a1)..., ak).

    Returns (reduced, path) where reduced is the fully beta-reduced base
    applied to the arguments, and path proves spine = reduced.  base binds 1.
    """
    j_term = J(motive, base, point, point, Refl(point))
    cur_fn = subst(base, 0, point)  # a literal Lam tower by construction
    cur_ty = inst(motive, (Refl(point), point, point))
    lhs = j_term
    path = Hcomp(motive, base, point)  # : lhs = cur_fn at cur_ty
    for a in args:
        if not isinstance(cur_ty, Pi):
            raise PathError("spine longer than the motive's function tower")
        res_ty = subst(cur_ty.cod, 0, a)
        # congruence: apply both sides to a
        path = ap(
            PathCtx(Telescope(), cur_ty, lhs, cur_fn, path),
            Ev(Var(0), shift(a, 1, 0)),
            res_ty,
        )
        lhs = Ev(lhs, a)
        if not isinstance(cur_fn, Lam):
            raise PathError("collapse target is not a literal abstraction")
        reduced = subst(cur_fn.body, 0, a)
        beta = BetaPi(cur_fn.body, a)  # : Ev(cur_fn, a) = reduced
        path = comp_terms(res_ty, lhs, Ev(cur_fn, a), reduced, path, beta)
        cur_fn = reduced
        cur_ty = res_ty
    return cur_fn, path


# ---------------------------------------------------------------------------
# telescope transport
#
# A proof list over a telescope (D_1, ..., D_m) relating endpoint lists a, b
# has p_i : Id(D_i[a_<i], a_i, op_transport(prefix)(b_i)).  The operator
# op_transport elaborates (p_1, ..., p_m)^* t : F[a] from t : F[b].
#
# For m >= 2 it is a J on p_1 whose motive quantifies the b-side tail, the
# transported element, and the a-side tail together with proofs relating each
# a-side entry to the transport of its b-side counterpart.  The refl base
# peels the head and recurses at arity m - 1.


def tele_types_at(deltas: tuple[Expr, ...], points: tuple[Expr, ...]) -> list[Expr]:
    """Instantiate each telescope entry type at the given prefix points."""
    out = []
    for i, d in enumerate(deltas):
        out.append(inst(d, tuple(reversed(points[:i]))))
    return out


def _ignores_slots(family: Expr, m: int) -> bool:
    """True iff a family binding m slots uses none of them."""
    return not any(free_in(family, i) for i in range(m))


_prune_slots = [True]


@contextmanager
def _no_pruning():
    """Disable transport slot pruning for combinators that build their own
    J motives around unpruned transports."""
    _prune_slots.append(False)
    try:
        yield
    finally:
        _prune_slots.pop()


def _unpruned(fn):
    """Run a combinator with slot pruning disabled."""

    @wraps(fn)
    def run(*args, **kwargs):
        with _no_pruning():
            return fn(*args, **kwargs)

    return run


def _needed_slots(deltas: tuple[Expr, ...], family: Expr) -> list[Expr]:
    """Slots the family depends on, closed under entry-type dependency.

    Slot i is the i-th telescope entry; in an expression under k binders the
    slot appears as Var(k - 1 - i).
    """
    m = len(deltas)
    if not _prune_slots[-1]:
        return list(range(m))
    used = {i for i in range(m) if free_in(family, m - 1 - i)}
    changed = True
    while changed:
        changed = False
        for j in sorted(used, reverse=True):
            for k in range(j):
                if k not in used and free_in(deltas[j], j - 1 - k):
                    used.add(k)
                    changed = True
    return sorted(used)


def _drop_slots(e: Expr, nbind: int, keep: list[int]) -> Expr:
    """Renumber e (under nbind slot binders) onto the kept slots only.

    Every dropped slot must be absent from e.
    """
    kept = len(keep)
    pos = {s: i for i, s in enumerate(keep)}

    def ren(sub: Expr, depth: int) -> Expr:
        if isinstance(sub, Var):
            v = sub.ix
            if v < depth:
                return sub
            w = v - depth
            if w < nbind:
                slot = nbind - 1 - w
                if slot not in pos:
                    raise PathError("dropped slot still occurs")
                return Var(kept - 1 - pos[slot] + depth)
            return Var(w - (nbind - kept) + depth)
        return _map_subterms(sub, 0, lambda s, extra: ren(s, depth + extra))

    return ren(e, 0)


def proof_type(
    deltas: tuple[Expr, ...],
    a: tuple[Expr, ...],
    b: tuple[Expr, ...],
    ps: tuple[Expr, ...],
    i: int,
) -> Expr:
    """The stated type of proof i: a_i = (p_<i)^* b_i."""
    d_at_a = inst(deltas[i], tuple(reversed(a[:i])))
    moved = op_transport(deltas[:i], a[:i], b[:i], ps[:i], deltas[i], b[i])
    return Id(d_at_a, a[i], moved)


def op_transport(
    deltas: tuple[Expr, ...],
    a: tuple[Expr, ...],
    b: tuple[Expr, ...],
    ps: tuple[Expr, ...],
    family: Expr,
    t: Expr,
) -> Expr:
    """(p_1, ..., p_m)^* t : F[a], for t : F[b].  family binds m."""
    m = len(deltas)
    if not (len(a) == len(b) == len(ps) == m):
        raise PathError("telescope transport arity mismatch")
    if m == 0:
        return t
    keep = _needed_slots(deltas, family)
    if len(keep) < m:
        # Drop slots the family never mentions (transitively): transporting
        # along them is a no-op on the type, and skipping them keeps the J
        # spine small.  All producers and consumers of these terms share
        # this normalization, so the stated proof types stay in sync.
        if not keep:
            return t
        deltas2 = tuple(
            _drop_slots(deltas[s], s, [k for k in keep if k < s]) for s in keep
        )
        family2 = _drop_slots(family, m, keep)
        sel = lambda xs: tuple(xs[s] for s in keep)
        return op_transport(deltas2, sel(a), sel(b), sel(ps), family2, t)
    if m == 1:
        return transport_term(deltas[0], a[0], b[0], ps[0], family, t)
    motive, base = _op_motive_and_base(deltas, family)
    spine_args = _op_spine_args(a, b, ps, t)
    out = J(motive, base, a[0], b[0], ps[0])
    for arg in spine_args:
        out = Ev(out, arg)
    return out


def _op_spine_args(a, b, ps, t) -> tuple[Expr, ...]:
    """Argument order: b-tail, t, then interleaved a-tail entries and proofs."""
    args = list(b[1:]) + [t]
    for i in range(1, len(a)):
        args.append(a[i])
        args.append(ps[i])
    return tuple(args)


def _op_motive_and_base(deltas: tuple[Expr, ...], family: Expr) -> tuple[Expr, Expr]:
    """Motive (binds 3: x, x', w) and base (binds 1: x) for the head J.

    The motive is the function tower
      Pi (y'_2 ... y'_m) (d : F[x', y'aux]) (y_2, w_2) ... (y_m, w_m). F[x, y]
    with w_j : y_j = (w, w_2, ..., w_{j-1})^* y'_j.
    """
    m = len(deltas)
    # Build the tower inside the 3-binder scope (x = Var 2, x' = Var 1, w = Var 0).
    # We lay out binders in order; track de Bruijn offsets carefully.
    #
    # Scope layout while building, from outside in:
    #   ambient | x, x', w | y'_2 .. y'_m | d | y_2, w_2 | ... | y_m, w_m
    #
    # Helper: below, "depth" counts binders introduced inside the motive.

    def shift_delta(j: int, depth: int) -> Expr:
        # deltas[j] binds j; bring its ambient part under 3 + depth binders
        return shift(deltas[j], 3 + depth, j)

    def shift_family(depth: int) -> Expr:
        return shift(family, 3 + depth, m)

    # positions (as "number of binders after introduction") are easier handled
    # by constructing the tower from the inside out; instead we build outside
    # in with explicit index bookkeeping.
    #
    # After all binders: total inner depth D = (m-1) + 1 + 2*(m-1).
    # We'll construct the Pi tower recursively.

    def var_at(intro_pos: int, depth: int) -> Expr:
        """Variable introduced as the intro_pos-th inner binder (0-based),
        referenced at inner depth `depth` (number of inner binders so far)."""
        return Var(depth - 1 - intro_pos)

    def x_var(depth: int) -> Expr:
        return Var(depth + 2)

    def xp_var(depth: int) -> Expr:
        return Var(depth + 1)

    def w_var(depth: int) -> Expr:
        return Var(depth)

    # intro positions: y'_j at j-2 (j = 2..m), d at m-1, y_j at m + 2*(j-2),
    # w_j at m + 2*(j-2) + 1.
    def yp(j: int, depth: int) -> Expr:
        return var_at(j - 2, depth)

    def d_var(depth: int) -> Expr:
        return var_at(m - 1, depth)

    def y(j: int, depth: int) -> Expr:
        return var_at(m + 2 * (j - 2), depth)

    def w(j: int, depth: int) -> Expr:
        return var_at(m + 2 * (j - 2) + 1, depth)

    def delta_at(j: int, prefix: list[Expr], depth: int) -> Expr:
        """deltas[j] instantiated at a prefix of j points, under inner depth."""
        return inst(shift_delta(j, depth), tuple(reversed(prefix)))

    def family_at(points: list[Expr], depth: int) -> Expr:
        return inst(shift_family(depth), tuple(reversed(points)))

    def proofs_prefix(j: int, depth: int) -> tuple[Expr, ...]:
        """(w, w_2, ..., w_{j-1}) referenced at inner depth."""
        return (w_var(depth),) + tuple(w(i, depth) for i in range(2, j))

    def a_prefix(j: int, depth: int) -> list[Expr]:
        return [x_var(depth)] + [y(i, depth) for i in range(2, j)]

    def b_prefix(j: int, depth: int) -> list[Expr]:
        return [xp_var(depth)] + [yp(i, depth) for i in range(2, j)]

    def shifted_deltas(depth: int) -> tuple[Expr, ...]:
        return tuple(shift_delta(j, depth) for j in range(m))

    # Build the tower from the innermost codomain outwards.
    total = (m - 1) + 1 + 2 * (m - 1)
    cod = family_at(a_prefix(m + 1, total), total)
    tower = cod
    # binder list outside-in with their types as functions of current depth
    binder_tys: list[Expr] = []
    depth = 0
    for j in range(2, m + 1):  # y'_j
        binder_tys.append(delta_at(j - 1, b_prefix(j, depth), depth))
        depth += 1
    binder_tys.append(family_at(b_prefix(m + 1, depth), depth))  # d
    depth += 1
    for j in range(2, m + 1):  # y_j then w_j
        binder_tys.append(delta_at(j - 1, a_prefix(j, depth), depth))
        depth += 1
        dj_at_a = delta_at(j - 1, a_prefix(j, depth), depth)
        moved = op_transport(
            tuple(shifted_deltas(depth)[: j - 1]),
            tuple(a_prefix(j, depth)),
            tuple(b_prefix(j, depth)),
            proofs_prefix(j, depth),
            shift_delta(j - 1, depth),
            yp(j, depth),
        )
        binder_tys.append(Id(dj_at_a, y(j, depth), moved))
        depth += 1
    for ty in reversed(binder_tys):
        tower = Pi(ty, tower)
    motive = tower

    base = _op_base(deltas, family)
    return motive, base


def _op_base(deltas: tuple[Expr, ...], family: Expr) -> Expr:
    """The refl case of the head J: binds 1 (x), a Lam tower mirroring the
    motive with x' := x, w := Refl x, whose body recurses at arity m - 1."""
    m = len(deltas)

    def shift_delta(j: int, depth: int) -> Expr:
        return shift(deltas[j], 1 + depth, j)

    def shift_family(depth: int) -> Expr:
        return shift(family, 1 + depth, m)

    def var_at(intro_pos: int, depth: int) -> Expr:
        return Var(depth - 1 - intro_pos)

    def x_var(depth: int) -> Expr:
        return Var(depth)

    def yp(j: int, depth: int) -> Expr:
        return var_at(j - 2, depth)

    def d_var(depth: int) -> Expr:
        return var_at(m - 1, depth)

    def y(j: int, depth: int) -> Expr:
        return var_at(m + 2 * (j - 2), depth)

    def w(j: int, depth: int) -> Expr:
        return var_at(m + 2 * (j - 2) + 1, depth)

    def delta_at(j: int, prefix: list[Expr], depth: int) -> Expr:
        return inst(shift_delta(j, depth), tuple(reversed(prefix)))

    def family_at(points: list[Expr], depth: int) -> Expr:
        return inst(shift_family(depth), tuple(reversed(points)))

    def proofs_prefix(j: int, depth: int) -> tuple[Expr, ...]:
        return (Refl(x_var(depth)),) + tuple(w(i, depth) for i in range(2, j))

    def a_prefix(j: int, depth: int) -> list[Expr]:
        return [x_var(depth)] + [y(i, depth) for i in range(2, j)]

    def b_prefix(j: int, depth: int) -> list[Expr]:
        return [x_var(depth)] + [yp(i, depth) for i in range(2, j)]

    def shifted_deltas(depth: int) -> tuple[Expr, ...]:
        return tuple(shift_delta(j, depth) for j in range(m))

    binder_tys: list[Expr] = []
    depth = 0
    for j in range(2, m + 1):
        binder_tys.append(delta_at(j - 1, b_prefix(j, depth), depth))
        depth += 1
    binder_tys.append(family_at(b_prefix(m + 1, depth), depth))
    depth += 1
    for j in range(2, m + 1):
        binder_tys.append(delta_at(j - 1, a_prefix(j, depth), depth))
        depth += 1
        dj_at_a = delta_at(j - 1, a_prefix(j, depth), depth)
        moved = op_transport(
            tuple(shifted_deltas(depth)[: j - 1]),
            tuple(a_prefix(j, depth)),
            tuple(b_prefix(j, depth)),
            proofs_prefix(j, depth),
            shift_delta(j - 1, depth),
            yp(j, depth),
        )
        binder_tys.append(Id(dj_at_a, y(j, depth), moved))
        depth += 1

    # body: recurse at arity m - 1 over the peeled telescope, with proofs
    # kappa_j = w_j composed with the collapse of the refl-headed transport.
    D = depth
    peeled = tuple(
        subst(shift_delta(j, D), j - 1, x_var(D)) for j in range(1, m)
    )
    a_tail = tuple(y(j, D) for j in range(2, m + 1))
    b_tail = tuple(yp(j, D) for j in range(2, m + 1))
    kappas = []
    for j in range(2, m + 1):
        # w_j : y_j = (Refl x, w_2, ..., w_{j-1})^* y'_j; collapse the head.
        reduced, cpath = collapse_refl_head(
            tuple(shifted_deltas(D)[: j - 1]),
            x_var(D),
            tuple(a_prefix(j, D)[1:]),
            tuple(b_prefix(j, D)[1:]),
            tuple(proofs_prefix(j, D)[1:]),
            shift_delta(j - 1, D),
            yp(j, D),
        )
        dj_at_a = delta_at(j - 1, a_prefix(j, D), D)
        big = op_transport(
            tuple(shifted_deltas(D)[: j - 1]),
            tuple(a_prefix(j, D)),
            tuple(b_prefix(j, D)),
            proofs_prefix(j, D),
            shift_delta(j - 1, D),
            yp(j, D),
        )
        kappa = comp_terms(dj_at_a, y(j, D), big, reduced, w(j, D), cpath)
        kappas.append(kappa)
    peeled_family = subst(shift_family(D), m - 1, x_var(D))
    body = op_transport(peeled, a_tail, b_tail, tuple(kappas), peeled_family, d_var(D))
    for ty in reversed(binder_tys):
        body = Lam(ty, body)
    return body


def collapse_refl_head(
    deltas: tuple[Expr, ...],
    point: Expr,
    a_tail: tuple[Expr, ...],
    b_tail: tuple[Expr, ...],
    ps_tail: tuple[Expr, ...],
    family: Expr,
    t: Expr,
) -> tuple[Expr, Expr]:
    """Collapse (Refl pt, p_2, ..., p_m)^* t to the peeled arity-(m-1) transport.

    deltas has length m (with head type of `point`); family binds m.
    Returns (reduced, path : full = reduced).
    """
    m = len(deltas)
    a = (point,) + a_tail
    b = (point,) + b_tail
    ps = (Refl(point),) + ps_tail
    keep = _needed_slots(deltas, family)
    if len(keep) < m:
        # Stay in sync with the slot pruning of op_transport.
        full = op_transport(deltas, a, b, ps, family, t)
        if 0 not in keep:
            # The refl-headed slot is already gone from the pruned spine.
            return full, Refl(full)
        deltas2 = tuple(
            _drop_slots(deltas[s], s, [k for k in keep if k < s]) for s in keep
        )
        family2 = _drop_slots(family, m, keep)
        sel = lambda xs: tuple(xs[s] for s in keep)
        return collapse_refl_head(
            deltas2, point, sel(a)[1:], sel(b)[1:], sel(ps)[1:], family2, t
        )
    if m == 1:
        # family binds 1; transport along Refl collapses to t
        return t, transport_refl_witness(deltas[0], point, family, t)
    motive, base = _op_motive_and_base(deltas, family)
    spine_args = _op_spine_args(a, b, ps, t)
    reduced, path = _spine_collapse(motive, base, point, spine_args)
    return reduced, path


def transport_tele(peq: CtxPropEq, family: Expr, t: Expr) -> Expr:
    """Iterated telescope transport along a componentwise equality."""
    deltas = peq.lhs.target.types()
    return op_transport(
        deltas, peq.lhs.comps, peq.rhs.comps, peq.proofs, family, t
    )


# ---------------------------------------------------------------------------
# groupoid laws
#
# Every law is an explicit J elaboration.  Laws whose statement mentions an
# earlier path quantify it inside the motive (a generalised path induction),
# so that the induction target's endpoints stay free.


def path_chain(carrier: Expr, points: list[Expr], steps: list[Expr]) -> Expr:
    """Right-nested composite of consecutive paths.

    steps[i] : Id(carrier, points[i], points[i+1]); the result proves
    points[0] = points[-1].  A single step is returned as is.
    """
    if len(points) != len(steps) + 1 or not steps:
        raise PathError("malformed path chain")
    acc = steps[-1]
    for i in range(len(steps) - 2, -1, -1):
        acc = comp_terms(carrier, points[i], points[i + 1], points[-1], steps[i], acc)
    return acc


def refl_inverse_witness(carrier: Expr, point: Expr) -> Expr:
    """inverse(Refl point) = Refl point."""
    a3 = shift(carrier, 3, 0)
    motive = Id(a3, Var(1), Var(2))
    base = Refl(Var(0))
    _, path = _spine_collapse(motive, base, point, ())
    return path


def _ap_parts(carrier: Expr, fn_body: Expr, cod: Expr) -> tuple[Expr, Expr]:
    c3 = shift(cod, 3, 0)
    body3 = shift(fn_body, 3, 1)
    motive = Id(c3, subst(body3, 0, Var(2)), subst(body3, 0, Var(1)))
    base = Refl(fn_body)
    return motive, base


def refl_ap_witness(carrier: Expr, fn_body: Expr, cod: Expr, point: Expr) -> Expr:
    """ap(fn, Refl point) = Refl(fn(point))."""
    motive, base = _ap_parts(carrier, fn_body, cod)
    _, path = _spine_collapse(motive, base, point, ())
    return path


def unit_r(pc: PathCtx) -> Expr:
    """comp(p, Refl rhs) = p."""
    motive, base = _compose_parts(pc.carrier, pc.lhs)
    _, path = _spine_collapse(motive, base, pc.rhs, (pc.path,))
    return path


def unit_l(pc: PathCtx) -> Expr:
    """comp(Refl lhs, p) = p."""
    a3 = shift(pc.carrier, 3, 0)
    lhs_term = comp_terms(a3, Var(2), Var(2), Var(1), Refl(Var(2)), Var(0))
    motive = Id(Id(a3, Var(2), Var(1)), lhs_term, Var(0))
    a1 = shift(pc.carrier, 1, 0)
    base = unit_r(PathCtx(pc.ctx, a1, Var(0), Var(0), Refl(Var(0))))
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def _refl_refl_comp(carrier1: Expr) -> Expr:
    """Under one binder x : comp(Refl x, Refl x) = Refl x (carrier1 pre-shifted)."""
    return unit_r(PathCtx(Telescope(), carrier1, Var(0), Var(0), Refl(Var(0))))


def inv_l(pc: PathCtx) -> Expr:
    """comp(inverse(p), p) = Refl(rhs)."""
    a3 = shift(pc.carrier, 3, 0)
    invw = inv_term(a3, Var(2), Var(1), Var(0))
    lhs_term = comp_terms(a3, Var(1), Var(2), Var(1), invw, Var(0))
    motive = Id(Id(a3, Var(1), Var(1)), lhs_term, Refl(Var(1)))
    a1 = shift(pc.carrier, 1, 0)
    a2 = shift(pc.carrier, 2, 0)
    invr = inv_term(a1, Var(0), Var(0), Refl(Var(0)))
    c1 = refl_inverse_witness(a1, Var(0))
    s1 = ap(
        PathCtx(Telescope(), Id(a1, Var(0), Var(0)), invr, Refl(Var(0)), c1),
        comp_terms(a2, Var(1), Var(1), Var(1), Var(0), Refl(Var(1))),
        Id(a1, Var(0), Var(0)),
    )
    s2 = _refl_refl_comp(a1)
    cid = Id(a1, Var(0), Var(0))
    pts = [
        comp_terms(a1, Var(0), Var(0), Var(0), invr, Refl(Var(0))),
        comp_terms(a1, Var(0), Var(0), Var(0), Refl(Var(0)), Refl(Var(0))),
        Refl(Var(0)),
    ]
    base = path_chain(cid, pts, [s1, s2])
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def inv_r(pc: PathCtx) -> Expr:
    """comp(p, inverse(p)) = Refl(lhs)."""
    a3 = shift(pc.carrier, 3, 0)
    invw = inv_term(a3, Var(2), Var(1), Var(0))
    lhs_term = comp_terms(a3, Var(2), Var(1), Var(2), Var(0), invw)
    motive = Id(Id(a3, Var(2), Var(2)), lhs_term, Refl(Var(2)))
    a1 = shift(pc.carrier, 1, 0)
    a2 = shift(pc.carrier, 2, 0)
    invr = inv_term(a1, Var(0), Var(0), Refl(Var(0)))
    c1 = refl_inverse_witness(a1, Var(0))
    s1 = ap(
        PathCtx(Telescope(), Id(a1, Var(0), Var(0)), invr, Refl(Var(0)), c1),
        comp_terms(a2, Var(1), Var(1), Var(1), Refl(Var(1)), Var(0)),
        Id(a1, Var(0), Var(0)),
    )
    s2 = _refl_refl_comp(a1)
    cid = Id(a1, Var(0), Var(0))
    pts = [
        comp_terms(a1, Var(0), Var(0), Var(0), Refl(Var(0)), invr),
        comp_terms(a1, Var(0), Var(0), Var(0), Refl(Var(0)), Refl(Var(0))),
        Refl(Var(0)),
    ]
    base = path_chain(cid, pts, [s1, s2])
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def ap_id(pc: PathCtx) -> Expr:
    """ap(x |-> x, p) = p."""
    a3 = shift(pc.carrier, 3, 0)
    lhs_term = ap_term(a3, Var(2), Var(1), Var(0), Var(0), a3)
    motive = Id(Id(a3, Var(2), Var(1)), lhs_term, Var(0))
    a1 = shift(pc.carrier, 1, 0)
    base = refl_ap_witness(a1, Var(0), a1, Var(0))
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def inv_inv(pc: PathCtx) -> Expr:
    """inverse(inverse(p)) = p."""
    a3 = shift(pc.carrier, 3, 0)
    lhs_term = inv_term(a3, Var(1), Var(2), inv_term(a3, Var(2), Var(1), Var(0)))
    motive = Id(Id(a3, Var(2), Var(1)), lhs_term, Var(0))
    a1 = shift(pc.carrier, 1, 0)
    a2 = shift(pc.carrier, 2, 0)
    invr = inv_term(a1, Var(0), Var(0), Refl(Var(0)))
    c1 = refl_inverse_witness(a1, Var(0))
    s1 = ap(
        PathCtx(Telescope(), Id(a1, Var(0), Var(0)), invr, Refl(Var(0)), c1),
        inv_term(a2, Var(1), Var(1), Var(0)),
        Id(a1, Var(0), Var(0)),
    )
    cid = Id(a1, Var(0), Var(0))
    pts = [inv_term(a1, Var(0), Var(0), invr), invr, Refl(Var(0))]
    base = path_chain(cid, pts, [s1, c1])
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def _require_chain(first: PathCtx, second: PathCtx):
    if not (alpha_eq(first.carrier, second.carrier) and alpha_eq(first.rhs, second.lhs)):
        raise EndpointMismatch("paths do not compose")


def assoc(pc_p: PathCtx, pc_q: PathCtx, pc_s: PathCtx) -> Expr:
    """comp(comp(p, q), s) = comp(p, comp(q, s)).

    Elaborated by J on s; the middle path q is quantified inside the motive
    because its type mentions s's left endpoint.
    """
    _require_chain(pc_p, pc_q)
    _require_chain(pc_q, pc_s)
    car = pc_p.carrier
    a = pc_p.lhs
    b = pc_p.rhs
    p = pc_p.path
    a3, a4 = shift(a, 3, 0), shift(a, 4, 0)
    b3, b4 = shift(b, 3, 0), shift(b, 4, 0)
    p4 = shift(p, 4, 0)
    c3, c4 = shift(car, 3, 0), shift(car, 4, 0)
    # inside the motive + one Pi binder: x = Var 3, x' = Var 2, w = Var 1, q^ = Var 0
    left = comp_terms(
        c4, a4, Var(3), Var(2), comp_terms(c4, a4, b4, Var(3), p4, Var(0)), Var(1)
    )
    right = comp_terms(
        c4, a4, b4, Var(2), p4, comp_terms(c4, b4, Var(3), Var(2), Var(0), Var(1))
    )
    motive = Pi(Id(c3, b3, Var(2)), Id(Id(c4, a4, Var(2)), left, right))
    # base, under x (Var 1 after the lambda binder) and q^ (Var 0)
    c1, c2 = shift(car, 1, 0), shift(car, 2, 0)
    a1, a2 = shift(a, 1, 0), shift(a, 2, 0)
    b1, b2 = shift(b, 1, 0), shift(b, 2, 0)
    p2 = shift(p, 2, 0)
    c3i = shift(car, 3, 0)
    a3i, b3i, p3 = shift(a, 3, 0), shift(b, 3, 0), shift(p, 3, 0)
    pq = comp_terms(c2, a2, b2, Var(1), p2, Var(0))
    u1 = unit_r(PathCtx(Telescope(), c2, a2, Var(1), pq))
    u2 = unit_r(PathCtx(Telescope(), c2, b2, Var(1), Var(0)))
    u3 = ap(
        PathCtx(
            Telescope(),
            Id(c2, b2, Var(1)),
            comp_terms(c2, b2, Var(1), Var(1), Var(0), Refl(Var(1))),
            Var(0),
            u2,
        ),
        comp_terms(c3i, a3i, b3i, Var(2), p3, Var(0)),
        Id(c2, a2, Var(1)),
    )
    lhs0 = comp_terms(c2, a2, Var(1), Var(1), pq, Refl(Var(1)))
    rhs0 = comp_terms(
        c2, a2, b2, Var(1), p2,
        comp_terms(c2, b2, Var(1), Var(1), Var(0), Refl(Var(1))),
    )
    cid = Id(c2, a2, Var(1))
    body = path_chain(cid, [lhs0, pq, rhs0], [u1, inv_term(cid, rhs0, pq, u3)])
    base = Lam(Id(c1, b1, Var(0)), body)
    return Ev(J(motive, base, pc_s.lhs, pc_s.rhs, pc_s.path), pc_q.path)


def ap_comp(fn_body: Expr, cod: Expr, pc_p: PathCtx, pc_q: PathCtx) -> Expr:
    """ap(f, comp(p, q)) = comp(ap(f, p), ap(f, q))."""
    _require_chain(pc_p, pc_q)
    car = pc_p.carrier
    a, p = pc_p.lhs, pc_p.path

    def fat(n: int, t: Expr) -> Expr:
        return subst(shift(fn_body, n, 1), 0, t)

    a3, a4 = shift(a, 3, 0), shift(a, 4, 0)
    p4 = shift(p, 4, 0)
    c3, c4 = shift(car, 3, 0), shift(car, 4, 0)
    k4 = shift(cod, 4, 0)
    f4 = shift(fn_body, 4, 1)
    # x = Var 3, x' = Var 2, w = Var 1, p^ = Var 0
    left = ap_term(
        c4, a4, Var(2), comp_terms(c4, a4, Var(3), Var(2), Var(0), Var(1)), f4, k4
    )
    right = comp_terms(
        k4, fat(4, a4), fat(4, Var(3)), fat(4, Var(2)),
        ap_term(c4, a4, Var(3), Var(0), f4, k4),
        ap_term(c4, Var(3), Var(2), Var(1), f4, k4),
    )
    motive = Pi(Id(c3, a3, Var(2)), Id(Id(k4, fat(4, a4), fat(4, Var(2))), left, right))
    # base: under x (Var 1) and p^ (Var 0)
    c1, c2, c3i = shift(car, 1, 0), shift(car, 2, 0), shift(car, 3, 0)
    a1, a2, a3i = shift(a, 1, 0), shift(a, 2, 0), shift(a, 3, 0)
    k2, k3 = shift(cod, 2, 0), shift(cod, 3, 0)
    f2, f3 = shift(fn_body, 2, 1), shift(fn_body, 3, 1)
    u = unit_r(PathCtx(Telescope(), c2, a2, Var(1), Var(0)))
    s1 = ap(
        PathCtx(
            Telescope(),
            Id(c2, a2, Var(1)),
            comp_terms(c2, a2, Var(1), Var(1), Var(0), Refl(Var(1))),
            Var(0),
            u,
        ),
        ap_term(c3i, a3i, Var(2), Var(0), f3, k3),
        Id(k2, fat(2, a2), fat(2, Var(1))),
    )
    s2 = refl_ap_witness(c2, f2, k2, Var(1))
    ap_p = ap_term(c2, a2, Var(1), Var(0), f2, k2)
    ap_refl = ap_term(c2, Var(1), Var(1), Refl(Var(1)), f2, k2)
    s3 = ap(
        PathCtx(
            Telescope(),
            Id(k2, fat(2, Var(1)), fat(2, Var(1))),
            ap_refl,
            Refl(fat(2, Var(1))),
            s2,
        ),
        comp_terms(
            k3, fat(3, a3i), fat(3, Var(2)), fat(3, Var(2)),
            ap_term(c3i, a3i, Var(2), Var(1), f3, k3),
            Var(0),
        ),
        Id(k2, fat(2, a2), fat(2, Var(1))),
    )
    s4 = unit_r(PathCtx(Telescope(), k2, fat(2, a2), fat(2, Var(1)), ap_p))
    lhs0 = ap_term(
        c2, a2, Var(1),
        comp_terms(c2, a2, Var(1), Var(1), Var(0), Refl(Var(1))), f2, k2,
    )
    r0 = comp_terms(k2, fat(2, a2), fat(2, Var(1)), fat(2, Var(1)), ap_p, ap_refl)
    r1 = comp_terms(
        k2, fat(2, a2), fat(2, Var(1)), fat(2, Var(1)), ap_p, Refl(fat(2, Var(1)))
    )
    cid = Id(k2, fat(2, a2), fat(2, Var(1)))
    s34 = path_chain(cid, [r0, r1, ap_p], [s3, s4])
    body = path_chain(cid, [lhs0, ap_p, r0], [s1, inv_term(cid, r0, ap_p, s34)])
    base = Lam(Id(c1, a1, Var(0)), body)
    return Ev(J(motive, base, pc_q.lhs, pc_q.rhs, pc_q.path), pc_p.path)


def ap_compose(
    carrier: Expr, mid: Expr, cod: Expr, v_body: Expr, u_body: Expr, pc: PathCtx
) -> Expr:
    """ap(u o v, p) = ap(u, ap(v, p)).

    v_body binds 1 over carrier with values in mid; u_body binds 1 over mid
    with values in cod; all three types live in the ambient scope.
    """
    uv_body = subst(shift(u_body, 1, 1), 0, v_body)

    def vat(n: int, t: Expr) -> Expr:
        return subst(shift(v_body, n, 1), 0, t)

    def uvat(n: int, t: Expr) -> Expr:
        return subst(shift(uv_body, n, 1), 0, t)

    c3, m3, k3 = shift(carrier, 3, 0), shift(mid, 3, 0), shift(cod, 3, 0)
    left = ap_term(c3, Var(2), Var(1), Var(0), shift(uv_body, 3, 1), k3)
    inner = ap_term(c3, Var(2), Var(1), Var(0), shift(v_body, 3, 1), m3)
    right = ap_term(m3, vat(3, Var(2)), vat(3, Var(1)), inner, shift(u_body, 3, 1), k3)
    motive = Id(Id(k3, uvat(3, Var(2)), uvat(3, Var(1))), left, right)
    # base: under x (Var 0)
    c1, m1, k1 = shift(carrier, 1, 0), shift(mid, 1, 0), shift(cod, 1, 0)
    u1, v1, uv1 = shift(u_body, 1, 1), shift(v_body, 1, 1), shift(uv_body, 1, 1)
    vx = vat(1, Var(0))
    r_uv = refl_ap_witness(c1, uv1, k1, Var(0))
    r_v = refl_ap_witness(c1, v1, m1, Var(0))
    ap_v_refl = ap_term(c1, Var(0), Var(0), Refl(Var(0)), v1, m1)
    # congruence sending ap(v, refl) to Refl(v x) inside ap(u, -)
    mot_u, base_u = _ap_parts(shift(mid, 2, 0), shift(u_body, 2, 1), shift(cod, 2, 0))
    vx2 = vat(2, Var(1))
    hole = J(mot_u, base_u, vx2, vx2, Var(0))
    cid1 = Id(k1, uvat(1, Var(0)), uvat(1, Var(0)))
    cong = ap_term(Id(m1, vx, vx), ap_v_refl, Refl(vx), r_v, hole, cid1)
    r_u = refl_ap_witness(m1, u1, k1, vx)
    ap_uv_refl = ap_term(c1, Var(0), Var(0), Refl(Var(0)), uv1, k1)
    rhs0 = ap_term(m1, vx, vx, ap_v_refl, u1, k1)
    rhs1 = ap_term(m1, vx, vx, Refl(vx), u1, k1)
    base = path_chain(
        cid1,
        [ap_uv_refl, Refl(uvat(1, Var(0))), rhs1, rhs0],
        [r_uv, inv_term(cid1, rhs1, Refl(uvat(1, Var(0))), r_u),
         inv_term(cid1, rhs0, rhs1, cong)],
    )
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def ap_transport(
    carrier: Expr, cod: Expr, fn_body: Expr, fam: Expr, pc: PathCtx, t: Expr
) -> Expr:
    """transport(ap(f, p), fam, t) = transport(p, fam o f, t).

    fn_body binds 1 over carrier with values in cod; fam binds 1 over cod;
    t : fam(f(rhs)).
    """
    comp_fam = subst(shift(fam, 1, 1), 0, fn_body)  # fam o f, binds 1 over carrier

    def fat(n: int, u: Expr) -> Expr:
        return subst(shift(fn_body, n, 1), 0, u)

    def cat(n: int, u: Expr) -> Expr:
        return subst(shift(fam, n, 1), 0, u)

    c3, c4 = shift(carrier, 3, 0), shift(carrier, 4, 0)
    b4 = shift(cod, 4, 0)
    f4 = shift(fn_body, 4, 1)
    fam4 = shift(fam, 4, 1)
    cf4 = shift(comp_fam, 4, 1)
    apw = ap_term(c4, Var(3), Var(2), Var(1), f4, b4)
    left = transport_term(b4, fat(4, Var(3)), fat(4, Var(2)), apw, fam4, Var(0))
    right = transport_term(c4, Var(3), Var(2), Var(1), cf4, Var(0))
    motive = Pi(cat(3, fat(3, Var(1))), Id(cat(4, fat(4, Var(3))), left, right))
    # base: x = Var 1, t^ = Var 0
    c2 = shift(carrier, 2, 0)
    b2, b3 = shift(cod, 2, 0), shift(cod, 3, 0)
    f2, f3 = shift(fn_body, 2, 1), shift(fn_body, 3, 1)
    fam2, fam3 = shift(fam, 2, 1), shift(fam, 3, 1)
    cf2 = shift(comp_fam, 2, 1)
    r1 = refl_ap_witness(c2, f2, b2, Var(1))
    ap_refl = ap_term(c2, Var(1), Var(1), Refl(Var(1)), f2, b2)
    s1 = ap(
        PathCtx(
            Telescope(),
            Id(b2, fat(2, Var(1)), fat(2, Var(1))),
            ap_refl,
            Refl(fat(2, Var(1))),
            r1,
        ),
        transport_term(b3, fat(3, Var(2)), fat(3, Var(2)), Var(0), fam3, Var(1)),
        cat(2, fat(2, Var(1))),
    )
    s2 = transport_refl_witness(b2, fat(2, Var(1)), fam2, Var(0))
    s3 = transport_refl_witness(c2, Var(1), cf2, Var(0))
    pts = [
        transport_term(b2, fat(2, Var(1)), fat(2, Var(1)), ap_refl, fam2, Var(0)),
        transport_term(
            b2, fat(2, Var(1)), fat(2, Var(1)), Refl(fat(2, Var(1))), fam2, Var(0)
        ),
        Var(0),
        transport_term(c2, Var(1), Var(1), Refl(Var(1)), cf2, Var(0)),
    ]
    cid = cat(2, fat(2, Var(1)))
    body = path_chain(
        cid, pts, [s1, s2, inv_term(cid, pts[3], Var(0), s3)]
    )
    base = Lam(cat(1, fat(1, Var(0))), body)
    return Ev(J(motive, base, pc.lhs, pc.rhs, pc.path), t)


def apd(fn_body: Expr, fam: Expr, pc: PathCtx) -> Expr:
    """Dependent ap: f(lhs) = transport(p, fam, f(rhs)) for f : Pi x. fam(x)."""

    def fat(n: int, u: Expr) -> Expr:
        return subst(shift(fn_body, n, 1), 0, u)

    def cat(n: int, u: Expr) -> Expr:
        return subst(shift(fam, n, 1), 0, u)

    c3 = shift(pc.carrier, 3, 0)
    fam3 = shift(fam, 3, 1)
    motive = Id(
        cat(3, Var(2)),
        fat(3, Var(2)),
        transport_term(c3, Var(2), Var(1), Var(0), fam3, fat(3, Var(1))),
    )
    c1 = shift(pc.carrier, 1, 0)
    fam1 = shift(fam, 1, 1)
    trw = transport_refl_witness(c1, Var(0), fam1, fat(1, Var(0)))
    tr_refl = transport_term(c1, Var(0), Var(0), Refl(Var(0)), fam1, fat(1, Var(0)))
    base = inv_term(cat(1, Var(0)), tr_refl, fat(1, Var(0)), trw)
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def transport_compose(fam: Expr, pc_p: PathCtx, pc_q: PathCtx, t: Expr) -> Expr:
    """transport(p, fam, transport(q, fam, t)) = transport(comp(p, q), fam, t)."""
    _require_chain(pc_p, pc_q)
    car = pc_p.carrier
    cpt = pc_q.rhs  # the fixed far endpoint

    def cat(n: int, u: Expr) -> Expr:
        return subst(shift(fam, n, 1), 0, u)

    c3, c4 = shift(car, 3, 0), shift(car, 4, 0)
    e3, e4 = shift(cpt, 3, 0), shift(cpt, 4, 0)
    fam4 = shift(fam, 4, 1)
    t4 = shift(t, 4, 0)
    left = transport_term(
        c4, Var(3), Var(2), Var(1), fam4,
        transport_term(c4, Var(2), e4, Var(0), fam4, t4),
    )
    right = transport_term(
        c4, Var(3), e4, comp_terms(c4, Var(3), Var(2), e4, Var(1), Var(0)), fam4, t4
    )
    motive = Pi(Id(c3, Var(1), e3), Id(cat(4, Var(3)), left, right))
    # base: x = Var 1, q^ = Var 0
    c1, c2, c3i = shift(car, 1, 0), shift(car, 2, 0), shift(car, 3, 0)
    e1, e2, e3i = shift(cpt, 1, 0), shift(cpt, 2, 0), shift(cpt, 3, 0)
    fam2, fam3 = shift(fam, 2, 1), shift(fam, 3, 1)
    t2, t3 = shift(t, 2, 0), shift(t, 3, 0)
    inner = transport_term(c2, Var(1), e2, Var(0), fam2, t2)
    b1 = transport_refl_witness(c2, Var(1), fam2, inner)
    u = unit_l(PathCtx(Telescope(), c2, Var(1), e2, Var(0)))
    s = ap(
        PathCtx(
            Telescope(),
            Id(c2, Var(1), e2),
            comp_terms(c2, Var(1), Var(1), e2, Refl(Var(1)), Var(0)),
            Var(0),
            u,
        ),
        transport_term(c3i, Var(2), e3i, Var(0), fam3, t3),
        cat(2, Var(1)),
    )
    tr_comp_refl = transport_term(
        c2, Var(1), e2,
        comp_terms(c2, Var(1), Var(1), e2, Refl(Var(1)), Var(0)), fam2, t2,
    )
    tr_refl = transport_term(c2, Var(1), Var(1), Refl(Var(1)), fam2, inner)
    cid = cat(2, Var(1))
    body = path_chain(
        cid, [tr_refl, inner, tr_comp_refl],
        [b1, inv_term(cid, tr_comp_refl, inner, s)],
    )
    base = Lam(Id(c1, Var(0), e1), body)
    return Ev(J(motive, base, pc_p.lhs, pc_p.rhs, pc_p.path), pc_q.path)


def homotopy_nat(
    carrier: Expr, cod: Expr, f_body: Expr, g_body: Expr, h_body: Expr, pc: PathCtx
) -> Expr:
    """Naturality of a pointwise homotopy h : Pi x. f(x) = g(x):

    comp(h(lhs), ap(g, p)) = comp(ap(f, p), h(rhs)).
    """

    def at(body: Expr, n: int, u: Expr) -> Expr:
        return subst(shift(body, n, 1), 0, u)

    c3 = shift(carrier, 3, 0)
    t3 = shift(cod, 3, 0)
    f3 = shift(f_body, 3, 1)
    g3 = shift(g_body, 3, 1)
    left = comp_terms(
        t3, at(f_body, 3, Var(2)), at(g_body, 3, Var(2)), at(g_body, 3, Var(1)),
        at(h_body, 3, Var(2)),
        ap_term(c3, Var(2), Var(1), Var(0), g3, t3),
    )
    right = comp_terms(
        t3, at(f_body, 3, Var(2)), at(f_body, 3, Var(1)), at(g_body, 3, Var(1)),
        ap_term(c3, Var(2), Var(1), Var(0), f3, t3),
        at(h_body, 3, Var(1)),
    )
    motive = Id(Id(t3, at(f_body, 3, Var(2)), at(g_body, 3, Var(1))), left, right)
    # base: x = Var 0
    c1, t1 = shift(carrier, 1, 0), shift(cod, 1, 0)
    c2, t2 = shift(carrier, 2, 0), shift(cod, 2, 0)
    f1, g1 = shift(f_body, 1, 1), shift(g_body, 1, 1)
    fx, gx, hx = at(f_body, 1, Var(0)), at(g_body, 1, Var(0)), at(h_body, 1, Var(0))
    rg = refl_ap_witness(c1, g1, t1, Var(0))
    ap_refl_g = ap_term(c1, Var(0), Var(0), Refl(Var(0)), g1, t1)
    s1 = ap(
        PathCtx(Telescope(), Id(t1, gx, gx), ap_refl_g, Refl(gx), rg),
        comp_terms(
            t2, at(f_body, 2, Var(1)), at(g_body, 2, Var(1)), at(g_body, 2, Var(1)),
            at(h_body, 2, Var(1)), Var(0),
        ),
        Id(t1, fx, gx),
    )
    s2 = unit_r(PathCtx(Telescope(), t1, fx, gx, hx))
    rf = refl_ap_witness(c1, f1, t1, Var(0))
    ap_refl_f = ap_term(c1, Var(0), Var(0), Refl(Var(0)), f1, t1)
    s3 = ap(
        PathCtx(Telescope(), Id(t1, fx, fx), ap_refl_f, Refl(fx), rf),
        comp_terms(
            t2, at(f_body, 2, Var(1)), at(f_body, 2, Var(1)), at(g_body, 2, Var(1)),
            Var(0), at(h_body, 2, Var(1)),
        ),
        Id(t1, fx, gx),
    )
    s4 = unit_l(PathCtx(Telescope(), t1, fx, gx, hx))
    left0 = comp_terms(t1, fx, gx, gx, hx, ap_refl_g)
    left1 = comp_terms(t1, fx, gx, gx, hx, Refl(gx))
    right1 = comp_terms(t1, fx, fx, gx, Refl(fx), hx)
    right0 = comp_terms(t1, fx, fx, gx, ap_refl_f, hx)
    cid = Id(t1, fx, gx)
    base = path_chain(
        cid, [left0, left1, hx, right1, right0],
        [s1, s2, inv_term(cid, right1, hx, s4), inv_term(cid, right0, right1, s3)],
    )
    return J(motive, base, pc.lhs, pc.rhs, pc.path)


def left_cancel(
    pc_c: PathCtx, far: Expr, x_path: Expr, y_path: Expr, eq_path: Expr
) -> Expr:
    """From comp(c, X) = comp(c, Y) conclude X = Y.

    c : u = v, X and Y : Id(carrier, v, far), eq_path relates the composites.
    """
    car = pc_c.carrier
    u, v, c = pc_c.lhs, pc_c.rhs, pc_c.path
    cid = Id(car, v, far)
    car1 = shift(car, 1, 0)
    u1, v1, far1 = shift(u, 1, 0), shift(v, 1, 0), shift(far, 1, 0)
    invc = inv_term(car, u, v, c)
    ile = inv_l(pc_c)  # comp(inv c, c) = Refl v
    icc = comp_terms(car, v, u, v, invc, c)
    s1 = inv_term(
        Id(car, v, far),
        comp_terms(car, v, v, far, Refl(v), x_path),
        x_path,
        unit_l(PathCtx(Telescope(), car, v, far, x_path)),
    )
    s2 = ap(
        PathCtx(
            Telescope(), Id(car, v, v), icc, Refl(v),
            ile,
        ),
        comp_terms(car1, v1, v1, far1, Var(0), shift(x_path, 1, 0)),
        cid,
    )
    s2 = inv_term(
        cid,
        comp_terms(car, v, v, far, icc, x_path),
        comp_terms(car, v, v, far, Refl(v), x_path),
        s2,
    )
    s3 = assoc(
        PathCtx(Telescope(), car, v, u, invc),
        pc_c,
        PathCtx(Telescope(), car, v, far, x_path),
    )
    s4 = ap(
        PathCtx(
            Telescope(), Id(car, u, far),
            comp_terms(car, u, v, far, c, x_path),
            comp_terms(car, u, v, far, c, y_path),
            eq_path,
        ),
        comp_terms(car1, v1, u1, far1, shift(invc, 1, 0), Var(0)),
        cid,
    )
    s5 = inv_term(
        cid,
        comp_terms(car, v, v, far, icc, y_path),
        comp_terms(car, v, u, far, invc, comp_terms(car, u, v, far, c, y_path)),
        assoc(
            PathCtx(Telescope(), car, v, u, invc),
            pc_c,
            PathCtx(Telescope(), car, v, far, y_path),
        ),
    )
    s6 = ap(
        PathCtx(Telescope(), Id(car, v, v), icc, Refl(v), ile),
        comp_terms(car1, v1, v1, far1, Var(0), shift(y_path, 1, 0)),
        cid,
    )
    s7 = unit_l(PathCtx(Telescope(), car, v, far, y_path))
    pts = [
        x_path,
        comp_terms(car, v, v, far, Refl(v), x_path),
        comp_terms(car, v, v, far, icc, x_path),
        comp_terms(car, v, u, far, invc, comp_terms(car, u, v, far, c, x_path)),
        comp_terms(car, v, u, far, invc, comp_terms(car, u, v, far, c, y_path)),
        comp_terms(car, v, v, far, icc, y_path),
        comp_terms(car, v, v, far, Refl(v), y_path),
        y_path,
    ]
    return path_chain(cid, pts, [s1, s2, s3, s4, s5, s6, s7])


def inv_comp(pc_p: PathCtx, pc_q: PathCtx) -> Expr:
    """inverse(comp(p, q)) = comp(inverse(q), inverse(p))."""
    _require_chain(pc_p, pc_q)
    car = pc_p.carrier
    a, p = pc_p.lhs, pc_p.path
    a3, a4 = shift(a, 3, 0), shift(a, 4, 0)
    c3, c4 = shift(car, 3, 0), shift(car, 4, 0)
    # x = Var 3, x' = Var 2, w = Var 1, p^ = Var 0
    left = inv_term(c4, a4, Var(2), comp_terms(c4, a4, Var(3), Var(2), Var(0), Var(1)))
    right = comp_terms(
        c4, Var(2), Var(3), a4,
        inv_term(c4, Var(3), Var(2), Var(1)),
        inv_term(c4, a4, Var(3), Var(0)),
    )
    motive = Pi(Id(c3, a3, Var(2)), Id(Id(c4, Var(2), a4), left, right))
    # base: x = Var 1, p^ = Var 0
    c1, c2, c3i = shift(car, 1, 0), shift(car, 2, 0), shift(car, 3, 0)
    a1, a2, a3i = shift(a, 1, 0), shift(a, 2, 0), shift(a, 3, 0)
    u = unit_r(PathCtx(Telescope(), c2, a2, Var(1), Var(0)))
    s1 = ap(
        PathCtx(
            Telescope(),
            Id(c2, a2, Var(1)),
            comp_terms(c2, a2, Var(1), Var(1), Var(0), Refl(Var(1))),
            Var(0),
            u,
        ),
        inv_term(c3i, a3i, Var(2), Var(0)),
        Id(c2, Var(1), a2),
    )
    inv_p = inv_term(c2, a2, Var(1), Var(0))
    inv_refl = inv_term(c2, Var(1), Var(1), Refl(Var(1)))
    c1w = refl_inverse_witness(c2, Var(1))
    s2 = ap(
        PathCtx(Telescope(), Id(c2, Var(1), Var(1)), inv_refl, Refl(Var(1)), c1w),
        comp_terms(c3i, Var(2), Var(2), a3i, Var(0), inv_term(c3i, a3i, Var(2), Var(1))),
        Id(c2, Var(1), a2),
    )
    s3 = unit_l(PathCtx(Telescope(), c2, Var(1), a2, inv_p))
    l0 = inv_term(
        c2, a2, Var(1), comp_terms(c2, a2, Var(1), Var(1), Var(0), Refl(Var(1)))
    )
    m0 = comp_terms(c2, Var(1), Var(1), a2, Refl(Var(1)), inv_p)
    r0 = comp_terms(c2, Var(1), Var(1), a2, inv_refl, inv_p)
    cid = Id(c2, Var(1), a2)
    body = path_chain(
        cid, [l0, inv_p, m0, r0],
        [s1, inv_term(cid, m0, inv_p, s3), inv_term(cid, r0, m0, s2)],
    )
    base = Lam(Id(c1, a1, Var(0)), body)
    return Ev(J(motive, base, pc_q.lhs, pc_q.rhs, pc_q.path), pc_p.path)


# ---------------------------------------------------------------------------
# word normalization for composite paths
#
# Composites built from compose / inverse / Refl over atomic paths form words
# of a free groupoid.  _normalize_word flattens a composite to its freely
# reduced word and emits a proof that the composite equals the word's
# right-nested rebuild.  This automates the cancellation chains that appear
# throughout the equivalence constructions.


@dataclass(frozen=True)
class _Atom:
    term: Expr  # the raw atomic path
    inv: bool  # used inverted in the word
    src: Expr  # endpoints as used (after inversion)
    dst: Expr


def _flip(a: _Atom) -> _Atom:
    return _Atom(a.term, not a.inv, a.dst, a.src)


def _render_atom(carrier: Expr, a: _Atom) -> Expr:
    if a.inv:
        return inv_term(carrier, a.dst, a.src, a.term)
    return a.term


def _rebuild(carrier: Expr, word: list[_Atom], l: Expr) -> Expr:
    if not word:
        return Refl(l)
    pts = [word[0].src] + [a.dst for a in word]
    return path_chain(carrier, pts, [_render_atom(carrier, a) for a in word]) \
        if len(word) > 1 else _render_atom(carrier, word[0])


def _match_comp(e: Expr):
    """Recognize the term shape emitted by compose; return
    (first_lhs, mid, end, first_path, second_path) or None."""
    if not (isinstance(e, Ev) and isinstance(e.fun, J)):
        return None
    j = e.fun
    m = j.motive
    if not (isinstance(m, Pi) and isinstance(m.dom, Id) and m.dom.rhs == Var(2)):
        return None
    try:
        carrier = shift(m.dom.carrier, -3, 0)
        l = shift(m.dom.lhs, -3, 0)
    except NegativeShiftEscape:
        return None
    exp_m, exp_b = _compose_parts(carrier, l)
    if j.motive != exp_m or j.base != exp_b:
        return None
    return l, j.lhs, j.rhs, e.arg, j.path


def _match_inv(e: Expr):
    """Recognize the term shape emitted by inverse; return
    (inner_lhs, inner_rhs, inner_path) or None."""
    if not isinstance(e, J):
        return None
    if e.base != Refl(Var(0)):
        return None
    m = e.motive
    if not (isinstance(m, Id) and m.lhs == Var(1) and m.rhs == Var(2)):
        return None
    try:
        shift(m.carrier, -3, 0)
    except NegativeShiftEscape:
        return None
    return e.lhs, e.rhs, e.path


def _pc(carrier: Expr, l: Expr, r: Expr, p: Expr) -> PathCtx:
    return PathCtx(Telescope(), carrier, l, r, p)


def _concat_words(
    carrier: Expr, w1: list[_Atom], w2: list[_Atom], l: Expr, m: Expr, r: Expr
) -> tuple[list[_Atom], Expr]:
    """Reduce comp(rebuild(w1), rebuild(w2)); returns (word, proof)."""
    r1 = _rebuild(carrier, w1, l)
    r2 = _rebuild(carrier, w2, m)
    whole = comp_terms(carrier, l, m, r, r1, r2)
    if not w1:
        return w2, unit_l(_pc(carrier, l, r, r2))
    if len(w1) == 1:
        a = w1[0]
        ta = _render_atom(carrier, a)
        if not w2:
            return w1, unit_r(_pc(carrier, l, m, ta))
        b = w2[0]
        if a.inv != b.inv and alpha_eq(a.term, b.term):
            if a.inv:
                cancel = inv_l(_pc(carrier, a.dst, a.src, a.term))
            else:
                cancel = inv_r(_pc(carrier, a.src, a.dst, a.term))
            # cancel : comp(ta, tb) = Refl(a.src)
            if len(w2) == 1:
                return [], cancel
            rest = w2[1:]
            rrest = _rebuild(carrier, rest, b.dst)
            tb = _render_atom(carrier, b)
            st1 = inv_term(
                Id(carrier, l, r),
                comp_terms(
                    carrier, l, b.dst, r,
                    comp_terms(carrier, l, m, b.dst, ta, tb), rrest,
                ),
                whole,
                assoc(
                    _pc(carrier, l, m, ta),
                    _pc(carrier, m, b.dst, tb),
                    _pc(carrier, b.dst, r, rrest),
                ),
            )
            car1 = shift(carrier, 1, 0)
            st2 = ap(
                _pc(
                    Id(carrier, l, l),
                    comp_terms(carrier, l, m, l, ta, tb),
                    Refl(l),
                    cancel,
                ),
                comp_terms(
                    car1, shift(l, 1, 0), shift(l, 1, 0), shift(r, 1, 0),
                    Var(0), shift(rrest, 1, 0),
                ),
                Id(carrier, l, r),
            )
            st3 = unit_l(_pc(carrier, l, r, rrest))
            pts = [
                whole,
                comp_terms(
                    carrier, l, l, r, comp_terms(carrier, l, m, l, ta, tb), rrest
                ),
                comp_terms(carrier, l, l, r, Refl(l), rrest),
                rrest,
            ]
            return rest, path_chain(Id(carrier, l, r), pts, [st1, st2, st3])
        return w1 + w2, Refl(whole)
    a, rest = w1[0], w1[1:]
    ta = _render_atom(carrier, a)
    rrest = _rebuild(carrier, rest, a.dst)
    st1 = assoc(
        _pc(carrier, l, a.dst, ta),
        _pc(carrier, a.dst, m, rrest),
        _pc(carrier, m, r, r2),
    )
    w_mid, pr_mid = _concat_words(carrier, rest, w2, a.dst, m, r)
    car1 = shift(carrier, 1, 0)
    st2 = ap(
        _pc(
            Id(carrier, a.dst, r),
            comp_terms(carrier, a.dst, m, r, rrest, r2),
            _rebuild(carrier, w_mid, a.dst),
            pr_mid,
        ),
        comp_terms(
            car1, shift(l, 1, 0), shift(a.dst, 1, 0), shift(r, 1, 0),
            shift(ta, 1, 0), Var(0),
        ),
        Id(carrier, l, r),
    )
    w_fin, pr_fin = _concat_words(carrier, [a], w_mid, l, a.dst, r)
    pts = [
        whole,
        comp_terms(carrier, l, a.dst, r, ta, comp_terms(carrier, a.dst, m, r, rrest, r2)),
        comp_terms(carrier, l, a.dst, r, ta, _rebuild(carrier, w_mid, a.dst)),
        _rebuild(carrier, w_fin, l),
    ]
    return w_fin, path_chain(Id(carrier, l, r), pts, [st1, st2, pr_fin])


def _invert_word(
    carrier: Expr, w: list[_Atom], l: Expr, r: Expr
) -> tuple[list[_Atom], Expr]:
    """Reduce inverse(rebuild(w)); returns (word, proof).  w : l = r."""
    rw = _rebuild(carrier, w, l)
    whole = inv_term(carrier, l, r, rw)
    if not w:
        return [], refl_inverse_witness(carrier, l)
    if len(w) == 1:
        a = w[0]
        if a.inv:
            # inverse(inverse(t)) = t
            return [_flip(a)], inv_inv(_pc(carrier, a.dst, a.src, a.term))
        return [_flip(a)], Refl(whole)
    a, rest = w[0], w[1:]
    ta = _render_atom(carrier, a)
    rrest = _rebuild(carrier, rest, a.dst)
    st1 = inv_comp(_pc(carrier, l, a.dst, ta), _pc(carrier, a.dst, r, rrest))
    w_r, pr_r = _invert_word(carrier, rest, a.dst, r)
    inv_ta = inv_term(carrier, l, a.dst, ta)
    inv_rrest = inv_term(carrier, a.dst, r, rrest)
    car1 = shift(carrier, 1, 0)
    st2 = ap(
        _pc(Id(carrier, r, a.dst), inv_rrest, _rebuild(carrier, w_r, r), pr_r),
        comp_terms(
            car1, shift(r, 1, 0), shift(a.dst, 1, 0), shift(l, 1, 0),
            Var(0), shift(inv_ta, 1, 0),
        ),
        Id(carrier, r, l),
    )
    w_a, pr_a = _invert_word(carrier, [a], l, a.dst)
    st3 = ap(
        _pc(Id(carrier, a.dst, l), inv_ta, _rebuild(carrier, w_a, a.dst), pr_a),
        comp_terms(
            car1, shift(r, 1, 0), shift(a.dst, 1, 0), shift(l, 1, 0),
            shift(_rebuild(carrier, w_r, r), 1, 0), Var(0),
        ),
        Id(carrier, r, l),
    )
    w_fin, pr_fin = _concat_words(carrier, w_r, w_a, r, a.dst, l)
    pts = [
        whole,
        comp_terms(carrier, r, a.dst, l, inv_rrest, inv_ta),
        comp_terms(carrier, r, a.dst, l, _rebuild(carrier, w_r, r), inv_ta),
        comp_terms(
            carrier, r, a.dst, l,
            _rebuild(carrier, w_r, r), _rebuild(carrier, w_a, a.dst),
        ),
        _rebuild(carrier, w_fin, r),
    ]
    return w_fin, path_chain(Id(carrier, r, l), pts, [st1, st2, st3, pr_fin])


def _normalize_word(
    carrier: Expr, term: Expr, l: Expr, r: Expr
) -> tuple[list[_Atom], Expr]:
    """Flatten a composite path to its freely reduced word.

    Returns (word, proof : term = rebuild(word)).
    """
    mc = _match_comp(term)
    if mc is not None:
        _, mid, _, p, q = mc
        w1, pr1 = _normalize_word(carrier, p, l, mid)
        w2, pr2 = _normalize_word(carrier, q, mid, r)
        r1 = _rebuild(carrier, w1, l)
        r2 = _rebuild(carrier, w2, mid)
        car1 = shift(carrier, 1, 0)
        e1 = ap(
            _pc(Id(carrier, l, mid), p, r1, pr1),
            comp_terms(
                car1, shift(l, 1, 0), shift(mid, 1, 0), shift(r, 1, 0),
                Var(0), shift(q, 1, 0),
            ),
            Id(carrier, l, r),
        )
        e2 = ap(
            _pc(Id(carrier, mid, r), q, r2, pr2),
            comp_terms(
                car1, shift(l, 1, 0), shift(mid, 1, 0), shift(r, 1, 0),
                shift(r1, 1, 0), Var(0),
            ),
            Id(carrier, l, r),
        )
        w_fin, pr3 = _concat_words(carrier, w1, w2, l, mid, r)
        pts = [
            term,
            comp_terms(carrier, l, mid, r, r1, q),
            comp_terms(carrier, l, mid, r, r1, r2),
            _rebuild(carrier, w_fin, l),
        ]
        return w_fin, path_chain(Id(carrier, l, r), pts, [e1, e2, pr3])
    mi = _match_inv(term)
    if mi is not None:
        il, ir, ip = mi
        # term = inverse(ip) with ip : r = l
        w0, pr0 = _normalize_word(carrier, ip, r, l)
        car1 = shift(carrier, 1, 0)
        e1 = ap(
            _pc(Id(carrier, r, l), ip, _rebuild(carrier, w0, r), pr0),
            inv_term(car1, shift(r, 1, 0), shift(l, 1, 0), Var(0)),
            Id(carrier, l, r),
        )
        w_fin, pr1 = _invert_word(carrier, w0, r, l)
        pts = [
            term,
            inv_term(carrier, r, l, _rebuild(carrier, w0, r)),
            _rebuild(carrier, w_fin, l),
        ]
        return w_fin, path_chain(Id(carrier, l, r), pts, [e1, pr1])
    if isinstance(term, Refl):
        return [], Refl(term)
    return [_Atom(term, False, l, r)], Refl(term)


def word_normalize(carrier: Expr, l: Expr, r: Expr, term: Expr) -> tuple[Expr, Expr]:
    """Return (canonical, proof : term = canonical) by free-word reduction."""
    word, proof = _normalize_word(carrier, term, l, r)
    return _rebuild(carrier, word, l), proof


def word_eq(carrier: Expr, l: Expr, r: Expr, t1: Expr, t2: Expr) -> Expr:
    """A proof t1 = t2 when both reduce to the same word; PathError otherwise."""
    w1, pr1 = _normalize_word(carrier, t1, l, r)
    w2, pr2 = _normalize_word(carrier, t2, l, r)
    same = len(w1) == len(w2) and all(
        x.inv == y.inv and alpha_eq(x.term, y.term) for x, y in zip(w1, w2)
    )
    if not same:
        raise PathError("words do not agree after reduction")
    canon = _rebuild(carrier, w1, l)
    cid = Id(carrier, l, r)
    return path_chain(
        cid, [t1, canon, t2], [pr1, inv_term(cid, t2, canon, pr2)]
    )


# ---------------------------------------------------------------------------
# paths between dependent pairs, and the split eliminator derived from
# projections
#
# Throughout, carrier_a is the first component type, fam_b binds 1 over it,
# and pairs live in Sig(carrier_a, fam_b).


def _plug_first(fam2: Expr, point: Expr) -> Expr:
    """Fix the first argument of a two-slot body, leaving one slot open.

    fam2 binds 2; point lives at the ambient depth; result binds 1.
    """
    return inst(shift(fam2, 1, 2), (Var(0), shift(point, 1, 0)))


def _hat_family(fam_c: Expr, fam_b: Expr) -> Expr:
    """Precompose a family over Sig(A, B) with pairing; result binds 2."""
    return subst(
        shift(fam_c, 2, 1), 0, Pair(Var(1), Var(0), shift(fam_b, 2, 1))
    )


def _pair_path_parts(carrier_a: Expr, fam_b: Expr) -> tuple[Expr, Expr]:
    """Motive (binds 3) and base (binds 1) of the J behind pair_path."""

    def an(n: int) -> Expr:
        return shift(carrier_a, n, 0)

    def bn(n: int) -> Expr:
        return shift(fam_b, n, 1)

    def bat(n: int, t: Expr) -> Expr:
        return subst(bn(n), 0, t)

    # motive scope: x = Var 2, x' = Var 1, w = Var 0; then t^, s^, q^
    dom_t = bat(3, Var(1))
    dom_s = bat(4, Var(3))
    dom_q = Id(
        bat(5, Var(4)),
        Var(0),
        transport_term(an(5), Var(4), Var(3), Var(2), bn(5), Var(1)),
    )
    cod = Id(
        Sig(an(6), bn(6)),
        Pair(Var(5), Var(1), bn(6)),
        Pair(Var(4), Var(2), bn(6)),
    )
    motive = Pi(dom_t, Pi(dom_s, Pi(dom_q, cod)))

    # base scope: x = Var 0; then t^, s^, q^
    dom_tb = bat(1, Var(0))
    dom_sb = bat(2, Var(1))
    dom_qb = Id(
        bat(3, Var(2)),
        Var(0),
        transport_term(an(3), Var(2), Var(2), Refl(Var(2)), bn(3), Var(1)),
    )
    # body scope: x = Var 3, t^ = Var 2, s^ = Var 1, q^ = Var 0
    car_b = bat(4, Var(3))
    trw = transport_refl_witness(an(4), Var(3), bn(4), Var(2))
    tr_t = transport_term(an(4), Var(3), Var(3), Refl(Var(3)), bn(4), Var(2))
    kappa = comp_terms(car_b, Var(1), tr_t, Var(2), Var(0), trw)
    body = ap_term(
        car_b, Var(1), Var(2), kappa, Pair(Var(4), Var(0), bn(5)), Sig(an(4), bn(4))
    )
    base = Lam(dom_tb, Lam(dom_sb, Lam(dom_qb, body)))
    return motive, base


def pair_path(
    carrier_a: Expr,
    fam_b: Expr,
    u: Expr,
    v: Expr,
    s: Expr,
    t: Expr,
    p: Expr,
    q: Expr,
) -> Expr:
    """A path Pair(u, s) = Pair(v, t) from componentwise paths.

    p : Id(A, u, v) and q : Id(B[u], s, transport(p, B, t)).
    """
    motive, base = _pair_path_parts(carrier_a, fam_b)
    return Ev(Ev(Ev(J(motive, base, u, v, p), t), s), q)


@_unpruned
def pair_transport_witness(
    carrier_a: Expr,
    fam_b: Expr,
    fam_c: Expr,
    u: Expr,
    v: Expr,
    s: Expr,
    t: Expr,
    p: Expr,
    q: Expr,
    w: Expr,
) -> Expr:
    """Transport along pair_path(p, q) agrees with telescope transport.

    fam_c binds 1 over Sig(A, B); w : fam_c[Pair(v, t)].
    : transport(pair_path(p, q), C, w)
      = op_transport((p, q), C o pairing, w)
    """
    A, B, C = carrier_a, fam_b, fam_c
    hatc = _hat_family(C, B)

    def an(n: int) -> Expr:
        return shift(A, n, 0)

    def bn(n: int) -> Expr:
        return shift(B, n, 1)

    def cn(n: int) -> Expr:
        return shift(C, n, 1)

    def bat(n: int, x: Expr) -> Expr:
        return subst(bn(n), 0, x)

    def cat(n: int, x: Expr) -> Expr:
        return subst(cn(n), 0, x)

    # motive scope: x = Var 2, x' = Var 1, w = Var 0; then t^, s^, q^, w^
    dom_t = bat(3, Var(1))
    dom_s = bat(4, Var(3))
    dom_q = Id(
        bat(5, Var(4)),
        Var(0),
        transport_term(an(5), Var(4), Var(3), Var(2), bn(5), Var(1)),
    )
    dom_w = cat(6, Pair(Var(4), Var(2), bn(6)))
    # cod scope: x = Var 6, x' = Var 5, w = Var 4, t^ = Var 3, s^ = Var 2,
    #            q^ = Var 1, w^ = Var 0
    pp7 = pair_path(an(7), bn(7), Var(6), Var(5), Var(2), Var(3), Var(4), Var(1))
    lhs7 = transport_term(
        Sig(an(7), bn(7)),
        Pair(Var(6), Var(2), bn(7)),
        Pair(Var(5), Var(3), bn(7)),
        pp7,
        cn(7),
        Var(0),
    )
    rhs7 = op_transport(
        (an(7), bn(7)),
        (Var(6), Var(2)),
        (Var(5), Var(3)),
        (Var(4), Var(1)),
        shift(hatc, 7, 2),
        Var(0),
    )
    cod = Id(cat(7, Pair(Var(6), Var(2), bn(7))), lhs7, rhs7)
    motive = Pi(dom_t, Pi(dom_s, Pi(dom_q, Pi(dom_w, cod))))

    # base scope: x = Var 0; then t^, s^, q^, w^
    dom_tb = bat(1, Var(0))
    dom_sb = bat(2, Var(1))
    dom_qb = Id(
        bat(3, Var(2)),
        Var(0),
        transport_term(an(3), Var(2), Var(2), Refl(Var(2)), bn(3), Var(1)),
    )
    dom_wb = cat(4, Pair(Var(3), Var(2), bn(4)))
    # body scope: x = Var 4, t^ = Var 3, s^ = Var 2, q^ = Var 1, w^ = Var 0
    a5, b5, c5 = an(5), bn(5), cn(5)
    ppm, ppb = _pair_path_parts(a5, b5)
    reduced_pp, s1 = _spine_collapse(ppm, ppb, Var(4), (Var(3), Var(2), Var(1)))
    pp_refl = Ev(
        Ev(Ev(J(ppm, ppb, Var(4), Var(4), Refl(Var(4))), Var(3)), Var(2)), Var(1)
    )
    car_b = bat(5, Var(4))
    trw = transport_refl_witness(a5, Var(4), b5, Var(3))
    tr_t = transport_term(a5, Var(4), Var(4), Refl(Var(4)), b5, Var(3))
    kappa = comp_terms(car_b, Var(2), tr_t, Var(3), Var(1), trw)
    ap_kappa = ap_term(
        car_b, Var(2), Var(3), kappa, Pair(Var(5), Var(0), bn(6)), Sig(a5, b5)
    )
    if reduced_pp != ap_kappa:
        raise PathError("pair path head collapse changed shape")
    ty_pp = Id(Sig(a5, b5), Pair(Var(4), Var(2), b5), Pair(Var(4), Var(3), b5))
    goal_car = cat(5, Pair(Var(4), Var(2), b5))
    s2 = ap(
        PathCtx(Telescope(), ty_pp, pp_refl, reduced_pp, s1),
        transport_term(
            Sig(an(6), bn(6)),
            Pair(Var(5), Var(3), bn(6)),
            Pair(Var(5), Var(4), bn(6)),
            Var(0),
            cn(6),
            Var(1),
        ),
        goal_car,
    )
    s3 = ap_transport(
        car_b,
        Sig(a5, b5),
        Pair(Var(5), Var(0), bn(6)),
        c5,
        PathCtx(Telescope(), car_b, Var(2), Var(3), kappa),
        Var(0),
    )
    comp_fam = subst(shift(c5, 1, 1), 0, Pair(Var(5), Var(0), bn(6)))
    reduced_op, c_op = collapse_refl_head(
        (a5, b5), Var(4), (Var(2),), (Var(3),), (Var(1),),
        shift(hatc, 5, 2), Var(0),
    )
    tr_kappa = transport_term(car_b, Var(2), Var(3), kappa, comp_fam, Var(0))
    if reduced_op != tr_kappa:
        raise PathError("telescope head collapse changed shape")
    op_refl = op_transport(
        (a5, b5), (Var(4), Var(2)), (Var(4), Var(3)),
        (Refl(Var(4)), Var(1)), shift(hatc, 5, 2), Var(0),
    )
    lhs0 = transport_term(
        Sig(a5, b5),
        Pair(Var(4), Var(2), b5),
        Pair(Var(4), Var(3), b5),
        pp_refl,
        c5,
        Var(0),
    )
    tr_red = transport_term(
        Sig(a5, b5),
        Pair(Var(4), Var(2), b5),
        Pair(Var(4), Var(3), b5),
        reduced_pp,
        c5,
        Var(0),
    )
    body = path_chain(
        goal_car,
        [lhs0, tr_red, tr_kappa, op_refl],
        [s2, s3, inv_term(goal_car, op_refl, tr_kappa, c_op)],
    )
    base = Lam(dom_tb, Lam(dom_sb, Lam(dom_qb, Lam(dom_wb, body))))
    return Ev(Ev(Ev(Ev(J(motive, base, u, v, p), t), s), q), w)


@_unpruned
def op_apd_2(
    carrier_a: Expr,
    fam_b: Expr,
    fam: Expr,
    c_body: Expr,
    a1: Expr,
    a2: Expr,
    b1: Expr,
    b2: Expr,
    p1: Expr,
    p2: Expr,
) -> Expr:
    """Dependent ap of a two-argument function over a telescope path pair.

    c_body binds 2 with c(x, y) : fam[x, y] (fam binds 2); p1 : a1 = b1 and
    p2 : a2 = transport(p1, B, b2).
    : c(a1, a2) = op_transport((p1, p2), fam, c(b1, b2))
    """
    A, B = carrier_a, fam_b

    def an(n: int) -> Expr:
        return shift(A, n, 0)

    def bn(n: int) -> Expr:
        return shift(B, n, 1)

    def bat(n: int, x: Expr) -> Expr:
        return subst(bn(n), 0, x)

    # motive scope: x = Var 2, x' = Var 1, w = Var 0; then b2^, a2^, p2^
    dom_b2 = bat(3, Var(1))
    dom_a2 = bat(4, Var(3))
    dom_p2 = Id(
        bat(5, Var(4)),
        Var(0),
        transport_term(an(5), Var(4), Var(3), Var(2), bn(5), Var(1)),
    )
    # cod scope: x = Var 5, x' = Var 4, w = Var 3, b2^ = Var 2, a2^ = Var 1,
    #            p2^ = Var 0
    fam6 = shift(fam, 6, 2)
    c6 = shift(c_body, 6, 2)
    cod = Id(
        inst(fam6, (Var(1), Var(5))),
        inst(c6, (Var(1), Var(5))),
        op_transport(
            (an(6), bn(6)), (Var(5), Var(1)), (Var(4), Var(2)),
            (Var(3), Var(0)), fam6, inst(c6, (Var(2), Var(4))),
        ),
    )
    motive = Pi(dom_b2, Pi(dom_a2, Pi(dom_p2, cod)))

    # base scope: x = Var 0; then b2^, a2^, p2^
    dom_b2b = bat(1, Var(0))
    dom_a2b = bat(2, Var(1))
    dom_p2b = Id(
        bat(3, Var(2)),
        Var(0),
        transport_term(an(3), Var(2), Var(2), Refl(Var(2)), bn(3), Var(1)),
    )
    # body scope: x = Var 3, b2^ = Var 2, a2^ = Var 1, p2^ = Var 0
    a4, b4 = an(4), bn(4)
    fam4 = shift(fam, 4, 2)
    c4 = shift(c_body, 4, 2)
    car_y = bat(4, Var(3))
    trw = transport_refl_witness(a4, Var(3), b4, Var(2))
    tr_b = transport_term(a4, Var(3), Var(3), Refl(Var(3)), b4, Var(2))
    kappa = comp_terms(car_y, Var(1), tr_b, Var(2), Var(0), trw)
    fam_x = _plug_first(fam4, Var(3))
    c_x = _plug_first(c4, Var(3))
    s1 = apd(c_x, fam_x, PathCtx(Telescope(), car_y, Var(1), Var(2), kappa))
    c_xb = inst(c4, (Var(2), Var(3)))
    reduced_op, c_op = collapse_refl_head(
        (a4, b4), Var(3), (Var(1),), (Var(2),), (Var(0),), fam4, c_xb
    )
    tr_kappa = transport_term(car_y, Var(1), Var(2), kappa, fam_x, c_xb)
    if reduced_op != tr_kappa:
        raise PathError("telescope head collapse changed shape")
    goal_car = inst(fam4, (Var(1), Var(3)))
    op_refl = op_transport(
        (a4, b4), (Var(3), Var(1)), (Var(3), Var(2)),
        (Refl(Var(3)), Var(0)), fam4, c_xb,
    )
    body = path_chain(
        goal_car,
        [inst(c4, (Var(1), Var(3))), tr_kappa, op_refl],
        [s1, inv_term(goal_car, op_refl, tr_kappa, c_op)],
    )
    base = Lam(dom_b2b, Lam(dom_a2b, Lam(dom_p2b, body)))
    return Ev(Ev(Ev(J(motive, base, a1, b1, p1), b2), a2), p2)


@_unpruned
def derived_split(
    carrier_a: Expr,
    fam_b: Expr,
    fam_c: Expr,
    branch: Expr,
    scrut: Expr,
) -> tuple[Expr, Expr | None]:
    """The positive-pair eliminator derived from projections.

    branch binds 2 with branch(x, y) : fam_c[Pair(x, y)]; scrut : Sig(A, B).
    Returns (split, sigma) where split : fam_c[scrut] and, when scrut is a
    literal pair Pair(x, y, fam_b), sigma : split = branch(x, y); otherwise
    sigma is None.
    """
    A, B, C = carrier_a, fam_b, fam_c
    S = Sig(A, B)
    eta = EtaSig(scrut)
    e_scrut = Pair(P1(scrut), P2(scrut), B)
    h_scrut = inst(branch, (P2(scrut), P1(scrut)))
    split = transport_term(S, scrut, e_scrut, eta, C, h_scrut)
    if not (isinstance(scrut, Pair) and scrut.cod == B):
        return split, None
    x, y = scrut.fst, scrut.snd
    P = scrut
    e_body = Pair(P1(Var(0)), P2(Var(0)), shift(B, 1, 1))
    Q = subst(e_body, 0, P)  # Pair(P1 P, P2 P, B)
    QQ = subst(e_body, 0, Q)
    ce = subst(shift(C, 1, 1), 0, e_body)  # C o pairing, binds 1 over S
    hatc = _hat_family(C, B)
    eta_body = EtaSig(Var(0))  # binds 1; the pointwise homotopy id ~ pairing
    # g(z) = transport(eta_z, C, branch(proj1 z, proj2 z))
    g_body = transport_term(
        shift(S, 1, 0),
        Var(0),
        subst(shift(e_body, 1, 1), 0, Var(0)),
        EtaSig(Var(0)),
        shift(C, 1, 1),
        inst(shift(branch, 1, 2), (P2(Var(0)), P1(Var(0)))),
    )
    h_body = inst(shift(branch, 1, 2), (P2(Var(0)), P1(Var(0))))

    def c_at(u: Expr) -> Expr:
        return subst(C, 0, u)

    pc_eta = PathCtx(Telescope(), S, P, Q, eta)
    # coherence: ap(pairing, eta_P) = eta_Q, by whiskering the naturality
    # square of the pointwise homotopy at eta_P
    nat = homotopy_nat(S, S, Var(0), e_body, eta_body, pc_eta)
    ap_e_eta = ap_term(S, P, Q, eta, e_body, S)
    ap_id_eta = ap_term(S, P, Q, eta, Var(0), S)
    eta_q = EtaSig(Q)
    sid = Id(S, P, QQ)
    fix = ap(
        PathCtx(Telescope(), Id(S, P, Q), ap_id_eta, eta, ap_id(pc_eta)),
        comp_terms(
            shift(S, 1, 0), shift(P, 1, 0), shift(Q, 1, 0), shift(QQ, 1, 0),
            Var(0), shift(eta_q, 1, 0),
        ),
        sid,
    )
    nat2 = path_chain(
        sid,
        [
            comp_terms(S, P, Q, QQ, eta, ap_e_eta),
            comp_terms(S, P, Q, QQ, ap_id_eta, eta_q),
            comp_terms(S, P, Q, QQ, eta, eta_q),
        ],
        [nat, fix],
    )
    coh = left_cancel(pc_eta, QQ, ap_e_eta, eta_q, nat2)
    # inner rewrite at Q: g(Q) = transport(delta, C, branch(x, y))
    g_q = subst(g_body, 0, Q)
    h_q = subst(h_body, 0, Q)
    h_p = subst(h_body, 0, P)
    qid = Id(S, Q, QQ)
    e4 = ap(
        PathCtx(Telescope(), qid, eta_q, ap_e_eta, inv_term(qid, ap_e_eta, eta_q, coh)),
        transport_term(
            shift(S, 1, 0), shift(Q, 1, 0), shift(QQ, 1, 0), Var(0),
            shift(C, 1, 1), shift(h_q, 1, 0),
        ),
        c_at(Q),
    )
    e5 = ap_transport(S, S, e_body, C, pc_eta, h_q)
    e6 = apd(h_body, ce, pc_eta)
    beta1 = Beta1(x, y, B)
    beta2 = Beta2(x, y, B)
    delta = pair_path(A, B, P1(P), x, P2(P), y, beta1, beta2)
    e7 = op_apd_2(A, B, hatc, branch, P1(P), P2(P), x, y, beta1, beta2)
    op2 = op_transport(
        (A, B), (P1(P), P2(P)), (x, y), (beta1, beta2), hatc,
        inst(branch, (y, x)),
    )
    pt = pair_transport_witness(
        A, B, C, P1(P), x, P2(P), y, beta1, beta2, inst(branch, (y, x))
    )
    w_term = inst(branch, (y, x))
    tr_delta_w = transport_term(S, Q, P, delta, C, w_term)
    tr_eta_h = transport_term(S, P, Q, eta, ce, h_q)
    inner = path_chain(
        c_at(Q),
        [
            g_q,
            transport_term(S, Q, QQ, ap_e_eta, C, h_q),
            tr_eta_h,
            h_p,
            op2,
            tr_delta_w,
        ],
        [
            e4,
            e5,
            inv_term(c_at(Q), h_p, tr_eta_h, e6),
            e7,
            inv_term(c_at(Q), tr_delta_w, op2, pt),
        ],
    )
    # outer: peel transport(inv delta, C, -) back off
    pc_delta = PathCtx(Telescope(), S, Q, P, delta)
    inv_delta = inverse(pc_delta)
    g_p = subst(g_body, 0, P)
    e1 = apd(g_body, C, pc_delta)  # g(Q) = transport(delta, C, g(P))
    tr_delta_gp = transport_term(S, Q, P, delta, C, g_p)

    def tr_inv(t: Expr) -> Expr:
        return transport_term(S, P, Q, inv_delta, C, t)

    pc_inv = PathCtx(Telescope(), S, P, Q, inv_delta)
    ild = inv_l(pc_delta)  # comp(inv delta, delta) = Refl(P)
    comp_id = comp_terms(S, P, Q, P, inv_delta, delta)

    def collapse_loop(t: Expr) -> Expr:
        """transport(inv delta, C, transport(delta, C, t)) = t."""
        tc = transport_compose(C, pc_inv, pc_delta, t)
        fix2 = ap(
            PathCtx(Telescope(), Id(S, P, P), comp_id, Refl(P), ild),
            transport_term(
                shift(S, 1, 0), shift(P, 1, 0), shift(P, 1, 0), Var(0),
                shift(C, 1, 1), shift(t, 1, 0),
            ),
            c_at(P),
        )
        trw = transport_refl_witness(S, P, C, t)
        return path_chain(
            c_at(P),
            [
                tr_inv(transport_term(S, Q, P, delta, C, t)),
                transport_term(S, P, P, comp_id, C, t),
                transport_term(S, P, P, Refl(P), C, t),
                t,
            ],
            [tc, fix2, trw],
        )
    f1 = collapse_loop(g_p)  # tr(inv delta, C, tr(delta, C, g P)) = g P
    step_a = ap(
        PathCtx(Telescope(), c_at(Q), g_q, tr_delta_gp, e1),
        transport_term(
            shift(S, 1, 0), shift(P, 1, 0), shift(Q, 1, 0),
            shift(inv_delta, 1, 0), shift(C, 1, 1), Var(0),
        ),
        c_at(P),
    )
    step_b = ap(
        PathCtx(Telescope(), c_at(Q), g_q, tr_delta_w, inner),
        transport_term(
            shift(S, 1, 0), shift(P, 1, 0), shift(Q, 1, 0),
            shift(inv_delta, 1, 0), shift(C, 1, 1), Var(0),
        ),
        c_at(P),
    )
    f2 = collapse_loop(w_term)
    sigma = path_chain(
        c_at(P),
        [
            split,
            tr_inv(tr_delta_gp),
            tr_inv(g_q),
            tr_inv(tr_delta_w),
            w_term,
        ],
        [
            inv_term(c_at(P), tr_inv(tr_delta_gp), split, f1),
            inv_term(c_at(P), tr_inv(g_q), tr_inv(tr_delta_gp), step_a),
            step_b,
            f2,
        ],
    )
    return split, sigma


# ---------------------------------------------------------------------------
# identity telescope equalities
#
# The identity CtxPropEq on a morphism cannot use literal Refl components:
# proof i must relate a_i to the transport of a_i along the earlier proofs.
# Instead each proof inverts the witness that the prefix transport is
# propositionally trivial, and that witness is built by collapsing the
# literal-Refl head, rewriting the leftover composite proofs to Refl by free
# word reduction, and peeling one transport at a time.


def _plug_outer(body: Expr, binds: int, point: Expr) -> Expr:
    """Fix the outermost slot of a multi-slot body; result binds one less."""
    ts = tuple(Var(i) for i in range(binds - 1)) + (shift(point, binds - 1, 0),)
    return inst(shift(body, binds - 1, binds), ts)


def _op2_slot_congruence(
    d1: Expr,
    d2: Expr,
    fam2: Expr,
    a1: Expr,
    a2: Expr,
    t: Expr,
    kappa: Expr,
    kappa2: Expr,
    omega: Expr,
) -> Expr:
    """Rewrite the head proof of a two-step telescope transport to Refl.

    omega : kappa = Refl(a1); kappa2 : a2 = transport(kappa, d2, a2).
    : op_transport((kappa, kappa2), fam2, t)
      = op_transport((Refl a1, comp(kappa2, ap(transport, omega))), fam2, t)
    """

    def d1n(n):
        return shift(d1, n, 0)

    def d2n(n):
        return shift(d2, n, 1)

    def a1n(n):
        return shift(a1, n, 0)

    def a2n(n):
        return shift(a2, n, 0)

    def tn(n):
        return shift(t, n, 0)

    def f2n(n):
        return shift(fam2, n, 2)

    def d2a(n):
        return subst(d2n(n), 0, a1n(n))

    def trv(n, v):
        return transport_term(d1n(n), a1n(n), a1n(n), v, d2n(n), a2n(n))

    def fn_tr(n):
        # u |-> transport(u, d2, a2), one binder deep
        return transport_term(
            d1n(n + 1), a1n(n + 1), a1n(n + 1), Var(0), d2n(n + 1), a2n(n + 1)
        )

    # motive scope: v = Var 2, v' = Var 1, omega^ = Var 0; then k^
    dom_k = Id(d2a(3), a2n(3), trv(3, Var(2)))
    # cod scope: v = Var 3, v' = Var 2, omega^ = Var 1, k^ = Var 0
    ap_om = ap_term(
        Id(d1n(4), a1n(4), a1n(4)), Var(3), Var(2), Var(1), fn_tr(4), d2a(4)
    )
    moved = comp_terms(d2a(4), a2n(4), trv(4, Var(3)), trv(4, Var(2)), Var(0), ap_om)
    lhs = op_transport(
        (d1n(4), d2n(4)), (a1n(4), a2n(4)), (a1n(4), a2n(4)),
        (Var(3), Var(0)), f2n(4), tn(4),
    )
    rhs = op_transport(
        (d1n(4), d2n(4)), (a1n(4), a2n(4)), (a1n(4), a2n(4)),
        (Var(2), moved), f2n(4), tn(4),
    )
    motive = Pi(dom_k, Id(inst(f2n(4), (a2n(4), a1n(4))), lhs, rhs))

    # base scope: v = Var 0; then k^ (body scope: v = Var 1, k^ = Var 0)
    dom_kb = Id(d2a(1), a2n(1), trv(1, Var(0)))
    trv_b = trv(2, Var(1))
    ap_refl = ap_term(
        Id(d1n(2), a1n(2), a1n(2)), Var(1), Var(1), Refl(Var(1)), fn_tr(2), d2a(2)
    )
    c1 = refl_ap_witness(Id(d1n(2), a1n(2), a1n(2)), fn_tr(2), d2a(2), Var(1))
    kid = Id(d2a(2), a2n(2), trv_b)
    s_a = ap(
        PathCtx(Telescope(), Id(d2a(2), trv_b, trv_b), ap_refl, Refl(trv_b), c1),
        comp_terms(
            d2a(3), a2n(3), shift(trv_b, 1, 0), shift(trv_b, 1, 0), Var(1), Var(0)
        ),
        kid,
    )
    s_b = unit_r(PathCtx(Telescope(), d2a(2), a2n(2), trv_b, Var(0)))
    moved_b = comp_terms(d2a(2), a2n(2), trv_b, trv_b, Var(0), ap_refl)
    mu = path_chain(
        kid,
        [moved_b, comp_terms(d2a(2), a2n(2), trv_b, trv_b, Var(0), Refl(trv_b)), Var(0)],
        [s_a, s_b],
    )
    body = ap(
        PathCtx(Telescope(), kid, Var(0), moved_b, inv_term(kid, moved_b, Var(0), mu)),
        op_transport(
            (d1n(3), d2n(3)), (a1n(3), a2n(3)), (a1n(3), a2n(3)),
            (Var(2), Var(0)), f2n(3), tn(3),
        ),
        inst(f2n(2), (a2n(2), a1n(2))),
    )
    base = Lam(dom_kb, body)
    return Ev(J(motive, base, kappa, Refl(a1), omega), kappa2)


def ident_transport_witness(
    deltas: tuple[Expr, ...],
    points: tuple[Expr, ...],
    family: Expr,
    t: Expr,
) -> Expr:
    """Transport along the identity proofs of a telescope is trivial.

    : op_transport(ident_proofs(deltas, points), family, t) = t
    """
    m = len(deltas)
    if len(points) != m:
        raise PathError("telescope point arity mismatch")
    if m == 0:
        return Refl(t)
    keep = _needed_slots(deltas, family)
    if len(keep) < m:
        # Mirror the slot pruning of op_transport so the witness matches
        # the pruned transport term.
        if not keep:
            return Refl(t)
        deltas2 = tuple(
            _drop_slots(deltas[s], s, [k for k in keep if k < s]) for s in keep
        )
        family2 = _drop_slots(family, m, keep)
        return ident_transport_witness(
            deltas2, tuple(points[s] for s in keep), family2, t
        )
    if m == 1:
        return transport_refl_witness(deltas[0], points[0], family, t)
    ps = ident_proofs(deltas, points)
    a0 = points[0]
    goal_car = inst(family, tuple(reversed(points)))
    op_full = op_transport(deltas, points, points, ps, family, t)
    if m == 2:
        d0, d1 = deltas
        a1 = points[1]
        d1a = subst(d1, 0, a0)
        reduced, g = collapse_refl_head(
            deltas, a0, (a1,), (a1,), (ps[1],), family, t
        )
        red_h, c_head = collapse_refl_head((d0,), a0, (), (), (), d1, a1)
        big = op_transport((d0,), (a0,), (a0,), (Refl(a0),), d1, a1)
        kappa = comp_terms(d1a, a1, big, red_h, ps[1], c_head)
        fam1 = _plug_outer(family, 2, a0)
        if reduced != op_transport((d1a,), (a1,), (a1,), (kappa,), fam1, t):
            raise PathError("telescope head collapse changed shape")
        canon, rho = word_normalize(d1a, a1, a1, kappa)
        if canon != Refl(a1):
            raise PathError("identity proof composite did not reduce to Refl")
        s_ap = ap(
            PathCtx(Telescope(), Id(d1a, a1, a1), kappa, Refl(a1), rho),
            transport_term(
                shift(d1a, 1, 0), shift(a1, 1, 0), shift(a1, 1, 0), Var(0),
                shift(fam1, 1, 1), shift(t, 1, 0),
            ),
            goal_car,
        )
        s_trw = transport_refl_witness(d1a, a1, fam1, t)
        return path_chain(
            goal_car,
            [
                op_full,
                reduced,
                transport_term(d1a, a1, a1, Refl(a1), fam1, t),
                t,
            ],
            [g, s_ap, s_trw],
        )
    if m == 3:
        d0, d1, d2 = deltas
        a1, a2 = points[1], points[2]
        d1a = subst(d1, 0, a0)
        d2p = _plug_outer(d2, 2, a0)  # binds 1 over d1a
        d2a = inst(d2, (a1, a0))
        famp = _plug_outer(family, 3, a0)  # binds 2
        reduced, g = collapse_refl_head(
            deltas, a0, (a1, a2), (a1, a2), (ps[1], ps[2]), family, t
        )
        red1, c1 = collapse_refl_head((d0,), a0, (), (), (), d1, a1)
        big1 = op_transport((d0,), (a0,), (a0,), (Refl(a0),), d1, a1)
        kap1 = comp_terms(d1a, a1, big1, red1, ps[1], c1)
        red2, c2 = collapse_refl_head(
            (d0, d1), a0, (a1,), (a1,), (ps[1],), d2, a2
        )
        if red2 != op_transport((d1a,), (a1,), (a1,), (kap1,), d2p, a2):
            raise PathError("telescope head collapse changed shape")
        big2 = op_transport((d0, d1), (a0, a1), (a0, a1), (ps[0], ps[1]), d2, a2)
        kap2 = comp_terms(d2a, a2, big2, red2, ps[2], c2)
        if reduced != op_transport(
            (d1a, d2p), (a1, a2), (a1, a2), (kap1, kap2), famp, t
        ):
            raise PathError("telescope head collapse changed shape")
        canon1, rho1 = word_normalize(d1a, a1, a1, kap1)
        if canon1 != Refl(a1):
            raise PathError("identity proof composite did not reduce to Refl")
        cong = _op2_slot_congruence(d1a, d2p, famp, a1, a2, t, kap1, kap2, rho1)
        ap_rho = ap_term(
            Id(d1a, a1, a1), kap1, Refl(a1), rho1,
            transport_term(
                shift(d1a, 1, 0), shift(a1, 1, 0), shift(a1, 1, 0), Var(0),
                shift(d2p, 1, 1), shift(a2, 1, 0),
            ),
            d2a,
        )
        tr_refl = transport_term(d1a, a1, a1, Refl(a1), d2p, a2)
        moved = comp_terms(d2a, a2, red2, tr_refl, kap2, ap_rho)
        op_mid = op_transport(
            (d1a, d2p), (a1, a2), (a1, a2), (Refl(a1), moved), famp, t
        )
        red_f, g2 = collapse_refl_head(
            (d1a, d2p), a1, (a2,), (a2,), (moved,), famp, t
        )
        trw_out = transport_refl_witness(d1a, a1, d2p, a2)
        kap_f = comp_terms(d2a, a2, tr_refl, a2, moved, trw_out)
        famf = _plug_outer(famp, 2, a1)
        if red_f != transport_term(d2a, a2, a2, kap_f, famf, t):
            raise PathError("telescope head collapse changed shape")
        canonf, rhof = word_normalize(d2a, a2, a2, kap_f)
        if canonf != Refl(a2):
            raise PathError("identity proof composite did not reduce to Refl")
        s_ap = ap(
            PathCtx(Telescope(), Id(d2a, a2, a2), kap_f, Refl(a2), rhof),
            transport_term(
                shift(d2a, 1, 0), shift(a2, 1, 0), shift(a2, 1, 0), Var(0),
                shift(famf, 1, 1), shift(t, 1, 0),
            ),
            goal_car,
        )
        s_trw = transport_refl_witness(d2a, a2, famf, t)
        return path_chain(
            goal_car,
            [
                op_full,
                reduced,
                op_mid,
                red_f,
                transport_term(d2a, a2, a2, Refl(a2), famf, t),
                t,
            ],
            [g, cong, g2, s_ap, s_trw],
        )
    raise PathError(
        "identity telescope transport witness implemented up to arity 3"
    )


def ident_proofs(
    deltas: tuple[Expr, ...], points: tuple[Expr, ...]
) -> tuple[Expr, ...]:
    """Componentwise proofs making a morphism equal to itself as a CtxPropEq."""
    ps: list[Expr] = []
    for i in range(len(deltas)):
        if i == 0 or (_prune_slots[-1] and _ignores_slots(deltas[i], i)):
            ps.append(Refl(points[i]))
            continue
        carrier = inst(deltas[i], tuple(reversed(points[:i])))
        w = ident_transport_witness(deltas[:i], points[:i], deltas[i], points[i])
        moved = op_transport(
            deltas[:i], points[:i], points[:i], tuple(ps), deltas[i], points[i]
        )
        ps.append(inv_term(carrier, moved, points[i], w))
    return tuple(ps)


def ident_prop_eq(mor: CtxMorphism) -> CtxPropEq:
    """The identity componentwise equality on a context morphism."""
    return CtxPropEq(mor, mor, ident_proofs(mor.target.types(), mor.comps))


# ---------------------------------------------------------------------------
# public coherence dispatcher and generalized path induction


class GroupoidLaw(Enum):
    ASSOC = "Assoc"
    UNIT_L = "UnitL"
    UNIT_R = "UnitR"
    INV_L = "InvL"
    INV_R = "InvR"
    AP_COMP = "ApComp"
    AP_TRANSPORT = "ApTransport"


def groupoid_law(kind: GroupoidLaw, *args) -> Expr:
    """Build the witness for one of the path coherence laws.

    Argument shapes per kind:
      ASSOC: (pc_p, pc_q, pc_s)        UNIT_L / UNIT_R / INV_L / INV_R: (pc,)
      AP_COMP: (fn_body, cod, pc_p, pc_q)
      AP_TRANSPORT: (carrier, cod, fn_body, fam, pc, t)
    """
    table = {
        GroupoidLaw.ASSOC: assoc,
        GroupoidLaw.UNIT_L: unit_l,
        GroupoidLaw.UNIT_R: unit_r,
        GroupoidLaw.INV_L: inv_l,
        GroupoidLaw.INV_R: inv_r,
        GroupoidLaw.AP_COMP: ap_comp,
        GroupoidLaw.AP_TRANSPORT: ap_transport,
    }
    return table[kind](*args)


def gen_path_induction(
    motive: Expr, base: Expr, concrete_path: PathCtx, sig=None
) -> Expr:
    """Path induction at a caller-generalized motive, instantiated at a
    concrete path.

    motive binds 3 (endpoint, endpoint, path); base binds 1.  When a
    signature is supplied, the elaborated term is checked in the path's
    context and a failure raises MotiveNotGeneralizable; the motive is never
    adjusted silently.
    """
    out = J(motive, base, concrete_path.lhs, concrete_path.rhs, concrete_path.path)
    if sig is not None:
        from .kernel import HasType, Judgement, Theory, ptt_check, Accept

        goal = inst(motive, (concrete_path.path, concrete_path.rhs, concrete_path.lhs))
        res = ptt_check(
            sig, Judgement(Theory.PTT, concrete_path.ctx, HasType(out, goal))
        )
        if not isinstance(res, Accept):
            raise MotiveNotGeneralizable(str(res))
    return out


def gen_path_induction_witness(motive: Expr, base: Expr, point: Expr) -> Expr:
    """The propositional computation rule for gen_path_induction at Refl.

    : Id(motive[pt, pt, Refl pt], J(motive, base, pt, pt, Refl pt), base[pt])
    """
    return Hcomp(motive, base, point)


def to_half_adjoint(e):
    """Adjust a homotopy equivalence to a half-adjoint one (same f and g)."""
    from .equiv import to_half_adjoint as _impl

    return _impl(e)
