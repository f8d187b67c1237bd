"""Independent named-variable implementation used as an oracle for the
de Bruijn operations in hdtt.syntax.

Deliberately naive: terms carry explicit names, substitution freshens every
binder it passes under, and conversion to/from indices walks an environment
list.  Nothing here is shared with the package code.
"""

from __future__ import annotations

import itertools

from hdtt import syntax as s

_fresh_counter = itertools.count()


def fresh(base: str = "v") -> str:
    return f"{base}{next(_fresh_counter)}"


class N:
    """Named node: tag, children, and binder names per child."""

    def __init__(self, tag, children, binders):
        self.tag = tag
        self.children = children  # list of N or str (for Var/Const payloads)
        self.binders = binders  # list of tuples of names, parallel to children

    def __repr__(self):
        return f"N({self.tag},{self.children},{self.binders})"


def to_named(e: s.Expr, env: list[str]) -> N:
    if isinstance(e, s.Var):
        return N("Var", [env[len(env) - 1 - e.ix]], [()])
    if isinstance(e, s.Const):
        return N("Const", [e.name], [()])
    spec = s._BINDING[type(e)]
    children = []
    binders = []
    for name, nb in spec:
        names = tuple(fresh() for _ in range(nb))
        children.append(to_named(getattr(e, name), env + list(names)))
        binders.append(names)
    return N(type(e).__name__, children, binders)


def to_debruijn(n: N, env: list[str]) -> s.Expr:
    if n.tag == "Var":
        name = n.children[0]
        for i in range(len(env) - 1, -1, -1):  # innermost binding wins
            if env[i] == name:
                return s.Var(len(env) - 1 - i)
        raise KeyError(name)
    if n.tag == "Const":
        return s.Const(n.children[0])
    cls = getattr(s, n.tag)
    spec = s._BINDING[cls]
    kwargs = {}
    for (fname, nb), child, names in zip(spec, n.children, n.binders):
        kwargs[fname] = to_debruijn(child, env + list(names))
    return cls(**kwargs)


def named_subst(n: N, name: str, by: N) -> N:
    if n.tag == "Var":
        return by if n.children[0] == name else n
    if n.tag == "Const":
        return n
    children = []
    binders = []
    for child, names in zip(n.children, n.binders):
        # freshen binders so `by` can never be captured
        ren = {old: fresh() for old in names}
        c = child
        for old, new in ren.items():
            c = rename_free(c, old, new)
        children.append(named_subst(c, name, by))
        binders.append(tuple(ren[old] for old in names))
    return N(n.tag, children, binders)


def rename_free(n: N, old: str, new: str) -> N:
    if n.tag == "Var":
        return N("Var", [new], [()]) if n.children[0] == old else n
    if n.tag == "Const":
        return n
    children = []
    for child, names in zip(n.children, n.binders):
        if old in names:
            children.append(child)  # shadowed
        else:
            children.append(rename_free(child, old, new))
    return N(n.tag, children, n.binders)


def alpha_equal(a: N, b: N, pairs: list[tuple[str, str]] | None = None) -> bool:
    pairs = pairs or []
    if a.tag != b.tag:
        return False
    if a.tag == "Var":
        na, nb = a.children[0], b.children[0]
        for pa, pb in reversed(pairs):
            if pa == na or pb == nb:
                return pa == na and pb == nb
        return na == nb
    if a.tag == "Const":
        return a.children == b.children
    for ca, cb, bna, bnb in zip(a.children, b.children, a.binders, b.binders):
        if len(bna) != len(bnb):
            return False
        if not alpha_equal(ca, cb, pairs + list(zip(bna, bnb))):
            return False
    return True


def oracle_subst(e: s.Expr, idx: int, by: s.Expr, depth: int) -> s.Expr:
    """Named-world version of syntax.subst for a term with `depth` free slots.

    Free variables are named slot0..slot{depth-1} outermost first; idx refers
    to slot{depth-1-idx}.  `by` lives at depth (idx+? ) -- matching subst's
    convention that `by` is at the scope *outside* the substituted binder:
    the result has depth-1 free slots.
    """
    env = [f"slot{i}" for i in range(depth)]
    tpos = len(env) - 1 - idx
    target = env[tpos]
    # `by` lives in the prefix scope before the target binder
    named = named_subst(to_named(e, env), target, to_named(by, env[:tpos]))
    return to_debruijn(named, env[:tpos] + env[tpos + 1 :])
