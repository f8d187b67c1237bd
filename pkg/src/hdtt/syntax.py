"""Core term language: de Bruijn expressions, telescopes, context morphisms.

Everything here is immutable and pure.  Types are expressions; whether an
expression is a type is a kernel judgement, not a syntactic class.
"""

from __future__ import annotations

from dataclasses import dataclass


class SyntaxError_(Exception):
    pass


class NegativeShiftEscape(SyntaxError_):
    pass


class SourceTargetMismatch(SyntaxError_):
    pass


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Var(Expr):
    ix: int


@dataclass(frozen=True)
class Const(Expr):
    name: str


@dataclass(frozen=True)
class Pi(Expr):
    dom: Expr
    cod: Expr  # binds 1


@dataclass(frozen=True)
class Sig(Expr):
    dom: Expr
    cod: Expr  # binds 1


@dataclass(frozen=True)
class Id(Expr):
    carrier: Expr
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Lam(Expr):
    dom: Expr
    body: Expr  # binds 1


@dataclass(frozen=True)
class Ev(Expr):
    fun: Expr
    arg: Expr


@dataclass(frozen=True)
class Pair(Expr):
    fst: Expr
    snd: Expr
    cod: Expr  # binds 1; the Sigma codomain over fst's type


@dataclass(frozen=True)
class P1(Expr):
    pair: Expr


@dataclass(frozen=True)
class P2(Expr):
    pair: Expr


@dataclass(frozen=True)
class Refl(Expr):
    point: Expr


@dataclass(frozen=True)
class J(Expr):
    motive: Expr  # binds 3: x, x', q : x = x'
    base: Expr  # binds 1: x
    lhs: Expr
    rhs: Expr
    path: Expr


@dataclass(frozen=True)
class Hcomp(Expr):
    """Witness that J at a reflexivity path equals the base, propositionally."""

    motive: Expr  # binds 3
    base: Expr  # binds 1
    point: Expr


@dataclass(frozen=True)
class BetaPi(Expr):
    """Witness ev(\\x.body, arg) = body[arg], propositionally."""

    body: Expr  # binds 1
    arg: Expr


@dataclass(frozen=True)
class EtaPi(Expr):
    """Witness fun = \\x.ev(fun, x), propositionally."""

    fun: Expr


@dataclass(frozen=True)
class Rho(Expr):
    """Function extensionality: a pointwise path between z1 and z2 gives z1 = z2.

    ptw binds 3 (z, z', x); the kernel checks it with the outer two binders
    instantiated at z1, z2.
    """

    ptw: Expr  # binds 3
    z1: Expr
    z2: Expr


@dataclass(frozen=True)
class Beta1(Expr):
    """Witness p1<fst, snd> = fst, propositionally."""

    fst: Expr
    snd: Expr
    cod: Expr  # binds 1


@dataclass(frozen=True)
class Beta2(Expr):
    """Witness p2<fst, snd> = transport of snd along Beta1, propositionally."""

    fst: Expr
    snd: Expr
    cod: Expr  # binds 1


@dataclass(frozen=True)
class EtaSig(Expr):
    """Witness pair = <p1 pair, p2 pair>, propositionally."""

    pair: Expr


# For each constructor: list of (field name, number of binders the field is under).
_BINDING: dict[type, tuple[tuple[str, int], ...]] = {
    Var: (),
    Const: (),
    Pi: (("dom", 0), ("cod", 1)),
    Sig: (("dom", 0), ("cod", 1)),
    Id: (("carrier", 0), ("lhs", 0), ("rhs", 0)),
    Lam: (("dom", 0), ("body", 1)),
    Ev: (("fun", 0), ("arg", 0)),
    Pair: (("fst", 0), ("snd", 0), ("cod", 1)),
    P1: (("pair", 0),),
    P2: (("pair", 0),),
    Refl: (("point", 0),),
    J: (("motive", 3), ("base", 1), ("lhs", 0), ("rhs", 0), ("path", 0)),
    Hcomp: (("motive", 3), ("base", 1), ("point", 0)),
    BetaPi: (("body", 1), ("arg", 0)),
    EtaPi: (("fun", 0),),
    Rho: (("ptw", 3), ("z1", 0), ("z2", 0)),
    Beta1: (("fst", 0), ("snd", 0), ("cod", 1)),
    Beta2: (("fst", 0), ("snd", 0), ("cod", 1)),
    EtaSig: (("pair", 0),),
}


def _map_subterms(e: Expr, depth: int, f) -> Expr:
    """Rebuild e, applying f(sub, depth + binders) to every direct subterm."""
    spec = _BINDING[type(e)]
    if not spec:
        return e
    kwargs = {}
    changed = False
    for name, nb in spec:
        old = getattr(e, name)
        new = f(old, depth + nb)
        kwargs[name] = new
        changed = changed or (new is not old)
    return type(e)(**kwargs) if changed else e


def shift(e: Expr, by: int, cutoff: int = 0) -> Expr:
    """Displace free variables >= cutoff by `by` (standard de Bruijn shift)."""
    if isinstance(e, Var):
        if e.ix >= cutoff:
            if e.ix + by < 0:
                raise NegativeShiftEscape(f"variable {e.ix} escapes under shift {by}")
            return Var(e.ix + by)
        return e
    return _map_subterms(e, cutoff, lambda sub, c: shift(sub, by, c))


def subst(e: Expr, idx: int, by: Expr) -> Expr:
    """Capture-avoiding substitution of variable idx by `by`.

    Variables above idx slide down by one (the binder for idx disappears).
    """
    if isinstance(e, Var):
        if e.ix == idx:
            return shift(by, idx, 0)
        if e.ix > idx:
            return Var(e.ix - 1)
        return e
    return _map_subterms(e, idx, lambda sub, i: subst(sub, i, by))


def inst(e: Expr, ts: list[Expr] | tuple[Expr, ...]) -> Expr:
    """Simultaneous substitution: Var i <- ts[i] for i < len(ts), the rest slide down.

    All of ts live at the ambient depth (outside the len(ts) binders of e).
    """
    n = len(ts)
    if n == 0:
        return e

    def go(t: Expr, depth: int) -> Expr:
        if isinstance(t, Var):
            if t.ix < depth:
                return t
            if t.ix < depth + n:
                return shift(ts[t.ix - depth], depth, 0)
            return Var(t.ix - n)
        return _map_subterms(t, depth, go)

    return go(e, 0)


def alpha_eq(e1: Expr, e2: Expr) -> bool:
    """Structural equality; binder names are never stored, so == suffices."""
    return e1 == e2


def scope_ok(e: Expr, depth: int) -> bool:
    """True iff every variable index is below its enclosing binder depth."""
    if isinstance(e, Var):
        return 0 <= e.ix < depth
    ok = True

    def check(sub: Expr, d: int) -> Expr:
        nonlocal ok
        if ok and not scope_ok(sub, d):
            ok = False
        return sub

    _map_subterms(e, depth, check)
    return ok


def free_in(e: Expr, idx: int) -> bool:
    """True iff Var(idx) occurs free in e."""
    if isinstance(e, Var):
        return e.ix == idx
    found = False

    def check(sub: Expr, extra: int) -> Expr:
        nonlocal found
        if not found and free_in(sub, idx + extra):
            found = True
        return sub

    _map_subterms(e, 0, check)
    return found


@dataclass(frozen=True)
class Telescope:
    """An ordered context: entry i may mention variables 0..i-1 of the prefix."""

    entries: tuple[tuple[str, Expr], ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, hint: str, ty: Expr) -> "Telescope":
        return Telescope(self.entries + ((hint, ty),))

    def ty_of_var(self, ix: int) -> Expr:
        """Type of Var(ix), shifted into the full telescope's scope."""
        n = len(self.entries)
        if not 0 <= ix < n:
            raise SyntaxError_(f"variable {ix} out of telescope of length {n}")
        return shift(self.entries[n - 1 - ix][1], ix + 1, 0)

    def prefix(self, k: int) -> "Telescope":
        return Telescope(self.entries[:k])

    def types(self) -> tuple[Expr, ...]:
        return tuple(ty for _, ty in self.entries)

    def vars(self) -> tuple[Expr, ...]:
        """The identity substitution: variables in telescope order."""
        n = len(self.entries)
        return tuple(Var(n - 1 - i) for i in range(n))


def id_morphism(tele: Telescope) -> "CtxMorphism":
    return CtxMorphism(tele, tele, tele.vars())


@dataclass(frozen=True)
class CtxMorphism:
    """A list of terms over `source` instantiating `target`, in telescope order."""

    source: Telescope
    target: Telescope
    comps: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.comps) != len(self.target):
            raise SourceTargetMismatch(
                f"{len(self.comps)} components for target of length {len(self.target)}"
            )

    def apply(self, e: Expr) -> Expr:
        """Substitute this morphism into an expression over `target`."""
        return inst(e, tuple(reversed(self.comps)))

    def apply_under(self, e: Expr, binders: int) -> Expr:
        """Substitute into an expression over `target` extended by `binders`."""
        shifted = tuple(shift(c, binders, 0) for c in reversed(self.comps))
        n = len(shifted)

        def go(t: Expr, depth: int) -> Expr:
            if isinstance(t, Var):
                if t.ix < depth + binders:
                    return t
                if t.ix < depth + binders + n:
                    return shift(shifted[t.ix - depth - binders], depth, 0)
                return Var(t.ix - n)
            return _map_subterms(t, depth, go)

        return go(e, 0)

    def instantiated_ty(self, i: int) -> Expr:
        """Type of component i, over `source` (target type i along comps 0..i-1)."""
        ty = self.target.entries[i][1]
        return inst(ty, tuple(reversed(self.comps[:i])))


def compose_mor(f: CtxMorphism, g: CtxMorphism) -> CtxMorphism:
    """g after f: substitute f's components into g's, source f.source."""
    if f.target != g.source:
        raise SourceTargetMismatch("f.target differs from g.source")
    return CtxMorphism(f.source, g.target, tuple(f.apply(c) for c in g.comps))


@dataclass(frozen=True)
class CtxPropEq:
    """A componentwise propositional equality between parallel context morphisms.

    proofs[i] inhabits lhs.comps[i] = (proofs[0..i-1])^* rhs.comps[i], where ^*
    is the telescope transport operator (see paths.op_transport).
    """

    lhs: CtxMorphism
    rhs: CtxMorphism
    proofs: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.proofs) != len(self.lhs.comps) or len(self.proofs) != len(
            self.rhs.comps
        ):
            raise SourceTargetMismatch("proof list length differs from morphism length")


@dataclass(frozen=True)
class Atom:
    kind: str  # "type" | "term"
    ty: Expr | None  # for term atoms: a closed type over earlier atoms
    hset: bool = False
    auto: bool = False  # auto-injected (uip axioms)


def _uip_type(a: Expr) -> Expr:
    """Pi x y (p q : x = y). p = q over the type a."""
    idxy = Id(shift(a, 2, 0), Var(1), Var(0))
    inner = Id(shift(idxy, 2, 0), Var(1), Var(0))
    return Pi(a, Pi(shift(a, 1, 0), Pi(idxy, Pi(shift(idxy, 1, 0), inner))))


class Signature:
    """Atomic types and atomic terms; hset type atoms carry a uip axiom constant."""

    def __init__(self) -> None:
        self.atoms: dict[str, Atom] = {}

    def add_type(self, name: str, hset: bool = False) -> None:
        if name in self.atoms:
            raise SyntaxError_(f"duplicate atom {name}")
        self.atoms[name] = Atom("type", None, hset=hset)
        if hset:
            self.atoms[f"uip_{name}"] = Atom("term", _uip_type(Const(name)), auto=True)

    def add_term(self, name: str, ty: Expr) -> None:
        if name in self.atoms:
            raise SyntaxError_(f"duplicate atom {name}")
        if not scope_ok(ty, 0):
            raise SyntaxError_(f"atom type for {name} is not closed")
        self.atoms[name] = Atom("term", ty)

    def lookup(self, name: str) -> Atom | None:
        return self.atoms.get(name)

    def is_hset_type(self, name: str) -> bool:
        a = self.atoms.get(name)
        return a is not None and a.kind == "type" and a.hset

    def ett_visible(self, name: str) -> bool:
        """Atoms the extensional theory can see: hset types and terms whose
        types mention only hset type atoms."""
        a = self.atoms.get(name)
        if a is None:
            return False
        if a.kind == "type":
            return a.hset
        return self._type_ett_visible(a.ty)

    def _type_ett_visible(self, e: Expr) -> bool:
        if isinstance(e, Const):
            return self.ett_visible(e.name)
        if isinstance(e, Var):
            return True
        ok = True

        def check(sub: Expr, d: int) -> Expr:
            nonlocal ok
            if ok and not self._type_ett_visible(sub):
                ok = False
            return sub

        _map_subterms(e, 0, check)
        return ok
