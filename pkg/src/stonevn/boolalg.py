"""Finite Boolean algebras, Stone duality, and the idempotent algebra of K^S.

A finite Boolean algebra is the powerset of its atoms; elements are stored
as bitmasks over the atom order.  Homomorphisms are stored by their dual
atom map (codomain atom -> domain atom), which is exactly the Stone dual.
"""

import random
from dataclasses import dataclass

from . import vnring
from .boolspace import ContinuousMap, FiniteBoolSpace
from .errors import ContractError, ResourceError
from .report import Report

DEFAULT_MAX_ATOMS = 20


@dataclass(frozen=True)
class BoolAlg:
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(set(atoms)) != len(atoms):
            raise ContractError(f"duplicate atom names in {atoms!r}")

    @property
    def degenerate(self):
        """The one-element algebra 0 = 1 (no atoms)."""
        return not self.atoms

    @property
    def full_mask(self):
        return (1 << len(self.atoms)) - 1

    def __len__(self):
        return 1 << len(self.atoms)

    def element(self, subset):
        mask = 0
        for a in subset:
            mask |= 1 << self.atom_index(a)
        return BAElement(self, mask)

    def atom_index(self, name):
        try:
            return self.atoms.index(name)
        except ValueError:
            raise ContractError(f"{name!r} is not an atom") from None

    def top(self):
        return BAElement(self, self.full_mask)

    def bottom(self):
        return BAElement(self, 0)

    def elements(self, max_atoms=DEFAULT_MAX_ATOMS):
        if len(self.atoms) > max_atoms:
            raise ResourceError(f"{len(self.atoms)} atoms exceeds the bound {max_atoms}")
        return [BAElement(self, m) for m in range(1 << len(self.atoms))]

    def random_element(self, rng):
        return BAElement(self, rng.getrandbits(len(self.atoms)) if self.atoms else 0)

    def identity(self):
        return BAHom(self, self, tuple(range(len(self.atoms))))


def powerset_algebra(n, prefix="a"):
    return BoolAlg(tuple(f"{prefix}{i}" for i in range(n)))


@dataclass(frozen=True)
class BAElement:
    owner: BoolAlg
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.owner.full_mask:
            raise ContractError("element is not a subset of the atoms")

    @property
    def subset(self):
        return tuple(a for i, a in enumerate(self.owner.atoms) if self.mask >> i & 1)

    def _same(self, other):
        if other.owner != self.owner:
            raise ContractError("elements of different Boolean algebras")

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    def __invert__(self):
        return complement(self)

    def __le__(self, other):
        self._same(other)
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return "{" + ",".join(self.subset) + "}"


def meet(x, y):
    x._same(y)
    return BAElement(x.owner, x.mask & y.mask)


def join(x, y):
    x._same(y)
    return BAElement(x.owner, x.mask | y.mask)


def complement(x):
    return BAElement(x.owner, x.owner.full_mask & ~x.mask)


@dataclass(frozen=True)
class BAHom:
    """h: B -> B' with ``h(b) = {t : dual[t] in b}``."""

    domain: BoolAlg
    codomain: BoolAlg
    dual: tuple

    def __post_init__(self):
        dual = tuple(self.dual)
        object.__setattr__(self, "dual", dual)
        if len(dual) != len(self.codomain.atoms):
            raise ContractError("dual atom map must be total on the codomain atoms")
        if any(not (0 <= s < len(self.domain.atoms)) for s in dual):
            raise ContractError("dual atom map lands outside the domain atoms")

    @classmethod
    def from_names(cls, domain, codomain, mapping):
        return cls(domain, codomain,
                   tuple(domain.atom_index(mapping[t]) for t in codomain.atoms))

    def __call__(self, b):
        if b.owner != self.domain:
            raise ContractError("element is not in the domain")
        mask = 0
        for t, s in enumerate(self.dual):
            if b.mask >> s & 1:
                mask |= 1 << t
        return BAElement(self.codomain, mask)

    def then(self, k):
        """``k o self``."""
        if k.domain != self.codomain:
            raise ContractError("homomorphisms are not composable")
        return BAHom(self.domain, k.codomain, tuple(self.dual[t] for t in k.dual))

    def dual_dict(self):
        return {t: self.domain.atoms[s] for t, s in zip(self.codomain.atoms, self.dual)}


def random_ba_hom(B, C, rng):
    if B.degenerate and not C.degenerate:
        raise ContractError("no homomorphism out of the one-element algebra")
    return BAHom(B, C, tuple(rng.randrange(len(B.atoms)) for _ in C.atoms))


def check_hom_laws(h, max_atoms=10):
    """Exhaustive check that h preserves meet, join, complement, 0 and 1."""
    rep = Report("BA hom laws")
    B = h.domain
    rep.check(h(B.bottom()) == h.codomain.bottom(), "h(0) != 0")
    rep.check(h(B.top()) == h.codomain.top(), "h(1) != 1")
    els = B.elements(max_atoms)
    for x in els:
        rep.check(h(~x) == ~h(x), lambda: f"h(~{x}) != ~h({x})")
        for y in els:
            rep.check(h(x & y) == h(x) & h(y), lambda: f"meet not preserved at {x},{y}")
            rep.check(h(x | y) == h(x) | h(y), lambda: f"join not preserved at {x},{y}")
    return rep.finish()


# --- ultrafilters and the Stone space --------------------------------------------

@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter {b : atom in b}."""

    owner: BoolAlg
    atom: int

    def __contains__(self, b):
        return bool(b.mask >> self.atom & 1)

    @property
    def name(self):
        return self.owner.atoms[self.atom]

    def members(self):
        return [b for b in self.owner.elements() if b in self]


def ultrafilters(B, max_atoms=DEFAULT_MAX_ATOMS):
    if len(B.atoms) > max_atoms:
        raise ResourceError(f"{len(B.atoms)} atoms exceeds the bound {max_atoms}")
    return [Ultrafilter(B, i) for i in range(len(B.atoms))]


def stone(B, allow_degenerate=False, max_atoms=DEFAULT_MAX_ATOMS):
    """Stone(B): ultrafilters, named by their atoms, with the discrete topology."""
    if B.degenerate and not allow_degenerate:
        raise ContractError("the one-element algebra is not accepted by stone()")
    return FiniteBoolSpace(tuple(U.name for U in ultrafilters(B, max_atoms)))


def stone_basis(B, b):
    """S_B(b) = {U : b in U} as point names of stone(B)."""
    return frozenset(U.name for U in ultrafilters(B) if b in U)


def preimage_ultrafilter(h, U):
    """h^{-1}[U], recognized as the principal ultrafilter of the atom it holds."""
    B = h.domain
    hits = [s for s in range(len(B.atoms)) if h(BAElement(B, 1 << s)) in U]
    if len(hits) != 1:
        raise ContractError("preimage of an ultrafilter is not principal")
    return Ultrafilter(B, hits[0])


def stone_of_hom(h, allow_degenerate=False):
    """Stone(h): Stone(B') -> Stone(B), U -> h^{-1}[U]."""
    dom = stone(h.codomain, allow_degenerate)
    cod = stone(h.domain, allow_degenerate)
    images = tuple(preimage_ultrafilter(h, U).atom for U in ultrafilters(h.codomain))
    return ContinuousMap(dom, cod, images)


def clopen(X):
    """Clopen(X): every subset of a finite discrete space; atoms are the points."""
    return BoolAlg(X.points)


def clopen_of_map(phi):
    """Clopen(phi): Clopen(Y) -> Clopen(X), C -> phi^{-1}[C]."""
    return BAHom(clopen(phi.codomain), clopen(phi.domain), phi.images)


def stone_iso(B):
    """B -> Clopen(Stone(B)), b -> S_B(b)."""
    C = clopen(stone(B))
    return {x.mask: C.element(stone_basis(B, x)) for x in B.elements()}


def point_iso(X):
    """X -> Stone(Clopen(X)), x -> the ultrafilter of clopens containing x."""
    B = clopen(X)
    S = stone(B, allow_degenerate=True)
    images = []
    for i in range(len(X)):
        members = {b.mask for b in B.elements() if b.mask >> i & 1}
        matches = [k for k, U in enumerate(ultrafilters(B))
                   if {b.mask for b in U.members()} == members]
        if len(matches) != 1:
            raise ContractError(f"no unique ultrafilter for point {X.points[i]!r}")
        images.append(matches[0])
    return ContinuousMap(X, S, tuple(images))


# --- the idempotent algebra of a product ring ----------------------------------------

class IdempotentAlgebra:
    """B~(A): idempotents of A with ring-derived Boolean operations,
    in bijection with atom subsets of S."""

    def __init__(self, A, max_points=vnring.DEFAULT_MAX_POINTS):
        if not A.field.exact:
            raise ContractError("idempotent_algebra needs the exact backend")
        if len(A) > max_points:
            raise ResourceError(f"|S| = {len(A)} exceeds the bound {max_points}")
        self.ring = A
        self.algebra = BoolAlg(A.points)

    def to_element(self, e):
        e = vnring.as_idempotent(e)
        if e.ring != self.ring:
            raise ContractError("idempotent is not in this ring")
        mask = 0
        for i, c in enumerate(e.coords):
            if c == 1:
                mask |= 1 << i
        return BAElement(self.algebra, mask)

    def to_idempotent(self, x):
        if x.owner != self.algebra:
            raise ContractError("element is not in this algebra")
        return self.ring.indicator([i for i in range(len(self.ring)) if x.mask >> i & 1])

    def idempotents(self):
        return vnring.idempotents(self.ring)

    def meet(self, e, f):
        return vnring.idempotent_meet(e, f)

    def join(self, e, f):
        return vnring.idempotent_join(e, f)

    def complement(self, e):
        return vnring.idempotent_complement(e)

    def check_dictionary(self, pairs=None):
        """Ring operations on idempotents must match set operations on supports."""
        rep = Report("idempotent dictionary")
        ids = self.idempotents()
        if pairs is None:
            pairs = [(e, f) for e in ids for f in ids]
        for e in ids:
            c = self.complement(e)
            ok = c.is_idempotent() and self.to_element(c) == ~self.to_element(e)
            rep.check(ok, lambda: f"complement of {e!r} gives {c!r}")
        for e, f in pairs:
            x, y = self.to_element(e), self.to_element(f)
            m, j = self.meet(e, f), self.join(e, f)
            rep.check(m.is_idempotent() and self.to_element(m) == x & y,
                      lambda: f"meet {e!r},{f!r} gives {m!r}")
            rep.check(j.is_idempotent() and self.to_element(j) == x | y,
                      lambda: f"join {e!r},{f!r} gives {j!r}")
        return rep.finish()


def idempotent_algebra(A, max_points=vnring.DEFAULT_MAX_POINTS):
    return IdempotentAlgebra(A, max_points)


def b_of_hom(f):
    """B~(f): restriction of f to idempotents, read off on the atoms."""
    src, dst = IdempotentAlgebra(f.domain), IdempotentAlgebra(f.codomain)
    owner = [None] * len(f.codomain)
    for s in range(len(f.domain)):
        image = dst.to_element(vnring.apply_hom(f, f.domain.indicator([s])))
        for t in range(len(f.codomain)):
            if image.mask >> t & 1:
                if owner[t] is not None:
                    raise ContractError("images of disjoint idempotents overlap")
                owner[t] = s
    if any(o is None for o in owner):
        raise ContractError("f does not preserve 1 on idempotents")
    return BAHom(src.algebra, dst.algebra, tuple(owner))


# --- the isomorphism j_A ---------------------------------------------------------------

class JIso:
    """j_A: B~(A) -> Clopen(Spec A), e -> D(e); inverse sends a clopen to its
    indicator idempotent."""

    def __init__(self, A):
        self.ring = A
        self.source = IdempotentAlgebra(A)
        self.space = vnring.spec(A)
        self.target = clopen(self.space)

    def __call__(self, e):
        return self.target.element(vnring.d_infinity(e))

    def inverse(self, c):
        if c.owner != self.target:
            raise ContractError("not a clopen of Spec A")
        return self.ring.indicator(c.subset)

    def table(self):
        return {repr(e): list(self(e).subset) for e in self.source.idempotents()}

    def verify(self, pairs=None):
        """Bijectivity, preservation of the Boolean operations, and the same
        for the inverse; exhaustive over idempotent pairs unless ``pairs``."""
        rep = Report(f"j_A for |S|={len(self.ring)}")
        ids = self.source.idempotents()
        A = self.ring
        images = [self(e).mask for e in ids]
        rep.check(len(set(images)) == len(ids), "j_A is not injective")
        rep.check(set(images) == set(range(len(self.target))), "j_A is not surjective")
        rep.check(self(A.one()) == self.target.top(), "j(1) != Spec A")
        rep.check(self(A.zero()) == self.target.bottom(), "j(0) != empty")
        for c in self.target.elements():
            rep.check(self(self.inverse(c)) == c, lambda: f"j(j^-1({c})) != {c}")
        for e in ids:
            rep.check(self.inverse(self(e)) == e, lambda: f"j^-1(j({e!r})) != {e!r}")
            comp = self.source.complement(e)
            rep.check(comp.is_idempotent() and self(comp) == ~self(e),
                      lambda: f"complement of {e!r} not preserved")
            rep.check(self.inverse(~self(e)) == comp, "inverse does not preserve complement")
        if pairs is None:
            pairs = [(e, f) for e in ids for f in ids]
        for e, f in pairs:
            m, j = self.source.meet(e, f), self.source.join(e, f)
            rep.check(m.is_idempotent() and self(m) == self(e) & self(f),
                      lambda: f"meet of {e!r},{f!r} not preserved")
            rep.check(j.is_idempotent() and self(j) == self(e) | self(f),
                      lambda: f"join of {e!r},{f!r} not preserved")
            rep.check(self.inverse(self(e) | self(f)) == j,
                      lambda: f"j^-1 does not preserve join at {e!r},{f!r}")
            rep.check(self.inverse(self(e) & self(f)) == m,
                      lambda: f"j^-1 does not preserve meet at {e!r},{f!r}")
        return rep.finish()


def j_iso(A):
    return JIso(A)


def j_naturality(f, pairs=20, seed=0):
    """Clopen(Spec f) o j_A = j_A' o B~(f), elementwise, plus the square on
    ring-computed meets and joins of sampled pairs."""
    rep = Report("j naturality")
    rng = random.Random(seed)
    jA, jB = JIso(f.domain), JIso(f.codomain)
    left = clopen_of_map(vnring.spec_of_hom(f))
    bf = b_of_hom(f)
    src = jA.source
    ids = src.idempotents()

    def square(e):
        lhs = left(jA(e))
        fe = vnring.apply_hom(f, e)
        rhs = jB(fe)
        via_ba = jB(jB.source.to_idempotent(bf(src.to_element(e))))
        return lhs == rhs == via_ba

    for e in ids:
        rep.check(square(e), lambda: f"square fails at {e!r}")
    for _ in range(pairs if ids else 0):
        e, e2 = rng.choice(ids), rng.choice(ids)
        for op in (src.meet, src.join):
            g = op(e, e2)
            ok = g.is_idempotent() and square(vnring.as_idempotent(g))
            rep.check(ok, lambda: f"square fails on {op.__name__} of {e!r},{e2!r}")
    return rep.finish()
