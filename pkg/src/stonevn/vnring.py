"""Von Neumann regular rings realized as finite products K^S.

Elements are coordinate tuples over the ordered index set ``S``.  Ring
homomorphisms K^S -> K^T are stored by their dual index map T -> S, so that
``(f(a))_t = a_{dual(t)}``.  Ideals are handled through their unique
idempotent generator, i.e. a subset of ``S``.
"""

import random
from dataclasses import dataclass

from . import smooth
from .boolspace import ContinuousMap, FiniteBoolSpace
from .errors import ContractError, ResourceError
from .exact import QQ, RR
from .report import Report

DEFAULT_MAX_POINTS = 20


@dataclass(frozen=True)
class ProductRing:
    points: tuple
    field: object = QQ

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ContractError(f"duplicate index names in {pts!r}")

    @classmethod
    def power(cls, m, field=QQ, prefix="s"):
        return cls(tuple(f"{prefix}{i + 1}" for i in range(m)), field)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"{self.field.name}^{{{','.join(self.points)}}}"

    def index(self, name):
        try:
            return self.points.index(name)
        except ValueError:
            raise ContractError(f"{name!r} is not an index of {self!r}") from None

    def element(self, coords):
        if isinstance(coords, dict):
            if set(coords) != set(self.points):
                raise ContractError("element coordinates must cover exactly the index set")
            coords = [coords[p] for p in self.points]
        coords = tuple(self.field.coerce(c) for c in coords)
        if len(coords) != len(self.points):
            raise ContractError(f"expected {len(self.points)} coordinates, got {len(coords)}")
        return RingElement(self, coords)

    def zero(self):
        return RingElement(self, (self.field.zero,) * len(self))

    def one(self):
        return RingElement(self, (self.field.one,) * len(self))

    def indicator(self, subset):
        """The idempotent with support ``subset`` (names or indices)."""
        idx = {self.index(s) if isinstance(s, str) else s for s in subset}
        one, zero = self.field.one, self.field.zero
        return Idempotent(self, tuple(one if i in idx else zero for i in range(len(self))))

    def random_element(self, rng, zero_rate=0.3):
        return RingElement(self, tuple(self.field.random(rng, zero_rate) for _ in self.points))

    def as_space(self):
        return FiniteBoolSpace(self.points)

    def identity_hom(self):
        return RingHom(self, self, tuple(range(len(self))))


class RingElement:
    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = tuple(coords)

    def _same(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise ContractError("elements belong to different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        F = self.ring.field
        return RingElement(self.ring, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._same(other)
        F = self.ring.field
        return RingElement(self.ring, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        other = self._same(other)
        F = self.ring.field
        return RingElement(self.ring, tuple(F.mul(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        F = self.ring.field
        return RingElement(self.ring, tuple(F.neg(a) for a in self.coords))

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash((self.ring, self.coords))

    def __repr__(self):
        F = self.ring.field
        return "(" + ", ".join(F.format(c) for c in self.coords) + ")"

    def is_zero(self):
        return all(self.ring.field.is_zero(c) for c in self.coords)

    def is_unit(self):
        return not any(self.ring.field.is_zero(c) for c in self.coords)

    def support(self):
        return frozenset(p for p, c in zip(self.ring.points, self.coords)
                         if not self.ring.field.is_zero(c))

    def is_idempotent(self):
        one, zero = self.ring.field.one, self.ring.field.zero
        return all(c == one or c == zero for c in self.coords) and self * self == self


class Idempotent(RingElement):
    """A RingElement whose coordinates all lie in {0, 1}; checked on creation."""

    __slots__ = ()

    def __init__(self, ring, coords):
        super().__init__(ring, coords)
        if not RingElement.is_idempotent(self):
            raise ContractError(f"{self!r} is not idempotent")

    @classmethod
    def of(cls, a):
        return cls(a.ring, a.coords)


def as_idempotent(a):
    return a if isinstance(a, Idempotent) else Idempotent.of(a)


# --- Boolean operations on idempotents -----------------------------------------
# Looked up at call time so that mutation tests can swap an implementation.

def _ring_meet(e, f):
    return e * f


def _ring_join(e, f):
    return e + f - e * f


def _ring_complement(e):
    return e.ring.one() - e


BOOLEAN_OPS = {"meet": _ring_meet, "join": _ring_join, "complement": _ring_complement}


def idempotent_meet(e, f):
    return BOOLEAN_OPS["meet"](e, f)


def idempotent_join(e, f):
    return BOOLEAN_OPS["join"](e, f)


def idempotent_complement(e):
    return BOOLEAN_OPS["complement"](e)


# --- homomorphisms -----------------------------------------------------------------

@dataclass(frozen=True)
class RingHom:
    """Unital ring map K^S -> K^T given by ``dual[t] = s``."""

    domain: ProductRing
    codomain: ProductRing
    dual: tuple

    def __post_init__(self):
        dual = tuple(self.dual)
        object.__setattr__(self, "dual", dual)
        if self.domain.field is not self.codomain.field:
            raise ContractError("homomorphism between rings over different fields")
        if len(dual) != len(self.codomain):
            raise ContractError("dual map must be total on the codomain index set")
        if any(not (0 <= s < len(self.domain)) for s in dual):
            raise ContractError("dual map lands outside the domain index set")

    @classmethod
    def from_names(cls, domain, codomain, mapping):
        return cls(domain, codomain, tuple(domain.index(mapping[t]) for t in codomain.points))

    def __call__(self, a):
        return apply_hom(self, a)

    def then(self, g):
        """``g o self``."""
        if g.domain != self.codomain:
            raise ContractError("homomorphisms are not composable")
        return RingHom(self.domain, g.codomain, tuple(self.dual[s] for s in g.dual))

    def dual_dict(self):
        return {t: self.domain.points[s] for t, s in zip(self.codomain.points, self.dual)}


def apply_hom(f, a):
    if a.ring != f.domain:
        raise ContractError(f"{a!r} is not an element of {f.domain!r}")
    cls = Idempotent if isinstance(a, Idempotent) else RingElement
    return cls(f.codomain, tuple(a.coords[s] for s in f.dual))


def random_hom(A, B, rng):
    if len(A) == 0 and len(B) > 0:
        raise ContractError("no unital map from the zero ring to a nonzero ring")
    return RingHom(A, B, tuple(rng.randrange(len(A)) for _ in B.points))


def check_hom_laws(f, samples=50, seed=0):
    """Sampled check that f preserves +, *, 1 and componentwise smooth
    interpretation (the latter only over the real backend)."""
    rng = random.Random(seed)
    rep = Report("hom laws")
    A = f.domain
    rep.check(apply_hom(f, A.one()) == f.codomain.one(), "f(1) != 1")
    for _ in range(samples):
        a, b = A.random_element(rng), A.random_element(rng)
        rep.check(f(a + b) == f(a) + f(b), lambda: f"f(a+b) != f(a)+f(b) at {a!r},{b!r}")
        rep.check(f(a * b) == f(a) * f(b), lambda: f"f(ab) != f(a)f(b) at {a!r},{b!r}")
        if A.field is RR:
            g = smooth.random_expr(2, 2, rng)
            try:
                lhs = f(interpret(g, [a, b]))
            except ArithmeticError:
                rep.skipped += 1
                continue
            rep.check(lhs == interpret(g, [f(a), f(b)]),
                      lambda: f"f does not commute with {g}")
    return rep.finish()


# --- C-infinity structure ------------------------------------------------------------

def interpret(f, args):
    """Componentwise action of a smooth expression on elements of R^S."""
    args = list(args)
    if len(args) != f.arity:
        raise ContractError(f"expression has arity {f.arity}, got {len(args)} arguments")
    if not args:
        raise ContractError("interpret needs at least one argument")
    A = args[0].ring
    if A.field is not RR:
        raise ContractError("smooth interpretation needs the real backend")
    if any(a.ring != A for a in args):
        raise ContractError("arguments belong to different rings")
    columns = zip(*(a.coords for a in args))
    return RingElement(A, tuple(smooth.evaluate(f, column) for column in columns))


def check_projection_axiom(A, samples=100, seed=0, interpreter=interpret, max_arity=4):
    """pi_k(a_1..a_n) must return a_k bit for bit."""
    rng = random.Random(seed)
    rep = Report("projection axiom")
    if A.field is not RR:
        raise ContractError("projection axiom check needs the real backend")
    for _ in range(samples):
        n = rng.randint(1, max_arity)
        k = rng.randint(1, n)
        args = [A.random_element(rng, zero_rate=0.1) for _ in range(n)]
        got = interpreter(smooth.projection(n, k), args)
        rep.check(got.coords == args[k - 1].coords,
                  lambda: f"pi_{k}^{n} returned {got!r}, expected {args[k - 1]!r}")
    return rep.finish()


def check_composition_axiom(A, samples=1000, seed=0, tolerance=1e-9, interpreter=interpret,
                            max_arity=4, max_depth=3, heads=()):
    """Phi(h o gs)(a) against Phi(h)(Phi(g1)(a), ...), coordinatewise to
    relative tolerance; samples overflowing the doubles are redrawn."""
    rng = random.Random(seed)
    rep = Report("composition axiom")
    if A.field is not RR:
        raise ContractError("composition axiom check needs the real backend")
    heads = list(heads)
    done = 0
    attempts = 0
    while done < samples and attempts < 20 * samples + 20:
        attempts += 1
        if heads and done < len(heads):
            h = heads[done]
            n = h.arity
        else:
            n = rng.randint(1, max_arity)
            h = smooth.random_expr(n, rng.randint(0, max_depth), rng)
        m = rng.randint(1, max_arity)
        gs = [smooth.random_expr(m, rng.randint(0, max_depth), rng) for _ in range(n)]
        args = [A.random_element(rng, zero_rate=0.1) for _ in range(m)]
        try:
            lhs = interpreter(smooth.compose(h, gs), args)
            rhs = interpreter(h, [interpreter(g, args) for g in gs])
        except ArithmeticError:
            rep.skipped += 1
            continue
        done += 1
        ok = all(abs(x - y) <= tolerance * (1 + abs(x)) for x, y in zip(lhs.coords, rhs.coords))
        rep.check(ok, lambda: f"{h} o {[str(g) for g in gs]}: {lhs!r} vs {rhs!r}")
    if done < samples:
        rep.warn(f"only {done} of {samples} samples stayed finite")
    return rep.finish()


# --- von Neumann regularity -------------------------------------------------------

def quasi_inverse(a):
    """The unique b with a*b*a = a and b*a*b = b."""
    F = a.ring.field
    return RingElement(a.ring, tuple(F.zero if F.is_zero(c) else F.inverse(c) for c in a.coords))


@dataclass(frozen=True)
class PrincipalWitness:
    """e idempotent with e*y = a and a*z = e, so that (a) = (e)."""

    e: Idempotent
    y: RingElement
    z: RingElement


def idempotent_of(a, with_witness=False):
    b = quasi_inverse(a)
    e = Idempotent.of(a * b)
    if with_witness:
        return PrincipalWitness(e, a, b)
    return e


def minimal_quasi_inverse_witness(a, x):
    """From any x with a = a^2 x, the witness b = a x^2."""
    if x.ring != a.ring:
        raise ContractError("x is not in the ring of a")
    if a * a * x != a:
        raise ContractError("precondition a = a^2 x violated")
    return a * x * x


def divides(e, a):
    """A witness r with a = r*e, or None when a is not in the ideal (e)."""
    if e.ring != a.ring:
        raise ContractError("elements belong to different rings")
    F = a.ring.field
    r = []
    for ec, ac in zip(e.coords, a.coords):
        if F.is_zero(ec):
            if not F.is_zero(ac):
                return None
            r.append(F.zero)
        else:
            r.append(F.mul(ac, F.inverse(ec)))
    return RingElement(a.ring, tuple(r))


def same_ideal(a, b):
    return divides(a, b) is not None and divides(b, a) is not None


def _check_bound(A, max_points):
    if len(A) > max_points:
        raise ResourceError(f"|S| = {len(A)} exceeds the enumeration bound {max_points}")


def idempotents(A, max_points=DEFAULT_MAX_POINTS):
    """All 2^|S| idempotents; bitmask order (bit i = coordinate i)."""
    _check_bound(A, max_points)
    n = len(A)
    one, zero = A.field.one, A.field.zero
    return [Idempotent(A, tuple(one if mask >> i & 1 else zero for i in range(n)))
            for mask in range(1 << n)]


# --- localization ----------------------------------------------------------------------

def localize_at_idempotent(A, e):
    """A{e^-1} = A/(1-e) = K^{supp e}, with the restriction map."""
    e = as_idempotent(e)
    if e.ring != A:
        raise ContractError("idempotent is not in A")
    keep = [i for i, c in enumerate(e.coords) if not A.field.is_zero(c)]
    B = ProductRing(tuple(A.points[i] for i in keep), A.field)
    return B, RingHom(A, B, tuple(keep))


def localize_at_element(A, a):
    return localize_at_idempotent(A, idempotent_of(a))


def hom_kernel_generator(f):
    """The idempotent generating ker f (coordinates f ignores)."""
    used = set(f.dual)
    return f.domain.indicator([i for i in range(len(f.domain)) if i not in used])


def factor_through(f, g):
    """The unique h with g = h o f, for f a restriction K^S -> K^S'; None if
    g does not factor."""
    pos = {s: k for k, s in enumerate(f.dual)}
    if any(s not in pos for s in g.dual):
        return None
    return RingHom(f.codomain, g.codomain, tuple(pos[s] for s in g.dual))


# --- spectrum ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimePoint:
    """The prime (maximal) ideal p_s = {a : a_s = 0}."""

    ring: ProductRing
    index: int

    @property
    def name(self):
        return self.ring.points[self.index]

    def contains(self, a):
        return self.ring.field.is_zero(a.coords[self.index])

    def generator(self):
        return self.ring.indicator([i for i in range(len(self.ring)) if i != self.index])


def primes(A):
    return [PrimePoint(A, i) for i in range(len(A))]


def spec(A, max_points=DEFAULT_MAX_POINTS):
    _check_bound(A, max_points)
    return FiniteBoolSpace(A.points)


def d_infinity(a):
    """Basic open D(a) = {p : a not in p}, as a set of point names."""
    return frozenset(p.name for p in primes(a.ring) if not p.contains(a))


def spec_of_hom(f, max_points=None):
    """Spec f: Spec(codomain) -> Spec(domain), p_t -> f^{-1}[p_t] = p_{dual(t)}.
    The hom is already materialized, so by default no extra bound applies."""
    if max_points is None:
        max_points = max(len(f.domain), len(f.codomain))
    return ContinuousMap(spec(f.codomain, max_points), spec(f.domain, max_points), f.dual)


def preimage_prime(f, p):
    """f^{-1}[p] identified by testing the indicator idempotents of the domain."""
    A = f.domain
    outside = [i for i in range(len(A)) if not p.contains(apply_hom(f, A.indicator([i])))]
    if len(outside) != 1:
        raise ContractError("preimage is not a point prime")
    return PrimePoint(A, outside[0])


def residue_field_check(A, p, samples=50, seed=0):
    """A/p_s is K: evaluation at s is onto, has kernel p_s, and nonzero classes
    are invertible."""
    rep = Report(f"residue field at {p.name}")
    rng = random.Random(seed)
    s = p.index
    for _ in range(samples):
        c = A.field.random(rng)
        lift = RingElement(A, tuple(c if i == s else A.field.random(rng) for i in range(len(A))))
        rep.check(lift.coords[s] == c, "evaluation is not onto")
        a = A.random_element(rng)
        rep.check(p.contains(a) == A.field.is_zero(a.coords[s]), "kernel is not p_s")
        if not p.contains(a):
            inv = quasi_inverse(a)
            prod = a * inv - A.one()
            rep.check(p.contains(prod), f"class of {a!r} has no inverse mod p")
        else:
            rep.check(not p.contains(A.one()), "p_s contains 1")
    return rep.finish()


def enumerate_ideals(A, max_points=DEFAULT_MAX_POINTS):
    """Every ideal of K^S, as its idempotent generator."""
    return idempotents(A, max_points)


def is_prime_ideal(e, probes):
    """Primality of (e) tested against ``probes`` (a list of elements):
    proper, and ab in (e) implies a or b in (e)."""
    A = e.ring
    if divides(e, A.one()) is not None:
        return False
    for a in probes:
        for b in probes:
            if divides(e, a * b) is not None and divides(e, a) is None and divides(e, b) is None:
                return False
    return True


def is_maximal_ideal(e, ideals):
    A = e.ring
    if divides(e, A.one()) is not None:
        return False
    for f in ideals:
        if divides(f, e) is not None and divides(e, f) is None and divides(f, A.one()) is None:
            return False
    return True


# --- equalizers and reducedness --------------------------------------------------------

@dataclass
class Equalizer:
    f: RingHom
    g: RingHom

    def __contains__(self, a):
        return apply_hom(self.f, a) == apply_hom(self.g, a)

    def classes(self):
        """Index classes on which members of E are constant."""
        parent = list(range(len(self.f.domain)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in zip(self.f.dual, self.g.dual):
            parent[find(s)] = find(t)
        return [find(i) for i in range(len(parent))]

    def random_member(self, rng):
        A = self.f.domain
        cls = self.classes()
        values = {}
        coords = tuple(values.setdefault(c, A.field.random(rng)) for c in cls)
        return RingElement(A, coords)


def equalizer(f, g, samples=100, seed=0):
    """Membership predicate for E = {a : f(a) = g(a)} plus a sampled closure
    report for +, * and quasi-inverse."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ContractError("equalizer needs parallel homomorphisms")
    E = Equalizer(f, g)
    rep = Report("equalizer closure")
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = E.random_member(rng), E.random_member(rng)
        if not rep.check(a in E and b in E, "sampled member not in E"):
            continue
        rep.check(a + b in E, lambda: f"{a!r} + {b!r} leaves E")
        rep.check(a * b in E, lambda: f"{a!r} * {b!r} leaves E")
        rep.check(quasi_inverse(a) in E, lambda: f"quasi-inverse of {a!r} leaves E")
    return E, rep.finish()


def reducedness_check(A, samples=1000, seed=0, max_power=4):
    """No sampled a != 0 has a^k = 0 for 2 <= k <= max_power.

    ``A`` only needs ``random_element(rng)``; its elements need ``*`` and
    ``is_zero()``.
    """
    rng = random.Random(seed)
    rep = Report("reducedness")
    for _ in range(samples):
        a = A.random_element(rng)
        power = a
        for k in range(2, max_power + 1):
            power = power * a
            if power.is_zero():
                rep.check(a.is_zero(), lambda: f"nonzero nilpotent {a!r} (a^{k} = 0)")
                break
        else:
            rep.check(True)
    return rep.finish()
