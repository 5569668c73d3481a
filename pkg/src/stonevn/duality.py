"""The representation functors k^ (spaces -> rings) and K^v = k^ o Stone
(algebras -> rings), with the natural isomorphisms epsilon and theta."""

import random

from . import boolalg, vnring
from .boolspace import (ContinuousMap, EquivRelation, FiniteBoolSpace, all_equiv_relations,
                        all_maps, discrete_space, quotient, transition)
from .errors import ContractError, ResourceError
from .exact import QQ
from .report import NaturalIsoReport, Report

COLIMIT_CERTIFY_MAX_POINTS = 4


def khat(X, field=QQ):
    """k^(X) = K^X: the colimit of K^(X/R) over all R, attained at the diagonal."""
    return vnring.ProductRing(X.points, field)


def khat_of_map(phi, field=QQ):
    """k^(phi): K^X' -> K^X, g -> g o phi."""
    return vnring.RingHom(khat(phi.codomain, field), khat(phi.domain, field), phi.images)


def epsilon_map(X, field=QQ):
    """epsilon_X: X -> Spec k^(X), x -> p_x."""
    A = khat(X, field)
    S = vnring.spec(A, max_points=len(A))
    images = []
    ps = vnring.primes(A)
    for x in range(len(X)):
        # p_x is the unique prime missing the indicator of x
        chi = A.indicator([x])
        hits = [p.index for p in ps if not p.contains(chi)]
        if len(hits) != 1:
            raise ContractError(f"no unique prime for point {X.points[x]!r}")
        images.append(hits[0])
    return ContinuousMap(X, S, tuple(images))


def epsilon(X, field=QQ, max_points=vnring.DEFAULT_MAX_POINTS * 4):
    """Component of epsilon at X, checked to be a bijection whose image point
    is the prime of functions vanishing at x."""
    if len(X) > max_points:
        raise ResourceError(f"{len(X)} points exceeds the bound {max_points}")
    rep = NaturalIsoReport(f"epsilon at |X|={len(X)}")
    eps = epsilon_map(X, field)
    A = khat(X, field)
    chis = [A.indicator([y]) for y in range(len(X))]
    for x, s in enumerate(eps.images):
        p = vnring.PrimePoint(A, s)
        rep.check(all(p.contains(chi) == (y != x) for y, chi in enumerate(chis)),
                  lambda: f"epsilon({X.points[x]}) is not the prime at that point")
    rep.component(f"X[{len(X)}]", eps.as_dict(), eps.is_bijective())
    return rep.finish()


def epsilon_naturality(phi, rep=None, field=QQ):
    """Spec(k^ phi) o epsilon_X = epsilon_X' o phi."""
    rep = rep or NaturalIsoReport("epsilon naturality")
    lhs = epsilon_map(phi.domain, field).then(vnring.spec_of_hom(khat_of_map(phi, field)))
    rhs = phi.then(epsilon_map(phi.codomain, field))
    rep.square(lhs.images == rhs.images, lambda: f"epsilon square fails for {phi.as_dict()}")
    return rep


def conjugation_recovers(phi, field=QQ):
    """phi = epsilon_X'^-1 o Spec(k^ phi) o epsilon_X."""
    ex, ey = epsilon_map(phi.domain, field), epsilon_map(phi.codomain, field)
    inv = {s: x for x, s in enumerate(ey.images)}
    middle = vnring.spec_of_hom(khat_of_map(phi, field))
    return tuple(inv[middle.images[s]] for s in ex.images) == phi.images


def khat_fingerprint(phi, field=QQ):
    """How k^(phi) acts on the indicator idempotents of K^X'.  Two maps with
    the same fingerprint induce the same homomorphism on the generators."""
    f = khat_of_map(phi, field)
    return tuple(vnring.apply_hom(f, f.domain.indicator([y])).coords
                 for y in range(len(phi.codomain)))


def certify_colimit(X, field=QQ, max_points=COLIMIT_CERTIFY_MAX_POINTS, max_test_points=2):
    """Build the directed system K^(X/R) over every partition R of X and check
    that K^X with the precomposition maps is a colimit cocone: the legs are
    compatible, and every compatible cocone into K^T (|T| <= max_test_points)
    factors through K^X in exactly one way."""
    if len(X) > max_points:
        raise ResourceError(f"colimit certification is limited to {max_points} points")
    rep = Report(f"colimit certification |X|={len(X)}")
    rels = all_equiv_relations(X)
    rings, legs = {}, {}
    target = khat(X, field)
    for R in rels:
        Q, proj = quotient(X, R)
        rings[R.labels] = khat(Q, field)
        legs[R.labels] = khat_of_map(proj, field)
    diag = EquivRelation.diagonal(X).labels

    # compatibility: leg_fine o incl(coarse -> fine) = leg_coarse
    incl = {}
    for Ri in rels:
        for Rj in rels:
            if Rj.refines(Ri):
                iota = khat_of_map(transition(Rj, Ri), field)
                incl[(Ri.labels, Rj.labels)] = iota
                rep.check(iota.then(legs[Rj.labels]) == legs[Ri.labels],
                          lambda: f"cocone legs incompatible at {Ri.blocks} <= {Rj.blocks}")
    leg_d = legs[diag]
    rep.check(sorted(leg_d.dual) == list(range(len(X))), "leg at the diagonal is not an iso")

    for n in range(max_test_points + 1):
        T = khat(discrete_space(n, "t"), field)
        for g_d in _all_homs(rings[diag], T):
            cocone = {R.labels: incl[(R.labels, diag)].then(g_d) for R in rels}
            factors = [u for u in _all_homs(target, T)
                       if all(legs[k].then(u) == cocone[k] for k in cocone)]
            rep.check(len(factors) == 1,
                      lambda: f"{len(factors)} factorizations of a cocone into {T!r}")
    return rep.finish()


def _all_homs(A, B):
    if len(A) == 0 and len(B) > 0:
        return []
    return [vnring.RingHom(A, B, m.images)
            for m in all_maps(FiniteBoolSpace(B.points), FiniteBoolSpace(A.points))]


# --- K^v and theta -----------------------------------------------------------------------

def kcheck(B, field=QQ):
    """K^v(B) = k^(Stone B) = K^atoms(B)."""
    return khat(boolalg.stone(B), field)


def kcheck_of_hom(h, field=QQ):
    """K^v(h) = k^(Stone h): K^v(B) -> K^v(B')."""
    return khat_of_map(boolalg.stone_of_hom(h), field)


class Theta:
    """theta_B: B -> B~(K^v(B)); atom a -> indicator of the ultrafilter U_a."""

    def __init__(self, B, field=QQ):
        self.algebra = B
        self.ring = kcheck(B, field)
        self.target = boolalg.IdempotentAlgebra(self.ring)
        self.space = boolalg.stone(B)

    def __call__(self, x):
        if x.owner != self.algebra:
            raise ContractError("element is not in the source algebra")
        ufs = boolalg.ultrafilters(self.algebra)
        picked = [self.space.index(U.name) for U in ufs if x in U]
        return self.ring.indicator(picked)

    def table(self):
        return {repr(x): repr(self(x)) for x in self.algebra.elements()}

    def verify(self, rep, pairs=None, seed=0):
        """Bijectivity and preservation of the Boolean operations; all pairs
        of elements, or ``pairs`` random ones."""
        B = self.algebra
        els = B.elements()
        images = [self(x) for x in els]
        bij = len(set(images)) == len(els) and set(images) == set(self.target.idempotents())
        rep.component(f"B[{len(B.atoms)}]", self.table(), bij)
        for x, tx in zip(els, images):
            c = self.target.complement(tx)
            rep.check(c.is_idempotent() and c == self(~x), lambda: f"theta(~{x}) mismatch")
        if pairs is None:
            todo = [(i, k) for i in range(len(els)) for k in range(len(els))]
        else:
            rng = random.Random(seed)
            todo = [(rng.randrange(len(els)), rng.randrange(len(els))) for _ in range(pairs)]
        for i, k in todo:
            x, y, tx, ty = els[i], els[k], images[i], images[k]
            m, j = self.target.meet(tx, ty), self.target.join(tx, ty)
            rep.check(m == self(x & y), lambda: f"theta({x} & {y}) mismatch")
            rep.check(j == self(x | y), lambda: f"theta({x} | {y}) mismatch")
        return rep


def theta(B, field=QQ, max_atoms=boolalg.DEFAULT_MAX_ATOMS, pairs=None, seed=0):
    if len(B.atoms) > max_atoms:
        raise ResourceError(f"{len(B.atoms)} atoms exceeds the bound {max_atoms}")
    rep = NaturalIsoReport(f"theta at {len(B.atoms)} atoms")
    Theta(B, field).verify(rep, pairs, seed)
    return rep.finish()


def theta_naturality(h, rep=None, field=QQ):
    """B~(K^v h) o theta_B = theta_B' o h, elementwise."""
    rep = rep or NaturalIsoReport("theta naturality")
    tB, tC = Theta(h.domain, field), Theta(h.codomain, field)
    f = kcheck_of_hom(h, field)
    for x in h.domain.elements():
        lhs = vnring.apply_hom(f, tB(x))
        rep.square(lhs == tC(h(x)), lambda: f"theta square fails at {x}")
    return rep


def composite_coherence(B, field=QQ):
    """B~(K^v B) computed directly and through j as Clopen(Spec K^v B) agree."""
    rep = Report("composite coherence")
    A = kcheck(B, field)
    direct = boolalg.IdempotentAlgebra(A)
    j = boolalg.JIso(A)
    for e in direct.idempotents():
        via_j = j.inverse(j(e))
        rep.check(direct.to_element(e).subset == j(e).subset and via_j == e,
                  lambda: f"disagreement at {e!r}")
    return rep.finish()
