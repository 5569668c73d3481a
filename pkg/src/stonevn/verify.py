"""Seeded verification suites, one per acceptance criterion, and the
aggregate pipeline run behind ``stonevn verify``."""

import random
from contextlib import ExitStack
from dataclasses import dataclass, fields, replace

from . import boolalg, duality, oracles, vnring
from .boolspace import (all_equiv_relations, all_maps, delta, delta_functor,
                        discrete_space, limit_space, pullback_relation, random_map)
from .exact import RR
from .mutation import mutated
from .report import NaturalIsoReport, Report
from .serialize import dumps, element_to_json


@dataclass(frozen=True)
class Bounds:
    """Sizes and sample counts; defaults are the acceptance settings."""

    ring_max: int = 12
    corpus: int = 1000
    uniqueness_max: int = 5
    ideal_max: int = 4
    local_max: int = 6
    j_max: int = 5
    hom_samples: int = 200
    hom_max: int = 6
    ba_exhaustive_atoms: int = 4
    ba_random: int = 100
    ba_random_atoms: int = 8
    stone_space_max: int = 8
    delta_max: int = 6
    functor_exhaustive_max: int = 3
    functor_random: int = 100
    functor_random_max: int = 5
    pullback_max: int = 4
    epsilon_max: int = 64
    epsilon_maps: int = 50
    faithful_max: int = 4
    colimit_max: int = 4
    smooth_samples: int = 1000
    smooth_arity: int = 4
    equalizer_pairs: int = 100
    equalizer_members: int = 100
    theta_random_pairs: int = 500

    @classmethod
    def empty(cls):
        return cls(**{f.name: -1 for f in fields(cls)})

    def quick(self):
        """A reduced configuration for fast smoke runs."""
        return replace(self, corpus=min(self.corpus, 100), hom_samples=min(self.hom_samples, 40),
                       ba_random=min(self.ba_random, 10))


def _seed(seed, tag):
    return random.Random(f"{seed}:{tag}")


def _corpus(m, n, rng):
    A = vnring.ProductRing.power(m)
    return A, [A.random_element(rng) for _ in range(max(n, 0))]


# --- 1-4: von Neumann regularity ------------------------------------------------

def criterion_1(seed=0, bounds=Bounds()):
    """Quasi-inverse laws, exactly, with the string oracle agreeing byte for byte."""
    rep = Report("1 quasi-inverse laws")
    rng = _seed(seed, 1)
    for m in range(bounds.ring_max + 1):
        A, corpus = _corpus(m, bounds.corpus, rng)
        for a in corpus:
            b = vnring.quasi_inverse(a)
            rep.check(a * b * a == a, lambda: f"aba != a for a={a!r}")
            rep.check(b * a * b == b, lambda: f"bab != b for a={a!r}")
            expected = dumps(oracles.quasi_inverse_strings(element_to_json(a)["coords"]))
            rep.check(dumps(element_to_json(b)) == expected,
                      lambda: f"oracle disagrees at a={a!r}: {b!r}")
    return rep.finish()


def criterion_2(seed=0, bounds=Bounds()):
    """Witnesses for the three regularity conditions; idempotent generators unique."""
    rep = Report("2 regularity equivalence")
    rng = _seed(seed, 2)
    for m in range(bounds.ring_max + 1):
        A, corpus = _corpus(m, bounds.corpus, rng)
        one = A.one()
        for a in corpus:
            b = vnring.quasi_inverse(a)
            w = vnring.idempotent_of(a, with_witness=True)
            e, y, z = w.e, w.y, w.z
            # a non-minimal solution of a = a^2 x
            x = b + (one - e) * A.random_element(rng)
            rep.check(a == a * a * x, lambda: f"(i) fails at {a!r}")
            rep.check(e * e == e, lambda: f"(ii) e not idempotent at {a!r}")
            rep.check(e * y == a, lambda: f"(ii) ey != a at {a!r}")
            rep.check(a * z == e, lambda: f"(ii) az != e at {a!r}")
            rep.check(a == a * a * b, lambda: f"(iii) a != a^2 b at {a!r}")
            rep.check(b == b * b * a, lambda: f"(iii) b != b^2 a at {a!r}")
            rep.check(vnring.minimal_quasi_inverse_witness(a, x) == b,
                      lambda: f"a x^2 != quasi-inverse at {a!r}")
            rep.check(vnring.same_ideal(a, e), lambda: f"(a) != (e) at {a!r}")
    for m in range(bounds.uniqueness_max + 1):
        ids = vnring.idempotents(vnring.ProductRing.power(m))
        for e in ids:
            for f in ids:
                rep.check(vnring.same_ideal(e, f) == (e == f),
                          lambda: f"(e) = (e') but e != e' for {e!r}, {f!r}")
    return rep.finish()


def criterion_3(seed=0, bounds=Bounds()):
    """Reducedness on the corpus; prime = maximal and Spec = S for small m."""
    rep = Report("3 reduced, Spec = Specm")
    for m in range(bounds.ring_max + 1):
        A = vnring.ProductRing.power(m)
        rep.merge(vnring.reducedness_check(A, samples=bounds.corpus, seed=f"{seed}:3:{m}"))
    rng = _seed(seed, 3)
    for m in range(bounds.ideal_max + 1):
        A = vnring.ProductRing.power(m)
        ideals = vnring.enumerate_ideals(A)
        probes = ideals + [A.random_element(rng) for _ in range(20)]
        prime = {e for e in ideals if vnring.is_prime_ideal(e, probes)}
        maximal = {e for e in ideals if vnring.is_maximal_ideal(e, ideals)}
        rep.check(prime == maximal, lambda: f"prime != maximal for m={m}")
        rep.check(len(prime) == m, lambda: f"{len(prime)} primes for m={m}")
        rep.check(prime == {p.generator() for p in vnring.primes(A)},
                  lambda: f"primes are not the point ideals for m={m}")
        X = vnring.spec(A)
        rep.check(len(X) == m, "spectrum has the wrong size")
        opens = {vnring.d_infinity(e) for e in ideals}
        rep.check(len(opens) == 2 ** m and all(frozenset([s]) in opens for s in X.points),
                  lambda: f"D(a) basis is not the discrete topology for m={m}")
    return rep.finish()


def criterion_4(seed=0, bounds=Bounds()):
    """Localization at idempotents and elements."""
    rep = Report("4 localization")
    rng = _seed(seed, 4)
    for m in range(bounds.local_max + 1):
        A = vnring.ProductRing.power(m)
        for e in vnring.idempotents(A):
            B, f = vnring.localize_at_idempotent(A, e)
            co = A.one() - e
            rep.check(vnring.hom_kernel_generator(f) == co, lambda: f"ker != (1-e) at {e!r}")
            rep.check(f(e) == B.one(), "image of e is not 1")
            for _ in range(5):
                a = A.random_element(rng)
                rep.check((f(a) == B.zero()) == (vnring.divides(co, a) is not None),
                          lambda: f"kernel membership wrong at {a!r}")
                rep.check(f(a * co) == B.zero(), "(1-e) not killed")
                ae = a * e
                rep.check((f(ae) == B.zero()) == ae.is_zero(), "A.e -> A/(1-e) not injective")
                b = B.random_element(rng)
                lift = A.zero()
                coords = list(lift.coords)
                for k, s in enumerate(f.dual):
                    coords[s] = b.coords[k]
                rep.check(f(vnring.RingElement(A, coords)) == b, "restriction not onto")
        for _ in range(max(bounds.corpus // 20, 0)):
            a = A.random_element(rng)
            B, f = vnring.localize_at_element(A, a)
            rep.check(f(a).is_unit(), lambda: f"image of {a!r} not invertible")
            T = vnring.ProductRing.power(rng.randint(0, 3), prefix="t")
            if len(A) == 0 and len(T) > 0:
                continue
            g = vnring.random_hom(A, T, rng)
            h = vnring.factor_through(f, g)
            rep.check((h is not None) == g(a).is_unit(),
                      lambda: f"factorization exists iff g(a) invertible fails at {a!r}")
            if h is not None:
                rep.check(f.then(h) == g, "factorization does not compose back to g")
    return rep.finish()


# --- 5-6: j_A ---------------------------------------------------------------------------

def criterion_5(seed=0, bounds=Bounds()):
    rep = Report("5 j_A isomorphism")
    for m in range(bounds.j_max + 1):
        rep.merge(boolalg.j_iso(vnring.ProductRing.power(m)).verify())
    return rep.finish()


def _random_ring_hom(rng, max_size):
    A = vnring.ProductRing.power(rng.randint(0, max_size))
    # the zero ring only maps to itself
    m = rng.randint(0, max_size) if len(A) else 0
    return vnring.random_hom(A, vnring.ProductRing.power(m, prefix="t"), rng)


def criterion_6(seed=0, bounds=Bounds()):
    rep = Report("6 j naturality")
    rng = _seed(seed, 6)
    for k in range(bounds.hom_samples):
        f = _random_ring_hom(rng, bounds.hom_max)
        rep.merge(boolalg.j_naturality(f, seed=f"{seed}:6:{k}"))
    return rep.finish()


# --- 7: Stone duality ---------------------------------------------------------------------

def _stone_roundtrip_algebra(B, rep):
    iso = boolalg.stone_iso(B)
    C = boolalg.clopen(boolalg.stone(B))
    els = B.elements()
    imgs = [iso[x.mask] for x in els]
    rep.check(len({y.mask for y in imgs}) == len(C), lambda: f"B -> Clopen(Stone B) not bijective, {len(B.atoms)} atoms")
    for x, ix in zip(els, imgs):
        rep.check(iso[(~x).mask] == ~ix, lambda: f"complement not preserved at {x}")
    sample = els if len(els) <= 16 else [B.random_element(random.Random(len(els))) for _ in range(64)]
    for x in sample:
        for y in sample:
            rep.check(iso[(x & y).mask] == iso[x.mask] & iso[y.mask], "meet not preserved")
            rep.check(iso[(x | y).mask] == iso[x.mask] | iso[y.mask], "join not preserved")


def _stone_naturality(h, rep):
    left = boolalg.clopen_of_map(boolalg.stone_of_hom(h))
    iso_b, iso_c = boolalg.stone_iso(h.domain), boolalg.stone_iso(h.codomain)
    for x in h.domain.elements():
        rep.check(left(iso_b[x.mask]) == iso_c[h(x).mask], lambda: f"Stone iso square fails at {x}")


def criterion_7(seed=0, bounds=Bounds()):
    rep = Report("7 Stone duality")
    rng = _seed(seed, 7)
    algebras = [boolalg.powerset_algebra(n) for n in range(1, bounds.ba_exhaustive_atoms + 1)]
    for B in algebras:
        _stone_roundtrip_algebra(B, rep)
    for B in algebras:
        for C in algebras:
            for dual in all_maps(discrete_space(len(C.atoms)), discrete_space(len(B.atoms))):
                h = boolalg.BAHom(B, C, dual.images)
                _stone_naturality(h, rep)
    for _ in range(bounds.ba_random):
        B = boolalg.powerset_algebra(rng.randint(1, bounds.ba_random_atoms))
        _stone_roundtrip_algebra(B, rep)
    for n in range(bounds.stone_space_max + 1):
        X = discrete_space(n)
        eta = boolalg.point_iso(X)
        rep.check(eta.is_bijective(), lambda: f"X -> Stone(Clopen X) not bijective, n={n}")
    for _ in range(bounds.ba_random):
        sizes = [rng.randint(1, bounds.ba_random_atoms) for _ in range(3)]
        B, C, D = (boolalg.powerset_algebra(s, p) for s, p in zip(sizes, "abc"))
        h, k = boolalg.random_ba_hom(B, C, rng), boolalg.random_ba_hom(C, D, rng)
        st = boolalg.stone_of_hom
        rep.check(st(h.then(k)) == st(k).then(st(h)), "Stone is not contravariant")
        cl = boolalg.clopen_of_map
        phi = random_map(discrete_space(sizes[0]), discrete_space(sizes[1], "q"), rng)
        psi = random_map(discrete_space(sizes[1], "q"), discrete_space(sizes[2], "r"), rng)
        rep.check(cl(phi.then(psi)) == cl(psi).then(cl(phi)), "Clopen is not contravariant")
        eta_x, eta_y = boolalg.point_iso(phi.domain), boolalg.point_iso(phi.codomain)
        rep.check(eta_x.then(boolalg.stone_of_hom(cl(phi))).images == phi.then(eta_y).images,
                  "X -> Stone(Clopen X) is not natural")
        _stone_naturality(h, rep)
    return rep.finish()


# --- 8-9: profinite presentation ---------------------------------------------------------

def criterion_8(seed=0, bounds=Bounds()):
    rep = Report("8 delta homeomorphism")
    bell = oracles.bell_numbers(max(bounds.delta_max, 4))
    if bounds.delta_max >= 0:
        rep.check(bell[3] == 5 and bell[4] == 15, f"Bell recurrence gives {bell[:5]}")
    for n in range(bounds.delta_max + 1):
        X = discrete_space(n)
        rep.check(len(all_equiv_relations(X)) == bell[n],
                  lambda: f"{len(all_equiv_relations(X))} partitions of {n} points, Bell says {bell[n]}")
        d = delta(X)
        rep.check(len(d.presentation.relations) == bell[n], "levels != Bell number")
        rep.check(d.bijective and len(d.limit.threads) == n,
                  lambda: f"delta not bijective for n={n}")
    return rep.finish()


def _delta_square(f, rep):
    lhs = delta(f.domain).map.then(delta_functor(f))
    rhs = f.then(delta(f.codomain).map)
    rep.check(lhs.images == rhs.images, lambda: f"delta naturality fails for {f.as_dict()}")


def criterion_9(seed=0, bounds=Bounds()):
    rep = Report("9 Delta functor")
    rng = _seed(seed, 9)
    small = [discrete_space(n) for n in range(bounds.functor_exhaustive_max + 1)]
    for X in small:
        rep.check(delta_functor(X.identity()) == limit_space(X).identity(),
                  lambda: f"Delta(id) != id on {len(X)} points")
    for X in small:
        for Y in small:
            for f in all_maps(X, Y):
                _delta_square(f, rep)
                df = delta_functor(f)
                for Z in small:
                    for g in all_maps(Y, Z):
                        rep.check(delta_functor(f.then(g)) == df.then(delta_functor(g)),
                                  "Delta(g o f) != Delta(g) o Delta(f)")
    done = 0
    while done < bounds.functor_random:
        sizes = [rng.randint(0, bounds.functor_random_max) for _ in range(3)]
        if (sizes[1] == 0 and sizes[0] > 0) or (sizes[2] == 0 and sizes[1] > 0):
            continue
        X, Y, Z = (discrete_space(s, p) for s, p in zip(sizes, "pqr"))
        f, g = random_map(X, Y, rng), random_map(Y, Z, rng)
        rep.check(delta_functor(f.then(g)) == delta_functor(f).then(delta_functor(g)),
                  "Delta(g o f) != Delta(g) o Delta(f)")
        _delta_square(f, rep)
        done += 1
    _pullback_laws(bounds.pullback_max, rep)
    return rep.finish()


def _canon(labels):
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _pullback_laws(max_points, rep):
    """Monotonicity of R -> f*R and (g o f)* = f* g*, for every map between
    spaces of at most ``max_points`` points; one check per map (pair)."""
    spaces = [discrete_space(n) for n in range(max_points + 1)]
    rels = {len(X): all_equiv_relations(X) for X in spaces}
    maps = {(len(X), len(Y)): list(all_maps(X, Y)) for X in spaces for Y in spaces}
    for X in spaces:
        for Y in spaces:
            comparable = [(R1, R2) for R1 in rels[len(Y)] for R2 in rels[len(Y)] if R1.refines(R2)]
            for f in maps[(len(X), len(Y))]:
                rep.check(all(pullback_relation(f, R1).refines(pullback_relation(f, R2))
                              for R1, R2 in comparable),
                          lambda: f"pullback along {f.as_dict()} is not monotone")
    for X in spaces:
        for Y in spaces:
            for Z in spaces:
                for g in maps[(len(Y), len(Z))]:
                    pulled = [(R.labels, pullback_relation(g, R).labels) for R in rels[len(Z)]]
                    for f in maps[(len(X), len(Y))]:
                        gf = f.then(g).images
                        fi = f.images
                        rep.check(all(_canon([R[i] for i in gf]) == _canon([S[i] for i in fi])
                                      for R, S in pulled),
                                  "(g o f) pullback does not factor")


# --- 10-11: k^, K^v ---------------------------------------------------------------------

def criterion_10(seed=0, bounds=Bounds()):
    rep = NaturalIsoReport("10 epsilon and k^")
    rng = _seed(seed, 10)
    for n in range(bounds.epsilon_max + 1):
        rep.merge(duality.epsilon(discrete_space(n)))
    for _ in range(bounds.epsilon_maps):
        a = rng.randint(0, bounds.epsilon_max)
        b = rng.randint(1, bounds.epsilon_max)
        phi = random_map(discrete_space(a), discrete_space(b, "q"), rng)
        duality.epsilon_naturality(phi, rep)
    for a in range(bounds.faithful_max + 1):
        for b in range(bounds.faithful_max + 1):
            X, Y = discrete_space(a), discrete_space(b, "q")
            maps = list(all_maps(X, Y))
            prints = {duality.khat_fingerprint(phi) for phi in maps}
            rep.check(len(prints) == len(maps), lambda: f"k^ not faithful on {a} -> {b} points")
            for phi in maps:
                rep.check(duality.conjugation_recovers(phi), "phi != eps^-1 Spec(k^ phi) eps")
    for n in range(bounds.colimit_max + 1):
        rep.merge(duality.certify_colimit(discrete_space(n)))
    return rep.finish()


def criterion_11(seed=0, bounds=Bounds()):
    rep = NaturalIsoReport("11 theta")
    rng = _seed(seed, 11)
    algebras = [boolalg.powerset_algebra(n) for n in range(1, bounds.ba_exhaustive_atoms + 1)]
    for B in algebras:
        rep.merge(duality.theta(B))
        rep.merge(duality.composite_coherence(B))
    for B in algebras:
        for C in algebras:
            for dual in all_maps(discrete_space(len(C.atoms)), discrete_space(len(B.atoms))):
                duality.theta_naturality(boolalg.BAHom(B, C, dual.images), rep)
    for k in range(bounds.ba_random):
        B = boolalg.powerset_algebra(rng.randint(1, bounds.ba_random_atoms))
        C = boolalg.powerset_algebra(rng.randint(1, bounds.ba_random_atoms), "b")
        pairs = None if len(B.atoms) <= 5 else bounds.theta_random_pairs
        rep.merge(duality.theta(B, pairs=pairs, seed=f"{seed}:11:{k}"))
        duality.theta_naturality(boolalg.random_ba_hom(B, C, rng), rep)
    return rep.finish()


# --- 12-13 -------------------------------------------------------------------------------

def criterion_12(seed=0, bounds=Bounds(), tolerance=1e-9):
    rep = Report("12 C-infinity axioms")
    sizes = list(range(1, bounds.smooth_arity + 1))
    for m in sizes:
        A = vnring.ProductRing.power(m, RR)
        share = bounds.smooth_samples // len(sizes) + (m <= bounds.smooth_samples % len(sizes))
        rep.merge(vnring.check_projection_axiom(A, share, seed=f"{seed}:12p:{m}",
                                                max_arity=bounds.smooth_arity))
        rep.merge(vnring.check_composition_axiom(A, share, seed=f"{seed}:12c:{m}",
                                                 tolerance=tolerance,
                                                 max_arity=bounds.smooth_arity))
    return rep.finish()


def criterion_13(seed=0, bounds=Bounds()):
    rep = Report("13 equalizers")
    rng = _seed(seed, 13)
    for k in range(bounds.equalizer_pairs):
        A = vnring.ProductRing.power(rng.randint(1, bounds.hom_max))
        B = vnring.ProductRing.power(rng.randint(1, bounds.hom_max), prefix="t")
        f, g = vnring.random_hom(A, B, rng), vnring.random_hom(A, B, rng)
        _, closure = vnring.equalizer(f, g, samples=bounds.equalizer_members, seed=f"{seed}:13:{k}")
        rep.merge(closure)
    return rep.finish()


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11, 12: criterion_12, 13: criterion_13,
}
JOIN_SENSITIVE = (5, 6, 11)
JOIN_INSENSITIVE = (1, 2, 3, 4)


def criterion_14(seed=0, bounds=Bounds()):
    """Under a broken join, criteria 5, 6, 11 must fail and 1-4 must pass."""
    rep = Report("14 mutation sensitivity")
    with mutated("join"):
        outcomes = {k: CRITERIA[k](seed, bounds).passed for k in JOIN_SENSITIVE + JOIN_INSENSITIVE}
    for k in JOIN_SENSITIVE:
        rep.check(not outcomes[k], f"criterion {k} still passes with a broken join")
    for k in JOIN_INSENSITIVE:
        rep.check(outcomes[k], f"criterion {k} fails with a broken join")
    return rep.finish()


CRITERIA[14] = criterion_14


@dataclass
class PipelineResult:
    reports: list

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def to_dict(self):
        return {"passed": self.passed, "reports": [r.to_dict() for r in self.reports]}

    def summary(self):
        lines = [r.summary() for r in self.reports]
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines)


def full_pipeline_verify(seed=0, bounds=None, mutations=(), only=None, tolerance=1e-9):
    """Run every criterion on a seeded corpus.  ``mutations`` names defects
    from :mod:`stonevn.mutation` to inject for the whole run; ``tolerance``
    applies to the floating-point composition check."""
    bounds = bounds or Bounds()
    keys = sorted(only or CRITERIA)
    if mutations and 14 in keys:
        keys.remove(14)
    reports = []
    with ExitStack() as stack:
        for name in mutations:
            stack.enter_context(mutated(name))
        for k in keys:
            if k == 12:
                reports.append(criterion_12(seed, bounds, tolerance=tolerance))
            else:
                reports.append(CRITERIA[k](seed, bounds))
    return PipelineResult(reports)
