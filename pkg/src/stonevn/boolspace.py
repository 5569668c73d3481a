"""Finite Boolean spaces, quotients, inverse systems and profinite limits.

A finite compact Hausdorff totally disconnected space is discrete, so a
:class:`FiniteBoolSpace` is just an ordered tuple of point names: every
subset is clopen and every map between such spaces is continuous.
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ContractError, ResourceError

MAX_FULL_LATTICE_POINTS = 6
MAX_PARTITION_POINTS = 8
DELTA_SAMPLE_SIZE = 200


@dataclass(frozen=True)
class FiniteBoolSpace:
    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ContractError(f"duplicate point names in {pts!r}")
        if not all(isinstance(p, str) for p in pts):
            raise ContractError("point names must be strings")

    def __len__(self):
        return len(self.points)

    def index(self, name):
        try:
            return self.points.index(name)
        except ValueError:
            raise ContractError(f"{name!r} is not a point of this space") from None

    def identity(self):
        return ContinuousMap(self, self, tuple(range(len(self.points))))


@dataclass(frozen=True)
class ContinuousMap:
    """A total point map, stored as codomain indices per domain point."""

    domain: FiniteBoolSpace
    codomain: FiniteBoolSpace
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != len(self.domain):
            raise ContractError("map is not total on its domain")
        n = len(self.codomain)
        if any(not (0 <= i < n) for i in imgs):
            raise ContractError("map image outside codomain")

    @classmethod
    def from_names(cls, domain, codomain, mapping):
        return cls(domain, codomain,
                   tuple(codomain.index(mapping[p]) for p in domain.points))

    def __call__(self, point):
        return self.codomain.points[self.images[self.domain.index(point)]]

    def then(self, other):
        """``other o self``."""
        if other.domain != self.codomain:
            raise ContractError("maps are not composable")
        return ContinuousMap(self.domain, other.codomain,
                             tuple(other.images[i] for i in self.images))

    def is_injective(self):
        return len(set(self.images)) == len(self.images)

    def is_surjective(self):
        return set(self.images) == set(range(len(self.codomain)))

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def as_dict(self):
        return {p: self.codomain.points[i] for p, i in zip(self.domain.points, self.images)}


def all_maps(X, Y):
    """Every map X -> Y, in lexicographic order of image tuples."""
    def rec(prefix):
        if len(prefix) == len(X):
            yield ContinuousMap(X, Y, tuple(prefix))
            return
        for j in range(len(Y)):
            prefix.append(j)
            yield from rec(prefix)
            prefix.pop()
    return rec([])


def random_map(X, Y, rng):
    if len(Y) == 0 and len(X) > 0:
        raise ContractError("no maps from a nonempty space to the empty space")
    return ContinuousMap(X, Y, tuple(rng.randrange(len(Y)) for _ in X.points))


def discrete_space(n, prefix="p"):
    return FiniteBoolSpace(tuple(f"{prefix}{i}" for i in range(n)))


# --- equivalence relations ---------------------------------------------------

def _canonical_labels(labels):
    relabel = {}
    return tuple(relabel.setdefault(x, len(relabel)) for x in labels)


@dataclass(frozen=True)
class EquivRelation:
    """A partition of ``space``, stored as canonical block labels per point
    (block ids numbered by first occurrence)."""

    space: FiniteBoolSpace
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(labels) != len(self.space):
            raise ContractError("partition labels must cover every point")
        object.__setattr__(self, "labels", _canonical_labels(labels))

    @classmethod
    def from_blocks(cls, space, blocks):
        seen = {}
        for b, block in enumerate(blocks):
            if not block:
                raise ContractError("empty block in partition")
            for name in block:
                i = space.index(name)
                if i in seen:
                    raise ContractError(f"point {name!r} lies in two blocks")
                seen[i] = b
        if len(seen) != len(space):
            missing = [p for i, p in enumerate(space.points) if i not in seen]
            raise ContractError(f"partition does not cover {missing!r}")
        return cls(space, tuple(seen[i] for i in range(len(space))))

    @classmethod
    def diagonal(cls, space):
        return cls(space, tuple(range(len(space))))

    @classmethod
    def total(cls, space):
        return cls(space, (0,) * len(space))

    @property
    def num_blocks(self):
        return len(set(self.labels))

    @property
    def blocks(self):
        out = [[] for _ in range(self.num_blocks)]
        for i, b in enumerate(self.labels):
            out[b].append(self.space.points[i])
        return tuple(tuple(b) for b in out)

    def related(self, x, y):
        return self.labels[self.space.index(x)] == self.labels[self.space.index(y)]

    def pairs(self):
        n = len(self.labels)
        return frozenset((i, j) for i in range(n) for j in range(n)
                         if self.labels[i] == self.labels[j])

    def refines(self, other):
        """True iff ``self`` is contained in ``other`` as a subset of X x X."""
        if other.space != self.space:
            raise ContractError("relations live on different spaces")
        image = {}
        for a, b in zip(self.labels, other.labels):
            if image.setdefault(a, b) != b:
                return False
        return True


def all_equiv_relations(X, max_points=MAX_PARTITION_POINTS):
    """Every partition of X, via restricted growth strings in lexicographic order."""
    n = len(X)
    if n > max_points:
        raise ResourceError(f"{n} points exceeds the partition bound {max_points}")
    out = []

    def rec(prefix, top):
        if len(prefix) == n:
            out.append(EquivRelation(X, tuple(prefix)))
            return
        for b in range(top + 2):
            prefix.append(b)
            rec(prefix, max(top, b))
            prefix.pop()

    rec([], -1)
    return out


def random_equiv_relation(X, rng):
    labels = []
    top = -1
    k = rng.randint(1, max(1, len(X)))
    for _ in X.points:
        b = rng.randint(0, min(top + 1, k - 1))
        labels.append(b)
        top = max(top, b)
    return EquivRelation(X, tuple(labels))


def _block_name(space, block):
    return "{" + ",".join(block) + "}"


def quotient(X, R):
    """The quotient space X/R and the canonical projection X -> X/R."""
    if R.space != X:
        raise ContractError("relation is not on this space")
    Q = FiniteBoolSpace(tuple(_block_name(X, b) for b in R.blocks))
    return Q, ContinuousMap(X, Q, R.labels)


def transition(R_fine, R_coarse):
    """The surjection X/R_fine -> X/R_coarse, [x] -> [x]; needs R_fine inside R_coarse."""
    if not R_fine.refines(R_coarse):
        raise ContractError("transition needs the first relation to refine the second")
    Qf, _ = quotient(R_fine.space, R_fine)
    Qc, _ = quotient(R_coarse.space, R_coarse)
    images = [None] * len(Qf)
    for a, b in zip(R_fine.labels, R_coarse.labels):
        images[a] = b
    return ContinuousMap(Qf, Qc, tuple(images))


def pullback_relation(f, R):
    """R_f = (f x f)^{-1}[R]: x ~ y iff f(x) ~_R f(y)."""
    if R.space != f.codomain:
        raise ContractError("relation must live on the codomain of the map")
    return EquivRelation(f.domain, tuple(R.labels[i] for i in f.images))


def induced_quotient_map(f, R):
    """The injective map X/R_f -> X'/R', [x] -> [f(x)]."""
    Rf = pullback_relation(f, R)
    Qf, _ = quotient(f.domain, Rf)
    Q, _ = quotient(f.codomain, R)
    images = [None] * len(Qf)
    for x, block in enumerate(Rf.labels):
        target = R.labels[f.images[x]]
        if images[block] is None:
            images[block] = target
        elif images[block] != target:
            raise ContractError("induced quotient map is not well defined")
    g = ContinuousMap(Qf, Q, tuple(images))
    if not g.is_injective():
        raise ContractError("induced quotient map is not injective")
    return g


# --- inverse systems ------------------------------------------------------------

@dataclass(frozen=True)
class LimitPoint:
    """A coherent thread: one point index per level."""

    choices: tuple


class InverseSystem:
    """Finite diagram of finite spaces with transition maps ``arrows[(j, i)]``
    from level j down to level i.

    Composites of given arrows are added when missing; when present they
    must agree (coherence), otherwise ContractError reports the triple.
    """

    def __init__(self, levels, arrows):
        self.levels = tuple(levels)
        n = len(self.levels)
        arrows = dict(arrows)
        for (j, i), mu in arrows.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ContractError(f"arrow ({j} -> {i}) references a missing level")
            if mu.domain != self.levels[j] or mu.codomain != self.levels[i]:
                raise ContractError(f"arrow ({j} -> {i}) has the wrong endpoints")
            if i == j and mu.images != tuple(range(len(mu.domain))):
                raise ContractError(f"arrow ({j} -> {j}) must be the identity")
        arrows = {k: v for k, v in arrows.items() if k[0] != k[1]}
        for (j, i) in arrows:
            if (i, j) in arrows:
                raise ContractError(f"levels {i} and {j} point at each other")
        self.arrows = self._close(arrows)
        self.below = {}
        self.above = {}
        for (j, i) in self.arrows:
            self.below.setdefault(j, []).append(i)
            self.above.setdefault(i, []).append(j)

    @staticmethod
    def _close(arrows):
        out = dict(arrows)
        changed = True
        while changed:
            changed = False
            out_by_src = {}
            for (j, i) in out:
                out_by_src.setdefault(j, []).append(i)
            for (k, j), mu_kj in list(out.items()):
                for i in out_by_src.get(j, ()):
                    if i == k:
                        raise ContractError(f"cycle through levels {k} and {j}")
                    comp = mu_kj.then(out[(j, i)])
                    existing = out.get((k, i))
                    if existing is None:
                        out[(k, i)] = comp
                        changed = True
                    elif existing.images != comp.images:
                        raise ContractError(
                            f"incoherent system: mu[{k}->{i}] != mu[{j}->{i}] o mu[{k}->{j}] "
                            f"(witness triple {(k, j, i)})")
        return out

    def __len__(self):
        return len(self.levels)


@dataclass
class Limit:
    system: InverseSystem
    space: FiniteBoolSpace
    threads: list
    projections: list
    index: dict = field(repr=False)


def limit(system):
    """All coherent threads, lexicographic by level order then point order."""
    levels = system.levels
    n = len(levels)
    threads = []
    choice = [None] * n

    def candidates(k):
        forced = None
        for j in system.above.get(k, ()):
            if j < k:
                v = system.arrows[(j, k)].images[choice[j]]
                if forced is None:
                    forced = v
                elif forced != v:
                    return ()
        if forced is not None:
            return (forced,)
        return range(len(levels[k]))

    def consistent(k, v):
        for i in system.below.get(k, ()):
            if i < k and system.arrows[(k, i)].images[v] != choice[i]:
                return False
        return True

    def rec(k):
        if k == n:
            threads.append(LimitPoint(tuple(choice)))
            return
        for v in candidates(k):
            if consistent(k, v):
                choice[k] = v
                rec(k + 1)
        choice[k] = None

    if not any(len(L) == 0 for L in levels):
        rec(0)
    space = FiniteBoolSpace(tuple(f"t{i}" for i in range(len(threads))))
    projections = [ContinuousMap(space, L, tuple(t.choices[k] for t in threads))
                   for k, L in enumerate(levels)]
    index = {t.choices: i for i, t in enumerate(threads)}
    return Limit(system, space, threads, projections, index)


# --- the profinite presentation of a finite Boolean space -------------------

@dataclass
class FullSystem:
    """Inverse system of all quotients X/R, finest relation first."""

    space: FiniteBoolSpace
    relations: list
    system: InverseSystem
    position: dict = field(repr=False)  # relation labels -> level index


def _system_over(X, relations):
    relations = sorted(relations, key=lambda R: (-R.num_blocks, R.labels))
    levels = [quotient(X, R)[0] for R in relations]
    arrows = {}
    for j, Rj in enumerate(relations):
        for i, Ri in enumerate(relations):
            if i != j and Rj.refines(Ri):
                arrows[(j, i)] = transition(Rj, Ri)
    system = InverseSystem(levels, arrows)
    return FullSystem(X, relations, system, {R.labels: k for k, R in enumerate(relations)})


@lru_cache(maxsize=64)
def full_system(X):
    """All partitions of X as an inverse system (needs |X| <= 6)."""
    if len(X) > MAX_FULL_LATTICE_POINTS:
        raise ResourceError(
            f"the full partition lattice is limited to {MAX_FULL_LATTICE_POINTS} points")
    return _system_over(X, all_equiv_relations(X))


def sampled_system(X, seed, size=DELTA_SAMPLE_SIZE):
    """A random sub-lattice presentation: ``size`` random partitions plus the
    diagonal and total relations."""
    rng = random.Random(seed)
    chosen = {EquivRelation.diagonal(X), EquivRelation.total(X)}
    attempts = 0
    while len(chosen) < size + 2 and attempts < 50 * size:
        chosen.add(random_equiv_relation(X, rng))
        attempts += 1
    return _system_over(X, chosen)


@lru_cache(maxsize=64)
def _full_limit(X):
    return limit(full_system(X).system)


@dataclass
class Delta:
    """delta: X -> X_inf together with the limit it lands in."""

    map: ContinuousMap
    limit: Limit
    presentation: FullSystem
    bijective: bool


def delta(X, seed=0, max_points=20):
    """x -> ([x]_R)_R into the limit of all quotients of X.

    Up to six points the complete partition lattice is used; above that a
    seeded sample of partitions (always containing the diagonal).
    """
    if len(X) > max_points:
        raise ResourceError(f"{len(X)} points exceeds the bound {max_points}")
    if len(X) <= MAX_FULL_LATTICE_POINTS:
        pres = full_system(X)
        lim = _full_limit(X)
    else:
        pres = sampled_system(X, seed)
        lim = limit(pres.system)
    images = []
    for x in range(len(X)):
        thread = tuple(R.labels[x] for R in pres.relations)
        k = lim.index.get(thread)
        if k is None:
            raise ContractError(f"delta({X.points[x]!r}) is not a coherent thread")
        images.append(k)
    m = ContinuousMap(X, lim.space, tuple(images))
    return Delta(m, lim, pres, m.is_bijective())


def delta_functor(f):
    """The unique map X_inf -> X'_inf whose composite with every projection
    mu_R' equals f_{R_f R'} o mu_{R_f}."""
    X, Y = f.domain, f.codomain
    px, py = full_system(X), full_system(Y)
    lx, ly = _full_limit(X), _full_limit(Y)
    columns = []
    for R in py.relations:
        level = px.position[pullback_relation(f, R).labels]
        g = induced_quotient_map(f, R)
        columns.append((level, g.images))
    images = []
    for t in lx.threads:
        target = tuple(g[t.choices[level]] for level, g in columns)
        k = ly.index.get(target)
        if k is None:
            raise ContractError("induced family is not a coherent thread")
        images.append(k)
    return ContinuousMap(lx.space, ly.space, tuple(images))


def limit_space(X):
    """X_inf for the full presentation of X."""
    return _full_limit(X).space
