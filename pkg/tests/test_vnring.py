import math
import random

import pytest
from hypothesis import given, strategies as st

from stonevn import oracles, smooth, vnring
from stonevn.errors import ContractError, ResourceError
from stonevn.exact import QQ, RR
from stonevn.serialize import element_to_json
from stonevn.vnring import ProductRing, RingHom, apply_hom, quasi_inverse


def el(A, *coords):
    return A.element([QQ.parse(str(c)) if isinstance(c, str) else c for c in coords])


coordinate = st.one_of(st.just(0), st.fractions(max_denominator=30)).map(QQ.coerce)


@st.composite
def elements(draw, m=None):
    m = draw(st.integers(0, 8)) if m is None else m
    A = ProductRing.power(m)
    return A.element(draw(st.lists(coordinate, min_size=m, max_size=m)))


# --- quasi-inverse and friends ---------------------------------------------------------

def test_quasi_inverse_example(q3):
    b = quasi_inverse(el(q3, 2, 0, -3))
    assert b == el(q3, "1/2", 0, "-1/3")


def test_quasi_inverse_trivial_cases():
    A = ProductRing.power(4)
    assert quasi_inverse(A.zero()) == A.zero()
    B = ProductRing.power(2)
    assert quasi_inverse(B.one()) == B.one()


def test_quasi_inverse_matches_oracle():
    rng = random.Random(3)
    A = ProductRing.power(8)
    for _ in range(200):
        a = A.random_element(rng)
        got = element_to_json(quasi_inverse(a))
        assert got == oracles.quasi_inverse_strings(element_to_json(a)["coords"])


@given(elements())
def test_quasi_inverse_laws(a):
    b = quasi_inverse(a)
    assert a * b * a == a
    assert b * a * b == b
    assert quasi_inverse(b) == a


def test_idempotent_of_example(q3):
    a = el(q3, 2, 0, -3)
    w = vnring.idempotent_of(a, with_witness=True)
    assert w.e == el(q3, 1, 0, 1)
    assert w.y == a and w.z == quasi_inverse(a)
    assert w.e * w.y == a and a * w.z == w.e


def test_idempotent_of_zero_and_unit(q3):
    assert vnring.idempotent_of(q3.zero()) == q3.zero()
    assert vnring.idempotent_of(el(q3, 5, "-1/2", 3)) == q3.one()


def test_minimal_witness():
    A = ProductRing.power(2)
    a = el(A, 2, 0)
    assert vnring.minimal_quasi_inverse_witness(a, el(A, "1/2", 7)) == el(A, "1/2", 0)
    assert vnring.minimal_quasi_inverse_witness(A.zero(), el(A, 3, 4)) == A.zero()
    u = el(A, 3, -2)
    assert vnring.minimal_quasi_inverse_witness(u, quasi_inverse(u)) == quasi_inverse(u)
    with pytest.raises(ContractError):
        vnring.minimal_quasi_inverse_witness(a, el(A, 1, 1))


@given(elements())
def test_idempotent_generates_same_ideal(a):
    e = vnring.idempotent_of(a)
    assert e.is_idempotent()
    assert vnring.same_ideal(a, e)


def test_idempotents_counts():
    assert len(vnring.idempotents(ProductRing.power(1))) == 2
    assert len(vnring.idempotents(ProductRing.power(3))) == 8
    trivial = vnring.idempotents(ProductRing.power(0))
    assert len(trivial) == 1 and trivial[0] == ProductRing.power(0).one()
    with pytest.raises(ResourceError):
        vnring.idempotents(ProductRing.power(21))


def test_idempotent_subclass_validates(q3):
    with pytest.raises(ContractError):
        vnring.as_idempotent(el(q3, 2, 0, 1))


def test_boolean_ops_on_idempotents():
    A = ProductRing.power(2)
    e, f = A.indicator([0]), A.indicator([1])
    assert vnring.idempotent_join(e, f) == A.one()
    assert vnring.idempotent_meet(e, f) == A.zero()
    assert vnring.idempotent_complement(e) == f


# --- localization ------------------------------------------------------------------------

def test_localize_at_one_and_zero(q3):
    B, f = vnring.localize_at_idempotent(q3, q3.one())
    assert B == q3 and f == q3.identity_hom()
    B, f = vnring.localize_at_idempotent(q3, q3.zero())
    assert len(B) == 0


def test_localize_at_idempotent_example(q3):
    B, f = vnring.localize_at_idempotent(q3, el(q3, 1, 0, 1))
    assert B.points == ("s1", "s3")
    assert vnring.hom_kernel_generator(f) == el(q3, 0, 1, 0)
    assert apply_hom(f, el(q3, 0, 5, 0)).is_zero()


def test_localize_at_element_example(q3):
    a = el(q3, 2, 0, -3)
    B, f = vnring.localize_at_element(q3, a)
    assert B.points == ("s1", "s3")
    image = apply_hom(f, a)
    assert image.is_unit()
    assert image * quasi_inverse(image) == B.one()


def test_localize_at_unit_is_identity(q3):
    B, f = vnring.localize_at_element(q3, el(q3, 1, 2, 3))
    assert B == q3 and f == q3.identity_hom()


def test_factor_through(q3):
    _, f = vnring.localize_at_idempotent(q3, el(q3, 1, 0, 1))
    g = RingHom.from_names(q3, ProductRing.power(1, prefix="t"), {"t1": "s3"})
    h = vnring.factor_through(f, g)
    assert f.then(h) == g
    bad = RingHom.from_names(q3, ProductRing.power(1, prefix="t"), {"t1": "s2"})
    assert vnring.factor_through(f, bad) is None


# --- homs and spectrum ---------------------------------------------------------------------

def test_hom_identity_and_constant(q3):
    a = el(q3, 4, "1/2", -1)
    assert apply_hom(q3.identity_hom(), a) == a
    T = ProductRing.power(2, prefix="t")
    const = RingHom.from_names(q3, T, {"t1": "s1", "t2": "s1"})
    assert apply_hom(const, a) == T.element([4, 4])


def test_hom_composition_reverses_duals():
    rng = random.Random(0)
    for _ in range(50):
        A, B, C = (ProductRing.power(rng.randint(1, 4), prefix=p) for p in "abc")
        f, g = vnring.random_hom(A, B, rng), vnring.random_hom(B, C, rng)
        a = A.random_element(rng)
        assert apply_hom(f.then(g), a) == apply_hom(g, apply_hom(f, a))
        assert f.then(g).dual == tuple(f.dual[s] for s in g.dual)
        assert vnring.check_hom_laws(f, samples=10, seed=1).passed


def test_spec_examples():
    assert len(vnring.spec(ProductRing.power(1))) == 1
    assert vnring.spec(ProductRing.power(3)).points == ("s1", "s2", "s3")
    assert len(vnring.spec(ProductRing.power(0))) == 0


def test_primes_are_the_cosingletons():
    A = ProductRing.power(3)
    ideals = vnring.enumerate_ideals(A)
    rng = random.Random(1)
    probes = ideals + [A.random_element(rng) for _ in range(10)]
    primes = [e for e in ideals if vnring.is_prime_ideal(e, probes)]
    maximal = [e for e in ideals if vnring.is_maximal_ideal(e, ideals)]
    assert primes == maximal
    assert sorted(sum(1 for c in e.coords if c == 0) for e in primes) == [1, 1, 1]
    assert {p.generator() for p in vnring.primes(A)} == set(primes)


def test_d_infinity(q3):
    assert vnring.d_infinity(q3.one()) == {"s1", "s2", "s3"}
    assert vnring.d_infinity(q3.zero()) == frozenset()
    assert vnring.d_infinity(el(q3, 2, 0, -3)) == {"s1", "s3"}


def test_residue_fields(q3):
    p = vnring.primes(q3)[1]
    assert vnring.residue_field_check(q3, p).passed
    A = ProductRing.power(1)
    assert vnring.residue_field_check(A, vnring.primes(A)[0]).passed
    assert vnring.primes(ProductRing.power(0)) == []


def test_spec_of_hom(q3):
    assert vnring.spec_of_hom(q3.identity_hom()).images == (0, 1, 2)
    T = ProductRing.power(1, prefix="t")
    f = RingHom.from_names(q3, T, {"t1": "s2"})
    m = vnring.spec_of_hom(f)
    assert len(m.domain) == 1 and m.as_dict() == {"t1": "s2"}
    rng = random.Random(2)
    U = ProductRing.power(2, prefix="u")
    g = vnring.random_hom(T, U, rng)
    assert vnring.spec_of_hom(f.then(g)) == vnring.spec_of_hom(g).then(vnring.spec_of_hom(f))
    assert vnring.preimage_prime(f, vnring.primes(T)[0]).name == "s2"


# --- equalizers and reducedness ------------------------------------------------------------

def test_equalizer_of_equal_maps_is_everything(q3):
    f = q3.identity_hom()
    E, rep = vnring.equalizer(f, f, samples=20)
    assert rep.passed
    rng = random.Random(0)
    assert all(q3.random_element(rng) in E for _ in range(20))


def test_equalizer_of_projections_is_the_diagonal():
    A, T = ProductRing.power(2), ProductRing.power(1, prefix="t")
    f = RingHom.from_names(A, T, {"t1": "s1"})
    g = RingHom.from_names(A, T, {"t1": "s2"})
    E, rep = vnring.equalizer(f, g)
    assert rep.passed
    assert el(A, 3, 3) in E and el(A, 3, 2) not in E
    assert quasi_inverse(el(A, 3, 3)) in E and quasi_inverse(A.zero()) in E


def test_equalizer_random_pairs():
    rng = random.Random(4)
    A, B = ProductRing.power(4), ProductRing.power(4, prefix="t")
    for k in range(100):
        f, g = vnring.random_hom(A, B, rng), vnring.random_hom(A, B, rng)
        assert vnring.equalizer(f, g, samples=20, seed=k)[1].passed


def test_reducedness(q3):
    class Zero:
        def random_element(self, rng):
            return q3.zero()

    assert vnring.reducedness_check(Zero(), samples=5).passed
    assert vnring.reducedness_check(q3, samples=1000).passed


class DualNumber:
    """a + b x with x^2 = 0 over the rationals: has the nilpotent x."""

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __mul__(self, other):
        return DualNumber(self.a * other.a, self.a * other.b + self.b * other.a)

    def is_zero(self):
        return self.a == 0 and self.b == 0


class DualNumbers:
    def random_element(self, rng):
        return DualNumber(QQ.random(rng, zero_rate=0.5), QQ.random(rng, zero_rate=0.0))


def test_reducedness_detects_a_nilpotent():
    rep = vnring.reducedness_check(DualNumbers(), samples=200)
    assert not rep.passed and rep.failures


# --- smooth structure --------------------------------------------------------------------

def test_interpret_componentwise():
    A = ProductRing.power(2, RR)
    a, b = A.element([0.0, math.pi / 2]), A.element([1.0, 0.0])
    got = vnring.interpret(smooth.parse("sin(x1) + x2"), [a, b])
    assert got.coords == (1.0, 1.0)
    assert vnring.interpret(smooth.projection(2, 1), [a, b]) == a


def test_interpret_on_empty_product():
    A = ProductRing.power(0, RR)
    assert vnring.interpret(smooth.parse("exp(x1)"), [A.zero()]) == A.zero()


def test_interpret_needs_reals(q3):
    with pytest.raises(ContractError):
        vnring.interpret(smooth.parse("x1"), [q3.one()])


def test_axioms_pass():
    A = ProductRing.power(3, RR)
    assert vnring.check_projection_axiom(A, samples=100).passed
    assert vnring.check_composition_axiom(A, samples=300).passed


def _corrupt(f, args):
    good = vnring.interpret(f, args)
    return good.ring.element([c + 1e-3 for c in good.coords])


def test_corrupted_interpreter_is_caught():
    A = ProductRing.power(2, RR)
    rep = vnring.check_projection_axiom(A, samples=50, interpreter=_corrupt)
    assert not rep.passed and rep.failures
    rep = vnring.check_composition_axiom(A, samples=50, interpreter=_corrupt)
    assert not rep.passed
