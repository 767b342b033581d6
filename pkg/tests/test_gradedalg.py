"""Graded-commutative polynomial container, tensor square, text grammar."""

import random
from fractions import Fraction

import pytest

from mmmkit.errors import AlphabetMismatch, InhomogeneousError, ParseError
from mmmkit.gradedalg import (
    GeneratorAlphabet,
    Polynomial,
    TensorElement,
    degree_slice_vector,
    enumerate_monomials,
    format_poly,
    parse_poly,
    poincare_series,
    vector_to_polynomial,
)

EVEN = GeneratorAlphabet([("c1", 2), ("c2", 4), ("c3", 6)])
MIXED = GeneratorAlphabet([("a", 1), ("b", 2), ("u", 3), ("v", 4)])


def gen(alphabet, name):
    return Polynomial.generator(alphabet, name)


def random_poly(rng, alphabet, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = []
        for parity in alphabet.parities:
            exp.append(rng.randint(0, 1 if parity else max_exp))
        terms[tuple(exp)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(alphabet, terms)


def test_alphabet_basics():
    assert len(EVEN) == 3
    assert EVEN.degrees == (2, 4, 6)
    assert EVEN.parities == (False, False, False)
    assert MIXED.parities == (True, False, True, False)
    assert EVEN.index("c2") == 1
    assert EVEN.unit() == (0, 0, 0)
    assert EVEN.degree((2, 1, 0)) == 8


def test_polynomial_equality_and_zero_pruning():
    p = Polynomial(EVEN, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert p == gen(EVEN, "c1")
    assert Polynomial.zero(EVEN).is_zero()
    assert not Polynomial.zero(EVEN)
    assert p - p == Polynomial.zero(EVEN)
    with pytest.raises(AlphabetMismatch):
        gen(EVEN, "c1") + gen(MIXED, "b")


def test_odd_generators_square_to_zero():
    a, u = gen(MIXED, "a"), gen(MIXED, "u")
    assert (a * a).is_zero()
    assert (u * u).is_zero()
    # (a + u)^2 = au + ua = 2au?  No: |a||u| odd*odd, ua = -au, so it cancels.
    assert ((a + u) ** 2).is_zero()


def test_koszul_sign_on_odd_swap():
    a, u = gen(MIXED, "a"), gen(MIXED, "u")
    b = gen(MIXED, "b")
    assert u * a == -(a * u)
    assert a * b == b * a
    assert (a * u) * (a * u) == Polynomial.zero(MIXED)


def test_graded_commutativity_random():
    rng = random.Random(31)
    for _ in range(40):
        x = random_poly(rng, MIXED)
        y = random_poly(rng, MIXED)
        z = random_poly(rng, MIXED)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
    # sign law on homogeneous pieces
    for _ in range(40):
        x = random_poly(rng, MIXED)
        y = random_poly(rng, MIXED)
        for m in range(0, 7):
            for n in range(0, 7):
                xm, yn = x.degree_slice(m), y.degree_slice(n)
                sign = -1 if (m % 2) and (n % 2) else 1
                assert xm * yn == sign * (yn * xm)


def test_pow_degree_and_truncate():
    c1, c2 = gen(EVEN, "c1"), gen(EVEN, "c2")
    p = (c1 + c2) ** 3
    assert p.max_degree() == 12
    assert p.degree_slice(8) == 3 * c1 * c1 * c2
    assert p.truncate(7) == c1**3
    assert p.truncate(8) == c1**3 + 3 * c1 * c1 * c2
    with pytest.raises(InhomogeneousError):
        (c1 + c2).homogeneous_degree()
    assert Polynomial.zero(EVEN).homogeneous_degree() is None
    assert (c2**2).homogeneous_degree() == 8


def test_substitute_images_and_none_kills():
    c1, c2 = gen(EVEN, "c1"), gen(EVEN, "c2")
    target = GeneratorAlphabet([("t", 2)])
    t = gen(target, "t")
    # c1 -> t, c2 -> t^2, c3 -> 0
    image = (c1 * c1 + c2).substitute(target, [t, t * t, None])
    assert image == 2 * t * t
    assert (gen(EVEN, "c3")).substitute(target, [t, t * t, None]).is_zero()
    constant = Polynomial.constant(EVEN, Fraction(5, 3)).substitute(target, [t, None, None])
    assert constant == Polynomial.constant(target, Fraction(5, 3))


def test_enumerate_monomials_matches_poincare_series():
    for alphabet, bound in ((EVEN, 14), (MIXED, 9)):
        series = poincare_series(alphabet, bound)
        for m in range(bound + 1):
            monos = enumerate_monomials(alphabet, m)
            assert len(monos) == series[m]
            assert len(set(monos)) == len(monos)
            for exp in monos:
                assert alphabet.degree(exp) == m
                for e, parity in zip(exp, alphabet.parities):
                    assert e <= 1 or not parity


def test_enumerate_monomials_allowed_filter():
    monos = enumerate_monomials(EVEN, 8, allowed={0, 1})
    assert set(monos) == {(4, 0, 0), (2, 1, 0), (0, 2, 0)}
    assert enumerate_monomials(EVEN, 0) == [(0, 0, 0)]
    assert enumerate_monomials(EVEN, 1) == []


def test_slice_vector_roundtrip():
    rng = random.Random(32)
    for _ in range(20):
        p = random_poly(rng, EVEN)
        for m in range(0, p.max_degree() + 1):
            basis = enumerate_monomials(EVEN, m)
            piece = p.degree_slice(m)
            vec = degree_slice_vector(piece, m, basis)
            assert vector_to_polynomial(EVEN, vec, basis) == piece


def test_parse_examples():
    assert parse_poly("c1^2 - 2*c2", EVEN) == gen(EVEN, "c1") ** 2 - 2 * gen(EVEN, "c2")
    assert parse_poly("1/3*c1", EVEN) == Fraction(1, 3) * gen(EVEN, "c1")
    assert parse_poly("-c1 + 4", EVEN) == -gen(EVEN, "c1") + Polynomial.constant(EVEN, 4)
    assert parse_poly("7/2", EVEN) == Polynomial.constant(EVEN, Fraction(7, 2))
    assert parse_poly("c1*c2^3", EVEN) == gen(EVEN, "c1") * gen(EVEN, "c2") ** 3


def test_parse_aliases_and_format_names():
    aliases = {"e1": "c1", "e2": "c2"}
    assert parse_poly("e1^2 - 2*e2", EVEN, aliases) == parse_poly("c1^2 - 2*c2", EVEN)
    # display names are positional overrides
    p = parse_poly("c1^2 - 2*c2", EVEN)
    assert format_poly(p, names=("e1", "e2", "e3")) == "e1^2 - 2*e2"
    assert format_poly(p) == "c1^2 - 2*c2"


def test_format_parse_roundtrip_random():
    rng = random.Random(33)
    for alphabet in (EVEN, MIXED):
        for _ in range(25):
            p = random_poly(rng, alphabet)
            assert parse_poly(format_poly(p), alphabet) == p or p.is_zero()
            if p.is_zero():
                assert format_poly(p) == "0"


def test_parse_errors_name_the_token():
    with pytest.raises(ParseError) as err:
        parse_poly("c1 + $", EVEN)
    assert err.value.token == "$"
    with pytest.raises(ParseError) as err:
        parse_poly("c9", EVEN)
    assert err.value.token == "c9"
    with pytest.raises(ParseError):
        parse_poly("c1 ^", EVEN)
    with pytest.raises(ParseError):
        parse_poly("", EVEN)
    with pytest.raises(ParseError):
        parse_poly("c1 c2", EVEN)
    with pytest.raises(ParseError):
        parse_poly("1/0", EVEN)


def test_tensor_element_product_sign():
    a, u = gen(MIXED, "a"), gen(MIXED, "u")
    one = Polynomial.one(MIXED)
    au = TensorElement.tensor(a, u)
    ua = TensorElement.tensor(u, a)
    # (a x 1)(1 x u) = a x u, but (1 x u)(a x 1) picks up the sign of moving
    # u (odd) past a (odd)
    left = TensorElement.tensor(a, one) * TensorElement.tensor(one, u)
    right = TensorElement.tensor(one, u) * TensorElement.tensor(a, one)
    assert left == au
    assert right == -au
    assert au + ua - au == ua
    assert (au - au).is_zero()


def test_tensor_element_bilinear():
    rng = random.Random(34)
    for _ in range(15):
        x = random_poly(rng, MIXED)
        y = random_poly(rng, MIXED)
        z = random_poly(rng, MIXED)
        assert TensorElement.tensor(x + y, z) == TensorElement.tensor(
            x, z
        ) + TensorElement.tensor(y, z)
        assert TensorElement.tensor(x, y + z) == TensorElement.tensor(
            x, y
        ) + TensorElement.tensor(x, z)
