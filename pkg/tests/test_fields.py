import pytest
from fractions import Fraction

from hypothesis import given, strategies as st

from wittcalc import errors, fields
from wittcalc.fields import (
    basis_factors,
    canonicalize,
    finite_field,
    formal,
    hilbert_symbol,
    least_nonresidue,
    minus_one,
    orderings,
    parse_field,
    rationals,
    reals,
    signature_at,
    sq_from_json,
    sq_mul,
    sq_to_json,
)

Q = rationals()
F7 = finite_field(7)


def test_squarefree_canonicalization():
    assert canonicalize(12, Q).data == 3
    assert canonicalize(50, Q).data == 2
    assert canonicalize(-8, Q).data == -2
    assert canonicalize(Fraction(2, 3), Q).data == 6
    assert canonicalize(Fraction(-9, 4), Q).data == -1


def test_zero_has_no_square_class():
    with pytest.raises(errors.ZeroElement):
        canonicalize(0, Q)
    with pytest.raises(errors.ZeroElement):
        canonicalize(0, reals())


def test_factor_bound():
    big = (10**6 + 3) ** 2  # square of a prime above the bound
    with pytest.raises(errors.FactorLimitExceeded):
        canonicalize(big, Q)


def test_finite_field_classes():
    # squares mod 7 are {1, 2, 4}
    assert canonicalize(2, F7).data == 0
    assert canonicalize(3, F7).data == 1
    assert canonicalize(Fraction(1, 3), F7).data == 1
    assert least_nonresidue(7) == 3
    with pytest.raises(errors.BadBackend):
        finite_field(2)
    with pytest.raises(errors.BadBackend):
        finite_field(9)


def test_formal_payloads():
    f = formal(3)
    c = canonicalize((True, (2, 0)), f)
    assert c.data == (True, (0, 2))
    assert canonicalize(5, f).is_trivial()
    assert canonicalize(-5, f) == minus_one(f)
    with pytest.raises(errors.BadBackend):
        canonicalize((False, (3,)), f)


@given(st.integers(-300, 300).filter(bool), st.integers(-300, 300).filter(bool))
def test_sq_mul_matches_product(a, b):
    assert sq_mul(canonicalize(a, Q), canonicalize(b, Q)) == canonicalize(a * b, Q)


@given(st.integers(-100, 100).filter(bool))
def test_square_is_trivial(a):
    c = canonicalize(a, Q)
    assert sq_mul(c, c).is_trivial()


def test_basis_factors_multiply_back():
    for raw in (30, -42, 1, -1, 7):
        c = canonicalize(raw, Q)
        prod = fields.trivial_class(Q)
        for f in basis_factors(c):
            prod = sq_mul(prod, f)
        assert prod == c


def test_hilbert_symbol_frozen_values():
    assert hilbert_symbol(2, 5, 5) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, fields.INF) == -1
    assert hilbert_symbol(2, 7, 7) == 1
    assert hilbert_symbol(3, 3, 3) == -1  # (3,3)_3 = (3,-1)_3, -1 not a square mod 3
    assert hilbert_symbol(1, -5, 5) == 1


def test_hilbert_symbol_symmetry_and_bilinearity():
    for p in (2, 3, 5, 7, fields.INF):
        for a in (-2, 3, 5, -7):
            for b in (2, -3, 6):
                assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
                assert hilbert_symbol(a * a, b, p) == 1


def test_bad_place():
    with pytest.raises(errors.BadPlace):
        hilbert_symbol(2, 3, 4)


def test_signatures_and_orderings():
    f = formal(2)
    t0 = canonicalize((False, (0,)), f)
    assert signature_at(t0, (1, -1)) == 1
    assert signature_at(t0, (-1, 1)) == -1
    assert len(list(orderings(f))) == 4
    assert list(orderings(reals())) == [()]
    with pytest.raises(errors.OrderingLengthMismatch):
        signature_at(t0, (1,))


def test_parse_field_roundtrip():
    for text in ("q", "r", "fp:11", "formal:3"):
        assert str(parse_field(text)) == text
    with pytest.raises(errors.BadBackend):
        parse_field("c")


def test_square_class_json_roundtrip():
    for f, raw in ((Q, -6), (F7, 3), (reals(), -2), (formal(2), (True, (1,)))):
        c = canonicalize(raw, f)
        assert sq_from_json(sq_to_json(c), f) == c
