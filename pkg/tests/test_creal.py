from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import sqrt_enclosure_bisect
from pinvkit import creal
from pinvkit.creal import Comparison, CRealSeq, NonzeroWitness
from pinvkit.dyadic import pow2, sqrt_within
from pinvkit.errors import PreconditionError, WitnessError


def err_bound(k):
    return pow2(-k)


def test_constant_representation():
    x = creal.from_rational(Fraction(1, 3))
    assert x.approx(10) == Fraction(1, 3)
    assert creal.from_rational(0).approx(17) == 0
    assert creal.from_rational(Fraction(-7, 2)).approx(0) == Fraction(-7, 2)


def test_add_stays_in_bound():
    s = creal.add(creal.from_rational(Fraction(1, 3)), creal.from_rational(Fraction(1, 6)))
    assert abs(s.approx(5) - Fraction(1, 2)) <= err_bound(5)


def test_abs_of_negative_constant():
    a = creal.abs_(creal.from_rational(-2))
    for k in (0, 3, 20):
        assert a.approx(k) == 2


def test_div_with_witness():
    third = creal.from_rational(Fraction(1, 3))
    w = creal.find_nonzero_witness(third, 8)
    q = creal.div(creal.from_rational(1), third, w)
    assert abs(q.approx(20) - 3) <= err_bound(20)


def test_div_requires_witness():
    with pytest.raises(WitnessError):
        creal.div(creal.from_rational(1), creal.from_rational(Fraction(1, 3)))


def test_witness_search_fails_on_zero():
    with pytest.raises(WitnessError):
        creal.find_nonzero_witness(creal.from_rational(0), 12)


def test_witness_refuted_when_claim_is_wrong():
    with pytest.raises(WitnessError):
        creal.check_witness(creal.from_rational(0), NonzeroWitness(5))


def test_sqrt_perfect_square():
    r = creal.sqrt(creal.from_rational(4))
    for k in (0, 5, 30):
        assert abs(r.approx(k) - 2) <= err_bound(k)


def test_sqrt_of_two_against_bisection_oracle():
    r = creal.sqrt(creal.from_rational(2))
    for k in (5, 10, 25):
        lo, hi = sqrt_enclosure_bisect(Fraction(2), k + 4)
        approx = r.approx(k)
        assert lo - err_bound(k) <= approx <= hi + err_bound(k)
        assert sqrt_within(approx, Fraction(2), err_bound(k))


def test_sqrt_at_zero_boundary():
    r = creal.sqrt(creal.from_rational(0))
    for k in (0, 10, 40):
        assert abs(r.approx(k)) <= err_bound(k)


def test_sqrt_rejects_certified_negative():
    r = creal.sqrt(creal.from_rational(-1))
    with pytest.raises(PreconditionError):
        r.approx(4)


def test_effective_limit_of_shifted_harmonic():
    seq = CRealSeq(
        approx2=lambda n, k: Fraction(1, n + 1) + pow2(-k),
        modulus=lambda n, N: N + 1,
    )
    member = creal.effective_limit(seq)
    assert abs(member(1).approx(8) - Fraction(1, 2)) <= err_bound(8)
    assert abs(member(3).approx(20) - Fraction(1, 4)) <= err_bound(20)


def test_effective_limit_of_constant_table():
    seq = CRealSeq(approx2=lambda n, k: Fraction(3), modulus=lambda n, N: 0)
    member = creal.effective_limit(seq)
    for k in (0, 7, 33):
        assert member(5).approx(k) == 3


def test_effective_limit_of_quadratic_fixed_point_iteration():
    # Scalar version of the pseudoinverse iteration: t <- t (2 - t) from
    # t = 1/2 converges to 1 with error (1/2)^(2^k), so e(n, N) counts the
    # squarings needed for 2^k >= N.
    def iterate(n, k):
        t = Fraction(1, 2)
        for _ in range(k):
            t = t * (2 - t)
        return t

    seq = CRealSeq(approx2=iterate, modulus=lambda n, N: max(1, N.bit_length()))
    member = creal.effective_limit(seq)
    for k in (3, 10, 30):
        assert abs(member(0).approx(k) - 1) <= err_bound(k)


def test_compare_separated_values():
    x = creal.from_rational(Fraction(1, 3))
    y = creal.from_rational(Fraction(1, 3) + pow2(-10))
    out = creal.compare_witness(x, y, 12)
    assert out == Comparison("Less", 12)


def test_compare_equal_values_never_separates():
    x = creal.from_rational(5)
    for n in (0, 4, 16, 40):
        assert creal.compare_witness(x, x, n).tag == "Indistinguishable"


def test_compare_zero_one():
    out = creal.compare_witness(creal.from_rational(0), creal.from_rational(1), 0)
    assert out.tag == "Less"


# -- property tests ----------------------------------------------------------

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=64)


def op_trees(depth):
    """(expression CReal, exact Fraction value) pairs with div kept safe."""
    base = rationals.map(lambda q: (creal.from_rational(q), q))
    if depth == 0:
        return base
    sub = op_trees(depth - 1)

    def combine(args):
        op, (x, xv), (y, yv) = args
        if op == "add":
            return creal.add(x, y), xv + yv
        if op == "sub":
            return creal.sub(x, y), xv - yv
        if op == "mul":
            return creal.mul(x, y), xv * yv
        if op == "max":
            return creal.max_(x, y), max(xv, yv)
        return creal.min_(x, y), min(xv, yv)

    def unary(args):
        op, (x, xv) = args
        if op == "abs":
            return creal.abs_(x), abs(xv)
        return creal.neg(x), -xv

    return st.one_of(
        base,
        st.tuples(st.sampled_from(["add", "sub", "mul", "max", "min"]), sub, sub).map(combine),
        st.tuples(st.sampled_from(["abs", "neg"]), sub).map(unary),
    )


@settings(max_examples=60, deadline=None)
@given(op_trees(depth=4), st.integers(min_value=0, max_value=40))
def test_modulus_soundness_of_op_trees(tree, k):
    x, exact = tree
    assert abs(x.approx(k) - exact) <= err_bound(k)


@settings(max_examples=40, deadline=None)
@given(op_trees(depth=3))
def test_enclosures_share_a_common_point(tree):
    x, exact = tree
    lo = Fraction(-(10**9))
    hi = Fraction(10**9)
    for k in range(0, 24, 3):
        a = x.approx(k)
        lo = max(lo, a - err_bound(k))
        hi = min(hi, a + err_bound(k))
    assert lo <= exact <= hi


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, st.integers(min_value=0, max_value=24))
def test_compare_never_lies(p, q, n):
    out = creal.compare_witness(creal.from_rational(p), creal.from_rational(q), n)
    if out.tag == "Less":
        assert p < q
    elif out.tag == "Greater":
        assert p > q
    else:
        assert abs(p - q) <= pow2(-n + 2)


@settings(max_examples=30, deadline=None)
@given(rationals, st.integers(min_value=0, max_value=30))
def test_limit_of_constant_tail_agrees_with_value(q, k):
    seq = CRealSeq(approx2=lambda n, j: q, modulus=lambda n, N: 0)
    member = creal.effective_limit(seq)
    assert abs(member(0).approx(k) - q) <= err_bound(k)


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=0, max_value=50, max_denominator=99), st.integers(min_value=0, max_value=30))
def test_sqrt_soundness_random(q, k):
    r = creal.sqrt(creal.from_rational(q))
    assert sqrt_within(r.approx(k), q, err_bound(k))


def test_concurrent_queries_are_consistent():
    from concurrent.futures import ThreadPoolExecutor

    calls = []

    def fn(k):
        calls.append(k)
        return Fraction(1, 3)

    x = creal.CReal(fn)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: x.approx(12), range(64)))
    assert all(r == Fraction(1, 3) for r in results)
    # Memoization is observationally transparent: repeated queries at the
    # same precision keep returning the first computed value.
    assert x.approx(12) == Fraction(1, 3)


def test_decimal_rendering_annotates_radius():
    text = creal.decimal_string(Fraction(5, 2), Fraction(1, 1 << 16))
    assert text.startswith("2.5000000000")
    assert "± 2^-" in text
    wide = creal.decimal_string(Fraction(1, 3), Fraction(1))
    assert wide.endswith("± 2^-0")
