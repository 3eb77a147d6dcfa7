"""Laurent series in 1/T with explicit tail precision, and exact cyclotomic
sums.  Oracles: multiply-back for inversion, squaring for square roots,
complex evaluation for CycSum magnitudes."""

import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from realquad.fqpoly import Poly
from realquad.laurent import (CycSum, Laurent, PrecisionError, char_e,
                              cyc_reduce, sqrt_of_poly)


def L(lo, coeffs, tail=None, q=3):
    return Laurent(q, lo, tuple(coeffs), tail)


@st.composite
def laurents(draw, q=3, exact=False):
    lo = draw(st.integers(-6, 3))
    n = draw(st.integers(1, 6))
    coeffs = [draw(st.integers(0, q - 1)) for _ in range(n)]
    if exact:
        return Laurent(q, lo, tuple(coeffs), None)
    tail = draw(st.one_of(st.none(), st.just(lo)))
    return Laurent(q, lo, tuple(coeffs), tail)


# -- absolute value and ultrametric --------------------------------------------


def test_abs_exp_basic():
    x = L(-2, [1, 0, 2])  # 2 T^0 + 0 T^-1 + 1 T^-2, exact
    assert x.abs_exp() == 0
    assert x.coeff_at(-2) == 1 and x.coeff_at(5) == 0
    assert Laurent.zero(3).abs_exp() is None


@settings(max_examples=200)
@given(laurents(exact=True), laurents(exact=True))
def test_ultrametric_inequality(x, y):
    s = x + y
    es = s.abs_exp()
    ex, ey = x.abs_exp(), y.abs_exp()
    bound = max(e for e in (ex, ey) if e is not None) \
        if (ex is not None or ey is not None) else None
    if es is not None:
        assert bound is not None and es <= bound
    if ex is not None and ey is not None and ex != ey:
        assert es == max(ex, ey)  # equality when absolute values differ


@settings(max_examples=200)
@given(laurents(exact=True), laurents(exact=True))
def test_mul_abs_multiplicative(x, y):
    p = x * y
    ex, ey = x.abs_exp(), y.abs_exp()
    if ex is None or ey is None:
        assert p.abs_exp() is None
    else:
        assert p.abs_exp() == ex + ey


def test_precision_error_on_uncertifiable_query():
    # stored coefficients above e are zero but the tail hides exponents <= e
    x = L(-1, [0, 0, 1], tail=-1)  # T^1 + unknown below T^-1... stored 0s at 0,-1
    x = Laurent(3, -3, (0, 0, 0, 1), -3)  # 1*T^0, zeros at -1..-3, tail -3
    y = x - Laurent.const(3, 1)    # all stored coeffs zero, tail -3
    with pytest.raises(PrecisionError):
        y.abs_leq(-5)              # cannot certify below the tail
    assert y.abs_leq(-3)           # certifiable: |y| <= 3^-3 is guaranteed?


def test_abs_leq_certifiable_cases():
    x = L(-2, [1, 2], tail=-2)     # 2 T^-1 + 1 T^-2, known through tail -2
    assert x.abs_leq(-1)
    assert not x.abs_leq(-2)       # the -1 coefficient is nonzero
    exact = L(-2, [1, 2], tail=None)
    assert not exact.abs_leq(-3)
    assert exact.abs_leq(-1)


def test_mul_tail_soundness():
    # the product's certified coefficients agree with the exact product
    x_ex = L(-4, [1, 0, 2, 1, 0, 1, 2])
    y_ex = L(-3, [2, 1, 0, 1])
    x_tr = x_ex.truncate(-2)
    y_tr = y_ex.truncate(-2)
    p_ex = x_ex * y_ex
    p_tr = x_tr * y_tr
    assert p_tr.tail is not None
    for e in range(p_tr.tail, p_tr.top_exp + 3):
        if e >= p_tr.tail:
            assert p_tr.coeff_at(e) == p_ex.coeff_at(e), e


def test_inv_multiply_back():
    for coeffs, lo in [((1, 2), 0), ((2, 1, 1), -1), ((1,), 2)]:
        x = L(lo, coeffs)
        xi = x.inv(-12)
        prod = x * xi
        assert prod.coeff_at(0) == 1
        for e in range(-8, 6):
            if e != 0:
                assert prod.coeff_at(e) == 0, e


def test_parse_format_roundtrip():
    x = Laurent.parse(3, "1:2,0,1:-1")
    assert x.top_exp == 1 and x.coeff_at(1) == 2 and x.coeff_at(-1) == 1
    assert Laurent.parse(3, x.format()) == x


def test_poly_frac_split():
    x = L(-2, [2, 1, 0, 2])  # 2T + T^-1 + 2T^-2 exact
    p = x.poly_part()
    f = x.frac_part()
    assert p == Poly(3, (0, 2))
    assert f.coeff_at(-1) == 1 and f.coeff_at(-2) == 2
    assert Laurent.from_poly(p) + f == x


# -- square roots ----------------------------------------------------------------


@pytest.mark.parametrize("q,d_text", [(3, "1,0,1"), (5, "2,0,1"),
                                      (3, "1,0,1,0,1"), (5, "1,2,3,0,0,0,1")])
def test_sqrt_squares_back(q, d_text):
    d = Poly.parse(q, d_text)
    if d.degree % 2:
        pytest.skip("odd degree")
    s = sqrt_of_poly(d, -20)
    sq = s * s
    dl = Laurent.from_poly(d)
    for e in range(-15, d.degree + 1):
        assert sq.coeff_at(e) == dl.coeff_at(e), e


def test_char_e_is_additive():
    x = L(-3, [1, 2, 0, 1])
    y = L(-2, [2, 2, 1])
    assert char_e(x + y) == (char_e(x) + char_e(y)) % 3


# -- cyclotomic sums ----------------------------------------------------------------


def test_cycsum_rationality_and_value():
    s = CycSum(3)
    for j in range(3):
        s.add_root(j)
    assert s.is_rational() and s.rational_value() == 0
    t = CycSum(3)
    t.add_root(0, 5)
    assert t.rational_value() == 5
    u = CycSum(3)
    u.add_root(1)
    assert not u.is_rational()


def test_cycsum_magnitude_vs_complex_oracle():
    import random
    rng = random.Random(42)
    for q in (3, 5):
        for _ in range(25):
            s = CycSum(q)
            z = 0j
            for j in range(q):
                k = rng.randint(-4, 4)
                s.add_root(j, k)
                z += k * cmath.exp(2j * cmath.pi * j / q)
            assert math.isclose(s.magnitude(), abs(z),
                                rel_tol=1e-9, abs_tol=1e-9)


def test_cyc_reduce_consistency():
    s = CycSum(5)
    s.add_root(2, 3)
    s.add_root(0, 1)
    nf, rat, mag = cyc_reduce(s)
    assert rat is None  # not rational
    assert math.isclose(mag, s.magnitude(), rel_tol=1e-12)
    t = CycSum(5)
    for j in range(5):
        t.add_root(j, 7)
    _nf, rat7, _ = cyc_reduce(t)
    assert rat7 == 0
