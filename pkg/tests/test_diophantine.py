"""Approximation counting and the exponent scan.

The load-bearing dual routes, kept independent on purpose:
  * omega_direct (lattice enumeration) vs omega_poisson (cyclotomic identity),
  * tilde_t (exact, per-ideal) vs fast_tilde_t (vectorized kernel counting).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realquad.fqpoly import Poly, splitmix64
from realquad.laurent import Laurent
from realquad.quadratic import IdealTable, QuadField, enumerate_prime_ideals
from realquad.diophantine import (Target, big_t, delta_window,
                                  dirichlet_search, exponent_scan,
                                  lattice_round, omega_direct, omega_poisson,
                                  pnt_sum, scan_delta_exp, screen_target,
                                  seeded_target, tilde_t, zero_freq_exp)
from realquad.fastscan import fast_tilde_t


@pytest.fixture(scope="module")
def f3():
    return QuadField(3, Poly.parse(3, "1,0,1"))


@pytest.fixture(scope="module")
def f5():
    return QuadField(5, Poly.parse(5, "2,0,1"))


# -- targets ------------------------------------------------------------------


def test_seeded_target_deterministic(f3):
    t1 = seeded_target(f3, 42)
    t2 = seeded_target(f3, 42)
    assert t1.x1 == t2.x1 and t1.x2 == t2.x2
    t3 = seeded_target(f3, 43)
    assert t3.x1 != t1.x1 or t3.x2 != t1.x2
    assert t1.x1.tail is None  # exact values: every ball query certifiable
    assert t1.x1 != t1.x2


def test_screen_rejects_sigma_image(f3):
    v = f3.elem(Poly.parse(3, "1,1"), Poly.const(3, 1))
    s1 = f3.sigma_embed(v, 1)
    s2 = f3.sigma_embed(v, 2)
    inv_n = Laurent.from_poly(v.norm()).inv(f3.tail_exp)
    # (s2/N, s1/N) = (1/s1, 1/s2): an exact sigma(K) image
    x1 = s2 * inv_n
    x2 = s1 * inv_n
    exact1 = Laurent(3, x1.tail, tuple(x1.coeffs), None)
    exact2 = Laurent(3, x2.tail, tuple(x2.coeffs), None)
    # the exact truncation is no longer the precise image, so only the
    # equal-components degenerate case must be rejected unconditionally
    assert not screen_target(f3, Target(exact1, exact1))


# -- omega: dual route and structure ---------------------------------------------


@pytest.mark.parametrize("de", [0, -1, -2])
def test_omega_poisson_equals_direct(f3, de):
    tgt = seeded_target(f3, 7)
    for pi in enumerate_prime_ideals(f3, 3):
        N = pi.norm_exp
        v = pi.rep.gen
        assert omega_direct(f3, v, tgt, de, N) == \
            omega_poisson(f3, v, tgt, de, N)


def test_omega_generator_invariance(f3):
    tgt = seeded_target(f3, 11)
    u = f3.unit.u
    for pi in enumerate_prime_ideals(f3, 3):
        N = pi.norm_exp
        v = pi.rep.gen
        vals = {omega_direct(f3, g, tgt, -1, N)
                for g in f3.canonical_generators(v)}
        vals.add(omega_direct(f3, u * v, tgt, -1, N))
        assert len(vals) == 1


def test_omega_planted_target_hits(f3):
    """A target manufactured as sigma(p)/sigma(v) (exactly, at finite
    precision) must be approximable by that very pair: omega >= 1 at the
    permissive delta."""
    v = f3.elem(Poly.parse(3, "1,1"), Poly.const(3, 1))
    p = f3.elem(Poly.parse(3, "2,1"), Poly.const(3, 2))
    prec = -24
    x1 = f3.sigma_embed(p, 1).div(f3.sigma_embed(v, 1), prec)
    x2 = f3.sigma_embed(p, 2).div(f3.sigma_embed(v, 2), prec)
    tgt = Target(Laurent(3, x1.tail, tuple(x1.coeffs), None),
                 Laurent(3, x2.tail, tuple(x2.coeffs), None))
    N = v.norm_exp
    assert omega_direct(f3, v, tgt, 0, N) >= 1
    p0 = lattice_round(f3, tgt, v)
    assert p0 == p


def test_zero_freq_scaling(f3):
    # moves by 2 per delta step; for even N the N-dependence cancels against
    # the N/2 ball normalization
    assert zero_freq_exp(f3, 4, -1) - zero_freq_exp(f3, 4, -2) == 2
    assert zero_freq_exp(f3, 6, -1) == zero_freq_exp(f3, 4, -1)
    # odd N uses the floored half-exponent
    assert zero_freq_exp(f3, 5, -1) == zero_freq_exp(f3, 4, -1) - 1


# -- prime sums --------------------------------------------------------------------


@pytest.mark.parametrize("fix", ["f3", "f5"])
def test_pnt_sum_genus_zero(fix, request):
    field = request.getfixturevalue(fix)
    for N in range(1, 7):
        assert abs(pnt_sum(field, N) - field.q**N) <= 2


def test_big_t_value(f3):
    assert big_t(f3, 4, -1) == Fraction(pnt_sum(f3, 4)) * \
        Fraction(3) ** zero_freq_exp(f3, 4, -1)


def test_tilde_t_uniform_degeneration(f3):
    """At delta_exp = 0 and even N the omega weight is constant q on every
    ideal, so tilde-T = q * pnt-type sum exactly."""
    tgt = seeded_target(f3, 5)
    res = tilde_t(f3, 2, tgt, 0)
    assert res.value == 3 * pnt_sum(f3, 2)


# -- fast path vs exact slow path ---------------------------------------------------


@pytest.mark.parametrize("q,d_text", [(3, "1,0,1"), (5, "2,0,1")])
def test_fast_tilde_t_matches_slow(q, d_text):
    field = QuadField(q, Poly.parse(q, d_text))
    for seed in (1, 9):
        tgt = seeded_target(field, seed)
        for N in (2, 3, 4, 5):
            for de in (0, -1, -2):
                slow = tilde_t(field, N, tgt, de)
                fast = fast_tilde_t(field, N, tgt, de)
                assert slow.value == fast.value, (q, seed, N, de)
                assert slow.prime_power_part == fast.prime_power_part


def test_fast_tilde_t_witness_recheck(f5):
    tgt = seeded_target(f5, 3)
    res = fast_tilde_t(f5, 6, tgt, -1)
    for w in res.witnesses:
        assert omega_direct(f5, w.v, tgt, -1, 6) >= 1


def test_fast_path_requires_scan_regime(f3):
    tgt = seeded_target(f3, 1)
    with pytest.raises(ValueError):
        fast_tilde_t(f3, 4, tgt, 1)  # delta_exp > 0 is not the scan regime


# -- Dirichlet search ----------------------------------------------------------------


def test_dirichlet_search_qualities(f3):
    tgt = seeded_target(f3, 13)
    c_exp = f3.m + f3.unit.abs_exp
    recs = dirichlet_search(f3, tgt, 5, c_exp)
    assert recs, "no record within the default constant"
    for r in recs:
        if r.max_err_exp is not None:
            assert r.max_err_exp <= c_exp - r.v.norm_exp
    qualities = [r.quality_exp for r in recs if r.quality_exp is not None]
    assert qualities == sorted(qualities)


def test_dirichlet_best_improves_with_bound(f3):
    for seed in (2, 4, 6):
        tgt = seeded_target(f3, seed)
        c_exp = f3.m + f3.unit.abs_exp
        prev = None
        for bound in (3, 4, 5):
            recs = dirichlet_search(f3, tgt, bound, c_exp)
            assert recs
            best = recs[0].quality_exp
            key = float("-inf") if best is None else best
            if prev is not None:
                assert key <= prev
            prev = key


# -- scan ------------------------------------------------------------------------------


def test_delta_window_empty_small_q():
    # nonempty needs 1/8 >= (3/2) log_q 2 + 4 eps: q > 2^12 and eps tiny
    assert not delta_window(3, 8, 0.01)[2]
    assert not delta_window(4099, 8, 0.01)[2]   # eps too large at q = 2^12+3
    assert delta_window(4099, 8, 1e-6)[2]       # barely open just above 2^12
    assert not delta_window(4093, 8, 1e-9)[2]   # barely closed just below


def test_scan_delta_exp_labels():
    de, label = scan_delta_exp(3, 8, 0.01)
    assert label == "outside-theorem-range" and de == -1
    # a real-nonempty window with no integer exponent must also fall back
    de_4099, label_4099 = scan_delta_exp(4099, 16, 1e-6)
    assert label_4099 == "outside-theorem-range"
    # far above the threshold the window holds an integer exponent
    de_big, label_big = scan_delta_exp(2**20 + 7, 16, 0.001)
    assert label_big == "in-theorem-range" and de_big == -1


def test_exponent_scan_rows(f3):
    tgt = seeded_target(f3, 8)
    rows = exponent_scan(f3, tgt, [1, 2, 3, 4])
    assert [r.N for r in rows] == [1, 2, 3, 4]
    for r in rows:
        assert r.tilde_t_value >= 0
        assert "outside-theorem-range" in r.label
        if r.N % 2 == 1:
            assert "odd-N-floor" in r.label
        if r.witness is not None:
            assert r.achieved_theta is not None
            # witness errors rechecked from scratch
            w = omega_direct(f3, r.witness.v, tgt, r.delta_exp, r.N)
            assert w >= 1
