"""The approximation counter omega, the comparison quantities T(N) and
tilde-T(N), the exact Poisson identity, Dirichlet search, and the exponent
scan.

Ball bookkeeping (exact, closed-ball convention): with Delta = q^{de} the
Fourier transform of the indicator of {|y| <= q^{de}} is
q^{de+1} * indicator{|x| <= q^{-de-2}}, because the closed ball of radius
q^{de} has measure q^{de+1}.  Pushing this through Poisson summation on the
embedding lattice of an ideal with generator v gives the exact identity

  omega(a) = q^{N + 2*de + 2 - m} * sum_{p in A}
             e((x1 s1(vp) - x2 s2(vp)) / (2 sqrt d))
             * [|s1(vp)| <= q^{m - de - 2}] * [|s2(vp)| <= q^{m - de - 2}]

with m = deg(d)/2 (so |sqrt d| = q^m) and de the exponent of Delta.  The
zero-frequency (p = 0) term is the scalar q^{N + 2*de + 2 - m}; T(N) uses
the same scalar so that tilde-T/T -> 1 is the observable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fqpoly import Poly, splitmix64
from .laurent import CycSum, Laurent, PrecisionError, char_e
from .quadratic import (IdealTable, PrimeIdeal, QuadElem, QuadField,
                        enumerate_prime_ideals)
from .sieving import splitting_counts

__all__ = [
    "Target",
    "ApproxRecord",
    "ScanRow",
    "seeded_target",
    "screen_target",
    "delta_window",
    "cd_values",
    "lattice_round",
    "omega_direct",
    "omega_poisson",
    "f_cyc",
    "zero_freq_exp",
    "big_t",
    "tilde_t",
    "pnt_sum",
    "dirichlet_search",
    "exponent_scan",
]


@dataclass(frozen=True)
class Target:
    """The pair (x1, x2) in K_infinity^2 to be approximated."""

    x1: Laurent
    x2: Laurent
    provenance: str = "explicit"


@dataclass(frozen=True)
class ApproxRecord:
    """One approximation x_i ~ sigma_i(p)/sigma_i(v); error exponents are
    None for an exact hit (|error| = 0)."""

    p: QuadElem
    v: QuadElem
    err1_exp: Optional[int]
    err2_exp: Optional[int]
    quality_exp: Optional[int]  # max err exp + norm exp of v; None if exact

    @property
    def max_err_exp(self) -> Optional[int]:
        if self.err1_exp is None:
            return self.err2_exp
        if self.err2_exp is None:
            return self.err1_exp
        return max(self.err1_exp, self.err2_exp)


@dataclass(frozen=True)
class ScanRow:
    N: int
    delta_exp: int
    t_value: Fraction
    tilde_t_value: int
    prime_power_part: int
    ratio: float
    witness: Optional[ApproxRecord]
    achieved_theta: Optional[float]
    label: str


# -- targets ------------------------------------------------------------------


def seeded_target(field: QuadField, seed: int, top_exp: int = 0,
                  prec_tail: Optional[int] = None) -> Target:
    """Deterministic exact target from a splitmix64 stream: both components
    are exact Laurent values (tail None) with coefficients on
    [prec_tail, top_exp], so every ball membership below is certifiable and
    x1 != x2 guarantees the pair is not a sigma(K) image of any single
    element truncated identically."""
    q = field.q
    if prec_tail is None:
        prec_tail = -(2 * field.d.degree + 24)
    state = seed & 0xFFFFFFFFFFFFFFFF
    comps = []
    for _ in range(2):
        coeffs = []
        for _e in range(prec_tail, top_exp + 1):
            state, z = splitmix64(state)
            coeffs.append(z % q)
        comps.append(Laurent(q, prec_tail, coeffs, None))
    x1, x2 = comps
    if x1 == x2:  # vanishing-probability collision; perturb deterministically
        x2 = x2 + Laurent.monomial(q, prec_tail, 1)
    return Target(x1, x2, provenance=f"seeded({seed})")


def screen_target(field: QuadField, target: Target, max_norm_exp: int = 3) -> bool:
    """Reject targets that are exact sigma(K) images at small height (an
    exact Dirichlet hit), mirroring the (x1,x2) not in sigma(K) hypothesis.
    Returns True when the target passes."""
    if target.x1 == target.x2:
        return False
    recs = dirichlet_search(field, target, max_norm_exp, C_exp=field.m + 2)
    return all(r.max_err_exp is not None for r in recs)


# -- C/D values and rounding ----------------------------------------------------


def _inv_two_sqrt_d(field: QuadField) -> Laurent:
    cached = getattr(field, "_inv_two_sqrt_d", None)
    if cached is None:
        cached = field.sqrt_d().scale(2).inv(field.tail_exp)
        field._inv_two_sqrt_d = cached
    return cached


def cd_values(field: QuadField, a: QuadElem, target: Target) -> tuple[Laurent, Laurent]:
    """C(a) = (x1 s1(a) - x2 s2(a)) / (2 sqrt d),
    D(a) = (x1 s1(a) + x2 s2(a)) / 2."""
    q = field.q
    s1 = field.sigma_embed(a, 1)
    s2 = field.sigma_embed(a, 2)
    t1 = target.x1 * s1
    t2 = target.x2 * s2
    inv2 = pow(2, q - 2, q)
    c = (t1 - t2) * _inv_two_sqrt_d(field)
    d_val = (t1 + t2).scale(inv2)
    return c, d_val


def lattice_round(field: QuadField, target: Target, v: QuadElem) -> QuadElem:
    """The lattice point p = a + b sqrt(d) nearest to (x1 s1(v), x2 s2(v))
    componentwise: a, b are the polynomial parts of the C/D-style mixtures
    (c1 + c2)/2 and (c1 - c2)/(2 sqrt d) with c_i = x_i sigma_i(v)."""
    if v.is_zero:
        raise ValueError("zero denominator")
    q = field.q
    c1 = target.x1 * field.sigma_embed(v, 1)
    c2 = target.x2 * field.sigma_embed(v, 2)
    inv2 = pow(2, q - 2, q)
    a = (c1 + c2).scale(inv2).poly_part()
    b = ((c1 - c2) * _inv_two_sqrt_d(field)).poly_part()
    return QuadElem(field, a, b)


# -- omega -----------------------------------------------------------------------


def _delta_ball_exp(delta_exp: int, N: int) -> int:
    """Exponent of Delta = delta / q^{N/2}, floored for odd N."""
    return delta_exp - (N + 1) // 2


def _sigma_pair(field: QuadField, f: QuadElem) -> tuple[Laurent, Laurent]:
    return field.sigma_embed(f, 1), field.sigma_embed(f, 2)


def _enumerate_box(field: QuadField, r: int, cap: int):
    """All p = a + b sqrt(d) with deg a <= r, deg b <= r - m (enough to cover
    max_i |sigma_i(p)| <= q^r; ultrametric product structure, |2| = 1)."""
    from .quadratic import _enumerate_polys_upto

    q = field.q
    n_cand = q ** max(r + 1, 0) * q ** max(r - field.m + 1, 0)
    if n_cand > cap:
        raise OverflowError(f"omega box too large ({n_cand} candidates)")
    for a in _enumerate_polys_upto(q, r):
        for b in _enumerate_polys_upto(q, r - field.m):
            yield QuadElem(field, a, b)


def omega_direct(field: QuadField, v: QuadElem, target: Target,
                 delta_exp: int, N: int, cap: int = 1_000_000) -> int:
    """Exact count of p in A with |x_i - sigma_i(p)/sigma_i(v)| <= Delta for
    i = 1, 2 (Delta = q^{delta_exp - N/2}); independent of the generator."""
    de = _delta_ball_exp(delta_exp, N)
    e1 = field.sigma_abs_exp(v, 1)
    e2 = field.sigma_abs_exp(v, 2)
    c1 = target.x1 * field.sigma_embed(v, 1)
    c2 = target.x2 * field.sigma_embed(v, 2)
    p0 = lattice_round(field, target, v)
    s1_p0, s2_p0 = _sigma_pair(field, p0)
    # |sigma_i(p) - c_i| <= q^{R_i}; every candidate differs from p0 by w with
    # max_i |sigma_i(w)| <= q^{max(R1, R2, -1)}  (both residuals are < 1)
    R1 = de + e1
    R2 = de + e2
    r = max(R1, R2, -1)
    count = 0
    for w in _enumerate_box(field, r, cap):
        p = p0 + w
        d1 = (field.sigma_embed(p, 1) - c1)
        d2 = (field.sigma_embed(p, 2) - c2)
        if d1.abs_leq(R1) and d2.abs_leq(R2):
            count += 1
    # cross-check the center against direct residuals when r = -1
    if r == -1:
        ok = (s1_p0 - c1).abs_leq(R1) and (s2_p0 - c2).abs_leq(R2)
        assert count == (1 if ok else 0)
    return count


def zero_freq_exp(field: QuadField, N: int, delta_exp: int) -> int:
    """log_q of the zero-frequency scalar N(a) Delta^2 / |sqrt d| in exact
    closed-ball bookkeeping: N + 2*de + 2 - m."""
    de = _delta_ball_exp(delta_exp, N)
    return N + 2 * de + 2 - field.m


def f_cyc(field: QuadField, v: QuadElem, target: Target, delta_exp: int,
          N: int, include_zero: bool = False, cap: int = 1_000_000) -> CycSum:
    """The exact cyclotomic sum over p (nonzero unless include_zero) of
    e((x1 s1(vp) - x2 s2(vp))/(2 sqrt d)) restricted to
    |sigma_i(vp)| <= q^{m - de - 2}; the weight function of the experiment
    is the zero-frequency scalar times this value."""
    q = field.q
    de = _delta_ball_exp(delta_exp, N)
    bound = field.m - de - 2
    e1 = field.sigma_abs_exp(v, 1)
    e2 = field.sigma_abs_exp(v, 2)
    s1v = field.sigma_embed(v, 1)
    s2v = field.sigma_embed(v, 2)
    x1s = target.x1 * s1v
    x2s = target.x2 * s2v
    inv2sd = _inv_two_sqrt_d(field)
    R1 = bound - e1
    R2 = bound - e2
    r = max(R1, R2)
    out = CycSum(q)
    if r < 0:
        if include_zero:
            out.add_root(0)
        return out
    for p in _enumerate_box(field, r, cap):
        if p.is_zero:
            if include_zero:
                out.add_root(0)
            continue
        sp1, sp2 = _sigma_pair(field, p)
        if not (s1v * sp1).abs_leq(bound):
            continue
        if not (s2v * sp2).abs_leq(bound):
            continue
        phase = (x1s * sp1 - x2s * sp2) * inv2sd
        out.add_root(char_e(phase))
    return out


def omega_poisson(field: QuadField, v: QuadElem, target: Target,
                  delta_exp: int, N: int, cap: int = 1_000_000) -> int:
    """omega via the exact Poisson identity: the scalar q^{zero_freq_exp}
    times the full cyclotomic sum (including p = 0); asserts rationality and
    integrality of the reconstruction."""
    q = field.q
    total = f_cyc(field, v, target, delta_exp, N, include_zero=True, cap=cap)
    rat = total.rational_value()
    if rat is None:
        raise ArithmeticError("Poisson total is not rational: identity violated")
    e0 = zero_freq_exp(field, N, delta_exp)
    value = Fraction(rat) * Fraction(q) ** e0
    if value.denominator != 1:
        raise ArithmeticError(f"Poisson total {rat}*q^{e0} is not an integer")
    return int(value)


# -- T(N), tilde-T(N), PNT -------------------------------------------------------


def pnt_sum(field: QuadField, N: int) -> int:
    """Sum of Lambda over ideals of norm q^N, exactly: each prime ideal of
    norm exponent n dividing N contributes n (for the power p^{N/n})."""
    if N < 1:
        raise ValueError("N must be >= 1")
    total = 0
    for n in range(1, N + 1):
        if N % n != 0:
            continue
        total += n * _prime_ideal_count(field, n)
    return total


def _prime_ideal_count(field: QuadField, n: int) -> int:
    """Number of prime ideals of norm exactly q^n."""
    split, _inert, ram = splitting_counts(field.d, n)
    count = 2 * split + ram
    if n % 2 == 0:
        _s, inert_half, _r = splitting_counts(field.d, n // 2)
        count += inert_half
    return count


def big_t(field: QuadField, N: int, delta_exp: int) -> Fraction:
    """T(N): the zero-frequency scalar times the Lambda-sum over ideals of
    norm q^N, exact."""
    e0 = zero_freq_exp(field, N, delta_exp)
    return Fraction(pnt_sum(field, N)) * Fraction(field.q) ** e0


@dataclass(frozen=True)
class TildeTResult:
    value: int
    prime_power_part: int        # the r >= 2 contribution, reported separately
    witnesses: list


def tilde_t(field: QuadField, N: int, target: Target, delta_exp: int,
            primes: Optional[list[PrimeIdeal]] = None,
            use_poisson: bool = False, cap: int = 1_000_000) -> TildeTResult:
    """tilde-T(N) = sum over prime powers p^r of norm q^N of
    Lambda * omega, with witnesses for every prime (r = 1) ideal whose
    omega is positive."""
    if primes is None:
        primes = enumerate_prime_ideals(field, N)
    total = 0
    power_part = 0
    witnesses = []
    omega_fn = omega_poisson if use_poisson else omega_direct
    for pi in primes:
        n = pi.norm_exp
        if n > N or N % n != 0:
            continue
        r = N // n
        gen = pi.rep.gen
        g = gen
        for _ in range(r - 1):
            g = g * gen
        w = omega_fn(field, g, target, delta_exp, N, cap=cap)
        if w:
            total += n * w
            if r >= 2:
                power_part += n * w
            else:
                p_approx = lattice_round(field, target, g)
                witnesses.append(_make_record(field, target, p_approx, g))
    return TildeTResult(total, power_part, witnesses)


# -- Dirichlet search -------------------------------------------------------------


def _err_exp(field: QuadField, target: Target, p: QuadElem, v: QuadElem,
             which: int) -> Optional[int]:
    """Exponent of |x_i - sigma_i(p)/sigma_i(v)| (None for exact zero):
    computed as |x_i sigma_i(v) - sigma_i(p)| / |sigma_i(v)| without division."""
    x = target.x1 if which == 1 else target.x2
    sv = field.sigma_embed(v, which)
    sp = field.sigma_embed(p, which)
    num = x * sv - sp
    e = num.abs_exp()
    if e is None:
        return None
    ev = field.sigma_abs_exp(v, which)
    return e - ev


def _make_record(field: QuadField, target: Target, p: QuadElem,
                 v: QuadElem) -> ApproxRecord:
    e1 = _err_exp(field, target, p, v, 1)
    e2 = _err_exp(field, target, p, v, 2)
    if e1 is None and e2 is None:
        quality = None
    else:
        worst = max(x for x in (e1, e2) if x is not None)
        quality = worst + v.norm_exp
    return ApproxRecord(p, v, e1, e2, quality)


def dirichlet_search(field: QuadField, target: Target, max_norm_exp: int,
                     C_exp: int) -> list[ApproxRecord]:
    """For every canonical denominator v (one per ideal of norm up to
    q^max_norm_exp), round the target and keep the pairs achieving
    max_i |x_i - sigma_i(p)/sigma_i(v)| <= q^{C_exp} / N(v); sorted by
    quality (best first)."""
    table = IdealTable(field, max_norm_exp)
    out = []
    for entry in table.entries:
        v = entry.rep.gen
        p = lattice_round(field, target, v)
        rec = _make_record(field, target, p, v)
        if rec.max_err_exp is None or rec.max_err_exp <= C_exp - entry.norm_exp:
            out.append(rec)
    out.sort(key=lambda rec: (rec.quality_exp is not None, rec.quality_exp or 0))
    # exact hits (quality None) first, then ascending quality
    exact = [rec for rec in out if rec.quality_exp is None]
    rest = sorted((rec for rec in out if rec.quality_exp is not None),
                  key=lambda rec: rec.quality_exp)
    return exact + rest


# -- exponent scan ----------------------------------------------------------------


def delta_window(q: int, N: int, epsilon: float) -> tuple[float, float, bool]:
    """The admissible delta-exponent window
    [-(1/8 - log_q sqrt 2 - 2 eps) N, -(log_q 2 + 2 eps) N] and whether it is
    nonempty (requires roughly q > 2^12)."""
    lo = -(0.125 - math.log(math.sqrt(2), q) - 2 * epsilon) * N
    hi = -(math.log(2, q) + 2 * epsilon) * N
    return lo, hi, lo <= hi


def scan_delta_exp(q: int, N: int, epsilon: float,
                   fallback_exp: Optional[int] = None) -> tuple[int, str]:
    """delta exponent for the scan: the theorem-range choice when the window
    is nonempty, otherwise the fallback -floor(N/8) labeled as outside the
    theorem range."""
    lo, hi, ok = delta_window(q, N, epsilon)
    if ok and math.ceil(lo) <= math.floor(hi):
        e = -math.ceil((0.125 - math.log(math.sqrt(2), q) - 2 * epsilon) * N)
        e = min(max(e, math.ceil(lo)), math.floor(hi))
        return int(e), "in-theorem-range"
    if fallback_exp is None:
        fallback_exp = -(N // 8)
    return fallback_exp, "outside-theorem-range"


def exponent_scan(field: QuadField, target: Target, n_values,
                  epsilon: float = 0.01,
                  fallback_exp: Optional[int] = None,
                  cap: int = 1_000_000,
                  fast_threshold: int = 2_000) -> list[ScanRow]:
    """The main experiment: for each N compute T(N), tilde-T(N) at the
    chosen delta, the ratio, a best witness, and the achieved Dirichlet
    exponent theta-hat = -(max err exp)/N - 1/2."""
    rows = []
    for N in n_values:
        de, label = scan_delta_exp(field.q, N, epsilon, fallback_exp)
        if N % 2 == 1:
            label += ";odd-N-floor"
        t_val = big_t(field, N, de)
        if field.q**N > fast_threshold:
            from .fastscan import fast_tilde_t
            res = fast_tilde_t(field, N, target, de)
        else:
            res = tilde_t(field, N, target, de, cap=cap)
        ratio = float(Fraction(res.value) / t_val) if t_val else float("nan")
        witness = None
        theta = None
        best = None
        for rec in res.witnesses:
            key = rec.max_err_exp
            if key is None:
                witness, theta = rec, float("inf")
                break
            if best is None or key < best:
                best = key
                witness = rec
                theta = -key / N - 0.5
        rows.append(ScanRow(N, de, t_val, res.value, res.prime_power_part,
                            ratio, witness, theta, label))
    return rows
