"""Vaughan's identity for F_q[T] and for ideals, and the type-I/type-II
sums of the experiment.

Degrees play the role of logarithms (log_q |f| = deg f), so the polynomial
identity is between exact integers.  In the ideal form, alpha and beta are
arbitrary positive integers compared against norms as printed (not forced
to be q-powers), with the printed strict/weak inequalities kept exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .fqpoly import Poly, factorize, mangoldt_poly, mobius_poly, poly_key
from .laurent import CycSum
from .quadratic import IdealEntry, IdealTable, QuadField
from .diophantine import Target, f_cyc, zero_freq_exp

__all__ = [
    "VaughanParams",
    "vaughan_terms_poly",
    "vaughan_terms_ideal",
    "h_value",
    "type_sums",
    "TypeSumsResult",
]


@dataclass(frozen=True)
class VaughanParams:
    """Thresholds: degree thresholds in the polynomial form, norm thresholds
    in the ideal form."""

    alpha: int
    beta: int

    def check_poly(self, f: Poly) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha, beta must be non-negative")
        if not (self.beta < f.degree):
            raise ValueError("requires beta < deg f")

    def check_ideal(self, norm: int) -> None:
        if self.alpha < 1 or self.beta < 1:
            raise ValueError("alpha, beta must be positive")
        if not (self.beta < norm):
            raise ValueError("requires beta < N(f)")


# -- polynomial form ---------------------------------------------------------


@lru_cache(maxsize=None)
def _monic_divisors(f: Poly) -> list[Poly]:
    _unit, factors = factorize(f)
    divs = [Poly.const(f.q, 1)]
    for p, e in factors:
        new = []
        for d in divs:
            cur = d
            for _ in range(e + 1):
                new.append(cur)
                cur = cur * p
        divs = new
    divs.sort(key=poly_key)
    return divs


def vaughan_terms_poly(f: Poly, params: VaughanParams) -> tuple[int, int, int]:
    """(a1, a2, a3) with a1 + a2 + a3 = Lambda(f), exactly:
    a1 = -sum_{nml=f, deg m<=alpha, deg l<=beta} mu(m) Lambda(l),
    a2 =  sum_{ln=f, deg l<=alpha} mu(l) deg(n),
    a3 = -sum_{mn=f, deg m>beta, deg n>0} Lambda(m) sum_{d|n, deg d<=alpha} mu(d).
    """
    if f.is_zero or not f.is_monic:
        raise ValueError("f must be monic nonzero")
    params.check_poly(f)
    alpha, beta = params.alpha, params.beta
    divs = _monic_divisors(f)
    mu = {d.coeffs: mobius_poly(d) for d in divs}
    lam = {d.coeffs: mangoldt_poly(d) if d.degree > 0 else 0 for d in divs}

    a1 = 0
    for m in divs:
        if m.degree > alpha or mu[m.coeffs] == 0:
            continue
        rest = f // m
        for l in _monic_divisors(rest):
            if l.degree <= beta:
                a1 -= mu[m.coeffs] * mangoldt_poly(l) if l.degree > 0 else 0
    a2 = 0
    for l in divs:
        if l.degree <= alpha and mu[l.coeffs] != 0:
            a2 += mu[l.coeffs] * (f.degree - l.degree)
    a3 = 0
    for m in divs:
        n = f // m
        if m.degree > beta and n.degree > 0 and lam[m.coeffs]:
            h = sum(mu[d.coeffs] for d in _monic_divisors(n) if d.degree <= alpha)
            a3 -= lam[m.coeffs] * h
    return a1, a2, a3


# -- ideal form ---------------------------------------------------------------


def _fvec_sub(f, g) -> Optional[tuple]:
    out = []
    gd = dict(g)
    for i, e in f:
        r = e - gd.pop(i, 0)
        if r < 0:
            return None
        if r > 0:
            out.append((i, r))
    if gd:
        return None
    return tuple(out)


def h_value(table: IdealTable, entry: IdealEntry, alpha: int) -> int:
    """H(n) = sum over divisors d | n with N(d) <= alpha of mu(d)."""
    total = 0
    for dv in table.divisors(entry):
        if table.field.q**dv.norm_exp <= alpha:
            total += table.mobius(dv)
    return total


def vaughan_terms_ideal(table: IdealTable, entry: IdealEntry,
                        params: VaughanParams) -> tuple[int, int, int]:
    """The three ideal sums with norm thresholds; a1+a2+a3 = Lambda exactly."""
    q = table.field.q
    params.check_ideal(q**entry.norm_exp)
    alpha, beta = params.alpha, params.beta
    divisors = table.divisors(entry)

    a1 = 0
    for m in divisors:
        if q**m.norm_exp > alpha:
            continue
        mu_m = table.mobius(m)
        if mu_m == 0:
            continue
        rest_vec = _fvec_sub(entry.fvec, m.fvec)
        rest = table.by_fvec[rest_vec]
        for l in table.divisors(rest):
            if q**l.norm_exp <= beta:
                a1 -= mu_m * table.mangoldt(l)
    a2 = 0
    for l in divisors:
        if q**l.norm_exp <= alpha:
            a2 += table.mobius(l) * (entry.norm_exp - l.norm_exp)
    a3 = 0
    for m in divisors:
        if q**m.norm_exp <= beta:
            continue
        lam_m = table.mangoldt(m)
        if lam_m == 0:
            continue
        n_vec = _fvec_sub(entry.fvec, m.fvec)
        n = table.by_fvec[n_vec]
        if n.norm_exp == 0:
            continue
        a3 -= lam_m * h_value(table, n, alpha)
    return a1, a2, a3


# -- type sums -----------------------------------------------------------------


@dataclass
class TypeSumsResult:
    t_one: float                  # T_I magnitude (with the log_q(alpha beta) factor)
    t_two: float                  # T_II magnitude
    scalar_exp: int               # log_q of the carried zero-frequency scalar
    decomposition: CycSum         # S1 + S2 + S3, exact (scalar factored out)
    direct: CycSum                # sum Lambda(f) * F(f) / scalar, exact
    n_f_evaluations: int

    @property
    def decomposition_exact(self) -> bool:
        return self.decomposition == self.direct


def type_sums(field: QuadField, table: IdealTable, N: int,
              params: VaughanParams, target: Target, delta_exp: int,
              cap: int = 1_000_000) -> TypeSumsResult:
    """T_I and T_II of the breaking proposition specialized to X = q^N with
    the experiment's weight F (zero outside norm q^N), plus the exact
    decomposition check sum Lambda*F = S1 + S2 + S3 with the q-power scalar
    carried symbolically."""
    q = field.q
    alpha, beta = params.alpha, params.beta
    X = q**N
    if not (alpha >= 1 and beta >= 1 and alpha * beta < X):
        raise ValueError("requires positive alpha, beta with alpha*beta < q^N")
    if table.max_norm_exp < N:
        raise ValueError("ideal table too small for norm q^N")
    e0 = zero_freq_exp(field, N, delta_exp)
    scalar = float(q) ** e0

    f_cache: dict[tuple, CycSum] = {}
    evaluations = 0

    def f_of(entry: IdealEntry) -> CycSum:
        nonlocal evaluations
        if entry.norm_exp != N:
            return CycSum(q)
        key = entry.fvec
        if key not in f_cache:
            f_cache[key] = f_cyc(field, entry.rep.gen, target, delta_exp, N,
                                 include_zero=False, cap=cap)
            evaluations += 1
        return f_cache[key]

    # T_I = log_q(alpha beta) * sum_{N(t) <= alpha beta} |sum_{N(n)=q^N/N(t)} F(tn)|
    t_one_total = 0.0
    for t_entry in table.entries:
        if q**t_entry.norm_exp > alpha * beta:
            continue
        i = t_entry.norm_exp
        if i > N:
            continue
        inner = CycSum(q)
        for n_entry in table.of_norm_exp(N - i):
            prod = table.product(t_entry, n_entry)
            inner = inner + f_of(prod)
        t_one_total += inner.magnitude()
    t_one = math.log(alpha * beta, q) * scalar * t_one_total if alpha * beta > 1 else 0.0

    # T_II = |sum_{beta < N(m) <= X/alpha} Lambda(m)
    #             sum_{alpha < N(n) = q^N/N(m)} H(n) F(mn)|
    t_two_cyc = CycSum(q)
    for m_entry in table.entries:
        nm = q**m_entry.norm_exp
        if not (beta < nm <= X / alpha):
            continue
        lam = table.mangoldt(m_entry)
        if lam == 0:
            continue
        assert lam <= N, "Lambda(m) <= log_q X violated"
        n_exp = N - m_entry.norm_exp
        if q**n_exp <= alpha:
            continue
        for n_entry in table.of_norm_exp(n_exp):
            h = h_value(table, n_entry, alpha)
            if h == 0:
                continue
            assert abs(h) <= 2**n_entry.norm_exp <= 2**N, "|H| bound violated"
            prod = table.product(m_entry, n_entry)
            t_two_cyc = t_two_cyc + f_of(prod).scaled(lam * h)
    t_two = scalar * t_two_cyc.magnitude()

    # exact decomposition: sum_{N(f) = q^N} Lambda(f) F(f) = S1 + S2 + S3,
    # the left side via Lambda, the right side via the three Vaughan terms
    # (two independent routes; their equality is the acceptance check)
    direct = CycSum(q)
    decomp = CycSum(q)
    for entry in table.of_norm_exp(N):
        fval = f_of(entry)
        lam = table.mangoldt(entry)
        if lam:
            direct = direct + fval.scaled(lam)
        a1, a2, a3 = vaughan_terms_ideal(table, entry, params)
        for ai in (a1, a2, a3):
            if ai:
                decomp = decomp + fval.scaled(ai)
    return TypeSumsResult(t_one, t_two, e0, decomp, direct, evaluations)
