"""Vectorized enumeration of monic irreducibles and splitting statistics.

Monic polynomials of degree n are encoded as base-q integers of their n
lower coefficients.  The sieve marks products of smaller irreducibles with
all monic cofactors, leaving exactly the irreducibles unmarked; this is the
enumeration route (no zeta-function shortcut), so prime-counting checks
against q^n stay an independent measurement.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fqpoly import Poly, jacobi_symbol, legendre_fq

__all__ = [
    "monic_coeff_matrix",
    "irreducible_bitmaps",
    "monic_irreducibles",
    "splitting_sign_vector",
    "splitting_counts",
]


def monic_coeff_matrix(q: int, deg: int) -> np.ndarray:
    """(q^deg, deg) matrix of the lower coefficients of all monic polynomials
    of the given degree, row index = base-q code."""
    codes = np.arange(q**deg, dtype=np.int64)
    cols = []
    for i in range(deg):
        cols.append((codes // q**i) % q)
    if not cols:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def irreducible_bitmaps(q: int, max_deg: int) -> tuple:
    """Tuple of boolean arrays b[1..max_deg]; b[n][code] is True iff the monic
    polynomial of degree n with that code is irreducible."""
    bitmaps: list = [None] * (max_deg + 1)
    for n in range(1, max_deg + 1):
        bm = np.ones(q**n, dtype=bool)
        for e in range(1, n // 2 + 1):
            irr_codes = np.nonzero(bitmaps[e])[0]
            if len(irr_codes) == 0:
                continue
            p_low = np.stack([(irr_codes // q**i) % q for i in range(e)], axis=1)
            k = n - e
            g_low = monic_coeff_matrix(q, k)
            # multiply every irreducible of degree e (rows of p_low, monic)
            # by every monic cofactor of degree k
            p_full = np.concatenate([p_low, np.ones((len(irr_codes), 1), dtype=np.int64)], axis=1)
            g_full = np.concatenate([g_low, np.ones((len(g_low), 1), dtype=np.int64)], axis=1)
            # outer product over coefficient convolutions, blocked over primes
            qp = np.array([q**i for i in range(n)], dtype=np.int64)
            for r in range(len(irr_codes)):
                pc = p_full[r]
                prod = np.zeros((len(g_full), n + 1), dtype=np.int64)
                for i in range(e + 1):
                    if pc[i] == 0:
                        continue
                    prod[:, i:i + k + 1] += pc[i] * g_full
                prod %= q
                codes = prod[:, :n] @ qp
                bm[codes] = False
        bitmaps[n] = bm
    return tuple(bitmaps)


def monic_irreducibles(q: int, deg: int) -> list[Poly]:
    """All monic irreducibles of the given degree, canonical order."""
    bm = irreducible_bitmaps(q, deg)[deg]
    out = []
    for code in np.nonzero(bm)[0]:
        c = int(code)
        lower = []
        for _ in range(deg):
            lower.append(c % q)
            c //= q
        out.append(Poly(q, tuple(lower) + (1,)))
    return out


def splitting_sign_vector(d: Poly, deg: int) -> np.ndarray:
    """Vector over all monic polynomials of `deg` with the quadratic symbol
    (d/P) in {-1, 0, +1}: computed via Res(P, d) = A^2 - d1*A*B + d0*B^2 for
    P = B*T + A mod d when deg d = 2 (vectorized), else per-polynomial Jacobi.
    Meaningful where P is irreducible."""
    q = d.q
    n_codes = q**deg
    if d.degree == 2 and d.is_monic:
        d1, d0 = d.coeff(1), d.coeff(0)
        low = monic_coeff_matrix(q, deg)
        full = np.concatenate([low, np.ones((n_codes, 1), dtype=np.int64)], axis=1)
        # Horner reduction of P mod d, tracking P == A + B*T (mod d):
        # T^2 == -d1*T - d0, so (A + B*T)*T == -d0*B + (A - d1*B)*T
        A = np.zeros(n_codes, dtype=np.int64)
        B = np.zeros(n_codes, dtype=np.int64)
        for j in range(deg, -1, -1):
            newB = (A - d1 * B) % q
            newA = (-d0 * B) % q
            A, B = (newA + full[:, j]) % q, newB
        res = (A * A - d1 * A * B + d0 * B * B) % q
        leg = np.array([legendre_fq(c, q) for c in range(q)], dtype=np.int8)
        return leg[res]
    # generic fallback
    out = np.zeros(n_codes, dtype=np.int8)
    for code in range(n_codes):
        c = code
        lower = []
        for _ in range(deg):
            lower.append(c % q)
            c //= q
        P = Poly(q, tuple(lower) + (1,))
        out[code] = jacobi_symbol(d, P)
    return out


@lru_cache(maxsize=None)
def _splitting_counts_cached(q: int, d_coeffs: tuple, deg: int) -> tuple[int, int, int]:
    d = Poly(q, d_coeffs)
    bm = irreducible_bitmaps(q, deg)[deg]
    sign = splitting_sign_vector(d, deg)
    s = sign[bm]
    return int(np.sum(s == 1)), int(np.sum(s == -1)), int(np.sum(s == 0))


def splitting_counts(d: Poly, deg: int) -> tuple[int, int, int]:
    """(split, inert, ramified) counts among monic irreducibles of `deg`."""
    return _splitting_counts_cached(d.q, d.coeffs, deg)
