"""Vectorized evaluation of tilde-T(N) for large N.

Valid for fields whose fundamental unit has |u| = q (both shipped defaults)
and for delta exponents <= 0, which is the regime of the exponent scan.

Reductions used (each cross-checked against the exact slow path in tests):

* With |u| = q, every S-normalized generator v = a + b sqrt(d) of an ideal
  of norm q^N has |sigma_1(v)| = q^{e1}, e1 = ceil(N/2), so deg a <= e1 and
  deg b <= e1 - m; each ideal contributes exactly q-1 such v.
* The ball radii are R1 = delta_exp and R2 = delta_exp - (N mod 2); for
  R1 <= 0 the approximant p is determined up to q^{max(R2+1,0)} choices, and
  omega(p) > 0 is equivalent to a system of F_q-LINEAR conditions on the
  coefficient vector of (a, b):
    coeff_j(A0) = 0 for j in [R1+1, -1],
    coeff_j(B0) = 0 for j in [R1-m+1, -1],
    and for odd N additionally coeff_j(frac(A0) - frac(B0) sqrt d) = 0 for
    j in [R2+1, R1], where A0 = a*D1 + b*C1*d, B0 = a*C1 + b*D1 with
    C1 = (x1-x2)/(2 sqrt d), D1 = (x1+x2)/2.
  (A0, B0 are the rounding centers: x_i sigma_i(v) = A0 +- B0 sqrt d.)
* Candidates therefore live in the kernel of that system; survivors are
  filtered by the two S-window lead conditions (nonvanishing leading sigma
  coefficients) and by irreducibility of the monicized norm via the sieve
  bitmap; Sum_p omega(p) = multiplicity * #survivors / (q-1).
* Prime powers p^r with r >= 2 go through the exact slow path at the much
  smaller norm exponent N/r.
"""

from __future__ import annotations

import numpy as np

from .fqpoly import quadratic_character_fast
from .laurent import Laurent
from .quadratic import QuadElem, QuadField, enumerate_prime_ideals
from .sieving import irreducible_bitmaps, monic_irreducibles

__all__ = ["fast_tilde_t", "fast_prime_omega_sum"]


def _primes_upto(field: QuadField, max_norm_exp: int):
    """enumerate_prime_ideals with a per-field cache (the scan asks for the
    same small prefixes over and over)."""
    cached = getattr(field, "_prime_ideal_cache", None)
    if cached is None or cached[0] < max_norm_exp:
        cached = (max_norm_exp, enumerate_prime_ideals(field, max_norm_exp))
        field._prime_ideal_cache = cached
    return [pi for pi in cached[1] if pi.norm_exp <= max_norm_exp]


def _coeff(x: Laurent, e: int) -> int:
    return x.coeff_at(e)


def _functional_row(field: QuadField, j: int, via_a: Laurent, via_b: Laurent,
                    na: int, nb: int) -> list[int]:
    """Row of the functional coeff_j(a*via_a + b*via_b) over the coefficient
    vector (a_0..a_{na-1}, b_0..b_{nb-1})."""
    row = [0] * (na + nb)
    for i in range(na):
        row[i] = _coeff(via_a, j - i)
    for k in range(nb):
        row[na + k] = _coeff(via_b, j - k)
    return row


def _nullspace_mod_q(rows: list[list[int]], dim: int, q: int) -> np.ndarray:
    """Basis of the solution space of rows * x = 0 over F_q, shape (f, dim)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(dim):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] % q:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], q - 2, q)
        mat[r] = [(x * inv) % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % q:
                f = mat[i][c]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = np.zeros((len(free), dim), dtype=np.int64)
    for bi, c in enumerate(free):
        basis[bi, c] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-mat[ri][c]) % q
    return basis


def _scan_conditions(field: QuadField, target, N: int, delta_exp: int):
    """(kernel basis, na, nb, e1, lead rows) for the omega > 0 condition
    system on S-normalized generator coefficients."""
    q = field.q
    m = field.m
    e1 = (N + 1) // 2
    R1 = delta_exp
    R2 = delta_exp - (N % 2)
    na = e1 + 1
    nb = e1 - m + 1
    if nb < 1:
        raise ValueError("N too small for the fast path")
    dim = na + nb
    inv2 = pow(2, q - 2, q)
    sd = field.sqrt_d()
    x1, x2 = target.x1, target.x2
    d1 = (x1 + x2).scale(inv2)                       # D1 = (x1+x2)/2
    from .diophantine import _inv_two_sqrt_d
    c1 = (x1 - x2) * _inv_two_sqrt_d(field)          # C1 = (x1-x2)/(2 sqrt d)
    c1d = c1 * Laurent.from_poly(field.d)            # C1 * d
    rows = []
    # A0 = a*D1 + b*C1d ; B0 = a*C1 + b*D1
    for j in range(R1 + 1, 0):
        rows.append(_functional_row(field, j, d1, c1d, na, nb))
    for j in range(R1 - m + 1, 0):
        rows.append(_functional_row(field, j, c1, d1, na, nb))
    if R2 < R1:
        # coeff_j(frac(A0) - frac(B0)*sqrt d) for j in [R2+1, min(R1, -1)]:
        # at j >= 0 the same matching condition fixes a free coefficient of
        # the approximant instead (absorbed in the multiplicity), so only the
        # fractional range contributes kernel rows
        for j in range(R2 + 1, min(R1 + 1, 0)):
            row = np.array(_functional_row(field, j, d1, c1d, na, nb),
                           dtype=np.int64)
            for ell in range(j - m, 0):
                s_c = _coeff(sd, j - ell)
                if s_c:
                    b0row = np.array(
                        _functional_row(field, ell, c1, d1, na, nb),
                        dtype=np.int64)
                    row = row - s_c * b0row
            rows.append([int(x) % q for x in row])
        # odd N: sigma_2 coefficient at e1 must vanish (|sigma_2| = q^{e1-1})
    if N % 2 == 1:
        row = [0] * dim
        row[na - 1] = 1  # a_{e1}
        for k in range(nb):
            row[na + k] = (-_coeff(sd, e1 - k)) % q
        rows.append(row)
    basis = _nullspace_mod_q(rows, dim, q)
    # lead functionals: coeff_{e1}(sigma_1) and coeff_{e_low}(sigma_2) where
    # e_low = e1 for even N (nonzero), e1 - 1 for odd N (nonzero)
    lead1 = np.zeros(dim, dtype=np.int64)
    lead1[na - 1] = 1
    for k in range(nb):
        lead1[na + k] = _coeff(sd, e1 - k) % q
    e_low = e1 - (N % 2)
    lead2 = np.zeros(dim, dtype=np.int64)
    if e_low < na:
        lead2[e_low] = 1
    for k in range(nb):
        lead2[na + k] = (-_coeff(sd, e_low - k)) % q
    return basis, na, nb, e1, (lead1, lead2), R2


def fast_prime_omega_sum(field: QuadField, target, N: int, delta_exp: int,
                         batch: int = 1 << 19, want_witness: bool = True):
    """(sum over prime ideals of norm q^N of omega, witness generator or
    None): vectorized kernel enumeration."""
    q = field.q
    if field.unit.abs_exp != 1:
        raise ValueError("fast path requires |u| = q")
    if delta_exp > 0:
        raise ValueError("fast path requires delta_exp <= 0")
    basis, na, nb, e1, (lead1, lead2), R2 = _scan_conditions(
        field, target, N, delta_exp)
    f = len(basis)
    total_survivors = 0
    witness = None
    bitmap = irreducible_bitmaps(q, N)[N]
    qp_norm = np.array([q**i for i in range(N)], dtype=np.int64)
    inv_table = np.array([0] + [pow(c, q - 2, q) for c in range(1, q)],
                         dtype=np.int64)
    d_co = np.array([field.d.coeff(i) for i in range(field.d.degree + 1)],
                    dtype=np.int64)
    n_total = q**f
    start = 0
    while start < n_total:
        count = min(batch, n_total - start)
        idx = np.arange(start, start + count, dtype=np.int64)
        combo = np.empty((count, f), dtype=np.int64)
        for t in range(f):
            combo[:, t] = (idx // q**t) % q
        vecs = (combo @ basis) % q
        # S-window lead conditions
        l1 = (vecs @ lead1) % q
        l2 = (vecs @ lead2) % q
        keep = (l1 != 0) & (l2 != 0)
        vecs = vecs[keep]
        if len(vecs):
            a = vecs[:, :na]
            b = vecs[:, na:]
            # norm = a^2 - b^2 d; convolutions reach degree 2(na-1) but the
            # kernel/lead conditions force the true degree to be exactly N
            norm = np.zeros((len(vecs), 2 * na - 1), dtype=np.int64)
            for i in range(na):
                for j in range(i, na):
                    c = a[:, i] * a[:, j]
                    norm[:, i + j] += c if i == j else 2 * c
            bsq = np.zeros((len(vecs), 2 * nb - 1), dtype=np.int64)
            for i in range(nb):
                for j in range(i, nb):
                    c = b[:, i] * b[:, j]
                    bsq[:, i + j] += c if i == j else 2 * c
            for t in range(len(d_co)):
                if d_co[t]:
                    norm[:, t:t + 2 * nb - 1] -= d_co[t] * bsq
            norm %= q
            assert not norm[:, N + 1:].any(), "degree condition violated"
            lead = norm[:, N]
            # monicize and test irreducibility via the sieve bitmap; elements
            # with irreducible norm are exactly the S-generators of the
            # split/ramified prime ideals of norm q^N (the inert layer is
            # added separately)
            scale = inv_table[lead]
            low = (norm[:, :N] * scale[:, None]) % q
            codes = low @ qp_norm
            ok = bitmap[codes]
            n_ok = int(np.sum(ok))
            total_survivors += n_ok
            if want_witness and witness is None and n_ok:
                row = vecs[ok][0]
                from .fqpoly import Poly
                a_p = Poly(q, tuple(int(x) for x in row[:na]))
                b_p = Poly(q, tuple(int(x) for x in row[na:]))
                witness = QuadElem(field, a_p, b_p)
        start += count
    mult = q ** max(R2 + 1, 0)
    assert total_survivors % (q - 1) == 0
    return mult * (total_survivors // (q - 1)), witness


def fast_tilde_t(field: QuadField, N: int, target, delta_exp: int):
    """tilde-T(N) with the r = 1 layer vectorized and prime powers r >= 2
    through the exact slow path."""
    from .diophantine import (TildeTResult, _make_record, lattice_round,
                              omega_direct)

    omega_sum, wit_gen = fast_prime_omega_sum(field, target, N, delta_exp)
    total = N * omega_sum
    # inert rational primes P of degree N/2 give the norm-q^N prime ideals
    # (P); their generator norm is P^2, so the irreducible-norm filter of the
    # vectorized layer does not see them
    if N % 2 == 0:
        for P in monic_irreducibles(field.q, N // 2):
            if quadratic_character_fast(field.d, P) != "inert":
                continue
            w = omega_direct(field, field.elem(P, 0), target, delta_exp, N)
            if w:
                total += N * w
                if wit_gen is None:
                    wit_gen = field.elem(P, 0)
    witnesses = []
    if wit_gen is not None:
        w = omega_direct(field, wit_gen, target, delta_exp, N)
        assert w > 0, "fast-path witness fails the exact recount"
        p_approx = lattice_round(field, target, wit_gen)
        witnesses.append(_make_record(field, target, p_approx, wit_gen))
    power_part = 0
    if N >= 2:
        for pi in _primes_upto(field, N // 2):
            n = pi.norm_exp
            if N % n != 0:
                continue
            g = pi.rep.gen
            acc = g
            for _ in range(N // n - 1):
                acc = acc * g
            # re-normalize: high powers have badly unbalanced embeddings,
            # which would blow up the direct enumeration box
            acc = field.canonical_generator(acc)
            w = omega_direct(field, acc, target, delta_exp, N)
            if w:
                power_part += n * w
    total += power_part
    return TildeTResult(total, power_part, witnesses)
