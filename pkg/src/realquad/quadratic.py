"""The real quadratic order A = F_q[T][sqrt(d)] and its ideals.

d is monic, square-free, of even degree and not a square, so sqrt(d) lives
in F_q((1/T)) and both embeddings of K = F_q(T)(sqrt d) land there.  Ideals
are represented by a canonical generator throughout (class number 1 is a
standing assumption, spot-checked rather than proven); the canonical
generator is the least element of the normalized generator set S(a) under
the (degree, ascending coefficients) order on the pair (a, b).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Optional

from .fqpoly import Poly, check_field_modulus, poly_key
from .laurent import Laurent, PrecisionError, sqrt_of_poly
from .sieving import irreducible_bitmaps, monic_irreducibles, splitting_sign_vector

__all__ = [
    "QuadField",
    "QuadElem",
    "IdealRep",
    "UnitData",
    "PrimeIdeal",
    "IdealEntry",
    "IdealTable",
    "GeneratorSearchError",
    "cf_expansion",
    "residue_sqrt",
    "principality_spot_check",
]


class GeneratorSearchError(RuntimeError):
    """Raised when no generator exists in the search box: principality
    violation or box too small."""


def _enumerate_polys_upto(q: int, max_deg: int) -> Iterator[Poly]:
    """All polynomials of degree <= max_deg, including zero, in code order."""
    if max_deg < 0:
        yield Poly.zero(q)
        return
    for code in range(q ** (max_deg + 1)):
        c = code
        coeffs = []
        for _ in range(max_deg + 1):
            coeffs.append(c % q)
            c //= q
        yield Poly(q, tuple(coeffs))


@dataclass(frozen=True, eq=False)
class QuadElem:
    """Element a + b*sqrt(d) of the order; the field context carries d."""

    field: "QuadField"
    a: Poly
    b: Poly

    def _key(self):
        return (self.field.d.coeffs, self.a.coeffs, self.b.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QuadElem):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def __add__(self, other: "QuadElem") -> "QuadElem":
        return QuadElem(self.field, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadElem") -> "QuadElem":
        return QuadElem(self.field, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadElem":
        return QuadElem(self.field, -self.a, -self.b)

    def __mul__(self, other: "QuadElem") -> "QuadElem":
        d = self.field.d
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return QuadElem(self.field, a, b)

    def scale(self, c: int) -> "QuadElem":
        return QuadElem(self.field, self.a.scale(c), self.b.scale(c))

    def conj(self) -> "QuadElem":
        return QuadElem(self.field, self.a, -self.b)

    def norm(self) -> Poly:
        """Norm(a + b sqrt d) = a^2 - b^2 d, exactly."""
        return self.a * self.a - self.b * self.b * self.field.d

    @property
    def norm_exp(self) -> int:
        """log_q of the ideal norm of (self): deg Norm."""
        n = self.norm()
        if n.is_zero:
            raise ValueError("zero norm")
        return n.degree

    def __repr__(self):
        return f"QuadElem(({self.a}) + ({self.b})*sqrt(d))"

    def __str__(self):
        return f"({self.a}) + ({self.b})*sqrt(d)"


@dataclass(frozen=True)
class UnitData:
    """Fundamental unit u with |u| = q^abs_exp and Norm(u) = norm_unit."""

    u: QuadElem
    abs_exp: int
    norm_unit: int
    certified: bool


@dataclass(frozen=True, eq=False)
class IdealRep:
    """Nonzero ideal, stored by its canonical generator."""

    gen: QuadElem
    norm_exp: int

    def _key(self):
        return (self.gen.a.coeffs, self.gen.b.coeffs)

    def __eq__(self, other):
        if not isinstance(other, IdealRep):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_unit_ideal(self) -> bool:
        return self.norm_exp == 0

    def __repr__(self):
        return f"IdealRep(gen={self.gen}, norm_exp={self.norm_exp})"


def cf_expansion(d: Poly, max_steps: int, tail_exp: Optional[int] = None):
    """Continued fraction of sqrt(d) over F_q[T].

    The state is the exact quadratic irrational (P + sqrt d)/Q with the
    invariant Q | d - P^2; returns (quotients, period_start, period_len).
    """
    q = d.q
    _validate_d(d)
    if tail_exp is None:
        tail_exp = -(2 * d.degree + 16)
    sd = sqrt_of_poly(d, tail_exp)
    P = Poly.zero(q)
    Q = Poly.const(q, 1)
    quotients: list[Poly] = []
    seen: dict[tuple, int] = {}
    for step in range(max_steps):
        key = (P.coeffs, Q.coeffs)
        if key in seen:
            return quotients, seen[key], step - seen[key]
        seen[key] = step
        num = Laurent.from_poly(P) + sd
        inv_prec = tail_exp + Q.degree  # keep knowledge down to T^0 after mul
        a = (num * Laurent.from_poly(Q).inv(inv_prec)).poly_part()
        quotients.append(a)
        P_next = a * Q - P
        rem = d - P_next * P_next
        Q_next, r = rem.divrem(Q)
        if not r.is_zero:
            raise ArithmeticError("state invariant Q | d - P^2 violated")
        if Q_next.is_zero:
            raise ValueError("d is a perfect square: expansion terminates")
        P, Q = P_next, Q_next
    raise ValueError(f"period not found within {max_steps} steps")


def _validate_d(d: Poly) -> None:
    check_field_modulus(d.q)
    if not d.is_monic or d.degree < 2 or d.degree % 2 != 0:
        raise ValueError("d must be monic of positive even degree")
    if d.gcd(d.derivative()).degree != 0:
        raise ValueError("d must be square-free")
    # non-square: the polynomial part s of sqrt(d) would satisfy s^2 = d
    s = sqrt_of_poly(d, 0).poly_part()
    if s * s == d:
        raise ValueError("d must not be a perfect square")


class QuadField:
    """Shared read-only context: d, sqrt(d) at working precision, the
    fundamental unit, and ideal-level arithmetic."""

    def __init__(self, q: int, d: Poly, tail_exp: Optional[int] = None,
                 unit_box_cap: int = 200_000):
        if d.q != q:
            raise ValueError("modulus mismatch")
        _validate_d(d)
        self.q = q
        self.d = d
        self.m = d.degree // 2
        self.tail_exp = tail_exp if tail_exp is not None else -(4 * d.degree + 64)
        self.unit_box_cap = unit_box_cap
        self._sqrt_cache: dict[int, Laurent] = {}
        self._unit: Optional[UnitData] = None

    # -- basics -------------------------------------------------------------

    def elem(self, a: Poly | tuple | int, b: Poly | tuple | int = 0) -> QuadElem:
        if not isinstance(a, Poly):
            a = Poly(self.q, a if isinstance(a, tuple) else (a,))
        if not isinstance(b, Poly):
            b = Poly(self.q, b if isinstance(b, tuple) else (b,))
        return QuadElem(self, a, b)

    def one(self) -> QuadElem:
        return self.elem(1, 0)

    def sqrt_d(self, tail_exp: Optional[int] = None) -> Laurent:
        t = tail_exp if tail_exp is not None else self.tail_exp
        if t not in self._sqrt_cache:
            self._sqrt_cache[t] = sqrt_of_poly(self.d, t)
        return self._sqrt_cache[t]

    def sigma_embed(self, f: QuadElem, which: int,
                    tail_exp: Optional[int] = None) -> Laurent:
        """sigma_1(f) = a + b sqrt(d), sigma_2(f) = a - b sqrt(d)."""
        if which not in (1, 2):
            raise ValueError("which must be 1 or 2")
        sd = self.sqrt_d(tail_exp)
        bl = Laurent.from_poly(f.b)
        al = Laurent.from_poly(f.a)
        prod = bl * sd
        return al + prod if which == 1 else al - prod

    def sigma_abs_exp(self, f: QuadElem, which: int) -> Optional[int]:
        """Exponent e with |sigma_which(f)| = q^e; None for f = 0.  Deepens
        the working precision automatically (the value is nonzero, so a deep
        enough truncation always certifies)."""
        if f.is_zero:
            return None
        tail = self.tail_exp
        for _ in range(8):
            try:
                return self.sigma_embed(f, which, tail).abs_exp()
            except PrecisionError:
                tail = 2 * tail - 16
        raise PrecisionError("magnitude not certified at maximal precision")

    # -- fundamental unit -----------------------------------------------------

    @property
    def unit(self) -> UnitData:
        if self._unit is None:
            self._unit = self._fundamental_unit()
        return self._unit

    def _fundamental_unit(self, max_steps: int = 64) -> UnitData:
        """Fundamental unit from the continued fraction of sqrt(d): the first
        convergent p/q with p^2 - d q^2 a nonzero constant gives the unit
        p + q sqrt(d) of minimal |.| > 1; cross-certified by box search."""
        q = self.q
        quotients, start, period = cf_expansion(self.d, max_steps, self.tail_exp)
        # regenerate enough quotients to reach the end of the first period
        need = start + period + 1
        if len(quotients) < need:
            quotients, start, period = cf_expansion(self.d, need + 2, self.tail_exp)
        p_prev, p_cur = Poly.const(q, 1), quotients[0]
        q_prev, q_cur = Poly.zero(q), Poly.const(q, 1)
        unit_elem = None
        for k in range(1, len(quotients) + 1):
            cand = QuadElem(self, p_cur, q_cur)
            n = cand.norm()
            if n.is_const and not n.is_zero:
                unit_elem = cand
                break
            if k == len(quotients):
                break
            a = quotients[k]
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
        if unit_elem is None:
            raise ArithmeticError("no unit found along the expansion period")
        # orient so |u| > 1, then normalize the F_q^x factor (a monic)
        e1 = self.sigma_abs_exp(unit_elem, 1)
        if e1 is None or e1 <= 0:
            unit_elem = unit_elem.conj()
            e1 = self.sigma_abs_exp(unit_elem, 1)
        if unit_elem.a.is_zero:
            raise ArithmeticError("degenerate unit")
        unit_elem = unit_elem.scale(pow(unit_elem.a.lead, q - 2, q))
        norm_unit = unit_elem.norm().coeff(0)
        certified = self._certify_unit(unit_elem, e1)
        return UnitData(unit_elem, e1, norm_unit, certified)

    def _certify_unit(self, u: QuadElem, abs_exp: int) -> bool:
        """Exhaustive box search deg a, deg b <= abs_exp: no unit u' with
        1 < |u'| < |u|.  Skipped (returns False) above the configured cap."""
        q = self.q
        n_cand = q ** (abs_exp + 1) * q ** (abs_exp + 1)
        if n_cand > self.unit_box_cap:
            return False
        best = None
        for a in _enumerate_polys_upto(q, abs_exp):
            for b in _enumerate_polys_upto(q, abs_exp):
                if b.is_zero:
                    continue
                cand = QuadElem(self, a, b)
                n = cand.norm()
                if not n.is_const or n.is_zero:
                    continue
                e = self.sigma_abs_exp(cand, 1)
                if e is not None and e > 0 and (best is None or e < best):
                    best = e
        if best != abs_exp:
            raise ArithmeticError(
                f"unit certification failed: box minimum q^{best}, CF gave q^{abs_exp}")
        return True

    def unit_inverse(self) -> QuadElem:
        ud = self.unit
        c = pow(ud.norm_unit, self.q - 2, self.q)
        return ud.u.conj().scale(c)

    def unit_power(self, r: int) -> QuadElem:
        base = self.unit.u if r >= 0 else self.unit_inverse()
        out = self.one()
        for _ in range(abs(r)):
            out = out * base
        return out

    # -- canonical generators / S(a) ------------------------------------------

    def canonical_generators(self, gen0: QuadElem) -> list[QuadElem]:
        """The set S(a) for a = (gen0): all generators v = eps * u^r * gen0
        with N^{1/2} |u|^{-1/2} < |sigma_1(v)| <= N^{1/2} |u|^{1/2} (lower
        strict, upper weak, as printed); exactly q-1 elements."""
        if gen0.is_zero:
            raise ValueError("zero generator")
        n = gen0.norm()
        if n.is_zero:
            raise ValueError("zero norm (d would be a square)")
        N = n.degree
        e = self.unit.abs_exp
        exp0 = self.sigma_abs_exp(gen0, 1)
        # unique r with N - e < 2*(exp0 + r e) <= N + e
        r = (N - e - 2 * exp0) // (2 * e) + 1
        if not (N - e < 2 * (exp0 + r * e) <= N + e):
            raise ArithmeticError("no admissible unit exponent (window error)")
        v0 = gen0 * self.unit_power(r)
        return [v0.scale(eps) for eps in range(1, self.q)]

    def canonical_generator(self, gen0: QuadElem) -> QuadElem:
        return min(self.canonical_generators(gen0),
                   key=lambda v: (poly_key(v.a), poly_key(v.b)))

    def ideal(self, gen0: QuadElem) -> IdealRep:
        g = self.canonical_generator(gen0)
        return IdealRep(g, g.norm_exp)

    def unit_ideal(self) -> IdealRep:
        return self.ideal(self.one())

    # -- element/ideal division -------------------------------------------------

    def divide_exact(self, f: QuadElem, g: QuadElem) -> Optional[QuadElem]:
        """f/g when it lies in the order, else None: f * conj(g) / Norm(g)
        with exact polynomial division on both coordinates."""
        n = g.norm()
        if n.is_zero:
            raise ZeroDivisionError("division by zero-norm element")
        num = f * g.conj()
        qa, ra = num.a.divrem(n)
        if not ra.is_zero:
            return None
        qb, rb = num.b.divrem(n)
        if not rb.is_zero:
            return None
        return QuadElem(self, qa, qb)


# -- prime ideals -----------------------------------------------------------


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal together with its residue data."""

    rep: IdealRep
    P: Poly                    # the monic irreducible below
    kind: str                  # 'split' | 'inert' | 'ramified'
    root: Optional[Poly]       # for split: t with t^2 = d mod P, sqrt(d) -> t

    @property
    def norm_exp(self) -> int:
        return self.rep.norm_exp


def residue_sqrt(d: Poly, P: Poly) -> Poly:
    """A square root of d in the residue field F_q[T]/P (Tonelli-Shanks with
    a deterministic non-residue scan); requires d to be a nonzero square
    mod P."""
    q = d.q
    e = P.degree
    Q = q**e
    r = d % P
    if r.is_zero:
        raise ValueError("d vanishes mod P (ramified)")
    one = Poly.const(q, 1)
    minus_one = Poly.const(q, q - 1)
    if r.pow_mod((Q - 1) // 2, P) != one:
        raise ValueError("d is not a square mod P (inert)")
    if Q % 4 == 3:
        t = r.pow_mod((Q + 1) // 4, P)
    else:
        m, s = Q - 1, 0
        while m % 2 == 0:
            m //= 2
            s += 1
        z = None
        for cand in _enumerate_polys_upto(q, e - 1):
            if cand.is_zero:
                continue
            if cand.pow_mod((Q - 1) // 2, P) == minus_one:
                z = cand
                break
        if z is None:
            raise ArithmeticError("no quadratic non-residue found")
        M = s
        c = z.pow_mod(m, P)
        t_val = r.pow_mod(m, P)
        R = r.pow_mod((m + 1) // 2, P)
        while t_val != one:
            i = 0
            t2 = t_val
            while t2 != one:
                t2 = t2 * t2 % P
                i += 1
            b = c
            for _ in range(M - i - 1):
                b = b * b % P
            M = i
            c = b * b % P
            t_val = t_val * c % P
            R = R * b % P
        t = R
    if (t * t - d) % P != Poly.zero(q):
        raise ArithmeticError("residue sqrt verification failed")
    return t


def find_generator(field: QuadField, P: Poly, root: Optional[Poly],
                   box_bound: Optional[int] = None) -> QuadElem:
    """Generator v = a + b sqrt(d) of the prime ideal above P selected by
    `root` (split: t with sqrt(d) -> t, membership a + b t = 0 mod P;
    ramified: root=None, membership P | a).  Norm(v) = eps * P.

    The box deg a, deg b <= ceil(deg P / 2) + abs_exp(u) suffices because
    some S-normalized generator has both embeddings within |u|^{1/2} of
    N^{1/2} = |P|^{1/2}; passing box_bound=0 forces the failure path.
    """
    q = field.q
    if box_bound is None:
        box_bound = (P.degree + 1) // 2 + field.unit.abs_exp
    s_deg = box_bound - P.degree
    for b in _enumerate_polys_upto(q, box_bound):
        if root is None:
            # ramified: a = s*P, any b (b=0 gives Norm = s^2 P^2, never eps*P)
            if b.is_zero:
                continue
            a0 = Poly.zero(q)
        else:
            if b.is_zero:
                continue
            a0 = (-(b * root)) % P
            if a0.degree > box_bound:
                continue
        for s in _enumerate_polys_upto(q, s_deg):
            a = a0 + s * P
            if a.degree > box_bound:
                continue
            v = QuadElem(field, a, b)
            n = v.norm()
            if n.is_zero or n.degree != P.degree:
                continue
            if n.monic() == P:
                return field.canonical_generator(v)
    raise GeneratorSearchError(
        f"no generator for P={P} in box {box_bound}: principality violation or box too small")


def enumerate_prime_ideals(field: QuadField, max_norm_exp: int,
                           box_bound: Optional[int] = None) -> list[PrimeIdeal]:
    """All prime ideals of norm <= q^max_norm_exp, each exactly once, ordered
    by norm exponent then canonical generator."""
    if max_norm_exp < 1:
        raise ValueError("max_norm_exp must be >= 1")
    q = field.q
    out: list[PrimeIdeal] = []
    for deg in range(1, max_norm_exp + 1):
        signs = splitting_sign_vector(field.d, deg)
        bm = irreducible_bitmaps(q, deg)[deg]
        for idx, P in enumerate(_codes_to_polys(q, deg, bm)):
            sgn = int(signs[_poly_code(P)])
            if sgn == 1:
                t = residue_sqrt(field.d, P)
                for tt in sorted({t, (-t) % P}, key=poly_key):
                    v = find_generator(field, P, tt, box_bound)
                    out.append(PrimeIdeal(IdealRep(v, deg), P, "split", tt))
            elif sgn == 0:
                v = find_generator(field, P, None, box_bound)
                out.append(PrimeIdeal(IdealRep(v, deg), P, "ramified", None))
            else:
                if 2 * deg <= max_norm_exp:
                    g = field.canonical_generator(field.elem(P, 0))
                    out.append(PrimeIdeal(IdealRep(g, 2 * deg), P, "inert", None))
    out.sort(key=lambda pi: (pi.norm_exp, poly_key(pi.rep.gen.a), poly_key(pi.rep.gen.b)))
    return out


def _poly_code(P: Poly) -> int:
    code = 0
    for i in range(P.degree - 1, -1, -1):
        code = code * P.q + P.coeff(i)
    return code


def _codes_to_polys(q: int, deg: int, bm) -> Iterator[Poly]:
    import numpy as np

    for code in np.nonzero(bm)[0]:
        c = int(code)
        lower = []
        for _ in range(deg):
            lower.append(c % q)
            c //= q
        yield Poly(q, tuple(lower) + (1,))


# -- ideal arithmetic on factorizations ----------------------------------------


def mangoldt_ideal(factors: list[tuple[PrimeIdeal, int]]) -> int:
    """Lambda on ideals: log_q N(p) when the ideal is p^r, else 0."""
    if len(factors) != 1:
        return 0
    prime, _exp = factors[0]
    return prime.norm_exp


def mobius_ideal(factors: list[tuple[PrimeIdeal, int]]) -> int:
    """mu on ideals: 0 unless square-free, else (-1)^{#primes}."""
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


@dataclass(frozen=True)
class IdealEntry:
    """An ideal in a full table: canonical rep plus its exponent vector over
    the table's prime list."""

    rep: IdealRep
    fvec: tuple[tuple[int, int], ...]  # sorted (prime_index, exponent)
    norm_exp: int


class IdealTable:
    """All nonzero ideals of norm <= q^max_norm_exp with their factorizations,
    supporting divisor enumeration and exact products."""

    def __init__(self, field: QuadField, max_norm_exp: int):
        self.field = field
        self.max_norm_exp = max_norm_exp
        self.primes = enumerate_prime_ideals(field, max_norm_exp)
        self.entries: list[IdealEntry] = []
        self.by_fvec: dict[tuple, IdealEntry] = {}
        self.by_rep: dict[IdealRep, IdealEntry] = {}
        self._build()

    def _build(self):
        field = self.field
        unit_rep = field.unit_ideal()

        def rec(start: int, fvec: list, gen: QuadElem, nexp: int):
            rep = field.ideal(gen) if fvec else unit_rep
            entry = IdealEntry(rep, tuple(fvec), nexp)
            self.entries.append(entry)
            self.by_fvec[entry.fvec] = entry
            self.by_rep[rep] = entry
            for i in range(start, len(self.primes)):
                pi = self.primes[i]
                if nexp + pi.norm_exp > self.max_norm_exp:
                    continue
                g = gen * pi.rep.gen
                n = nexp + pi.norm_exp
                e = 1
                while n <= self.max_norm_exp:
                    fvec.append((i, e))
                    rec(i + 1, fvec, g, n)
                    fvec.pop()
                    g = g * pi.rep.gen
                    n += pi.norm_exp
                    e += 1

        rec(0, [], field.one(), 0)
        self.entries.sort(key=lambda en: (
            en.norm_exp, poly_key(en.rep.gen.a), poly_key(en.rep.gen.b)))

    def factors_of(self, entry: IdealEntry) -> list[tuple[PrimeIdeal, int]]:
        return [(self.primes[i], e) for i, e in entry.fvec]

    def mangoldt(self, entry: IdealEntry) -> int:
        return mangoldt_ideal(self.factors_of(entry))

    def mobius(self, entry: IdealEntry) -> int:
        return mobius_ideal(self.factors_of(entry))

    def of_norm_exp(self, n: int) -> list[IdealEntry]:
        return [en for en in self.entries if en.norm_exp == n]

    def divisors(self, entry: IdealEntry) -> list[IdealEntry]:
        out = []

        def rec(i: int, acc: list):
            if i == len(entry.fvec):
                key = tuple((j, e) for j, e in acc if e > 0)
                out.append(self.by_fvec[key])
                return
            idx, emax = entry.fvec[i]
            for e in range(emax + 1):
                acc.append((idx, e))
                rec(i + 1, acc)
                acc.pop()

        rec(0, [])
        return out

    def product(self, x: IdealEntry, y: IdealEntry) -> Optional[IdealEntry]:
        """Product ideal, or None if its norm exceeds the table bound."""
        if x.norm_exp + y.norm_exp > self.max_norm_exp:
            return None
        merged: dict[int, int] = dict(x.fvec)
        for i, e in y.fvec:
            merged[i] = merged.get(i, 0) + e
        key = tuple(sorted(merged.items()))
        return self.by_fvec[key]


def factor_element(field: QuadField, f: QuadElem,
                   primes: Optional[list[PrimeIdeal]] = None) -> list[tuple[PrimeIdeal, int]]:
    """Prime-ideal factorization of (f) by repeated exact division by prime
    generators above each irreducible factor of Norm(f)."""
    if f.is_zero:
        raise ValueError("cannot factor the zero ideal")
    from .fqpoly import factorize

    n = f.norm()
    _, nf = factorize(n)
    prime_map: dict[tuple, list[PrimeIdeal]] = {}
    if primes is not None:
        for pi in primes:
            prime_map.setdefault(pi.P.coeffs, []).append(pi)
    out: list[tuple[PrimeIdeal, int]] = []
    rest = f
    for P, _e in nf:
        cands = prime_map.get(P.coeffs)
        if cands is None:
            sgn = splitting_sign_vector(field.d, P.degree)[_poly_code(P)]
            cands = []
            if sgn == 1:
                t = residue_sqrt(field.d, P)
                for tt in sorted({t, (-t) % P}, key=poly_key):
                    v = find_generator(field, P, tt)
                    cands.append(PrimeIdeal(IdealRep(v, P.degree), P, "split", tt))
            elif sgn == 0:
                v = find_generator(field, P, None)
                cands.append(PrimeIdeal(IdealRep(v, P.degree), P, "ramified", None))
            else:
                g = field.canonical_generator(field.elem(P, 0))
                cands.append(PrimeIdeal(IdealRep(g, 2 * P.degree), P, "inert", None))
        for pi in cands:
            mult = 0
            while True:
                nxt = field.divide_exact(rest, pi.rep.gen)
                if nxt is None:
                    break
                rest = nxt
                mult += 1
            if mult:
                out.append((pi, mult))
    if not rest.norm().is_const:
        raise ArithmeticError("factorization incomplete")
    out.sort(key=lambda t: (t[0].norm_exp, poly_key(t[0].rep.gen.a), poly_key(t[0].rep.gen.b)))
    return out


@dataclass
class PrincipalityReport:
    checked: int
    failures: list[Poly]

    @property
    def ok(self) -> bool:
        return not self.failures


def principality_spot_check(field: QuadField, max_norm_exp: int,
                            box_bound: Optional[int] = None) -> PrincipalityReport:
    """Attempt find_generator for every split/ramified prime with norm up to
    q^max_norm_exp; failures are data, not errors (box_bound=0 exercises the
    failure path synthetically)."""
    q = field.q
    checked = 0
    failures: list[Poly] = []
    for deg in range(1, max_norm_exp + 1):
        signs = splitting_sign_vector(field.d, deg)
        for P in monic_irreducibles(q, deg):
            sgn = int(signs[_poly_code(P)])
            if sgn == -1:
                continue
            roots: list[Optional[Poly]]
            if sgn == 1:
                t = residue_sqrt(field.d, P)
                roots = sorted({t, (-t) % P}, key=poly_key)
            else:
                roots = [None]
            for root in roots:
                checked += 1
                try:
                    find_generator(field, P, root, box_bound)
                except GeneratorSearchError:
                    failures.append(P)
    return PrincipalityReport(checked, failures)
