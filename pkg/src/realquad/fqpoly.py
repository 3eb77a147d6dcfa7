"""Exact arithmetic in F_q[T] for an odd prime q.

Polynomials are dense coefficient tuples in ascending order; the zero
polynomial is the empty tuple.  Everything here is pure and immutable, so
values can be shared freely across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

__all__ = [
    "Poly",
    "poly_key",
    "enumerate_monic",
    "is_irreducible",
    "factorize",
    "mobius_poly",
    "mangoldt_poly",
    "quadratic_character",
    "legendre_fq",
    "jacobi_symbol",
    "splitmix64",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin, valid far beyond any desk-scale q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_field_modulus(q: int) -> None:
    if q < 3 or q % 2 == 0 or not _is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over F_q, coefficients ascending."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        # strip leading zeros so the invariant (nonzero lead) always holds
        c = tuple(x % self.q for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    # -- basics ----------------------------------------------------------

    @classmethod
    def zero(cls, q: int) -> "Poly":
        return cls(q, ())

    @classmethod
    def const(cls, q: int, c: int) -> "Poly":
        return cls(q, (c,))

    @classmethod
    def T(cls, q: int) -> "Poly":
        return cls(q, (0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        return f"Poly(q={self.q}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("T" if c == 1 else f"{c}*T")
            else:
                parts.append(f"T^{i}" if c == 1 else f"{c}*T^{i}")
        return " + ".join(parts)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.q != other.q:
            raise ValueError("mixed moduli")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.q, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.q, tuple(self.coeff(i) - other.coeff(i) for i in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(self.q, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(self.q, tuple(out))

    def scale(self, c: int) -> "Poly":
        return Poly(self.q, tuple(c * x for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k (k >= 0)."""
        if self.is_zero:
            return self
        return Poly(self.q, (0,) * k + self.coeffs)

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        q_mod = self.q
        inv_lead = pow(other.lead, q_mod - 2, q_mod)
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(q_mod), self
        quot = [0] * (dq + 1)
        db = other.degree
        for i in range(dq, -1, -1):
            c = rem[i + db] % q_mod
            if c:
                f = c * inv_lead % q_mod
                quot[i] = f
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - f * b) % q_mod
        return Poly(q_mod, tuple(quot)), Poly(q_mod, tuple(rem[:db] if db else []))

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(pow(self.lead, self.q - 2, self.q))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic generator of (self, other)."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.const(self.q, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.q, tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    # -- text format -------------------------------------------------------

    @classmethod
    def parse(cls, q: int, text: str) -> "Poly":
        """Ascending comma-separated residues, e.g. "1,0,1" = T^2+1."""
        return cls(q, tuple(int(t) for t in text.split(",")))

    def format(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"


def poly_key(f: Poly) -> tuple:
    """Canonical ordering key: degree first, then the ascending coefficient
    tuple compared lexicographically."""
    return (f.degree, f.coeffs)


def enumerate_monic(q: int, deg: int) -> Iterator[Poly]:
    """All q^deg monic polynomials of the given degree, in canonical order."""
    if deg < 0:
        raise ValueError("negative degree")
    for code in range(q**deg):
        lower = []
        v = code
        for _ in range(deg):
            lower.append(v % q)
            v //= q
        yield Poly(q, tuple(lower) + (1,))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Deterministic irreducibility test (Rabin): f of degree n is irreducible
    iff T^{q^n} = T mod f and gcd(T^{q^{n/l}} - T, f) = 1 for primes l | n."""
    n = f.degree
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return True
    q = f.q
    t = Poly.T(q)
    for ell in _prime_divisors(n):
        h = t.pow_mod(q ** (n // ell), f) - (t % f)
        if f.gcd(h).degree != 0:
            return False
    return ((t.pow_mod(q**n, f) - (t % f)) % f).is_zero


def splitmix64(state: int) -> tuple[int, int]:
    """One step of the splitmix64 generator; returns (new_state, output).

    Pinned here (and in the README) so seeded runs replicate bit-for-bit
    across implementations.
    """
    state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return state, z ^ (z >> 31)


class _SeededStream:
    """Deterministic residue stream for equal-degree splitting."""

    def __init__(self, q: int, seed: int):
        self.q = q
        self.state = seed & 0xFFFFFFFFFFFFFFFF

    def residues(self, n: int) -> list[int]:
        out = []
        for _ in range(n):
            self.state, z = splitmix64(self.state)
            out.append(z % self.q)
        return out


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition; returns [(g_i, i)] with f = prod g_i^i,
    g_i squarefree.  Handles the char-p case T^p-power descent."""
    q = f.q
    out: list[tuple[Poly, int]] = []
    if f.degree < 1:
        return out
    df = Poly(q, tuple(i * c for i, c in enumerate(f.coeffs))[1:])
    if df.is_zero:
        # f = g(T^p): take p-th root coefficient-wise (Frobenius is identity
        # on F_q for prime q)
        root = Poly(q, f.coeffs[::q])
        for g, m in _squarefree_decomposition(root):
            out.append((g, m * q))
        return out
    c = f.gcd(df)
    w = (f // c).monic()
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = (w // y).monic()
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # leftover part: all multiplicities divisible by p, i.e. a perfect
        # p-th power; the recursion handles the descent (no extra factor)
        for g, m in _squarefree_decomposition(c):
            out.append((g, m))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic f into products of irreducibles of equal
    degree; returns [(product, degree)]."""
    q = f.q
    out = []
    h = Poly.T(q)
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.pow_mod(q, rest)
        g = rest.gcd(h - Poly.T(q))
        if g.degree > 0:
            out.append((g, d))
            rest = (rest // g).monic()
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree(f: Poly, d: int, stream: _SeededStream) -> list[Poly]:
    """Cantor-Zassenhaus with a deterministic seeded element sequence."""
    if f.degree == d:
        return [f.monic()]
    q = f.q
    n = f.degree
    exponent = (q**d - 1) // 2
    while True:
        coeffs = stream.residues(n)
        a = Poly(q, tuple(coeffs))
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            pass
        else:
            b = a.pow_mod(exponent, f) - Poly.const(q, 1)
            g = f.gcd(b)
            if not (0 < g.degree < f.degree):
                continue
        left = _equal_degree(g.monic(), d, stream)
        right = _equal_degree((f // g).monic(), d, stream)
        return left + right


def factorize(f: Poly) -> tuple[int, list[tuple[Poly, int]]]:
    """Full factorization: returns (unit, [(monic irreducible, exponent)]),
    factors sorted canonically."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lead
    g = f.monic()
    factors: list[tuple[Poly, int]] = []
    # deterministic seed derived from the input so repeated runs agree
    seed = 0x5EED ^ (f.q * 0x9E37) ^ len(f.coeffs)
    stream = _SeededStream(f.q, seed)
    for sqfree, mult in _squarefree_decomposition(g):
        for prod, d in _distinct_degree(sqfree):
            for p in _equal_degree(prod, d, stream):
                factors.append((p, mult))
    factors.sort(key=lambda t: poly_key(t[0]))
    return unit, factors


@lru_cache(maxsize=None)
def mobius_poly(f: Poly) -> int:
    """Mobius function on F_q[T]: 0 on non-squarefree, else (-1)^{#factors}."""
    if f.is_zero:
        raise ValueError("mu(0) undefined")
    if f.is_const:
        return 1
    _, factors = factorize(f)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def mangoldt_poly(f: Poly) -> int:
    """Von Mangoldt function: deg P if f is a unit times P^r, else 0.

    Integer-valued by construction (log_q |P| = deg P); no floats."""
    if f.is_zero:
        raise ValueError("Lambda(0) undefined")
    if f.is_const:
        return 0
    _, factors = factorize(f)
    if len(factors) != 1:
        return 0
    return factors[0][0].degree


def legendre_fq(c: int, q: int) -> int:
    """Quadratic residue symbol on F_q: 1, -1, or 0."""
    c %= q
    if c == 0:
        return 0
    return 1 if pow(c, (q - 1) // 2, q) == 1 else -1


def jacobi_symbol(a: Poly, b: Poly) -> int:
    """Jacobi symbol (a/b) for b monic of positive degree; 0 when gcd(a,b)
    is nonconstant.  Euclidean descent with F_q[T] quadratic reciprocity:
    for monic coprime f, g, (f/g) = (g/f) * (-1)^{((q-1)/2) deg f deg g},
    and (c/g) = legendre(c)^{deg g} for constants c."""
    q = a.q
    if not b.is_monic or b.degree < 1:
        raise ValueError("b must be monic of positive degree")
    sign = 1
    a = a % b
    while True:
        if a.is_zero:
            return 0
        lc = a.lead
        if lc != 1:
            a = a.monic()
            if b.degree % 2 == 1:
                sign *= legendre_fq(lc, q)
        if a.degree == 0:
            return sign
        if ((q - 1) // 2) % 2 == 1 and a.degree % 2 == 1 and b.degree % 2 == 1:
            sign = -sign
        a, b = b % a, a



def quadratic_character(d: Poly, P: Poly) -> str:
    """Splitting type of the monic irreducible P in F_q(T)(sqrt d):
    'split', 'inert' or 'ramified'.  Decided by exponentiation of d mod P
    to (|P|-1)/2 in the residue field."""
    q = d.q
    if not P.is_monic or P.degree < 1 or not is_irreducible(P):
        raise ValueError("P must be monic irreducible")
    r = d % P
    if r.is_zero:
        return "ramified"
    e = (q**P.degree - 1) // 2
    s = r.pow_mod(e, P)
    if s.is_const and s.coeff(0) == 1:
        return "split"
    return "inert"


def quadratic_character_fast(d: Poly, P: Poly) -> str:
    """Same as quadratic_character but via the Jacobi symbol (no residue-field
    exponentiation); P is trusted to be monic irreducible."""
    j = jacobi_symbol(d, P)
    if j == 0:
        return "ramified"
    return "split" if j == 1 else "inert"
