"""Truncated arithmetic in F_q((1/T)), the completion at infinity.

A Laurent value stores coefficients for exponents from `tail` upward; all
exponents below `tail` are UNKNOWN (not zero).  `tail=None` marks an exact
value with finitely many nonzero coefficients (e.g. polynomials and their
finite combinations).  Operations propagate precision pessimistically and
raise PrecisionError instead of assuming unknown coefficients vanish.

Ball convention: every ball is the CLOSED set {x : |x| <= q^e}, encoded by
the integer e (BallExp).  Since |.| takes values in q^Z, the open ball of
radius q^{e+1} used in the source formulas is the same set; conversions
happen at call sites, never inside this module.

Character sums are accumulated exactly in Z[zeta_p] (CycSum) and converted
to floats only for magnitude reports.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .fqpoly import Poly

__all__ = [
    "PrecisionError",
    "Laurent",
    "BallExp",
    "CycSum",
    "cyc_reduce",
    "char_e",
    "sqrt_of_poly",
]


class PrecisionError(ArithmeticError):
    """Raised when a result would depend on unknown coefficients."""


@dataclass(frozen=True)
class BallExp:
    """The closed ball {x : |x| <= q^bound_exp}."""

    bound_exp: int


class Laurent:
    """Element of F_q((1/T)) known on exponents >= tail (tail=None: exact).

    coeffs are ascending starting at exponent lo; everything above the stored
    range is known to be zero.
    """

    __slots__ = ("q", "lo", "coeffs", "tail")

    def __init__(self, q: int, lo: int, coeffs, tail: Optional[int]):
        coeffs = [c % q for c in coeffs]
        # strip known-zero high coefficients
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if tail is None:
            while coeffs and coeffs[0] == 0:
                coeffs.pop(0)
                lo += 1
            if not coeffs:
                lo = 0
        else:
            if lo < tail:
                coeffs = coeffs[tail - lo:]
                lo = tail
            elif lo > tail:
                coeffs = [0] * (lo - tail) + coeffs
                lo = tail
            if not coeffs:
                lo = tail
        self.q = q
        self.lo = lo
        self.coeffs = tuple(coeffs)
        self.tail = tail

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, q: int, tail: Optional[int] = None) -> "Laurent":
        return cls(q, tail if tail is not None else 0, [], tail)

    @classmethod
    def const(cls, q: int, c: int) -> "Laurent":
        return cls(q, 0, [c], None)

    @classmethod
    def from_poly(cls, f: Poly, tail: Optional[int] = None) -> "Laurent":
        return cls(f.q, 0, list(f.coeffs), tail)

    @classmethod
    def monomial(cls, q: int, exp: int, c: int = 1) -> "Laurent":
        return cls(q, exp, [c], None)

    # -- inspection --------------------------------------------------------

    @property
    def top_exp(self) -> int:
        """Exponent of the leading stored coefficient (meaningful only when
        not known-zero)."""
        return self.lo + len(self.coeffs) - 1

    @property
    def is_known_zero(self) -> bool:
        """True when every known coefficient is zero (exact zero if tail is
        None)."""
        return not self.coeffs

    @property
    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.tail is None

    def coeff_at(self, e: int) -> int:
        """Coefficient at exponent e; PrecisionError if e is below tail."""
        if self.tail is not None and e < self.tail:
            raise PrecisionError(f"coefficient at T^{e} unknown (tail {self.tail})")
        if e < self.lo or e > self.top_exp:
            return 0
        return self.coeffs[e - self.lo]

    def abs_exp(self) -> Optional[int]:
        """|x| = q^e: returns e, or None for exact zero.  PrecisionError when
        every stored coefficient vanishes but the value is not certified
        zero."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return self.lo + i
        if self.tail is None:
            return None
        raise PrecisionError(
            f"all known coefficients zero down to T^{self.tail}; magnitude uncertifiable")

    def abs_leq(self, e: int) -> bool:
        """Exact check |x| <= q^e.  Needs knowledge down to e+1 only."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            exp = self.lo + i
            if exp <= e:
                return True
            if self.coeffs[i]:
                return False
        if self.tail is not None and self.tail > e + 1:
            raise PrecisionError(
                f"cannot certify |x| <= q^{e}: knowledge stops at T^{self.tail}")
        return True

    def frac_exp(self) -> Optional[int]:
        """||x|| = q^k with k the largest negative exponent carrying a nonzero
        coefficient; None when the fractional part is (certified) zero."""
        top = min(self.top_exp, -1)
        e = top
        while e >= self.lo:
            if self.coeffs[e - self.lo]:
                return e
            e -= 1
        if self.tail is None:
            return None
        raise PrecisionError(
            f"fractional part zero down to T^{self.tail} but not certified")

    def frac_leq(self, e: int) -> bool:
        """Exact check ||x|| <= q^e for e <= -1; needs coefficients on
        (e, -1] only."""
        if e >= -1:
            return True
        if self.tail is not None and self.tail > e + 1:
            raise PrecisionError("insufficient precision for fractional comparison")
        for exp in range(e + 1, 0):
            if self.lo <= exp <= self.top_exp and self.coeffs[exp - self.lo]:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return (self.q, self.lo, self.coeffs, self.tail) == (
            other.q, other.lo, other.coeffs, other.tail)

    def __hash__(self):
        return hash((self.q, self.lo, self.coeffs, self.tail))

    def __repr__(self):
        if not self.coeffs:
            return f"Laurent(0, tail={self.tail})"
        terms = ", ".join(
            f"{c}*T^{self.lo + i}" for i, c in enumerate(self.coeffs) if c)
        return f"Laurent({terms}, tail={self.tail})"

    # -- arithmetic --------------------------------------------------------

    def _join_tail(self, other: "Laurent") -> Optional[int]:
        if self.tail is None:
            return other.tail
        if other.tail is None:
            return self.tail
        return max(self.tail, other.tail)

    def __add__(self, other: "Laurent") -> "Laurent":
        tail = self._join_tail(other)
        lo = min(self.lo, other.lo)
        hi = max(self.top_exp, other.top_exp)
        if hi < lo:
            return Laurent.zero(self.q, tail)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lo + i - lo] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo + i - lo] += c
        return Laurent(self.q, lo, out, tail)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __neg__(self) -> "Laurent":
        return Laurent(self.q, self.lo, [-c for c in self.coeffs], self.tail)

    def scale(self, c: int) -> "Laurent":
        return Laurent(self.q, self.lo, [c * x for x in self.coeffs], self.tail)

    def shift(self, k: int) -> "Laurent":
        """Multiply by T^k."""
        return Laurent(self.q, self.lo + k, list(self.coeffs),
                       None if self.tail is None else self.tail + k)

    def __mul__(self, other: "Laurent") -> "Laurent":
        q = self.q
        # precision of the product: unknown part of x (<= q^{tail_x - 1})
        # times the top of y pollutes exponents below tail_x + top_y
        if self.is_exact_zero or other.is_exact_zero:
            return Laurent.zero(q, None)
        if self.tail is None and other.tail is None:
            tail = None
        else:
            # an exact-zero factor was handled above, so tops are meaningful
            x_top = self.top_exp if self.coeffs else self.tail - 1
            y_top = other.top_exp if other.coeffs else other.tail - 1
            cands = []
            if self.tail is not None:
                cands.append(self.tail + y_top)
            if other.tail is not None:
                cands.append(other.tail + x_top)
            tail = max(cands)
        if not self.coeffs or not other.coeffs:
            return Laurent.zero(q, tail)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Laurent(q, self.lo + other.lo, out, tail)

    def truncate(self, tail: int) -> "Laurent":
        """Forget coefficients below `tail` (raising precision floor)."""
        if self.tail is not None and self.tail > tail:
            raise PrecisionError("cannot lower the precision floor")
        return Laurent(self.q, self.lo, list(self.coeffs), tail)

    def inv(self, prec_tail: int) -> "Laurent":
        """Multiplicative inverse, known down to prec_tail (capped by what the
        input precision justifies: tail_x - 2 top_x)."""
        q = self.q
        try:
            a = self.abs_exp()
        except PrecisionError:
            raise PrecisionError("cannot invert: leading coefficient unknown")
        if a is None:
            raise ZeroDivisionError("inversion of known-zero value")
        if self.tail is not None:
            prec_tail = max(prec_tail, self.tail - 2 * a)
        # long division: invert c*T^a * (1 + u), |u| < 1
        lead = self.coeff_at(a)
        inv_lead = pow(lead, q - 2, q)
        m = -a - prec_tail + 1  # output exponents -a down to prec_tail
        if m <= 0:
            raise PrecisionError("requested precision above the leading term of the inverse")
        xs = [self.coeff_at(a - k) if (self.tail is None or a - k >= self.tail) else 0
              for k in range(m)]
        ys = [0] * m
        ys[0] = inv_lead
        for k in range(1, m):
            s = 0
            for j in range(1, k + 1):
                s += xs[j] * ys[k - j]
            ys[k] = (-inv_lead * s) % q
        return Laurent(q, prec_tail, list(reversed(ys)), prec_tail)

    def div(self, other: "Laurent", prec_tail: int) -> "Laurent":
        return self * other.inv(prec_tail - 8)

    def poly_part(self) -> Poly:
        """The polynomial part (coefficients at exponents >= 0)."""
        if self.tail is not None and self.tail > 0:
            raise PrecisionError("polynomial part needs knowledge down to T^0")
        out = [0] * (max(self.top_exp, -1) + 1)
        for i, c in enumerate(self.coeffs):
            e = self.lo + i
            if e >= 0:
                out[e] = c
        return Poly(self.q, tuple(out))

    def frac_part(self) -> "Laurent":
        """x minus its polynomial part."""
        kept = [(self.lo + i, c) for i, c in enumerate(self.coeffs) if self.lo + i < 0]
        lo = kept[0][0] if kept else (self.tail if self.tail is not None else 0)
        hi = kept[-1][0] if kept else lo - 1
        out = [0] * (hi - lo + 1)
        for e, c in kept:
            out[e - lo] = c
        return Laurent(self.q, lo, out, self.tail)

    # -- text format -------------------------------------------------------

    @classmethod
    def parse(cls, q: int, text: str) -> "Laurent":
        """Format "top_exp:c_top,...,c_tail:tail_exp" (descending coeffs)."""
        top_s, coeffs_s, tail_s = text.split(":")
        top = int(top_s)
        tail = int(tail_s)
        cs = [int(t) for t in coeffs_s.split(",")] if coeffs_s else []
        if len(cs) != top - tail + 1:
            raise ValueError("coefficient count does not match exponent range")
        return cls(q, tail, list(reversed(cs)), tail)

    def format(self, tail: Optional[int] = None) -> str:
        t = tail if tail is not None else (self.tail if self.tail is not None else min(self.lo, 0))
        top = max(self.top_exp, t)
        cs = [self.coeff_at(e) for e in range(top, t - 1, -1)]
        return f"{top}:{','.join(str(c) for c in cs)}:{t}"


def laurent_arith(x: Laurent, y: Optional[Laurent], kind: str,
                  prec_tail: int = -64, k: int = 0) -> Laurent:
    """Uniform dispatcher mirroring the operation table; the operator methods
    above are the primary API."""
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "inv":
        return x.inv(prec_tail)
    if kind == "scale_by_T_power":
        return x.shift(k)
    raise ValueError(f"unknown kind {kind!r}")


def sqrt_of_poly(d: Poly, tail_exp: int) -> Laurent:
    """Square root of a monic even-degree d in F_q((1/T)), branch with leading
    term T^{deg d / 2}; coefficients solved by the direct recurrence and
    certified by squaring in tests."""
    if not d.is_monic:
        raise ValueError("d must be monic")
    if d.degree % 2 != 0 or d.degree < 0:
        raise ValueError("d must have even degree")
    q = d.q
    m = d.degree // 2
    # y = sum_{e <= m} y_e T^e with y_m = 1; match coefficients of y^2 = d
    # from exponent 2m downward:  2*y_m*y_{k-m} = d_k - sum_{k-m < i,j < m}
    y = {m: 1}
    inv2 = pow(2, q - 2, q)
    for e in range(m - 1, tail_exp - 1, -1):
        k = e + m  # exponent of y^2 being matched
        s = 0
        i = e + 1
        j = k - i
        while i < m + 1 and j > e:
            if i <= m and j <= m:
                s += y.get(i, 0) * y.get(j, 0)
            i += 1
            j -= 1
        target = d.coeff(k) if k >= 0 else 0
        y[e] = (target - s) * inv2 % q
    coeffs = [y.get(e, 0) for e in range(tail_exp, m + 1)]
    return Laurent(q, tail_exp, coeffs, tail_exp)


def char_e(x: Laurent) -> int:
    """Index j in Z/p with e(x) = zeta_p^j: the coefficient at T^{-1}
    (the trace is the identity since q is prime)."""
    return x.coeff_at(-1)


class CycSum:
    """Exact element of Z[zeta_p]: counts[j] copies of zeta_p^j."""

    __slots__ = ("p", "counts")

    def __init__(self, p: int, counts=None):
        self.p = p
        self.counts = list(counts) if counts is not None else [0] * p
        if len(self.counts) != p:
            raise ValueError("counts length must equal p")

    def copy(self) -> "CycSum":
        return CycSum(self.p, self.counts)

    def add_root(self, j: int, mult: int = 1) -> None:
        self.counts[j % self.p] += mult

    def __add__(self, other: "CycSum") -> "CycSum":
        return CycSum(self.p, [a + b for a, b in zip(self.counts, other.counts)])

    def __sub__(self, other: "CycSum") -> "CycSum":
        return CycSum(self.p, [a - b for a, b in zip(self.counts, other.counts)])

    def scaled(self, k: int) -> "CycSum":
        return CycSum(self.p, [k * a for a in self.counts])

    def normal_form(self) -> "CycSum":
        """Reduce by sum_j zeta^j = 0 so that counts[p-1] = 0."""
        c = self.counts[self.p - 1]
        return CycSum(self.p, [a - c for a in self.counts])

    def is_rational(self) -> bool:
        nf = self.normal_form()
        return all(a == 0 for a in nf.counts[1:self.p - 1])

    def rational_value(self) -> Optional[int]:
        nf = self.normal_form()
        if all(a == 0 for a in nf.counts[1:self.p - 1]):
            return nf.counts[0]
        return None

    def magnitude(self) -> float:
        """Floating |value| at zeta_p = exp(2 pi i / p); approximate by
        construction, for reporting only."""
        z = sum(c * cmath.exp(2j * math.pi * j / self.p)
                for j, c in enumerate(self.counts))
        return abs(z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycSum):
            return NotImplemented
        return self.p == other.p and self.normal_form().counts == other.normal_form().counts

    def __repr__(self):
        return f"CycSum(p={self.p}, {self.counts})"


def cyc_reduce(s: CycSum) -> tuple[CycSum, Optional[int], float]:
    """(normal form, rational value or None, floating magnitude)."""
    nf = s.normal_form()
    return nf, s.rational_value(), s.magnitude()
