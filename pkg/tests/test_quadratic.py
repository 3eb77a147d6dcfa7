"""Real quadratic extension: embeddings, units, ideals, prime splitting.

Oracles: norm multiplicativity, the embedding product |s1||s2| = q^{deg Norm},
an Euler-product ideal count recomputed from splitting data only, and
divide-back checks for exact ideal division."""

import pytest
from hypothesis import given, settings, strategies as st

from realquad.fqpoly import Poly, is_irreducible, poly_key
from realquad.quadratic import (GeneratorSearchError, IdealTable, QuadElem,
                                QuadField, cf_expansion,
                                enumerate_prime_ideals, factor_element,
                                find_generator, principality_spot_check,
                                residue_sqrt)
from realquad.sieving import monic_irreducibles, splitting_counts


@pytest.fixture(scope="module")
def f3():
    return QuadField(3, Poly.parse(3, "1,0,1"))


@pytest.fixture(scope="module")
def f5():
    return QuadField(5, Poly.parse(5, "2,0,1"))


@st.composite
def elems(draw, q=3, max_deg=3):
    def poly():
        n = draw(st.integers(0, max_deg))
        return Poly(q, tuple(draw(st.integers(0, q - 1))
                             for _ in range(n + 1)))
    return poly(), poly()


# -- validation ---------------------------------------------------------------


def test_field_validation_rejects_bad_d():
    with pytest.raises(ValueError):
        QuadField(3, Poly.parse(3, "1,1"))        # odd degree
    with pytest.raises(ValueError):
        QuadField(3, Poly.parse(3, "1,0,2"))      # not monic
    with pytest.raises(ValueError):
        QuadField(3, Poly.parse(3, "0,0,1"))      # T^2: not squarefree
    with pytest.raises(ValueError):
        QuadField(3, Poly.parse(3, "1,2,1"))      # (T+1)^2: a square


# -- arithmetic and embeddings ---------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(elems(), elems())
def test_norm_multiplicative(ab, cd):
    field = QuadField(3, Poly.parse(3, "1,0,1"))
    x = field.elem(*ab)
    y = field.elem(*cd)
    assert (x * y).norm() == x.norm() * y.norm()


@settings(max_examples=100, deadline=None)
@given(elems())
def test_embedding_product_matches_norm(ab):
    field = QuadField(3, Poly.parse(3, "1,0,1"))
    x = field.elem(*ab)
    if x.is_zero:
        return
    e1 = field.sigma_abs_exp(x, 1)
    e2 = field.sigma_abs_exp(x, 2)
    assert e1 + e2 == x.norm().degree


def test_conj_fixes_norm(f3):
    x = f3.elem(Poly.parse(3, "1,2"), Poly.parse(3, "2"))
    assert x.conj().norm() == x.norm()
    assert (x + x.conj()).b.is_zero


# -- continued fraction and unit ---------------------------------------------------


def test_cf_expansion_periodic(f3):
    quotients, start, length = cf_expansion(f3.d, 20)
    assert length >= 1
    # the expansion of sqrt(T^2+1) over F_3 has a purely periodic tail
    assert start >= 1


@pytest.mark.parametrize("fix", ["f3", "f5"])
def test_fundamental_unit(fix, request):
    field = request.getfixturevalue(fix)
    u = field.unit
    assert u.abs_exp == 1                      # |u| = q for both defaults
    assert u.norm_unit in range(1, field.q)    # Norm(u) in F_q^x
    assert u.certified
    # u * u^{-1} = 1
    prod = u.u * field.unit_inverse()
    assert prod.a == Poly.const(field.q, 1) and prod.b.is_zero


def test_unit_power_norms(f3):
    for r in (-2, -1, 0, 1, 2, 3):
        ur = f3.unit_power(r)
        n = ur.norm()
        assert n.degree == 0 and n.coeff(0) != 0


# -- S-normalization ---------------------------------------------------------------


def test_canonical_generators_window(f3):
    q = f3.q
    N = 3
    for pi in enumerate_prime_ideals(f3, N):
        v = pi.rep.gen
        n = pi.norm_exp
        gens = f3.canonical_generators(v)
        assert len(gens) == q - 1
        e = f3.unit.abs_exp
        for g in gens:
            e1 = f3.sigma_abs_exp(g, 1)
            e2 = f3.sigma_abs_exp(g, 2)
            # |s1| strictly above the lower edge, weakly below the upper;
            # |s2| mirrored, and the product is exactly the norm
            assert n - e < 2 * e1 <= n + e
            assert n - e <= 2 * e2 < n + e
            assert e1 + e2 == n


# -- prime ideals: counts against the splitting oracle ------------------------------


@pytest.mark.parametrize("fix", ["f3", "f5"])
def test_prime_ideal_counts(fix, request):
    field = request.getfixturevalue(fix)
    primes = enumerate_prime_ideals(field, 4)
    by_exp = {}
    for pi in primes:
        by_exp[pi.norm_exp] = by_exp.get(pi.norm_exp, 0) + 1
    for n in range(1, 5):
        expected = 0
        s, i, r = splitting_counts(field.d, n)
        expected += 2 * s + r
        if n % 2 == 0:
            s2, i2, r2 = splitting_counts(field.d, n // 2)
            expected += i2
        assert by_exp.get(n, 0) == expected, n


def test_split_prime_membership(f3):
    for pi in enumerate_prime_ideals(f3, 2):
        if pi.kind != "split":
            continue
        v = pi.rep.gen
        # membership: a + b t = 0 mod P with t the chosen residue sqrt
        assert ((v.a + v.b * pi.root) % pi.P).is_zero
        t2 = (pi.root * pi.root - f3.d) % pi.P
        assert t2.is_zero


def test_generator_norm_is_prime_power(f3):
    for pi in enumerate_prime_ideals(f3, 3):
        n = pi.rep.gen.norm()
        m = n.monic()
        if pi.kind == "inert":
            assert m == pi.P * pi.P
        else:
            assert m == pi.P


def test_find_generator_failure_path(f3):
    P = Poly.parse(3, "0,1")  # T, splits in F_3(T)(sqrt(T^2+1))
    t = residue_sqrt(f3.d, P)
    with pytest.raises(GeneratorSearchError):
        find_generator(f3, P, t, box_bound=0)


# -- ideal table ---------------------------------------------------------------------


def test_ideal_table_euler_product(f3):
    """#ideals of norm q^n from the table equals the coefficient of x^n in
    prod over primes of 1/(1 - x^{norm exp}), computed from splitting data
    alone (independent of the table's recursion)."""
    max_n = 4
    table = IdealTable(f3, max_n)
    prime_exps = []
    for deg in range(1, max_n + 1):
        s, i, r = splitting_counts(f3.d, deg)
        prime_exps += [deg] * (2 * s + r)
        if 2 * deg <= max_n:
            prime_exps += [2 * deg] * i
    coeffs = [1] + [0] * max_n
    for e in prime_exps:
        for n in range(e, max_n + 1):
            coeffs[n] += coeffs[n - e]
    for n in range(0, max_n + 1):
        assert len(table.of_norm_exp(n)) == coeffs[n], n


def test_ideal_table_divisors_and_product(f3):
    table = IdealTable(f3, 4)
    for entry in table.entries[:40]:
        for dv in table.divisors(entry):
            rest_exp = entry.norm_exp - dv.norm_exp
            assert rest_exp >= 0
        # product with the unit ideal is the identity
        one = table.of_norm_exp(0)[0]
        assert table.product(entry, one) is entry or \
            table.product(entry, one).fvec == entry.fvec


def test_mangoldt_mobius_on_ideals(f3):
    table = IdealTable(f3, 4)
    for entry in table.entries:
        lam = table.mangoldt(entry)
        mu = table.mobius(entry)
        fv = entry.fvec
        if len(fv) == 1:
            i, e = fv[0]
            assert lam == table.primes[i].norm_exp
            assert mu == (-1 if e == 1 else 0)
        elif len(fv) > 1:
            assert lam == 0
            assert mu == (0 if any(e > 1 for _, e in fv)
                          else (-1) ** len(fv))


def test_factor_element_roundtrip(f3):
    table = IdealTable(f3, 4)
    for entry in table.entries:
        if entry.norm_exp == 0:
            continue
        factors = factor_element(f3, entry.rep.gen,
                                 enumerate_prime_ideals(f3, entry.norm_exp))
        prod = f3.one()
        for pi, e in factors:
            for _ in range(e):
                prod = prod * pi.rep.gen
        # same ideal: the canonical generators coincide
        assert f3.canonical_generator(prod) == \
            f3.canonical_generator(entry.rep.gen)


# -- principality ---------------------------------------------------------------------


@pytest.mark.parametrize("fix", ["f3", "f5"])
def test_principality_spot_check(fix, request):
    field = request.getfixturevalue(fix)
    rep = principality_spot_check(field, 4)
    assert rep.ok and rep.checked > 0


def test_principality_synthetic_failure(f3):
    rep = principality_spot_check(f3, 2, box_bound=0)
    assert not rep.ok and rep.failures
