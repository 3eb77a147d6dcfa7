"""Vectorized sieves against the scalar oracles."""

import pytest

from realquad.fqpoly import (Poly, enumerate_monic, is_irreducible,
                             quadratic_character)
from realquad.sieving import (irreducible_bitmaps, monic_irreducibles,
                              splitting_counts, splitting_sign_vector)


@pytest.mark.parametrize("q", [3, 5])
def test_bitmap_matches_rabin(q):
    bitmaps = irreducible_bitmaps(q, 5)
    for deg in range(1, 6):
        bm = bitmaps[deg]
        for idx, f in enumerate(enumerate_monic(q, deg)):
            code = 0
            for i in range(deg - 1, -1, -1):
                code = code * q + f.coeff(i)
            assert bool(bm[code]) == is_irreducible(f), f


def test_monic_irreducibles_counts():
    assert len(monic_irreducibles(3, 1)) == 3
    assert len(monic_irreducibles(3, 2)) == 3
    assert len(monic_irreducibles(3, 3)) == 8
    assert len(monic_irreducibles(5, 4)) == 150


@pytest.mark.parametrize("q,d_text", [(3, "1,0,1"), (5, "2,0,1"),
                                      (3, "2,1,0,0,1")])
def test_splitting_sign_matches_character_oracle(q, d_text):
    d = Poly.parse(q, d_text)
    for deg in (1, 2, 3):
        signs = splitting_sign_vector(d, deg)
        for P in monic_irreducibles(q, deg):
            code = 0
            for i in range(deg - 1, -1, -1):
                code = code * q + P.coeff(i)
            kind = quadratic_character(d, P)  # residue exponentiation route
            expected = {"split": 1, "inert": -1, "ramified": 0}[kind]
            assert int(signs[code]) == expected, P


@pytest.mark.parametrize("q,d_text", [(3, "1,0,1"), (5, "2,0,1")])
def test_splitting_counts_total(q, d_text):
    d = Poly.parse(q, d_text)
    for deg in (1, 2, 3, 4):
        s, i, r = splitting_counts(d, deg)
        total = len(monic_irreducibles(q, deg))
        assert s + i + r == total
        # ramified primes divide d
        assert r == sum(1 for P in monic_irreducibles(q, deg)
                        if (d % P).is_zero)
