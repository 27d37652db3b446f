import itertools
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from envshift import linalg


def _brute_det(m):
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sgn = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sgn = -sgn
        v = Fraction(1)
        for r in range(n):
            v *= m[r][perm[r]]
        total += sgn * v
    return total


def test_rank_known_cases():
    assert linalg.rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert linalg.rank([[Fraction(0), Fraction(0)]]) == 0
    assert linalg.rank([]) == 0
    assert linalg.rank([[Fraction(1, 3), Fraction(0)], [Fraction(5), Fraction(7, 2)]]) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_rref_pivot_count(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    _, pivots = linalg.rref(rows)
    assert linalg.rank(rows) == len(pivots)


def test_nullspace_orthogonality_and_dimension():
    rows = [[Fraction(x) for x in r] for r in [[1, 2, 3], [2, 4, 6], [0, 1, 1]]]
    ns = linalg.nullspace(rows)
    assert len(ns) == 3 - linalg.rank(rows)
    for v in ns:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0


def test_charpoly_matches_brute_determinant():
    rng = random.Random(9)
    for n in (2, 3, 4):
        for _ in range(5):
            m = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
            cs = linalg.charpoly(m)
            assert cs[0] == 1
            assert cs[1] == -linalg.trace(m)
            # det(tI - m) evaluated at t=0 is cs[n] = (-1)^n det(m)
            assert cs[n] == (-1) ** n * _brute_det(m)


def test_semisimple_detection():
    I2 = linalg.identity(2)
    assert linalg.is_semisimple(I2)
    nilp = [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]]
    assert not linalg.is_semisimple(nilp)
    rot = [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
    assert linalg.is_semisimple(rot)  # diagonalizable over C
    jordan = [[Fraction(1), Fraction(1), Fraction(0)],
              [Fraction(0), Fraction(1), Fraction(0)],
              [Fraction(0), Fraction(0), Fraction(2)]]
    assert not linalg.is_semisimple(jordan)


def test_intersection_dim():
    e1 = [Fraction(1), Fraction(0), Fraction(0)]
    e2 = [Fraction(0), Fraction(1), Fraction(0)]
    e3 = [Fraction(0), Fraction(0), Fraction(1)]
    plus = [[a + b for a, b in zip(e1, e2)]]
    assert linalg.intersection_dim([e1, e2], [e2, e3]) == 1
    assert linalg.intersection_dim([e1], [e2]) == 0
    assert linalg.intersection_dim([e1, e2], plus) == 1


def test_poly_gcd_and_squarefree():
    # p = (x-1)^2 (x+2) = x^3 - 3x + 2
    p = [Fraction(2), Fraction(-3), Fraction(0), Fraction(1)]
    sf = linalg.squarefree_part(p)
    # squarefree part should be proportional to (x-1)(x+2) = x^2 + x - 2
    lead = sf[-1]
    monic = [c / lead for c in sf]
    assert monic == [Fraction(-2), Fraction(1), Fraction(1)]
