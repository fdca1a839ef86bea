"""Shared builders for the test suite.

Random objects are always drawn from a caller-seeded random.Random so that
every test run sees the same sample; hypothesis covers the genuinely
randomized side.
"""

from fractions import Fraction

from mfkit.poly import Polynomial, Variable
from mfkit import direct_sum, make_factorization

X = Variable("x")
Y = Variable("y")
Z = Variable("z")

PX = Polynomial.var(X)
PY = Polynomial.var(Y)
PZ = Polynomial.var(Z)


def rand_poly(rng, variables, max_terms=3, max_deg=3, nonzero=False):
    """Small random polynomial in the given variables."""
    out = Polynomial.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = Polynomial.const(Fraction(rng.randint(-4, 4)))
        for _ in range(rng.randint(0, max_deg)):
            term = term * Polynomial.var(rng.choice(variables))
        out = out + term
    if nonzero and not out:
        out = Polynomial.var(rng.choice(variables)) + rng.randint(1, 3)
    return out


def rand_factorization(rng, variables, max_size=2):
    """Random factorization of block rank <= max_size over the variables.

    Shapes drawn: rank one (u, v); the anti-diagonal 2x2 self-pair; and the
    rank-two diagonal sum of (u, v) with (v, u).  All have potential u*v.
    """
    u = rand_poly(rng, variables, nonzero=True)
    v = rand_poly(rng, variables, nonzero=True)
    shapes = ["rank1"]
    if max_size >= 2:
        shapes += ["antidiag", "diagsum"]
    shape = rng.choice(shapes)
    if shape == "rank1":
        return make_factorization([[u]], [[v]], u * v)
    if shape == "antidiag":
        m = [[Polynomial.zero(), u], [v, Polynomial.zero()]]
        return make_factorization(m, m, u * v)
    return direct_sum(
        make_factorization([[u]], [[v]], u * v),
        make_factorization([[v]], [[u]], u * v),
    )
