import random
from fractions import Fraction

import pytest
import sympy

from pencilfree.poly import XYZ, Poly

SYMS = {v: sympy.Symbol(v) for v in ("x", "y", "z", "a", "b", "t")}


def to_sympy(p: Poly):
    """Independent oracle representation of a polynomial."""
    expr = sympy.Integer(0)
    for mon, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in zip(p.vars, mon):
            term *= SYMS[v] ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, vars=XYZ) -> Poly:
    P = sympy.Poly(sympy.expand(expr), *[SYMS[v] for v in vars])
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()}, vars)


def random_form(rng: random.Random, d: int, vars=XYZ, lo=-4, hi=4, density=0.6) -> Poly:
    n = len(vars)

    def mons(d, n):
        if n == 1:
            yield (d,)
            return
        for i in range(d, -1, -1):
            for rest in mons(d - i, n - 1):
                yield (i,) + rest

    terms = {m: rng.randint(lo, hi) for m in mons(d, n) if rng.random() < density}
    p = Poly(terms, vars)
    return p if p else Poly({(d,) + (0,) * (n - 1): 1}, vars)


@pytest.fixture
def rng():
    return random.Random(12345)
