import random
from fractions import Fraction

import pytest
import sympy

from conftest import SYMS, random_form, to_sympy
from pencilfree import linalg, logtangent
from pencilfree.errors import NotReducedError, IdentityViolated
from pencilfree.logtangent import (SyzygyVector, canonical_syzygy, freeness, in_syzygy_span, saito_check,
                                   syzygy_min_gens, tjurina_total, uv_decomposition, wedge_ideal_degree,
                                   zk_degree)
from pencilfree.poly import XYZ, Poly, PolyVector3, gradient, parse_polynomial

P = parse_polynomial


def vec(*comps):
    return PolyVector3(*(P(c) for c in comps))


def sympy_tjurina(F: Poly) -> int:
    """Staircase count on sympy's Groebner basis of the Jacobian ideal."""
    syms = [SYMS[v] for v in XYZ]
    G = sympy.groebner([to_sympy(d) for d in gradient(F) if d], *syms, order="grevlex")
    leads = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    D = 3 * F.degree() + 2

    def count(d):
        return sum(1 for i in range(d + 1) for j in range(d + 1 - i)
                   if not any(l[0] <= i and l[1] <= j and l[2] <= d - i - j for l in leads))

    assert count(D) == count(D + 1)
    return count(D)


# -- Tjurina numbers -----------------------------------------------------


@pytest.mark.parametrize("F, tau", [
    ("x^2 + y^2 + z^2", 0),
    ("x*y*z", 3),
    ("y^2*z - x^3", 2),
    ("x^3 - y^3", 4),
    ("x", 0),
])
def test_tjurina_examples(F, tau):
    assert tjurina_total(P(F)) == tau


def test_tjurina_matches_sympy_oracle():
    rng = random.Random(31)
    checked = 0
    while checked < 8:
        lines = [random_form(rng, 1) for _ in range(rng.randint(2, 5))]
        F = Poly.constant(1)
        for l in lines:
            F = F * l
        if not logtangent.is_reduced(F):
            continue
        assert tjurina_total(F) == sympy_tjurina(F)
        checked += 1


def test_tjurina_refuses_non_reduced():
    with pytest.raises(NotReducedError):
        tjurina_total(P("x^2*y"))


# -- syzygies --------------------------------------------------------------


def test_syzygies_of_a_line():
    S = syzygy_min_gens(P("x"))
    assert S.degrees == (0, 0)
    span = [[c.constant_value() if c else 0 for c in g.s] for g in S.generators]
    assert linalg.rank(span + [[0, 1, 0], [0, 0, 1]], 3) == 2


def test_syzygies_of_the_triangle():
    F = P("x*y*z")
    S = syzygy_min_gens(F)
    assert S.degrees == (1, 1)
    for g in S.generators:
        assert not g.s.dot(gradient(F))
    # no constant syzygy: the 3x3 system (yz, xz, xy) . c = 0 only has c = 0
    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert linalg.kernel_fraction(rows, 3) == []


def test_syzygies_of_smooth_curves_are_koszul():
    F = P("x^3 + y^3 + z^3")
    assert syzygy_min_gens(F).degrees == (2, 2, 2)
    rng = random.Random(32)
    for d in (3, 4):
        while True:
            G = random_form(rng, d, density=0.9)
            if tjurina_total(G) == 0:
                break
        assert syzygy_min_gens(G).degrees == (d - 1,) * 3


def test_prime_filter_does_not_change_results():
    for F in ("x*y*z*(x + y + z)", "(x^3 - y^3)*(y^3 - z^3)", "y^2*z - x^3", "x*y*(x - y)*(x - z)*(y - z)*z"):
        a = syzygy_min_gens(P(F), prime_filter=True)
        b = syzygy_min_gens(P(F), prime_filter=False)
        assert a.degrees == b.degrees


def test_syzygy_vector_validates():
    with pytest.raises(ValueError):
        SyzygyVector(vec("1", "0", "0"), 0, P("x*y*z"))


# -- Saito criterion and freeness ---------------------------------------


def test_saito_triangle():
    F = P("x*y*z")
    s1 = SyzygyVector(vec("x", "-y", "0"), 1, F)
    s2 = SyzygyVector(vec("0", "y", "-z"), 1, F)
    assert saito_check(s1, s2, F) == 3


def test_saito_concurrent_lines():
    F = P("x^3 + 3*x^2*y + 2*x*y^2")
    Fx, Fy = F.diff("x"), F.diff("y")
    s1 = SyzygyVector(vec("0", "0", "1"), 0, F)
    s2 = SyzygyVector(PolyVector3(-Fy, Fx, P("0")), 2, F)
    # det = -(x*Fx + y*Fy) = -3F by Euler
    assert saito_check(s1, s2, F) == -3


def test_saito_repeated_row_fails():
    F = P("x*y*z")
    s = SyzygyVector(vec("x", "-y", "0"), 1, F)
    assert saito_check(s, s, F) is None


def test_saito_degree_precondition():
    F = P("x*y*z")
    s = SyzygyVector(vec("x", "-y", "0"), 1, F)
    t = SyzygyVector(PolyVector3(*(c * P("x") for c in s.s)), 2, F)
    with pytest.raises(ValueError):
        saito_check(s, t, F)


@pytest.mark.parametrize("F, free, degrees", [
    ("x*y*z", True, (1, 1)),
    ("x^3 + y^3 + z^3", False, (2, 2, 2)),
    ("(x^3 - y^3)*(y^3 - z^3)*(x^3 - z^3)", True, (4, 4)),
    ("x*y*(x - y)*(x - z)*(y - z)*z", True, (2, 3)),
    ("x*y*z*(x + y + z)", False, (2, 2, 2)),
])
def test_freeness_examples(F, free, degrees):
    fr = freeness(P(F))
    assert fr.free is free
    assert fr.min_gen_degrees == degrees
    if free:
        d = P(F).degree()
        a, b = fr.exponents
        assert a + b == d - 1 and fr.saito_constant != 0
        assert fr.tjurina == (d - 1) ** 2 - a * b


def test_freeness_saito_fault_is_an_identity_violation(monkeypatch):
    monkeypatch.setattr(logtangent, "saito_check", lambda s1, s2, F: None)
    with pytest.raises(IdentityViolated):
        freeness(P("x*y*z"))


def test_free_curve_tjurina_tripwire(monkeypatch):
    monkeypatch.setattr(logtangent, "tjurina_total", lambda F, budget=None: 0)
    with pytest.raises(IdentityViolated):
        freeness(P("x*y*z"))


# -- pencil objects --------------------------------------------------------


def test_canonical_syzygy_examples():
    s = canonical_syzygy(P("x"), P("y"), P("x*y"))
    assert s.s == vec("0", "0", "1") and s.degree == 0
    Fk = P("(x^3 - y^3)*(y^3 - z^3)")
    s = canonical_syzygy(P("x^3 - y^3"), P("y^3 - z^3"), Fk)
    assert s.s == vec("9*y^2*z^2", "9*x^2*z^2", "9*x^2*y^2") and s.degree == 4


def test_canonical_syzygy_rejects_non_members():
    with pytest.raises(ValueError):
        canonical_syzygy(P("x"), P("y"), P("x*z"))
    with pytest.raises(ValueError):
        canonical_syzygy(P("x"), P("y"), P("x^2 + y^2 + z^2"))
    # x^2 + y^2 is the product of the conjugate members x + iy and x - iy, hence accepted
    canonical_syzygy(P("x"), P("y"), P("x^2 + y^2"))


def test_canonical_syzygy_lies_in_the_syzygy_module():
    f, g = P("x^3 - y^3"), P("y^3 - z^3")
    Fk = f * g * (f + g)
    S = syzygy_min_gens(Fk)
    assert in_syzygy_span(S, canonical_syzygy(f, g, Fk))


@pytest.mark.parametrize("n, k, tau, z", [(2, 3, 19, 0), (2, 2, 4, 3), (3, 3, 45, 3)])
def test_zk_degree_examples(n, k, tau, z):
    assert zk_degree(n, k, tau) == z


def test_zk_degree_negative_is_an_identity_violation():
    with pytest.raises(IdentityViolated):
        zk_degree(2, 2, 8)


def test_uv_examples():
    f, g = P("x^2 - z^2"), P("y^2 - z^2")
    assert uv_decomposition([(3, 5)], f, g) == (P("3"), P("5"))
    assert uv_decomposition([(1, 0), (0, 1)], f, g) == (g, f)
    with pytest.raises(ValueError):
        uv_decomposition([(1, 1), (2, 2)], f, g)


def test_uv_identity_on_random_members():
    rng = random.Random(33)
    f, g = P("y*(x - z)"), P("x*(y - z)")
    for _ in range(20):
        members = set()
        while len(members) < 3:
            a, b = rng.randint(-5, 5), rng.randint(-5, 5)
            if (a, b) != (0, 0):
                members.add((Fraction(1), Fraction(0)) if b == 0 else (Fraction(a, b), Fraction(1)))
        U, V = uv_decomposition(sorted(members), f, g)
        F = Poly.constant(1)
        for a, b in members:
            F = F * (f.scale(a) + g.scale(b))
        assert gradient(f).scale(U) + gradient(g).scale(V) == gradient(F)


@pytest.mark.parametrize("f, g, length", [
    ("x", "y", 0),
    ("y*(x - z)", "x*(y - z)", 3),
    ("x^3 - y^3", "y^3 - z^3", 12),
])
def test_wedge_ideal_degree_examples(f, g, length):
    assert wedge_ideal_degree(P(f), P(g)) == length
