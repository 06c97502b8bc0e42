import itertools
import random

import pytest
import sympy

from conftest import SYMS, random_form, to_sympy
from pencilfree.ideal import (Budget, BudgetExceeded, Ideal, SchemeNotFinite, TermOrder, colon,
                              eliminate_parameters, groebner_basis, hilbert_function, intersect,
                              normal_form, saturate, saturate_irrelevant, scheme_degree)
from pencilfree.poly import XYZ, gradient, multivariate_gcd, parse_polynomial

P = parse_polynomial


def I(*gens, vars=XYZ):
    return Ideal([P(g, vars) for g in gens], vars)


def basis_strs(G):
    return [str(g) for g in G.basis]


# -- Groebner bases ------------------------------------------------------


def test_gb_already_reduced():
    assert basis_strs(groebner_basis(I("x", "y"))) == ["x", "y"]


def test_gb_coordinate_triangle():
    assert sorted(basis_strs(groebner_basis(I("y*z", "x*z", "x*y")))) == ["x*y", "x*z", "y*z"]


def test_gb_hand_buchberger():
    # S(x^2, xy + y^2) = y*x^2 - x*(xy + y^2) = -x*y^2 -> reduces to y^3
    G = groebner_basis(I("x^2", "x*y + y^2"))
    assert set(basis_strs(G)) == {"x^2", "x*y + y^2", "y^3"}


def _sympy_reduced_basis(gens, order):
    syms = [SYMS[v] for v in XYZ]
    G = sympy.groebner([to_sympy(g) for g in gens], *syms, order=order)
    out = set()
    for e in G.exprs:
        p = sympy.Poly(e, *syms)
        out.add(sympy.expand(e / p.LC(order=order)))
    return out


@pytest.mark.parametrize("order, sym_order", [(TermOrder("grevlex"), "grevlex"), (TermOrder("lex"), "lex")])
def test_gb_matches_sympy_on_random_ideals(order, sym_order):
    rng = random.Random(21)
    for _ in range(15):
        gens = [random_form(rng, rng.randint(1, 3), density=0.4) for _ in range(rng.randint(2, 3))]
        G = groebner_basis(Ideal(gens), order)
        assert {to_sympy(g) for g in G.basis} == _sympy_reduced_basis(gens, sym_order)


def test_gb_s_pairs_reduce_to_zero_and_members_reduce():
    rng = random.Random(22)
    key = TermOrder().key_function(XYZ)
    for _ in range(10):
        gens = [random_form(rng, rng.randint(1, 3)) for _ in range(3)]
        G = groebner_basis(Ideal(gens))
        for g in gens:
            assert not normal_form(g, G)
        for p, q in itertools.combinations(G.basis, 2):
            (mp, cp), (mq, cq) = p.leading_term(key), q.leading_term(key)
            lcm = tuple(max(a, b) for a, b in zip(mp, mq))
            s = p.mul_monomial([l - a for l, a in zip(lcm, mp)]).scale(1 / cp) - \
                q.mul_monomial([l - a for l, a in zip(lcm, mq)]).scale(1 / cq)
            assert not normal_form(s, G)


def test_gb_is_deterministic_and_generator_independent():
    a = groebner_basis(I("x^2 - y*z", "y^2 - x*z"))
    b = groebner_basis(I("y^2 - x*z", "x^2 - y*z", "x^2 + y^2 - y*z - x*z"))
    assert a.basis == b.basis


def test_block_order_eliminates():
    R = ("t", "x", "y", "z")
    G = groebner_basis(Ideal([P("t*x - y", R), P("t*y - z", R)], R), TermOrder("block", ("t",)))
    free = [g for g in G.basis if not g.involves("t")]
    assert free == [P("y^2 - x*z", R)]


def test_unknown_order():
    with pytest.raises(ValueError):
        TermOrder("deglex")


def test_budget_exceeded_is_typed():
    with pytest.raises(BudgetExceeded):
        groebner_basis(Ideal(list(gradient(P("x^5 + y^5 + z^5 + x^2*y^2*z")))), budget=Budget(max_basis=2))


# -- normal forms --------------------------------------------------------


def test_normal_form_examples():
    assert not normal_form(P("x^2*y"), groebner_basis(I("x", "y")))
    assert normal_form(P("z^3"), groebner_basis(I("x*y", "x*z", "y*z"))) == P("z^3")
    # x^2 + xy -> xy (x^2 removed) -> xy - (xy + y^2) = -y^2
    assert normal_form(P("x^2 + x*y"), groebner_basis(I("x^2", "x*y + y^2", "y^3"))) == P("-y^2")


# -- colon, saturation, intersection -------------------------------------


def test_colon_and_saturation_by_variable():
    # (x^2, xy) = (x) ∩ (x^2, y): x*x and 1*x^2 lie in it, so saturating by x gives the unit ideal
    assert set(basis_strs(groebner_basis(colon(I("x^2", "x*y"), P("x"))))) == {"x", "y"}
    assert basis_strs(groebner_basis(saturate(I("x^2", "x*y"), P("x")))) == ["1"]
    # the embedded component (x^2, y) sits at the point (0:0:1), so (x, y, z) does not remove it
    assert set(basis_strs(groebner_basis(saturate_irrelevant(I("x^2", "x*y"))))) == {"x^2", "x*y"}


def test_saturate_irrelevant_examples():
    assert set(basis_strs(groebner_basis(saturate_irrelevant(I("x", "y"))))) == {"x", "y"}
    assert basis_strs(groebner_basis(saturate_irrelevant(I("x^2", "y", "z")))) == ["1"]
    assert basis_strs(groebner_basis(saturate_irrelevant(I("x^2", "x*y", "x*z")))) == ["x"]


def test_saturate_by_a_form():
    # (x^2*y, x^2*z) = x^2*(y, z): removing the line x = 0 leaves the point (y, z)
    assert set(basis_strs(groebner_basis(saturate(I("x^2*y", "x^2*z"), P("x + y"))))) == {"x^2*y", "x^2*z"}
    assert set(basis_strs(groebner_basis(saturate(I("x^2*y", "x^2*z"), P("x"))))) == {"y", "z"}


def test_saturation_idempotent():
    rng = random.Random(23)
    for _ in range(8):
        J = Ideal([random_form(rng, 2) * P("x"), random_form(rng, 3)])
        once = saturate_irrelevant(J)
        twice = saturate_irrelevant(once)
        assert groebner_basis(once).basis == groebner_basis(twice).basis
        s1 = saturate(J, P("x"))
        assert groebner_basis(saturate(s1, P("x"))).basis == groebner_basis(s1).basis


def test_intersection_matches_lcm_for_principal_ideals():
    rng = random.Random(24)
    for _ in range(8):
        a, b, c = (random_form(rng, rng.randint(1, 2)) for _ in range(3))
        got = intersect(Ideal([a * b]), Ideal([b * c]))
        g = multivariate_gcd(a * b, b * c)
        expected = (a * b * b * c).divexact(g)
        assert groebner_basis(got).basis == groebner_basis(Ideal([expected])).basis


# -- degrees -------------------------------------------------------------


@pytest.mark.parametrize("gens, expected", [
    (("x", "y"), 1),
    (("y*z", "x*z", "x*y"), 3),
    (("x^2", "y"), 2),
    (("x^2", "y", "z"), 0),
])
def test_scheme_degree_examples(gens, expected):
    assert scheme_degree(I(*gens)) == expected


def test_scheme_degree_not_finite():
    with pytest.raises(SchemeNotFinite):
        scheme_degree(I("x*y", "x*z"))


def test_hilbert_function_values():
    G = groebner_basis(I("x^2", "y"))
    assert [hilbert_function(G, d) for d in range(5)] == [1, 2, 2, 2, 2]


def test_scheme_degree_invariant_under_generators_and_order():
    rng = random.Random(25)
    for _ in range(6):
        A, B = random_form(rng, 2), random_form(rng, 3)
        if not multivariate_gcd(A, B).is_constant():
            continue
        d1 = scheme_degree(Ideal([A, B]))
        d2 = scheme_degree(Ideal([A + B * P("0"), B + A * P("x"), A * P("y")]))
        assert d1 == d2 == 6


def test_bezout_on_random_forms():
    rng = random.Random(26)
    done = 0
    while done < 15:
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        A, B = random_form(rng, p), random_form(rng, q)
        if not multivariate_gcd(A, B).is_constant():
            continue
        assert scheme_degree(saturate_irrelevant(Ideal([A, B]))) == p * q
        done += 1


# -- elimination ---------------------------------------------------------

R5 = ("a", "b", "x", "y", "z")


def test_eliminate_toy_example():
    J = Ideal([P("x", R5), P("y", R5), P("a*z - b*z", R5)], R5)
    assert str(eliminate_parameters(saturate_irrelevant(J, block=XYZ))) == "a - b"
    assert not eliminate_parameters(J)


def test_eliminate_without_parameter_elements():
    J = Ideal([P("a*x - b*y", R5), P("z", R5)], R5)
    assert not eliminate_parameters(J)


def test_elimination_gives_the_support_of_the_fermat_discriminant():
    f, g = P("x^3 - y^3", R5), P("y^3 - z^3", R5)
    h = P("a", R5) * f + P("b", R5) * g
    J = saturate_irrelevant(Ideal([h.diff(v) for v in XYZ], R5), block=XYZ)
    # only the three roots survive elimination; multiplicities come from the norm route
    assert eliminate_parameters(J) == P("a^2*b - a*b^2", ("a", "b"))
