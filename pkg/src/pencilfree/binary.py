"""Dense univariate polynomials over Q and binary forms in (a, b).

Univariate polynomials are plain lists of :class:`Fraction`, lowest degree
first, without trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from sympy import divisors

from .poly import AB, Poly

UPoly = List[Fraction]


def _trim(u: list) -> list:
    u = list(u)
    while u and not u[-1]:
        u.pop()
    return u


def upoly_derivative(u: Sequence[Fraction]) -> UPoly:
    return _trim([i * c for i, c in enumerate(u)][1:])


def upoly_divmod(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[UPoly, UPoly]:
    v = _trim(v)
    if not v:
        raise ZeroDivisionError("division by zero polynomial")
    r = [Fraction(c) for c in _trim(u)]
    q = [Fraction(0)] * max(len(r) - len(v) + 1, 0)
    lv = v[-1]
    while len(r) >= len(v):
        c = r[-1] / lv
        k = len(r) - len(v)
        q[k] = c
        for i, cv in enumerate(v):
            r[i + k] -= c * cv
        r = _trim(r)
    return _trim(q), r


def upoly_monic(u: Sequence[Fraction]) -> UPoly:
    u = _trim(u)
    return [c / u[-1] for c in u] if u else []


def upoly_gcd(u: Sequence[Fraction], v: Sequence[Fraction]) -> UPoly:
    """Monic gcd (``[]`` only when both inputs are zero)."""
    a, b = _trim(u), _trim(v)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_mul(u: Sequence[Fraction], v: Sequence[Fraction]) -> UPoly:
    if not u or not v:
        return []
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return _trim(out)


def upoly_eval(u: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(u):
        acc = acc * t + c
    return acc


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> UPoly:
    """Newton interpolation through the points (xs[i], ys[i])."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: UPoly = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        out = upoly_mul(out, [-Fraction(xs[i]), Fraction(1)]) or [Fraction(0)]
        out[0] += coef[i]
    return _trim(out)


def squarefree_decomposition(u: Sequence[Fraction]) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities (non-constant only)."""
    f = upoly_monic(u)
    if len(f) <= 1:
        return []
    out = []
    df = upoly_derivative(f)
    a = upoly_gcd(f, df)
    b = upoly_divmod(f, a)[0]
    c = upoly_divmod(df, a)[0]
    d = _sub(c, upoly_derivative(b))
    i = 1
    while len(b) > 1:
        a = upoly_gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = upoly_divmod(b, a)[0]
        c = upoly_divmod(d, a)[0]
        d = _sub(c, upoly_derivative(b))
        i += 1
    return out


def _sub(u, v):
    n = max(len(u), len(v))
    return _trim([(u[i] if i < len(u) else 0) - (v[i] if i < len(v) else 0) for i in range(n)])


def integer_coefficients(u: Sequence[Fraction]) -> List[int]:
    """Primitive integer multiple of u."""
    u = _trim(u)
    l = reduce(lambda p, q: p * q // math.gcd(p, q), (c.denominator for c in u), 1)
    ints = [int(c * l) for c in u]
    g = reduce(math.gcd, ints, 0)
    return [c // g for c in ints] if g else ints


def rational_roots(u: Sequence[Fraction]) -> List[Fraction]:
    """All distinct rational roots, by the rational root theorem."""
    ints = integer_coefficients(u)
    roots = []
    if not ints:
        raise ValueError("zero polynomial has every root")
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) <= 1:
        return roots
    lead, const = abs(ints[-1]), abs(ints[0])
    ps, qs = divisors(const), divisors(lead)
    cand = {Fraction(s * p, q) for p in ps for q in qs for s in (1, -1)}
    for r in sorted(cand):
        if upoly_eval(ints, r) == 0:
            roots.append(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# binary forms


def binary_form(coeffs_low_to_high: Sequence[Fraction], degree: int) -> Poly:
    """The form sum_j c_j a^(degree - j) b^j, i.e. the homogenisation of sum_j c_j t^j with t = b/a."""
    return Poly({(degree - j, j): c for j, c in enumerate(coeffs_low_to_high) if c}, AB)


def dehomogenize(form: Poly) -> Tuple[UPoly, int]:
    """(coefficients of form(1, t), power of ``a`` dividing form)."""
    if form.vars != AB:
        raise ValueError("expected a binary form in (a, b)")
    d = form.degree()
    if d is None:
        return [], 0
    out = [Fraction(0)] * (d + 1)
    for (i, j), c in form.terms.items():
        out[j] += c
    a_power = min(i for (i, j) in form.terms)
    return _trim(out), a_power


def normalize_form(form: Poly) -> Poly:
    """Primitive integer form with positive leading coefficient in lex (a > b) order."""
    if not form:
        return form
    return form.primitive(key=lambda m: m)
