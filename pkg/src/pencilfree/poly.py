"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients over a fixed, ordered tuple of
variable names.  The default variables are ``("x", "y", "z")`` with
``x > y > z``; parameter rings such as ``("a", "b")`` or
``("a", "b", "x", "y", "z")`` are built the same way.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

XYZ = ("x", "y", "z")
AB = ("a", "b")

Scalar = Fraction
Number = Union[int, Fraction]
Monomial = tuple


class ParseError(ValueError):
    """Malformed polynomial text."""


class UnknownVariableError(ParseError):
    pass


class NotExactError(ArithmeticError):
    """Raised by :meth:`Poly.divexact` when the division leaves a remainder."""


def grevlex_key(mon: Sequence[int]) -> tuple:
    """Sort key for degree reverse lexicographic order (larger key = larger monomial)."""
    return (sum(mon),) + tuple(-e for e in reversed(mon[1:]))


def _as_fraction(c: Number) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # gmpy2 / flint rationals both expose numerator/denominator
    return Fraction(int(c.numerator), int(c.denominator))


class Poly:
    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None, vars: Sequence[str] = XYZ):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for mon, c in terms.items():
                mon = tuple(int(e) for e in mon)
                if len(mon) != n or any(e < 0 for e in mon):
                    raise ValueError(f"bad exponent vector {mon} for variables {self.vars}")
                c = _as_fraction(c)
                if c:
                    clean[mon] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.vars = vars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: Number, vars: Sequence[str] = XYZ) -> "Poly":
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] = XYZ) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariableError(f"unknown variable {name!r}")
        mon = tuple(1 if v == name else 0 for v in vars)
        return cls({mon: 1}, vars)

    @classmethod
    def monomial(cls, mon: Sequence[int], c: Number = 1, vars: Sequence[str] = XYZ) -> "Poly":
        return cls({tuple(mon): c}, vars)

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.vars == other.vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(other, self.vars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.vars)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.vars)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: Number) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly._raw({}, self.vars)
        return Poly._raw({m: c * v for m, v in self._terms.items()}, self.vars)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if len(self._terms) < len(other._terms):
            a, b = self._terms, other._terms
        else:
            a, b = other._terms, self._terms
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c}, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, mon: Sequence[int], c: Number = 1) -> "Poly":
        c = _as_fraction(c)
        return Poly._raw(
            {tuple(i + j for i, j in zip(m, mon)): c * v for m, v in self._terms.items()} if c else {},
            self.vars,
        )

    # -- degrees -----------------------------------------------------------

    def degree(self) -> Optional[int]:
        """Total degree; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(m) for m in self._terms)

    def degree_in(self, names: Iterable[str]) -> Optional[int]:
        idx = [self.vars.index(v) for v in names]
        if not self._terms:
            return None
        return max(sum(m[i] for i in idx) for m in self._terms)

    def is_homogeneous(self, names: Optional[Iterable[str]] = None) -> bool:
        """Homogeneity in the given block of variables (all variables by default).

        The zero polynomial counts as homogeneous.
        """
        idx = range(len(self.vars)) if names is None else [self.vars.index(v) for v in names]
        degs = {sum(m[i] for i in idx) for m in self._terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self.vars), Fraction(0))

    def involves(self, name: str) -> bool:
        i = self.vars.index(name)
        return any(m[i] for m in self._terms)

    # -- order dependent views --------------------------------------------

    def sorted_terms(self, key=grevlex_key) -> list:
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, key=grevlex_key) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def coefficient(self, mon: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mon), Fraction(0))

    # -- normalisation -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive (0 for zero)."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        g = reduce(math.gcd, nums)
        l = reduce(lambda u, v: u * v // math.gcd(u, v), dens)
        return Fraction(abs(g), l)

    def primitive(self, key=grevlex_key) -> "Poly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_term(key)[1] < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, key=grevlex_key) -> "Poly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_term(key)[1])

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Poly._raw(out, self.vars)

    def subs(self, values: Mapping[str, Union["Poly", Number]], vars: Optional[Sequence[str]] = None) -> "Poly":
        """Substitute polynomials (in ring ``vars``) or scalars for variables.

        Variables not mentioned are kept and must exist in the target ring.
        """
        target = tuple(vars) if vars is not None else self.vars
        images = []
        for v in self.vars:
            if v in values:
                val = values[v]
                images.append(val if isinstance(val, Poly) else Poly.constant(val, target))
            else:
                images.append(Poly.var(v, target))
        for img in images:
            if img.vars != target:
                raise ValueError("substituted polynomial lives in the wrong ring")
        power_cache: dict = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        out = Poly._raw({}, target)
        for m, c in self._terms.items():
            term = Poly.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        total = Fraction(0)
        pt = [_as_fraction(v) for v in point]
        for m, c in self._terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def with_vars(self, new_vars: Sequence[str]) -> "Poly":
        """Re-embed in a ring whose variables include all variables actually used."""
        new_vars = tuple(new_vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos.append(new_vars.index(v))
            elif any(m[i] for m in self._terms):
                raise ValueError(f"variable {v!r} used but absent from {new_vars}")
            else:
                pos.append(None)
        out = {}
        for m, c in self._terms.items():
            nm = [0] * len(new_vars)
            for i, e in enumerate(m):
                if e:
                    nm[pos[i]] = e
            out[tuple(nm)] = c
        return Poly._raw(out, new_vars)

    # -- division ----------------------------------------------------------

    def divexact(self, other: "Poly") -> "Poly":
        """Exact quotient; raises :class:`NotExactError` if ``other`` does not divide."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        key = lambda m: m  # lex
        lm, lc = other.leading_term(key)
        if other.is_constant():
            return self.scale(1 / lc)
        rem = dict(self._terms)
        quot = {}
        others = list(other._terms.items())
        while rem:
            m = max(rem, key=key)
            c = rem[m]
            q = tuple(i - j for i, j in zip(m, lm))
            if any(e < 0 for e in q):
                raise NotExactError("inexact polynomial division")
            qc = c / lc
            quot[q] = qc
            for om, oc in others:
                t = tuple(i + j for i, j in zip(om, q))
                s = rem.get(t, 0) - qc * oc
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Poly._raw(quot, self.vars)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"Poly({to_str(self)!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# printing and parsing

def _mon_str(mon: Monomial, vars: tuple) -> str:
    parts = []
    for v, e in zip(vars, mon):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def to_str(p: Poly) -> str:
    """Canonical text form, terms in grevlex order; round-trips through :func:`parse_polynomial`."""
    if not p:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        ms = _mon_str(m, p.vars)
        if a.denominator == 1:
            cs = str(a.numerator)
        else:
            cs = f"({a.numerator}/{a.denominator})"
        if not ms:
            body = cs
        elif a == 1:
            body = ms
        else:
            body = f"{cs}*{ms}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None:
            if op not in "+-*^()/":
                raise ParseError(f"unexpected character {op!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    # expr   := sign? term (('+'|'-') term)*
    # term   := factor (('*'|'/') factor)*      '/' only by a nonzero constant
    # factor := base ('^' uint)?
    # base   := integer | variable | '(' expr ')'

    def __init__(self, text: str, vars: tuple):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            kind, val = self.peek()
            if kind in ("int", "name") or (kind == "op" and val == "("):
                raise ParseError("implicit multiplication is not accepted")
            raise ParseError(f"unexpected token {val!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                f = self.factor()
                if val == "*":
                    acc = acc * f
                else:
                    if not f.is_constant() or not f:
                        raise ParseError("division only by a nonzero constant")
                    acc = acc.scale(1 / f.constant_value())
            else:
                return acc

    def factor(self) -> Poly:
        base = self.base()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer")
            return base ** val
        return base

    def base(self) -> Poly:
        kind, val = self.take()
        if kind == "int":
            return Poly.constant(val, self.vars)
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariableError(f"unknown variable {val!r}")
            return Poly.var(val, self.vars)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError("unexpected end of expression" if kind is None else f"unexpected token {val!r}")


def parse_polynomial(text: str, vars: Sequence[str] = XYZ) -> Poly:
    """Parse ``text`` into a :class:`Poly` over ``vars``.

    >>> str(parse_polynomial("(x - y)^2"))
    'x^2 - 2*x*y + y^2'
    """
    return _Parser(text, tuple(vars)).parse()


# ---------------------------------------------------------------------------
# vectors of forms


@dataclass(frozen=True)
class PolyVector3:
    """Three polynomials, read as the derivation ``p*dx + q*dy + r*dz``."""

    p: Poly
    q: Poly
    r: Poly

    @property
    def components(self) -> tuple:
        return (self.p, self.q, self.r)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def is_zero(self) -> bool:
        return not (self.p or self.q or self.r)

    def degree(self) -> Optional[int]:
        """Common degree of the nonzero components (``None`` for the zero vector)."""
        degs = {c.degree() for c in self.components if c}
        if not degs:
            return None
        if len(degs) > 1 or not all(c.is_homogeneous() for c in self.components):
            raise ValueError("components are not homogeneous of one degree")
        return degs.pop()

    def dot(self, other: "PolyVector3") -> Poly:
        return self.p * other.p + self.q * other.q + self.r * other.r

    def scale(self, c) -> "PolyVector3":
        return PolyVector3(self.p * c, self.q * c, self.r * c)

    def __add__(self, other: "PolyVector3") -> "PolyVector3":
        return PolyVector3(self.p + other.p, self.q + other.q, self.r + other.r)

    def __sub__(self, other: "PolyVector3") -> "PolyVector3":
        return PolyVector3(self.p - other.p, self.q - other.q, self.r - other.r)

    def __str__(self) -> str:
        return f"({self.p}, {self.q}, {self.r})"


def gradient(F: Poly, names: Sequence[str] = XYZ) -> PolyVector3:
    return PolyVector3(*(F.diff(v) for v in names))


def wedge(u: PolyVector3, v: PolyVector3) -> PolyVector3:
    """Cross product: the 2x2 minors of the matrix with rows ``u`` and ``v``."""
    return PolyVector3(
        u.q * v.r - u.r * v.q,
        u.r * v.p - u.p * v.r,
        u.p * v.q - u.q * v.p,
    )


def det3(rows: Sequence[Sequence[Poly]]) -> Poly:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def hessian_det(F: Poly, names: Sequence[str] = XYZ) -> Poly:
    first = [F.diff(v) for v in names]
    return det3([[d.diff(v) for v in names] for d in first])


def euler_vector(vars: Sequence[str] = XYZ) -> PolyVector3:
    return PolyVector3(*(Poly.var(v, vars) for v in XYZ))


# ---------------------------------------------------------------------------
# gcd


def _coeffs_in(P: Poly, name: str) -> dict:
    """Split P as sum_j c_j * name^j; returns {j: c_j} with c_j free of ``name``."""
    i = P.vars.index(name)
    out: dict = {}
    for m, c in P.terms.items():
        j = m[i]
        out.setdefault(j, {})[m[:i] + (0,) + m[i + 1:]] = c
    return {j: Poly._raw(t, P.vars) for j, t in out.items()}


def _deg_in(P: Poly, name: str) -> int:
    i = P.vars.index(name)
    return max(m[i] for m in P.terms)


def _lc_in(P: Poly, name: str) -> Poly:
    return _coeffs_in(P, name)[_deg_in(P, name)]


def _shift(P: Poly, name: str, k: int) -> Poly:
    i = P.vars.index(name)
    mon = tuple(k if j == i else 0 for j in range(len(P.vars)))
    return P.mul_monomial(mon)


def pseudo_remainder(A: Poly, B: Poly, name: str) -> Poly:
    """lc(B)^(deg A - deg B + 1) * A reduced modulo B, as polynomials in ``name``."""
    db = _deg_in(B, name)
    lb = _lc_in(B, name)
    R = A
    e = _deg_in(A, name) - db + 1
    while R and _deg_in(R, name) >= db:
        dr = _deg_in(R, name)
        lr = _lc_in(R, name)
        R = R * lb - _shift(B * lr, name, dr - db)
        e -= 1
    return R * (lb ** e) if e > 0 else R


def _content_in(P: Poly, name: str) -> Poly:
    return reduce(multivariate_gcd, _coeffs_in(P, name).values())


def _normalize(P: Poly) -> Poly:
    return P.primitive()


def _subresultant_last(A: Poly, B: Poly, name: str) -> Poly:
    # A, B primitive in `name`, deg A >= deg B >= 1; returns last nonzero subresultant
    g = Poly.constant(1, A.vars)
    h = Poly.constant(1, A.vars)
    a, b = A, B
    while True:
        delta = _deg_in(a, name) - _deg_in(b, name)
        r = pseudo_remainder(a, b, name)
        if not r:
            return b
        if _deg_in(r, name) == 0:
            return r
        a = b
        b = r.divexact(g * h ** delta)
        g = _lc_in(a, name)
        if delta == 0:
            pass
        else:
            h = (g ** delta).divexact(h ** (delta - 1))


def multivariate_gcd(P: Poly, Q: Poly) -> Poly:
    """Greatest common divisor, primitive over the integers with positive grevlex leading coefficient.

    Recursive content / primitive-part scheme with a subresultant PRS in the
    main variable.  ``gcd(P, 0)`` is the normalised ``P``; ``gcd(0, 0) = 0``.
    """
    if P.vars != Q.vars:
        raise ValueError("variable mismatch")
    if not P:
        return _normalize(Q)
    if not Q:
        return _normalize(P)
    if P.is_constant() or Q.is_constant():
        return Poly.constant(1, P.vars)
    main = next(v for v in P.vars if P.involves(v) or Q.involves(v))
    if not P.involves(main):
        return multivariate_gcd(P, _content_in(Q, main))
    if not Q.involves(main):
        return multivariate_gcd(_content_in(P, main), Q)
    cP, cQ = _content_in(P, main), _content_in(Q, main)
    c = multivariate_gcd(cP, cQ)
    A, B = P.divexact(cP), Q.divexact(cQ)
    if _deg_in(A, main) < _deg_in(B, main):
        A, B = B, A
    G = _subresultant_last(A, B, main)
    if not G.involves(main):
        return _normalize(c)
    G = G.divexact(_content_in(G, main))
    return _normalize(c * G)


def gcd_many(polys: Iterable[Poly]) -> Poly:
    return reduce(multivariate_gcd, polys)


# ---------------------------------------------------------------------------
# reducedness


def _line_restriction(F: Poly, p: Sequence[int], q: Sequence[int]) -> list:
    """Dense coefficients (low to high) of t -> F(p + t*q)."""
    lines = [[Fraction(a), Fraction(b)] for a, b in zip(p, q)]

    def upow(u, e):
        out = [Fraction(1)]
        for _ in range(e):
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, c in enumerate(out):
                nxt[i] += c * u[0]
                nxt[i + 1] += c * u[1]
            out = nxt
        return out

    cache: dict = {}
    total = [Fraction(0)] * ((F.degree() or 0) + 1)
    for m, c in F.terms.items():
        prod = [c]
        for i, e in enumerate(m[:3]):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = upow(lines[i], e)
                pw = cache[(i, e)]
                nxt = [Fraction(0)] * (len(prod) + len(pw) - 1)
                for a, ca in enumerate(prod):
                    if ca:
                        for b, cb in enumerate(pw):
                            nxt[a + b] += ca * cb
                prod = nxt
        for i, cc in enumerate(prod):
            total[i] += cc
    while total and not total[-1]:
        total.pop()
    return total


def _univ_squarefree(coeffs: list) -> bool:
    from .binary import upoly_derivative, upoly_gcd

    g = upoly_gcd(coeffs, upoly_derivative(coeffs))
    return len(g) == 1


_TEST_LINES = [
    ((1, 0, 0), (2, 3, 1)), ((0, 1, 0), (1, 5, 2)), ((1, 1, 0), (3, 1, 4)),
    ((2, 1, 1), (1, 7, 3)), ((1, 3, 2), (5, 2, 11)), ((3, 1, 7), (2, 9, 4)),
]


def is_reduced(F: Poly) -> bool:
    """True iff gcd(F, dF/dx, dF/dy, dF/dz) is a nonzero constant.

    A line meeting ``F = 0`` in ``deg F`` distinct points certifies
    reducedness quickly; otherwise the gcd is computed.
    """
    if not F:
        raise ValueError("zero polynomial")
    d = F.degree()
    if d == 0:
        return True
    if F.vars == XYZ and F.is_homogeneous():
        for p, q in _TEST_LINES:
            if F.evaluate(q) == 0:
                continue
            u = _line_restriction(F, p, q)
            if len(u) == d + 1 and _univ_squarefree(u):
                return True
    g = F
    for v in F.vars:
        g = multivariate_gcd(g, F.diff(v))
        if g.is_constant():
            return True
    return g.is_constant()


# ---------------------------------------------------------------------------
# resultants


def sylvester_matrix(p: Poly, q: Poly, name: str) -> list:
    cp, cq = _coeffs_in(p, name), _coeffs_in(q, name)
    m, n = _deg_in(p, name), _deg_in(q, name)
    zero = Poly._raw({}, p.vars)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j in range(m + 1):
            row[i + m - j] = cp.get(j, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j in range(n + 1):
            row[i + n - j] = cq.get(j, zero)
        rows.append(row)
    return rows


def poly_det(rows: list) -> Poly:
    """Determinant of a square matrix of polynomials (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(r) for r in rows]
    vars = M[0][0].vars
    sign = 1
    prev = Poly.constant(1, vars)
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return Poly._raw({}, vars)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divexact(prev)
            M[i][k] = Poly._raw({}, vars)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant_in_parameter(p: Poly, q: Poly, name: str) -> Poly:
    """Sylvester resultant of ``p`` and ``q`` with respect to variable ``name``.

    The result still lives in the ring of ``p`` but no longer involves ``name``.
    """
    if not p or not q:
        raise ValueError("resultant of a zero polynomial")
    if not p.involves(name) and not q.involves(name):
        raise ValueError(f"neither polynomial involves {name!r}")
    if not p.involves(name):
        return p ** _deg_in(q, name)
    if not q.involves(name):
        return q ** _deg_in(p, name)
    return poly_det(sylvester_matrix(p, q, name))
