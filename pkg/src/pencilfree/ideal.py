"""Groebner bases, saturation, elimination and degrees of finite schemes in P^2."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .poly import XYZ, Poly, gcd_many, grevlex_key

# ---------------------------------------------------------------------------
# errors and budget


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its configured resource cap."""


class SchemeNotFinite(ValueError):
    """The projective scheme has a component of positive dimension."""


@dataclass(frozen=True)
class Budget:
    max_basis: int = 20000
    max_degree: int = 400
    max_reductions: int = 50_000_000
    max_matrix_cells: int = 20_000_000

    @classmethod
    def scaled(cls, units: int) -> "Budget":
        """A budget from one integer knob (the CLI's ``--budget``)."""
        return cls(max_basis=units, max_degree=400, max_reductions=2500 * units, max_matrix_cells=1000 * units)

    def check(self, nbasis: int, degree: int, reductions: int) -> None:
        if nbasis > self.max_basis:
            raise BudgetExceeded(f"basis size {nbasis} exceeds cap {self.max_basis}")
        if degree > self.max_degree:
            raise BudgetExceeded(f"degree {degree} exceeds cap {self.max_degree}")
        if reductions > self.max_reductions:
            raise BudgetExceeded(f"reduction steps exceed cap {self.max_reductions}")


DEFAULT_BUDGET = Budget()

# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """``grevlex``, ``lex`` or ``block`` (elimination of the variables in ``eliminate``).

    ``ranking`` optionally reorders variable precedence (highest first); by
    default it is the ring's own order.  Within each block of a block order
    grevlex is used.
    """

    kind: str = "grevlex"
    eliminate: Tuple[str, ...] = ()
    ranking: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and not self.eliminate:
            raise ValueError("block order needs an eliminated block")

    def key_function(self, vars: Sequence[str]) -> Callable[[tuple], tuple]:
        vars = tuple(vars)
        rank = self.ranking or vars
        if sorted(rank) != sorted(vars):
            raise ValueError("ranking must be a permutation of the ring variables")
        perm = [vars.index(v) for v in rank]
        if self.kind == "grevlex":
            return lambda m: grevlex_key([m[i] for i in perm])
        if self.kind == "lex":
            return lambda m: tuple(m[i] for i in perm)
        elim = [vars.index(v) for v in rank if v in self.eliminate]
        rest = [vars.index(v) for v in rank if v not in self.eliminate]
        return lambda m: (grevlex_key([m[i] for i in elim]), grevlex_key([m[i] for i in rest]))


GREVLEX = TermOrder()


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    generators: Tuple[Poly, ...]
    vars: Tuple[str, ...] = XYZ

    def __init__(self, generators: Sequence[Poly], vars: Optional[Sequence[str]] = None):
        gens = tuple(g for g in generators if g)
        if vars is None:
            vars = gens[0].vars if gens else XYZ
        vars = tuple(vars)
        for g in gens:
            if g.vars != vars:
                raise ValueError("generators live in different rings")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "vars", vars)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)


# ---------------------------------------------------------------------------
# internal Buchberger on dict polynomials with gmpy2 rationals


def _to_internal(p: Poly) -> Dict[tuple, mpq]:
    return {m: mpq(c.numerator, c.denominator) for m, c in p.terms.items()}


def _to_poly(d: Dict[tuple, mpq], vars: tuple) -> Poly:
    return Poly._raw({m: Fraction(int(c.numerator), int(c.denominator)) for m, c in d.items()}, vars)


def _divides(a: tuple, b: tuple) -> bool:
    for i, j in zip(a, b):
        if i > j:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(i if i > j else j for i, j in zip(a, b))


class _Engine:
    """Mutable working state of one Groebner basis computation."""

    def __init__(self, vars: tuple, key, budget: Budget):
        self.vars = vars
        self.key = key
        self.budget = budget
        self.neg_cache: Dict[tuple, tuple] = {}
        self.polys: List[Dict[tuple, mpq]] = []  # monic
        self.lms: List[tuple] = []
        self.tails: List[List[tuple]] = []
        self.sugar: List[int] = []
        self.reducer_cache: Dict[tuple, Tuple[int, int]] = {}
        self.reductions = 0

    def negkey(self, m):
        k = self.neg_cache.get(m)
        if k is None:
            k = _negate(self.key(m))
            self.neg_cache[m] = k
        return k

    def lead(self, p):
        return max(p, key=self.key)

    def find_reducer(self, m) -> int:
        hit = self.reducer_cache.get(m)
        start = 0
        if hit is not None:
            idx, checked = hit
            if idx >= 0:
                return idx
            start = checked
        lms = self.lms
        for i in range(start, len(lms)):
            if _divides(lms[i], m):
                self.reducer_cache[m] = (i, len(lms))
                return i
        self.reducer_cache[m] = (-1, len(lms))
        return -1

    def reduce(self, p: Dict[tuple, mpq]) -> Dict[tuple, mpq]:
        """Normal form of p (consumed) modulo the current basis."""
        p = dict(p)
        heap = [(self.negkey(m), m) for m in p]
        heapq.heapify(heap)
        rem: Dict[tuple, mpq] = {}
        push = heapq.heappush
        pop = heapq.heappop
        negkey = self.negkey
        steps = 0
        while heap:
            _, m = pop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            i = self.find_reducer(m)
            if i < 0:
                rem[m] = c
                continue
            steps += 1
            lm = self.lms[i]
            q = tuple(a - b for a, b in zip(m, lm))
            for tm, tc in self.tails[i]:
                mm = tuple(a + b for a, b in zip(tm, q))
                old = p.get(mm)
                if old is None:
                    p[mm] = -c * tc
                    push(heap, (negkey(mm), mm))
                else:
                    new = old - c * tc
                    if new:
                        p[mm] = new
                    else:
                        del p[mm]
        self.reductions += steps
        return rem

    def add(self, p: Dict[tuple, mpq], sugar: int) -> int:
        lm = self.lead(p)
        lc = p[lm]
        monic = {m: c / lc for m, c in p.items()}
        self.polys.append(monic)
        self.lms.append(lm)
        self.tails.append([(m, c) for m, c in monic.items() if m != lm])
        self.sugar.append(sugar)
        return len(self.polys) - 1

    def spoly(self, i: int, j: int):
        lcm = _lcm(self.lms[i], self.lms[j])
        out: Dict[tuple, mpq] = {}
        for idx, sign in ((i, 1), (j, -1)):
            q = tuple(a - b for a, b in zip(lcm, self.lms[idx]))
            for m, c in self.tails[idx]:
                mm = tuple(a + b for a, b in zip(m, q))
                v = out.get(mm, 0) + sign * c
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        s = max(self.sugar[i] + sum(lcm) - sum(self.lms[i]), self.sugar[j] + sum(lcm) - sum(self.lms[j]))
        return out, s


def _negate(k):
    if isinstance(k, tuple):
        return tuple(_negate(x) for x in k)
    return -k


def _buchberger(gens: List[Poly], vars: tuple, order: TermOrder, budget: Budget) -> List[Poly]:
    key = order.key_function(vars)
    eng = _Engine(vars, key, budget)
    inputs = []
    for g in gens:
        d = _to_internal(g)
        if d:
            inputs.append((max(sum(m) for m in d), d))
    inputs.sort(key=lambda t: (t[0], _negate(key(max(t[1], key=key)))))

    active: List[int] = []
    pairs: Dict[Tuple[int, int], tuple] = {}
    heap: list = []

    def update(h: int) -> None:
        lm_h = eng.lms[h]
        cand = []
        for g in active:
            cand.append((g, _lcm(eng.lms[g], lm_h)))
        keep = []
        # Gebauer-Moeller criterion M / product criterion
        for idx, (g, l) in enumerate(cand):
            disjoint = all(a == 0 or b == 0 for a, b in zip(eng.lms[g], lm_h))
            if disjoint:
                keep.append((g, l, True))
                continue
            dominated = False
            for idx2, (g2, l2) in enumerate(cand):
                if idx2 == idx:
                    continue
                if _divides(l2, l) and (l2 != l or idx2 < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, l, False))
        # criterion B on old pairs
        for (i, j), info in list(pairs.items()):
            l = info[1]
            if _divides(lm_h, l) and _lcm(eng.lms[i], lm_h) != l and _lcm(eng.lms[j], lm_h) != l:
                del pairs[(i, j)]
        for g, l, disjoint in keep:
            if disjoint:
                continue
            s = max(eng.sugar[g] + sum(l) - sum(eng.lms[g]), eng.sugar[h] + sum(l) - sum(lm_h))
            pairs[(g, h)] = (s, l)
            heapq.heappush(heap, (s, _negate(eng.negkey(l)), g, h))
        active[:] = [g for g in active if not _divides(lm_h, eng.lms[g])]
        active.append(h)

    for deg, d in inputs:
        r = eng.reduce(d)
        if r:
            h = eng.add(r, deg)
            update(h)

    while heap:
        s, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        sp, sugar = eng.spoly(i, j)
        budget.check(len(eng.polys), sugar, eng.reductions)
        r = eng.reduce(sp)
        if r:
            h = eng.add(r, sugar)
            update(h)

    # minimal and reduced basis
    idxs = sorted(active, key=lambda i: _negate(key(eng.lms[i])))
    minimal = []
    for i in reversed(idxs):  # smallest first
        if not any(_divides(eng.lms[j], eng.lms[i]) for j in minimal):
            minimal.append(i)
    final = _Engine(vars, key, budget)
    for i in minimal:
        final.add(eng.polys[i], eng.sugar[i])
    out = []
    for i in range(len(final.polys)):
        lm = final.lms[i]
        others = _Engine(vars, key, budget)
        for j in range(len(final.polys)):
            if j != i:
                others.add(final.polys[j], 0)
        tail = {m: c for m, c in final.polys[i].items() if m != lm}
        red = others.reduce(tail)
        red[lm] = mpq(1)
        out.append(_to_poly(red, vars))
    out.sort(key=lambda p: key(p.leading_term(key)[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    order: TermOrder
    basis: Tuple[Poly, ...]
    staircase: Tuple[tuple, ...] = field(default=())

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.ideal.vars

    def key(self):
        return self.order.key_function(self.vars)

    def is_unit(self) -> bool:
        return any(p.is_constant() for p in self.basis)

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self)

    def contains(self, p: Poly) -> bool:
        return not normal_form(p, self)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def groebner_basis(I: Ideal, order: TermOrder = GREVLEX, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    if not I.generators:
        return GroebnerBasis(I, order, (), ())
    basis = tuple(_buchberger(list(I.generators), I.vars, order, budget))
    key = order.key_function(I.vars)
    stairs = tuple(p.leading_term(key)[0] for p in basis)
    return GroebnerBasis(I, order, basis, stairs)


class Reducer:
    """Repeated normal forms against one basis, sharing the reducer cache."""

    def __init__(self, G: GroebnerBasis):
        self.vars = G.vars
        self._eng = _Engine(G.vars, G.key(), DEFAULT_BUDGET)
        for g in G.basis:
            self._eng.add(_to_internal(g), 0)

    def __call__(self, p: Poly) -> Poly:
        if p.vars != self.vars:
            raise ValueError("polynomial and basis live in different rings")
        return _to_poly(self._eng.reduce(_to_internal(p)), self.vars)


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    """Fully reduced remainder of ``p`` modulo ``G``; zero iff ``p`` lies in the ideal."""
    return Reducer(G)(p)


def same_ideal(I: Ideal, J: Ideal) -> bool:
    return groebner_basis(I).basis == groebner_basis(J).basis


# -- colon, intersection, saturation -------------------------------------


def intersect(I: Ideal, J: Ideal, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I ∩ J by eliminating a tag variable from t*I + (1 - t)*J."""
    if I.vars != J.vars:
        raise ValueError("ideals live in different rings")
    tag = "_t"
    while tag in I.vars:
        tag += "_"
    big = (tag,) + I.vars
    t = Poly.var(tag, big)
    gens = [t * g.with_vars(big) for g in I.generators]
    gens += [(1 - t) * g.with_vars(big) for g in J.generators]
    G = groebner_basis(Ideal(gens, big), TermOrder("block", (tag,)), budget)
    keep = [g.with_vars(I.vars) for g in G.basis if not g.involves(tag)]
    return Ideal(keep, I.vars)


def colon(I: Ideal, f: Poly, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : f."""
    if _is_variable(f) and I.is_homogeneous():
        return _colon_variable(I, _variable_name(f), once=True, budget=budget)
    inter = intersect(I, Ideal([f], I.vars), budget)
    return Ideal([g.divexact(f) for g in inter.generators], I.vars)


def _is_variable(f: Poly) -> bool:
    if len(f) != 1:
        return False
    (m, c), = f.terms.items()
    return c == 1 and sum(m) == 1


def _variable_name(f: Poly) -> str:
    (m, _), = f.terms.items()
    return f.vars[m.index(1)]


def _colon_variable(I: Ideal, v: str, once: bool, budget: Budget) -> Ideal:
    # grevlex with v ranked last: dividing basis elements by v gives a basis of I : v (or I : v^oo)
    ranking = tuple(w for w in I.vars if w != v) + (v,)
    G = groebner_basis(I, TermOrder("grevlex", ranking=ranking), budget)
    i = I.vars.index(v)
    out = []
    for g in G.basis:
        k = min(m[i] for m in g.terms)
        if once:
            k = min(k, 1)
        if k:
            g = Poly._raw({m[:i] + (m[i] - k,) + m[i + 1:]: c for m, c in g.terms.items()}, I.vars)
        out.append(g)
    return Ideal(out, I.vars)


def saturate(I: Ideal, f: Poly, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : f^oo by iterated colon until the reduced basis stabilises."""
    if _is_variable(f) and I.is_homogeneous():
        return _colon_variable(I, _variable_name(f), once=False, budget=budget)
    current = groebner_basis(I, budget=budget)
    while True:
        nxt = groebner_basis(colon(Ideal(current.basis, I.vars), f, budget), budget=budget)
        if nxt.basis == current.basis:
            return Ideal(current.basis, I.vars)
        current = nxt


def saturate_irrelevant(I: Ideal, block: Optional[Sequence[str]] = None, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : (block)^oo, block defaulting to the variables x, y, z of the ring.

    Uses I : m^oo = ∩_v (I : v^oo) over the variables v of the block.
    """
    if not I.is_homogeneous():
        raise ValueError("saturation by the irrelevant ideal needs a homogeneous ideal")
    block = tuple(block) if block is not None else tuple(v for v in XYZ if v in I.vars)
    if not I.generators:
        return I
    parts = [_colon_variable(I, v, once=False, budget=budget) for v in block]
    result = parts[0]
    for P in parts[1:]:
        if _contains_ideal(P, result, budget):
            continue
        if _contains_ideal(result, P, budget):
            result = P
            continue
        result = intersect(result, P, budget)
    return Ideal(groebner_basis(result, budget=budget).basis, I.vars)


def _contains_ideal(big: Ideal, small: Ideal, budget: Budget) -> bool:
    G = groebner_basis(big, budget=budget)
    return all(not normal_form(g, G) for g in small.generators)


# -- Hilbert function and degree ----------------------------------------


def _monomials_of_degree(d: int, n: int = 3):
    if n == 1:
        yield (d,)
        return
    for i in range(d, -1, -1):
        for rest in _monomials_of_degree(d - i, n - 1):
            yield (i,) + rest


def standard_monomials(G: GroebnerBasis, d: int) -> List[tuple]:
    """Monomials of degree d outside the lead-term ideal, in decreasing term order."""
    n = len(G.vars)
    key = G.key()
    out = [m for m in _monomials_of_degree(d, n) if not any(_divides(s, m) for s in G.staircase)]
    out.sort(key=key, reverse=True)
    return out


def hilbert_function(G: GroebnerBasis, d: int) -> int:
    return len(standard_monomials(G, d))


def _degree_from_staircase(stairs: Sequence[tuple]) -> int:
    # projective plane only: three variables
    if not stairs:
        raise SchemeNotFinite("zero ideal")
    for k in range(3):
        if not any(s[k] == 0 for s in stairs):
            raise SchemeNotFinite("lead-term ideal has a one-dimensional component")
    top = max(sum(s) for s in stairs)
    d = 3 * top + 1
    count = sum(1 for m in _monomials_of_degree(d) if not any(_divides(s, m) for s in stairs))
    check = sum(1 for m in _monomials_of_degree(d + 1) if not any(_divides(s, m) for s in stairs))
    assert count == check, "Hilbert function failed to stabilise"
    return count


def scheme_degree(I: Ideal, budget: Budget = DEFAULT_BUDGET) -> int:
    """Length of the finite subscheme of P^2 cut out by a homogeneous ideal in x, y, z.

    Returns 0 when the scheme is empty; raises :class:`SchemeNotFinite` on a
    positive-dimensional scheme.  The value is the constant Hilbert polynomial,
    which saturation does not change.
    """
    if I.vars != XYZ:
        raise ValueError("scheme_degree works in the ring k[x, y, z]")
    if not I.is_homogeneous():
        raise ValueError("scheme_degree needs a homogeneous ideal")
    G = groebner_basis(I, GREVLEX, budget)
    return degree_of_basis(G)


def degree_of_basis(G: GroebnerBasis) -> int:
    if G.is_unit():
        return 0
    return _degree_from_staircase(G.staircase)


# -- elimination --------------------------------------------------------


def eliminate_parameters(I: Ideal, block: Sequence[str] = XYZ, budget: Budget = DEFAULT_BUDGET) -> Poly:
    """Generator of the elimination ideal I ∩ k[params] for binary-form parameters.

    Returns the primitive gcd of the parameter-only basis elements in the
    parameter ring (the remaining variables), or 0 when there are none.
    """
    block = tuple(block)
    params = tuple(v for v in I.vars if v not in block)
    G = groebner_basis(I, TermOrder("block", block), budget)
    only = [g.with_vars(params) for g in G.basis if not any(g.involves(v) for v in block)]
    if not only:
        return Poly({}, params)
    return gcd_many(only).primitive(key=lambda m: m)
