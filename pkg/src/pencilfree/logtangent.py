"""Vector fields tangent to a plane curve: syzygies of the gradient, freeness, Tjurina totals.

A syzygy of degree ``m`` is a triple of forms ``s`` of degree ``m`` with
``s . grad F = 0``.  The module of such triples is computed one degree at a
time as the kernel of an exact linear map between spaces of forms; minimal
generators are the kernel vectors not spanned by monomial multiples of
generators found in lower degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import NotReducedError, IdentityViolated
from .ideal import DEFAULT_BUDGET, Budget, BudgetExceeded, Ideal, SchemeNotFinite, scheme_degree
from .poly import XYZ, Poly, PolyVector3, det3, euler_vector, gradient, is_reduced, wedge


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class SyzygyVector:
    """A homogeneous triple ``s`` of degree ``degree`` with ``s . grad F = 0``."""

    s: PolyVector3
    degree: int
    F: Poly

    def __post_init__(self):
        if self.s.dot(gradient(self.F)):
            raise ValueError("not a syzygy of the gradient")
        if not self.s.is_zero() and self.s.degree() != self.degree:
            raise ValueError("degree does not match components")


@dataclass(frozen=True)
class SyzygyModuleSummary:
    degrees: Tuple[int, ...]
    generators: Tuple[SyzygyVector, ...]
    bound: int  # generators were searched in degrees 0..bound


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    exponents: Optional[Tuple[int, int]]
    min_gen_degrees: Tuple[int, ...]
    saito_constant: Optional[Fraction]
    tjurina: Optional[int] = None
    tjurina_target: Optional[int] = None
    zk_degree: Optional[int] = None
    contains_Dsg: Optional[bool] = None  # None stands for "unknown"
    lci_pass: Optional[bool] = None
    generators: Tuple[SyzygyVector, ...] = field(default=(), compare=False, repr=False)


# ---------------------------------------------------------------------------
# Tjurina numbers


def _check_reduced(F: Poly) -> None:
    if not F or not F.is_homogeneous():
        raise ValueError("expected a nonzero homogeneous form")
    if not is_reduced(F):
        raise NotReducedError(f"{F} has a repeated factor")


def tjurina_total(F: Poly, budget: Budget = DEFAULT_BUDGET) -> int:
    """Total Tjurina number: the length of the scheme cut out by the three partials."""
    _check_reduced(F)
    if F.degree() <= 1:
        return 0
    try:
        return scheme_degree(Ideal(list(gradient(F))), budget)
    except SchemeNotFinite as exc:  # pragma: no cover - excluded by reducedness
        raise AssertionError(f"reduced curve with non-finite singular scheme: {F}") from exc


# ---------------------------------------------------------------------------
# degree-wise syzygy computation


def _monomials(d: int) -> List[tuple]:
    if d < 0:
        return []
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


class _SyzygySpace:
    """Coordinates on (S_m)^3 and the matrix of s -> s . grad F."""

    def __init__(self, partials: Sequence[Poly], m: int, d: int):
        self.m = m
        self.mons = _monomials(m)
        self.index = {mon: i for i, mon in enumerate(self.mons)}
        self.ncols = 3 * len(self.mons)
        targets = _monomials(m + d - 1)
        tindex = {mon: i for i, mon in enumerate(targets)}
        rows = [[0] * self.ncols for _ in targets]
        for c, P in enumerate(partials):
            for j, u in enumerate(self.mons):
                col = c * len(self.mons) + j
                for mon, coef in P.terms.items():
                    rows[tindex[_add(mon, u)]][col] += coef
        self.rows = [r for r in rows if any(r)]

    def vector(self, s: PolyVector3) -> List[int]:
        v = [0] * self.ncols
        n = len(self.mons)
        for c, comp in enumerate(s):
            for mon, coef in comp.terms.items():
                v[c * n + self.index[mon]] = coef
        return v

    def multiples(self, s: PolyVector3, e: int) -> List[List]:
        out = []
        for u in _monomials(self.m - e):
            out.append(self.vector(PolyVector3(*(comp.mul_monomial(u) for comp in s))))
        return out

    def to_poly_vector(self, v: Sequence[int]) -> PolyVector3:
        n = len(self.mons)
        comps = []
        for c in range(3):
            comps.append(Poly({self.mons[j]: v[c * n + j] for j in range(n) if v[c * n + j]}, XYZ))
        return PolyVector3(*comps)


def syzygy_min_gens(F: Poly, margin: int = 2, prime_filter: bool = True,
                    budget: Budget = DEFAULT_BUDGET) -> SyzygyModuleSummary:
    """Minimal homogeneous generators of the syzygies of grad F in degrees up to deg F - 1 + margin.

    Every free curve has two generators in degrees summing to deg F - 1, and
    a non-free one has at least three, two of them in degree at most deg F - 1,
    so the truncation never changes the freeness verdict.

    With ``prime_filter`` a degree is skipped when a computation modulo a
    large prime already proves that no new generator lives there (the kernel
    can only shrink and the rank of the multiples can only grow over Q).
    """
    _check_reduced(F)
    d = F.degree()
    F = F.primitive()
    partials = list(gradient(F))
    bound = d - 1 + margin
    found: List[Tuple[int, PolyVector3]] = []
    for m in range(bound + 1):
        space = _SyzygySpace(partials, m, d)
        cells = len(space.rows) * space.ncols
        if cells > budget.max_matrix_cells:
            raise BudgetExceeded(f"linear system of {cells} entries exceeds cap {budget.max_matrix_cells}")
        mult = [row for e, s in found for row in space.multiples(s, e)]
        if prime_filter:
            if linalg.nullity_mod_p(space.rows, space.ncols) == linalg.rank_mod_p(mult, space.ncols):
                continue
        K = linalg.kernel(space.rows, space.ncols)
        r = linalg.rank(mult, space.ncols)
        if len(K) == r:
            continue
        span = list(mult)
        for v in K:
            if linalg.rank(span + [v], space.ncols) > r:
                span.append(v)
                r += 1
                found.append((m, space.to_poly_vector(v)))
                if r == len(K):
                    break
    gens = tuple(SyzygyVector(s, e, F) for e, s in found)
    return SyzygyModuleSummary(tuple(e for e, _ in found), gens, bound)


def in_syzygy_span(summary: SyzygyModuleSummary, s: SyzygyVector) -> bool:
    """Whether ``s`` lies in the submodule generated by the summary's generators."""
    m = s.degree
    F = summary.generators[0].F if summary.generators else s.F
    space = _SyzygySpace(list(gradient(F)), m, F.degree())
    mult = [row for g in summary.generators for row in space.multiples(g.s, g.degree)]
    r = linalg.rank(mult, space.ncols)
    return linalg.rank(mult + [space.vector(s.s)], space.ncols) == r


# ---------------------------------------------------------------------------
# Saito criterion and freeness


def saito_check(s1: SyzygyVector, s2: SyzygyVector, F: Poly) -> Optional[Fraction]:
    """Constant c with det[s1; s2; (x, y, z)] = c*F, or ``None`` when no nonzero c exists."""
    d = F.degree()
    if s1.degree + s2.degree != d - 1:
        raise ValueError(f"degrees {s1.degree} + {s2.degree} do not sum to deg F - 1 = {d - 1}")
    D = det3([list(s1.s), list(s2.s), list(euler_vector())])
    if not D:
        return None
    mon, c = F.leading_term()
    ratio = D.coefficient(mon) / c
    if ratio and D == F.scale(ratio):
        return ratio
    return None


def freeness(F: Poly, margin: int = 2, prime_filter: bool = True, with_tjurina: bool = True,
             budget: Budget = DEFAULT_BUDGET) -> FreenessReport:
    """Freeness verdict from the count of minimal syzygies, cross-checked by Saito's criterion.

    Raises :class:`IdentityViolated` when the two routes disagree, or
    when the Tjurina number of a free curve differs from (d-1)^2 - a*b.
    """
    summary = syzygy_min_gens(F, margin, prime_filter, budget)
    d = F.degree()
    degs = summary.degrees
    by_count = len(degs) == 2 and sum(degs) == d - 1
    # Saito on every pair of generators whose degrees fit
    saito_pairs = []
    for s1, s2 in itertools.combinations(summary.generators, 2):
        if s1.degree + s2.degree == d - 1:
            c = saito_check(s1, s2, F)
            if c is not None:
                saito_pairs.append((s1, s2, c))
    if by_count != bool(saito_pairs):
        raise IdentityViolated(
            "saito-vs-generator-count",
            f"minimal generator degrees {list(degs)} but Saito pairs {len(saito_pairs)}")
    tau = tjurina_total(F, budget) if with_tjurina else None
    if by_count:
        a, b = degs
        c = saito_pairs[0][2]
        if tau is not None and tau != (d - 1) ** 2 - a * b:
            raise IdentityViolated("free-tjurina", f"tau={tau} but (d-1)^2-ab={(d - 1) ** 2 - a * b}")
        return FreenessReport(True, (a, b), degs, c, tjurina=tau, generators=summary.generators)
    return FreenessReport(False, None, degs, None, tjurina=tau, generators=summary.generators)


# ---------------------------------------------------------------------------
# pencil-specific objects


def canonical_syzygy(f: Poly, g: Poly, Fk: Poly) -> SyzygyVector:
    """The derivation grad f ^ grad g, tangent to every member of the pencil, as a syzygy of grad Fk."""
    sigma = wedge(gradient(f), gradient(g))
    if sigma.dot(gradient(Fk)):
        raise ValueError("the divisor is not a union of members of the pencil")
    n = f.degree()
    return SyzygyVector(sigma, 2 * n - 2, Fk)


def zk_degree(n: int, k: int, tjurina: int) -> int:
    """Length of the residual scheme of the canonical section."""
    z = 3 * (n - 1) ** 2 + n * n * (k - 1) ** 2 - tjurina
    if z < 0:
        raise IdentityViolated("residual-scheme-length", f"negative length {z} (n={n}, k={k}, tau={tjurina})")
    return z


def uv_decomposition(members: Sequence[Tuple], f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """(U, V) with U grad f + V grad g = grad of the product of the members alpha*f + beta*g."""
    norm = []
    for alpha, beta in members:
        alpha, beta = Fraction(alpha), Fraction(beta)
        if alpha == beta == 0:
            raise ValueError("(0:0) is not a point of P^1")
        norm.append((alpha, beta))
    for (a1, b1), (a2, b2) in itertools.combinations(norm, 2):
        if a1 * b2 == a2 * b1:
            raise ValueError("duplicate members")
    lins = [f.scale(a) + g.scale(b) for a, b in norm]
    U = Poly({}, f.vars)
    V = Poly({}, f.vars)
    for i, (a, b) in enumerate(norm):
        rest = Poly.constant(1, f.vars)
        for j, L in enumerate(lins):
            if j != i:
                rest = rest * L
        U = U + rest.scale(a)
        V = V + rest.scale(b)
    prod = Poly.constant(1, f.vars)
    for L in lins:
        prod = prod * L
    lhs = gradient(f).scale(U) + gradient(g).scale(V)
    if lhs != gradient(prod):
        raise IdentityViolated("uv-decomposition", "U grad f + V grad g differs from grad F")
    return U, V


def wedge_ideal_degree(f: Poly, g: Poly, budget: Budget = DEFAULT_BUDGET) -> int:
    """Length of the scheme where grad f and grad g are parallel; 3(n-1)^2 for a valid pencil."""
    w = wedge(gradient(f), gradient(g))
    if w.is_zero():
        raise SchemeNotFinite("gradients are everywhere parallel")
    return scheme_degree(Ideal(list(w)), budget)
