"""Pencils of plane curves: validation, discriminant, singular members and the freeness verdict.

Members of the pencil spanned by ``f`` and ``g`` are the curves
``alpha*f + beta*g``.  The discriminant is a binary form ``D(a, b)`` that
vanishes at ``(a, b) = (alpha, beta)`` exactly when that member is singular;
a rational root ``(alpha:beta)`` corresponds to the linear factor
``beta*a - alpha*b``.  Irreducible factors of higher degree are kept whole as
*orbits* of conjugate members, realised over Q by their norm product.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .binary import (binary_form, dehomogenize, interpolate, normalize_form, rational_roots,
                     squarefree_decomposition, upoly_divmod)
from .errors import NotReducedError, IdentityViolated, ValidationError
from .ideal import (DEFAULT_BUDGET, Budget, Ideal, Reducer, SchemeNotFinite,
                    degree_of_basis, groebner_basis, hilbert_function, saturate_irrelevant,
                    scheme_degree, standard_monomials)
from .logtangent import FreenessReport, freeness, tjurina_total, wedge_ideal_degree, zk_degree
from .poly import AB, XYZ, Poly, gradient, is_reduced, multivariate_gcd, resultant_in_parameter, wedge


# ---------------------------------------------------------------------------
# labels and selections


@dataclass(frozen=True)
class MemberLabel:
    """A rational member ``(alpha:beta)`` or a conjugate orbit given by an irreducible factor.

    ``irreducible`` is ``None`` for an orbit whose irreducibility over Q was
    not certified (squarefree, no rational root, degree at least 4).
    """

    point: Optional[Tuple[int, int]] = None
    orbit: Optional[Poly] = None
    irreducible: Optional[bool] = True

    def __post_init__(self):
        if (self.point is None) == (self.orbit is None):
            raise ValueError("a label is either a point or an orbit")
        if self.point is not None:
            object.__setattr__(self, "point", canonical_point(*self.point))
        else:
            p = normalize_form(self.orbit)
            if p.vars != AB or not p.is_homogeneous() or p.degree() < 2:
                raise ValueError("an orbit label needs a binary form of degree >= 2")
            object.__setattr__(self, "orbit", p)

    @classmethod
    def at(cls, alpha, beta) -> "MemberLabel":
        return cls(point=(alpha, beta))

    @property
    def degree(self) -> int:
        return 1 if self.point is not None else self.orbit.degree()

    def form(self) -> Poly:
        """The factor of the discriminant this label stands for."""
        if self.point is not None:
            alpha, beta = self.point
            return Poly({(1, 0): beta, (0, 1): -alpha}, AB)
        return self.orbit

    def __str__(self) -> str:
        if self.point is not None:
            return f"{self.point[0]}:{self.point[1]}"
        return f"orbit({self.orbit})"


def canonical_point(alpha, beta) -> Tuple[int, int]:
    """Lowest integer terms with the first nonzero entry positive."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 and beta == 0:
        raise ValueError("(0:0) is not a point of P^1")
    den = alpha.denominator * beta.denominator // math.gcd(alpha.denominator, beta.denominator)
    a, b = int(alpha * den), int(beta * den)
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


@dataclass(frozen=True)
class Selection:
    labels: Tuple[MemberLabel, ...]

    def __init__(self, labels: Sequence[MemberLabel]):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValidationError("DUPLICATE_LABEL", "a member is selected twice")
        if not labels:
            raise ValidationError("EMPTY_SELECTION", "select at least one member")
        object.__setattr__(self, "labels", labels)

    @property
    def k(self) -> int:
        return sum(l.degree for l in self.labels)


# ---------------------------------------------------------------------------
# pencils


@dataclass(frozen=True)
class Pencil:
    f: Poly
    g: Poly
    n: int

    def member(self, alpha, beta) -> Poly:
        return self.f.scale(alpha) + self.g.scale(beta)


def _is_smooth(F: Poly, budget: Budget) -> bool:
    return scheme_degree(Ideal(list(gradient(F))), budget) == 0


def _has_smooth_member(f: Poly, g: Poly, n: int, budget: Budget) -> bool:
    # at most 3(n-1)^2 members are singular unless all of them are
    for t in range(3 * (n - 1) ** 2 + 1):
        if _is_smooth(f + g.scale(t), budget):
            return True
    return False


def validate_pencil(f: Poly, g: Poly, budget: Budget = DEFAULT_BUDGET) -> Pencil:
    """Check the standing hypotheses on a pencil; raise :class:`ValidationError` with a code."""
    for h in (f, g):
        if h.vars != XYZ:
            raise ValidationError("BAD_RING", "forms must be in x, y, z")
        if not h or not h.is_homogeneous() or h.degree() < 1:
            raise ValidationError("NOT_HOMOGENEOUS", f"{h} is not a form of positive degree")
    if f.degree() != g.degree():
        raise ValidationError("DEGREE_MISMATCH", f"deg f = {f.degree()}, deg g = {g.degree()}")
    n = f.degree()
    for h in (f, g):
        if not is_reduced(h):
            raise NotReducedError(f"{h} has a repeated factor")
    common = multivariate_gcd(f, g)
    if not common.is_constant():
        raise ValidationError("COMMON_COMPONENT", f"f and g share the factor {common}")
    try:
        wedge_ideal_degree(f, g, budget)
    except SchemeNotFinite:
        if _has_smooth_member(f, g, n, budget):
            raise ValidationError("NON_REDUCED_MEMBER", "the gradients are parallel along a curve")
        raise ValidationError("ALL_MEMBERS_SINGULAR", "the discriminant vanishes identically")
    if not _has_smooth_member(f, g, n, budget):
        raise ValidationError("ALL_MEMBERS_SINGULAR", "the discriminant vanishes identically")
    return Pencil(f, g, n)


def base_locus_is_smooth(P: Pencil, budget: Budget = DEFAULT_BUDGET) -> bool:
    """True iff no point of f = g = 0 has parallel gradients (then it is n^2 transverse points)."""
    w = wedge(gradient(P.f), gradient(P.g))
    smooth = scheme_degree(Ideal([P.f, P.g] + list(w)), budget) == 0
    if smooth and base_locus_degree(P, budget) != P.n ** 2:
        raise IdentityViolated("bezout", "smooth base locus without n^2 points")
    return smooth


def base_locus_degree(P: Pencil, budget: Budget = DEFAULT_BUDGET) -> int:
    return scheme_degree(Ideal([P.f, P.g]), budget)


# ---------------------------------------------------------------------------
# discriminant


@dataclass(frozen=True)
class DiscriminantReport:
    form: Poly
    degree: int
    factors: Tuple[Tuple[MemberLabel, int], ...]
    residual: Poly

    @property
    def labels(self) -> Tuple[MemberLabel, ...]:
        return tuple(l for l, _ in self.factors)

    @property
    def fully_certified(self) -> bool:
        return all(l.irreducible for l, _ in self.factors)


_LAMBDAS = [(1, 2, 3), (2, -1, 5), (3, 7, -2), (-4, 1, 9), (5, 3, 1), (1, -6, 4)]


def _norm_discriminant(P: Pencil, budget: Budget) -> Poly:
    """det(a*M_f + b*M_g) for multiplication operators on the scheme where grad f and grad g are parallel."""
    n = P.n
    L = 3 * (n - 1) ** 2
    if L == 0:
        return Poly.constant(1, AB)
    W = saturate_irrelevant(Ideal(list(wedge(gradient(P.f), gradient(P.g)))), budget=budget)
    G = groebner_basis(W, budget=budget)
    length = degree_of_basis(G)
    if length != L:
        raise IdentityViolated("wedge-scheme-length", f"length {length}, expected {L}")
    D = 0
    while hilbert_function(G, D) != L:
        D += 1
    src = standard_monomials(G, D)
    dst = standard_monomials(G, D + n - 1)
    dst_index = {m: i for i, m in enumerate(dst)}
    reduce_ = Reducer(G)
    grads = (gradient(P.f), gradient(P.g))
    lambdas = _LAMBDAS + [tuple(random.Random(s).randint(-20, 20) for _ in range(3)) for s in range(20)]
    for lam in lambdas:
        mats = []
        for grad in grads:
            h = grad.p.scale(lam[0]) + grad.q.scale(lam[1]) + grad.r.scale(lam[2])
            M = [[Fraction(0)] * L for _ in range(L)]
            for j, u in enumerate(src):
                for mon, c in reduce_(h.mul_monomial(u)).terms.items():
                    M[dst_index[mon]][j] = c
            mats.append(M)
        M1, M2 = mats
        ts = list(range(L + 1))
        values = [linalg.det([[a + t * b for a, b in zip(r1, r2)] for r1, r2 in zip(M1, M2)]) for t in ts]
        coeffs = interpolate([Fraction(t) for t in ts], values)
        if coeffs:
            return normalize_form(binary_form(coeffs, L))
    raise ValidationError("ALL_MEMBERS_SINGULAR", "the discriminant vanishes identically")


def _macaulay_discriminant(P: Pencil) -> Optional[Poly]:
    """Resultant of the three partials of a*f + b*g (n <= 3), or None when n > 3."""
    n = P.n
    if n == 1:
        return Poly.constant(1, AB)
    if n > 3:
        return None
    rng = random.Random(7)
    f, g = P.f, P.g
    for attempt in range(10):
        out = _macaulay_attempt(f, g, n)
        if out is not None:
            return out
        # degenerate extraneous minor: change coordinates and retry
        x, y, z = (Poly.var(v) for v in XYZ)
        c = [rng.randint(-5, 5) for _ in range(3)]
        sub = {"x": x + y.scale(c[0]) + z.scale(c[1]), "y": y + z.scale(c[2]), "z": z}
        f, g = f.subs(sub), g.subs(sub)
    raise RuntimeError("no coordinate system with a nondegenerate Macaulay minor")


def _macaulay_attempt(f: Poly, g: Poly, n: int) -> Optional[Poly]:
    L = 3 * (n - 1) ** 2
    gf, gg = list(gradient(f)), list(gradient(g))
    if n == 2:
        def num(t):
            rows = []
            for i in range(3):
                h = gf[i] + gg[i].scale(t)
                rows.append([h.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
            return linalg.det(rows)
        ts = [Fraction(t) for t in range(L + 1)]
        coeffs = interpolate(ts, [num(t) for t in ts])
        return normalize_form(binary_form(coeffs, L)) if coeffs else Poly({}, AB)
    # three quadrics: Macaulay matrix in degree 4 and its extraneous 3x3 minor
    mons = [(i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)]
    idx = {m: k for k, m in enumerate(mons)}
    squares = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    rowdef = []
    for m in mons:
        i = next(i for i in range(3) if m[i] >= 2)
        rowdef.append((i, tuple(a - b for a, b in zip(m, squares[i]))))
    extr = [idx[m] for m in ((2, 2, 0), (2, 0, 2), (0, 2, 2))]

    def matrix(t):
        M = [[Fraction(0)] * 15 for _ in range(15)]
        for r, (i, shift) in enumerate(rowdef):
            h = gf[i] + gg[i].scale(t)
            for mon, c in h.terms.items():
                M[r][idx[tuple(a + b for a, b in zip(mon, shift))]] = c
        return M

    ts = [Fraction(t) for t in range(16)]
    Ms = [matrix(t) for t in ts]
    N = interpolate(ts, [linalg.det(M) for M in Ms])
    E = interpolate(ts[:4], [linalg.det([[M[r][c] for c in extr] for r in extr]) for M in Ms[:4]])
    if not E:
        return None
    q, r = upoly_divmod(N, E)
    if r:
        raise IdentityViolated("macaulay-division", "extraneous factor does not divide")
    return normalize_form(binary_form(q, L)) if q else Poly({}, AB)


def discriminant(P: Pencil, cross_check: bool = True, budget: Budget = DEFAULT_BUDGET) -> DiscriminantReport:
    """The discriminant of the pencil, its degree and its factorisation into member labels.

    The form is computed as a norm on the scheme where the gradients are
    parallel; for n <= 3 it is recomputed independently as a Macaulay
    resultant of the partial derivatives and any disagreement is fatal.
    """
    form = _norm_discriminant(P, budget)
    if not form:
        raise ValidationError("ALL_MEMBERS_SINGULAR", "the discriminant vanishes identically")
    L = 3 * (P.n - 1) ** 2
    if cross_check:
        other = _macaulay_discriminant(P)
        if other is not None and other != form:
            raise IdentityViolated("discriminant-cross-check", f"norm {form} vs resultant {other}")
    factors, residual = factor_discriminant(form)
    total = sum(l.degree * m for l, m in factors)
    if form.degree() != L or total != L:
        raise IdentityViolated("discriminant-degree", f"degree {form.degree()}, factors {total}, expected {L}")
    return DiscriminantReport(form, L, tuple(factors), residual)


def factor_discriminant(form: Poly) -> Tuple[List[Tuple[MemberLabel, int]], Poly]:
    """Split a binary form into rational points and orbit factors, with multiplicities.

    Returns ``(factors, residual)`` where ``residual`` is the constant left
    after dividing out every factor with its multiplicity.
    """
    if not form:
        raise ValueError("zero form")
    u, a_power = dehomogenize(form)
    out: List[Tuple[MemberLabel, int]] = []
    if a_power:
        out.append((MemberLabel.at(0, 1), a_power))
    orbits = []
    for piece, mult in squarefree_decomposition(u):
        for r in rational_roots(piece):
            out.append((MemberLabel.at(1, r), mult))
            piece = upoly_divmod(piece, [-r, Fraction(1)])[0]
        if len(piece) > 1:
            deg = len(piece) - 1
            label = MemberLabel(orbit=binary_form(piece, deg), irreducible=True if deg <= 3 else None)
            orbits.append((label, mult))
    out.sort(key=lambda lm: lm[0].point)
    orbits.sort(key=lambda lm: (lm[0].degree, str(lm[0].orbit)))
    out += orbits
    prod = Poly.constant(1, AB)
    for label, mult in out:
        prod = prod * label.form() ** mult
    residual = form.divexact(prod)
    if not residual.is_constant():
        raise IdentityViolated("discriminant-factorisation", f"non-constant residual {residual}")
    return out, residual


def all_singular(report: DiscriminantReport) -> Selection:
    return Selection(report.labels)


# ---------------------------------------------------------------------------
# divisors assembled from members


def orbit_member_product(P: Pencil, label: MemberLabel) -> Poly:
    """The product of the members a label stands for, as a form with rational coefficients."""
    if label.point is not None:
        G = P.member(*label.point)
    else:
        coeffs, a_power = dehomogenize(label.orbit)
        if a_power:
            raise ValueError("orbit factors never vanish at (0:1)")
        ring = XYZ + ("t",)
        p = Poly({(0, 0, 0, j): c for j, c in enumerate(coeffs) if c}, ring)
        t = Poly.var("t", ring)
        q = t * P.g.with_vars(ring) + P.f.with_vars(ring)
        G = resultant_in_parameter(p, q, "t").with_vars(XYZ).primitive()
    if not is_reduced(G):
        raise NotReducedError(f"member product {G} is not reduced")
    return G


def assemble_divisor(P: Pencil, sel: Selection, report: DiscriminantReport) -> Tuple[Poly, int, bool]:
    """(F_k, k, whether the selection contains every singular member)."""
    F = Poly.constant(1, XYZ)
    for label in sel.labels:
        F = F * orbit_member_product(P, label)
    F = F.primitive()
    if not is_reduced(F):
        raise NotReducedError("the selected members share a component")
    contains = set(report.labels) <= set(sel.labels)
    return F, sel.k, contains


def off_base_tjurina(P: Pencil, label: MemberLabel, budget: Budget = DEFAULT_BUDGET) -> int:
    """Total Tjurina number of the label's members away from the base points."""
    d = label.degree
    value = tjurina_total(orbit_member_product(P, label), budget) - P.n ** 2 * (d - 1) ** 2
    if value < 0:
        raise IdentityViolated("base-point-tjurina", f"negative off-base Tjurina number for {label}")
    return value


def lci_global_check(P: Pencil, report: DiscriminantReport, budget: Budget = DEFAULT_BUDGET,
                     off_base: Optional[Dict[MemberLabel, int]] = None) -> bool:
    """Whether the singular members' off-base Tjurina numbers add up to 3(n-1)^2."""
    L = 3 * (P.n - 1) ** 2
    if off_base is None:
        off_base = {l: off_base_tjurina(P, l, budget) for l in report.labels}
    total = sum(off_base[l] for l in report.labels)
    if total > L:
        raise IdentityViolated("tjurina-bound", f"sum of off-base Tjurina numbers {total} exceeds {L}")
    return total == L


# ---------------------------------------------------------------------------
# verdict


@dataclass(frozen=True)
class TheoremReport:
    pencil: Pencil
    selection: Selection
    divisor: Poly
    k: int
    base_locus_smooth: bool
    in_scope: bool
    freeness: FreenessReport
    expected_exponents: Optional[Tuple[int, int]]
    criterion_consistent: Optional[bool]
    residual_consistent: Optional[bool]
    off_base: Dict[MemberLabel, int] = field(default_factory=dict, compare=False)


def expected_exponents(n: int, k: int) -> Optional[Tuple[int, int]]:
    if k < 2:
        return None
    return tuple(sorted((2 * n - 2, n * (k - 2) + 1)))


def theorem_report(P: Pencil, sel: Selection, report: Optional[DiscriminantReport] = None,
                   prime_filter: bool = True, budget: Budget = DEFAULT_BUDGET) -> TheoremReport:
    """Freeness of the selected divisor together with the numerical criteria that predict it.

    Every internal identity that fails raises :class:`IdentityViolated`.
    On a pencil whose base locus is not smooth only the raw freeness verdict
    is computed.
    """
    if report is None:
        report = discriminant(P, budget=budget)
    n = P.n
    F, k, contains = assemble_divisor(P, sel, report)
    smooth = base_locus_is_smooth(P, budget)
    fr = freeness(F, prime_filter=prime_filter, budget=budget)
    expected = expected_exponents(n, k)
    if not smooth:
        return TheoremReport(P, sel, F, k, False, False, fr, expected, None, None)

    tau = fr.tjurina
    target = n * n * (k - 1) ** 2 + 3 * (n - 1) ** 2
    z = zk_degree(n, k, tau)
    off_base = {l: off_base_tjurina(P, l, budget) for l in report.labels}
    lci = lci_global_check(P, report, budget, off_base)
    fr = FreenessReport(fr.free, fr.exponents, fr.min_gen_degrees, fr.saito_constant, tau, target, z,
                        contains, lci, fr.generators)
    if expected is None:
        return TheoremReport(P, sel, F, k, True, True, fr, None, None, None, off_base)

    free_expected = fr.free and tuple(sorted(fr.exponents)) == expected
    if free_expected != (z == 0):
        raise IdentityViolated("residual-vs-freeness", f"free with expected exponents: {free_expected}, deg Z = {z}")
    if free_expected != (contains and lci):
        raise IdentityViolated(
            "freeness-criterion",
            f"free with {expected}: {free_expected}; contains singular members: {contains}; lci: {lci}")
    if k == 2 and n >= 2 and fr.free:
        raise IdentityViolated("two-members", "a union of two members came out free")
    residual_ok = None
    if lci:
        omitted = [l for l in report.labels if l not in sel.labels]
        predicted = sum(off_base[l] for l in omitted)
        if predicted != z:
            raise IdentityViolated("residual-scheme", f"deg Z = {z} but omitted members give {predicted}")
        residual_ok = True
    return TheoremReport(P, sel, F, k, True, True, fr, expected, True, residual_ok, off_base)
