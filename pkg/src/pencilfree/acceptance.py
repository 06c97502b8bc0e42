"""The acceptance suite, shared by ``pencilfree selftest`` and the test-suite.

Each criterion is a function that raises ``AssertionError`` with a message
on failure; :func:`run_criterion` adds timing against the criterion's limit.
"""

from __future__ import annotations

import io
import random
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple
from unittest import mock

from . import logtangent, pencil
from .catalog import get_catalog, verify_pappus
from .errors import EXIT_BUDGET, EXIT_INCONSISTENT, IdentityViolated
from .ideal import DEFAULT_BUDGET, Budget, BudgetExceeded, Ideal, saturate_irrelevant, scheme_degree
from .logtangent import canonical_syzygy, freeness, tjurina_total, uv_decomposition, wedge_ideal_degree, zk_degree
from .pencil import (DiscriminantReport, MemberLabel, Selection, TheoremReport, base_locus_is_smooth, discriminant, theorem_report, validate_pencil)
from .poly import AB, XYZ, Poly, gradient, is_reduced, multivariate_gcd, parse_polynomial, wedge
from .binary import normalize_form


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} ({self.seconds:7.2f}s / {self.limit:g}s) {self.title}: {self.detail}"


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def analyze(name: str, selection: Optional[Selection] = None, budget: Budget = DEFAULT_BUDGET,
            prime_filter: bool = True) -> Tuple[TheoremReport, DiscriminantReport]:
    from .cli import parse_selection

    entry = get_catalog(name)
    f, g = entry.forms()
    P = validate_pencil(f, g, budget)
    report = discriminant(P, budget=budget)
    sel = selection if selection is not None else parse_selection(entry.selection, report)
    return theorem_report(P, sel, report, prime_filter=prime_filter, budget=budget), report


# ---------------------------------------------------------------------------
# criteria


def criterion_1(budget: Budget) -> str:
    fr = freeness(parse_polynomial("x*y*z"), budget=budget)
    _check(fr.free and fr.exponents == (1, 1), f"expected free (1,1), got {fr.free} {fr.exponents}")
    _check(fr.tjurina == 3, f"tau = {fr.tjurina}")
    _check(fr.saito_constant not in (None, 0), "Saito constant vanishes")
    return f"free (1,1), tau=3, Saito constant {fr.saito_constant}"


def criterion_2(budget: Budget) -> str:
    members = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (1, 4)]
    for k in range(3, 7):
        sel = Selection([MemberLabel.at(*m) for m in members[:k]])
        T, report = analyze("triangle-pencil", sel, budget)
        fr = T.freeness
        _check(report.degree == 0 and not report.factors, "a pencil of lines has singular members")
        _check(fr.free and fr.exponents == (0, k - 1), f"k={k}: got {fr.free} {fr.exponents}")
        _check(T.expected_exponents == (0, k - 1), f"k={k}: expected exponents {T.expected_exponents}")
        _check(fr.contains_Dsg is True and T.criterion_consistent, f"k={k}: theorem bookkeeping")
    return "k=3..6 concurrent lines free with exponents (0,k-1)"


def criterion_3(budget: Budget) -> str:
    T, report = analyze("conic4pts", budget=budget)
    fr = T.freeness
    _check(T.k == 3 and T.divisor.degree() == 6, "expected six lines")
    _check(fr.free and fr.exponents == (2, 3), f"got {fr.free} {fr.exponents}")
    _check(fr.tjurina == 19 and fr.tjurina_target == 19 and fr.zk_degree == 0, f"tau {fr.tjurina}, Z {fr.zk_degree}")
    _check(fr.lci_pass and sorted(T.off_base.values()) == [1, 1, 1], f"off-base {list(T.off_base.values())}")
    return "six lines free (2,3), tau=19, deg Z=0, off-base 1+1+1"


def criterion_4(budget: Budget) -> str:
    T, _ = analyze("two-conics", budget=budget)
    fr = T.freeness
    _check(T.k == 2 and not fr.free, "two conics came out free")
    _check(fr.tjurina == 4 and fr.zk_degree == 3, f"tau {fr.tjurina}, Z {fr.zk_degree}")
    _check(fr.zk_degree >= (2 - 1) ** 2, "deg Z below (n-1)^2")
    _check(T.residual_consistent is True, "omitted members do not account for Z")
    return f"not free (generators {fr.min_gen_degrees}), tau=4, deg Z=3"


def criterion_5(budget: Budget) -> str:
    T, report = analyze("fermat3", budget=budget)
    fr = T.freeness
    _check(T.divisor.degree() == 9, "expected nine lines")
    _check(fr.free and fr.exponents == (4, 4), f"got {fr.free} {fr.exponents}")
    _check(fr.tjurina == 48, f"tau {fr.tjurina}")
    a, b = Poly.var("a", AB), Poly.var("b", AB)
    _check(report.form == normalize_form(a ** 4 * b ** 4 * (a - b) ** 4), f"discriminant {report.form}")
    _check(report.degree == 12, "discriminant degree")
    f, g = get_catalog("fermat3").forms()
    _check(wedge_ideal_degree(f, g, budget) == 12, "wedge scheme length")
    return "nine lines free (4,4), tau=48, Delta ~ a^4 b^4 (a-b)^4, wedge length 12"


def criterion_6(budget: Budget) -> str:
    T, _ = analyze("fermat4", budget=budget)
    fr = T.freeness
    _check(T.divisor.degree() == 12, "expected twelve lines")
    _check(fr.free and sorted(fr.exponents) == [5, 6], f"got {fr.free} {fr.exponents}")
    _check(fr.tjurina == 91, f"tau {fr.tjurina}")
    return "twelve lines free (5,6), tau=91"


def criterion_7(budget: Budget) -> str:
    T, report = analyze("hesse", budget=budget)
    fr = T.freeness
    _check(T.divisor.degree() == 12 and T.k == 4, "expected twelve lines in four triangles")
    _check(fr.free and fr.exponents == (4, 7), f"got {fr.free} {fr.exponents}")
    _check(fr.tjurina == 93 and report.degree == 12, f"tau {fr.tjurina}, deg Delta {report.degree}")
    orbits = [l for l in report.labels if l.orbit is not None]
    _check(len(orbits) == 1 and orbits[0].degree == 2 and orbits[0].irreducible, "one quadratic orbit")
    values = sorted(T.off_base.values())
    _check(values == [3, 3, 6] and fr.lci_pass, f"off-base {values}")
    return "twelve lines free (4,7), tau=93, off-base 3+3+6=12"


def criterion_8(budget: Budget) -> str:
    _check(verify_pappus(), "catalog pappus entry does not match its points")
    T, report = analyze("pappus", budget=budget)
    fr = T.freeness
    triangles = [MemberLabel.at(1, 0), MemberLabel.at(0, 1), MemberLabel.at(1, -1)]
    mults = dict(report.factors)
    _check(report.degree == 12 and all(mults.get(t) == 3 for t in triangles), f"factors {report.factors}")
    others = [l for l in report.labels if l not in triangles]
    for l in others:
        # each remaining member carries a single node off the base points
        _check(T.off_base[l] == l.degree, f"{l}: off-base {T.off_base[l]}")
    _check(sum(l.degree * mults[l] for l in others) == 3, "nodal cubics do not fill the discriminant")
    _check(T.divisor.degree() == 18 and fr.free and fr.exponents == (4, 13), f"full: {fr.free} {fr.exponents}")
    _check(fr.tjurina == 237, f"full: tau {fr.tjurina}")
    P = T.pencil
    T3 = theorem_report(P, Selection(triangles), report, budget=budget)
    fr3 = T3.freeness
    _check(not fr3.free and fr3.tjurina == 45 and fr3.zk_degree == 3, f"triangles: {fr3.free} tau {fr3.tjurina} Z {fr3.zk_degree}")
    _check(sum(T.off_base[l] for l in others) == 3 and T3.residual_consistent, "omitted nodes")
    return "full divisor free (4,13), tau=237; three triangles not free, tau=45, deg Z=3"


# -- property suite -----------------------------------------------------


def random_form(rng: random.Random, d: int, lo: int = -3, hi: int = 3, density: float = 0.7) -> Poly:
    terms = {}
    for i in range(d, -1, -1):
        for j in range(d - i, -1, -1):
            if rng.random() < density:
                terms[(i, j, d - i - j)] = rng.randint(lo, hi)
    p = Poly(terms, XYZ)
    return p if p else Poly({(d, 0, 0): 1}, XYZ)


def random_valid_pencil(rng: random.Random, n: int, budget: Budget, smooth_base: bool = False):
    while True:
        f, g = random_form(rng, n), random_form(rng, n)
        try:
            P = validate_pencil(f, g, budget)
        except Exception:
            continue
        if smooth_base and not base_locus_is_smooth(P, budget):
            continue
        return P


def _random_members(rng: random.Random, k: int) -> List[Tuple[int, int]]:
    seen = set()
    out = []
    while len(out) < k:
        a, b = rng.randint(-4, 4), rng.randint(-4, 4)
        if (a, b) == (0, 0):
            continue
        lab = MemberLabel.at(a, b).point
        if lab not in seen:
            seen.add(lab)
            out.append(lab)
    return out


def property_suite(budget: Budget = DEFAULT_BUDGET, seed: int = 2024) -> Dict[str, int]:
    """Randomised identities; returns the number of cases per property."""
    rng = random.Random(seed)
    counts: Dict[str, int] = {}
    x, y, z = (Poly.var(v) for v in XYZ)

    for _ in range(40):
        d = rng.randint(1, 6)
        F = random_form(rng, d)
        euler = x * F.diff("x") + y * F.diff("y") + z * F.diff("z")
        _check(euler == F.scale(d), f"Euler identity fails for {F}")
    counts["euler"] = 40

    for _ in range(40):
        u = gradient(random_form(rng, rng.randint(1, 4)))
        v = gradient(random_form(rng, rng.randint(1, 4)))
        w = wedge(u, v)
        _check(not w.dot(u) and not w.dot(v), "wedge is not orthogonal to its factors")
    counts["wedge"] = 40

    for _ in range(30):
        P = random_valid_pencil(rng, rng.randint(1, 3), budget)
        F = Poly.constant(1)
        for m in _random_members(rng, rng.randint(1, 4)):
            F = F * P.member(*m)
        s = canonical_syzygy(P.f, P.g, F)
        _check(not s.s.dot(gradient(F)), "canonical section does not annihilate the gradient")
    counts["canonical_syzygy"] = 30

    for _ in range(30):
        f, g = random_form(rng, rng.randint(1, 3)), random_form(rng, rng.randint(1, 3))
        uv_decomposition(_random_members(rng, rng.randint(1, 4)), f, g)  # verifies internally
    counts["uv_decomposition"] = 30

    for _ in range(20):
        P = random_valid_pencil(rng, 2, budget, smooth_base=True)
        members = _random_members(rng, rng.randint(2, 3))
        F = Poly.constant(1)
        for m in members:
            F = F * P.member(*m)
        if not is_reduced(F):
            continue
        _check(zk_degree(2, len(members), tjurina_total(F, budget)) >= 0, "negative residual length")
    counts["zk_nonnegative"] = 20

    for i in range(24):
        n = 1 + i % 3
        P = random_valid_pencil(rng, n, budget)
        R = discriminant(P, budget=budget)
        _check(R.form.degree() == 3 * (n - 1) ** 2, f"deg Delta = {R.form.degree()} for n = {n}")
        _check(sum(l.degree * m for l, m in R.factors) == 3 * (n - 1) ** 2, "factor degrees")
    counts["discriminant_degree"] = 24

    done = 0
    while done < 30:
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        A, B = random_form(rng, p), random_form(rng, q)
        if not multivariate_gcd(A, B).is_constant():
            continue
        deg = scheme_degree(saturate_irrelevant(Ideal([A, B])), budget)
        _check(deg == p * q, f"Bezout fails: {deg} != {p}*{q}")
        done += 1
    counts["bezout"] = 30
    return counts


def criterion_9(budget: Budget) -> str:
    counts = property_suite(budget)
    total = sum(counts.values())
    _check(total >= 200, f"only {total} random cases")
    return f"{total} random cases: " + ", ".join(f"{k}={v}" for k, v in counts.items())


# -- tripwires ----------------------------------------------------------


@contextmanager
def _inject(target, attribute: str, replacement):
    with mock.patch.object(target, attribute, replacement):
        yield


def criterion_10(budget: Budget) -> str:
    from .cli import main

    for name in ("conic4pts", "two-conics", "fermat3", "hesse"):
        T, _ = analyze(name, budget=budget)
        _check(T.criterion_consistent is True, f"{name}: criterion bookkeeping not consistent")
        if T.freeness.free:
            _check(T.freeness.saito_constant not in (None, 0), f"{name}: Saito constant")

    # a broken Saito determinant must surface as an identity violation, not a verdict
    with _inject(logtangent, "saito_check", lambda s1, s2, F: None):
        try:
            freeness(parse_polynomial("x*y*z"), budget=budget)
            raise AssertionError("Saito fault went unnoticed")
        except IdentityViolated:
            pass
    # a wrong local complete intersection verdict breaks the freeness criterion
    with _inject(pencil, "lci_global_check", lambda *a, **k: False):
        import os
        import tempfile
        with tempfile.NamedTemporaryFile("w", suffix=".pencil", delete=False) as fh:
            fh.write(get_catalog("fermat3").to_text())
            path = fh.name
        try:
            code = main(["analyze", path], out=io.StringIO(), err=io.StringIO())
        finally:
            os.unlink(path)
        _check(code == EXIT_INCONSISTENT, f"injected fault gave exit code {code}")
    return "fixtures consistent; injected faults raise the identity-violation exit code"


CRITERIA: List[Tuple[int, str, Callable[[Budget], str], float]] = [
    (1, "triangle xyz", criterion_1, 1.0),
    (2, "concurrent lines", criterion_2, 1.0),
    (3, "conic pencil, six lines", criterion_3, 5.0),
    (4, "two transverse conics", criterion_4, 5.0),
    (5, "Fermat n=3", criterion_5, 30.0),
    (6, "Fermat n=4", criterion_6, 120.0),
    (7, "Hesse arrangement", criterion_7, 120.0),
    (8, "Pappus arrangement", criterion_8, 600.0),
    (9, "randomised property suite", criterion_9, 600.0),
    (10, "internal-consistency tripwires", criterion_10, 600.0),
]

SLOW = {6, 7, 8, 9}


def run_criterion(number: int, budget: Budget = DEFAULT_BUDGET) -> CriterionResult:
    num, title, fn, limit = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        detail = fn(budget)
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed > limit:
        ok, detail = False, f"{detail} (over the time limit)"
    return CriterionResult(num, title, ok, elapsed, limit, detail)


def run_selftest(budget: Optional[Budget] = None, quick: bool = False, out=None) -> int:
    out = out or sys.stderr
    budget = budget or DEFAULT_BUDGET
    failed = 0
    for num, *_ in CRITERIA:
        if quick and num in SLOW:
            continue
        try:
            res = run_criterion(num, budget)
        except BudgetExceeded as exc:
            print(f"[BUDGET] criterion {num:2d}: {exc}", file=out)
            return EXIT_BUDGET
        except IdentityViolated as exc:
            print(f"[FAIL] criterion {num:2d}: internal identity violated: {exc}", file=out)
            return EXIT_INCONSISTENT
        print(res.line(), file=out)
        failed += not res.passed
    print(f"{'all criteria passed' if not failed else f'{failed} criteria failed'}", file=out)
    return 0 if not failed else 1
