"""Built-in pencils and the key=value pencil file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import linalg
from .errors import ValidationError
from .poly import XYZ, Poly, parse_polynomial


@dataclass
class PencilFile:
    f: str
    g: str
    selection: Optional[str] = None
    options: Dict[str, str] = field(default_factory=dict)
    name: Optional[str] = None

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"name = {self.name}")
        lines.append(f"f = {self.f}")
        lines.append(f"g = {self.g}")
        if self.selection:
            lines.append(f"selection = {self.selection}")
        for k in sorted(self.options):
            lines.append(f"{k} = {self.options[k]}")
        return "\n".join(lines) + "\n"

    def forms(self) -> Tuple[Poly, Poly]:
        return parse_polynomial(self.f), parse_polynomial(self.g)


_KNOWN_KEYS = {"name", "f", "g", "selection", "budget", "prime_filter"}


def parse_pencil_file(text: str) -> PencilFile:
    """Read ``key = value`` lines; ``#`` starts a comment, blank lines are ignored."""
    data: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError("BAD_FILE", f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ValidationError("BAD_FILE", f"line {lineno}: unknown key {key!r}")
        if key in data:
            raise ValidationError("BAD_FILE", f"line {lineno}: duplicate key {key!r}")
        data[key] = value
    for key in ("f", "g"):
        if key not in data:
            raise ValidationError("BAD_FILE", f"missing key {key!r}")
    options = {k: data[k] for k in ("budget", "prime_filter") if k in data}
    return PencilFile(data["f"], data["g"], data.get("selection"), options, data.get("name"))


# ---------------------------------------------------------------------------
# the Pappus configuration, kept as points so that it can be re-derived

# affine points (x, y) with z = 1: three on the line x = -1, three on x = 1
PAPPUS_A = ((-1, -1), (-1, 0), (-1, 2))
PAPPUS_B = ((1, -1), (1, 0), (1, 1))


def line_through(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    """The line through two affine points, as a primitive linear form in x, y, z."""
    (x1, y1), (x2, y2) = p, q
    a, b = Fraction(y1 - y2), Fraction(x2 - x1)
    c = -(a * x1 + b * y1)
    return Poly({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, XYZ).primitive()


def _meet(l1: Poly, l2: Poly) -> Tuple[Fraction, Fraction]:
    a1, b1, c1 = (l1.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    a2, b2, c2 = (l2.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    det = a1 * b2 - a2 * b1
    return (b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det


def pappus_triangles() -> Tuple[Poly, Poly, Poly]:
    """The three triangles of the configuration (each a product of three lines).

    The first consists of the two carrier lines and the line through the three
    cross-join points; the other two are the two sets of cross joins.
    """
    A, B = PAPPUS_A, PAPPUS_B
    x, z = Poly.var("x"), Poly.var("z")
    carriers = (x + z) * (x - z)
    cross1 = [line_through(A[0], B[1]), line_through(A[1], B[2]), line_through(A[2], B[0])]
    cross2 = [line_through(A[1], B[0]), line_through(A[2], B[1]), line_through(A[0], B[2])]
    points = [_meet(cross1[0], cross2[0]), _meet(cross2[2], cross1[2]), _meet(cross1[1], cross2[1])]
    pappus_line = line_through(points[0], points[1])
    if pappus_line.evaluate((points[2][0], points[2][1], 1)) != 0:
        raise AssertionError("the cross-join points are not collinear")
    T1 = carriers * pappus_line
    T2 = cross1[0] * cross1[1] * cross1[2]
    T3 = cross2[0] * cross2[1] * cross2[2]
    return T1, T2, T3


_PAPPUS_F = "7*x^3 - 2*x^2*y - x^2*z - 7*x*z^2 + 2*y*z^2 + z^3"
_PAPPUS_G = "3*x^3 - 10*x^2*y - x^2*z + 4*x*y^2 + 4*x*y*z - 3*x*z^2 + 8*y^3 - 4*y^2*z - 2*y*z^2 + z^3"

CATALOG: Dict[str, PencilFile] = {
    "triangle-pencil": PencilFile("x", "y", "[1:0, 0:1, 1:1]", name="triangle-pencil"),
    "conic4pts": PencilFile("y*(x - z)", "x*(y - z)", "all-singular", name="conic4pts"),
    "two-conics": PencilFile("x^2 + 2*y^2 - 3*z^2", "2*x^2 + y^2 - 3*z^2", "[1:0, 0:1]", name="two-conics"),
    "fermat3": PencilFile("x^3 - y^3", "y^3 - z^3", "all-singular", name="fermat3"),
    "fermat4": PencilFile("x^4 - y^4", "y^4 - z^4", "all-singular", name="fermat4"),
    "hesse": PencilFile("x^3 + y^3 + z^3", "x*y*z", "all-singular", name="hesse"),
    "pappus": PencilFile(_PAPPUS_F, _PAPPUS_G, "all-singular", name="pappus"),
}


def get_catalog(name: str) -> PencilFile:
    try:
        return CATALOG[name]
    except KeyError:
        raise ValidationError("UNKNOWN_CATALOG", f"no catalog entry {name!r}; choose from {', '.join(CATALOG)}")


def verify_pappus(entry: Optional[PencilFile] = None) -> bool:
    """The stored pappus entry spans the pencil of the three triangles built from the points."""
    entry = entry or CATALOG["pappus"]
    f, g = entry.forms()
    T1, T2, T3 = pappus_triangles()

    def proportional(p: Poly, q: Poly) -> bool:
        return p.primitive() == q.primitive()

    if not (proportional(f, T1) and proportional(g, T2)):
        return False
    # the third triangle is a member distinct from the other two
    mons = sorted(set(T1.terms) | set(T2.terms) | set(T3.terms))
    rows = [[T.coefficient(m) for m in mons] for T in (T1, T2, T3)]
    return linalg.rank(rows, len(mons)) == 2 and not proportional(T3, T1) and not proportional(T3, T2)
