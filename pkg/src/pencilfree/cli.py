"""Command-line front end: ``pencilfree analyze|catalog|discriminant|selftest``.

Reports are JSON on stdout; a short human-readable summary goes to stderr.
Exit codes: 0 success, 2 invalid input, 3 budget exhausted, 4 an internal
identity failed (which always means a bug or an unmet hypothesis).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .catalog import CATALOG, PencilFile, get_catalog, parse_pencil_file
from .errors import (EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_OK, EXIT_VALIDATION, IdentityViolated,
                     ValidationError)
from .ideal import DEFAULT_BUDGET, Budget, BudgetExceeded
from .pencil import (DiscriminantReport, MemberLabel, Pencil, Selection, TheoremReport, base_locus_degree,
                     base_locus_is_smooth, discriminant, theorem_report, validate_pencil)
from .poly import ParseError


# ---------------------------------------------------------------------------
# selections

_POINT = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$")


def _parse_point_list(text: str) -> List[MemberLabel]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValidationError("BAD_SELECTION", f"expected a bracketed list, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return []
    out = []
    for item in body.split(","):
        m = _POINT.match(item)
        if not m:
            raise ValidationError("BAD_SELECTION", f"bad member {item.strip()!r}; write alpha:beta")
        a, b = int(m.group(1)), int(m.group(2))
        if a == 0 and b == 0:
            raise ValidationError("BAD_SELECTION", "0:0 is not a member")
        out.append(MemberLabel.at(a, b))
    return out


def parse_selection(text: Optional[str], report: DiscriminantReport) -> Selection:
    """Resolve a selection expression against the discriminant's factor list.

    Accepted forms: ``all-singular``, ``all-singular minus [a:b, ...]``,
    a list ``[a:b, ...]`` and ``orbit:<i>`` items (the i-th factor of the
    report, counting from 0), combined with ``+``.
    """
    text = (text or "all-singular").strip()
    labels: List[MemberLabel] = []
    for part in (p.strip() for p in text.split("+")):
        if part.startswith("all-singular"):
            rest = part[len("all-singular"):].strip()
            chosen = list(report.labels)
            if rest:
                if not rest.startswith("minus"):
                    raise ValidationError("BAD_SELECTION", f"unexpected {rest!r}")
                drop = _parse_point_list(rest[len("minus"):])
                for d in drop:
                    if d not in chosen:
                        raise ValidationError("BAD_SELECTION", f"{d} is not a singular member")
                chosen = [c for c in chosen if c not in drop]
            labels += chosen
        elif part.startswith("orbit:"):
            try:
                i = int(part[len("orbit:"):])
                labels.append(report.factors[i][0])
            except (ValueError, IndexError):
                raise ValidationError("BAD_SELECTION", f"no discriminant factor {part!r}")
        else:
            labels += _parse_point_list(part)
    return Selection(labels)


# ---------------------------------------------------------------------------
# report documents


def _num(c) -> object:
    c = Fraction(c)
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _label_doc(label: MemberLabel) -> Dict:
    if label.point is not None:
        return {"kind": "point", "label": f"{label.point[0]}:{label.point[1]}", "degree": 1}
    return {"kind": "orbit", "label": str(label.orbit), "degree": label.degree}


def discriminant_doc(report: DiscriminantReport) -> Dict:
    factors = []
    for i, (label, mult) in enumerate(report.factors):
        d = {"index": i, **_label_doc(label), "multiplicity": mult,
             "irreducible": label.irreducible}
        factors.append(d)
    return {"form": str(report.form), "degree": report.degree, "factors": factors,
            "residual": str(report.residual)}


def pencil_doc(P: Pencil, smooth: bool, base_degree: int) -> Dict:
    return {"f": str(P.f), "g": str(P.g), "n": P.n, "base_locus_smooth": smooth,
            "base_locus_degree": base_degree}


def analysis_doc(T: TheoremReport, report: DiscriminantReport, selection_text: str,
                 base_degree: int, prime_filter: bool) -> Dict:
    fr = T.freeness
    return {
        "pencil": pencil_doc(T.pencil, T.base_locus_smooth, base_degree),
        "discriminant": discriminant_doc(report),
        "selection": {"expr": selection_text, "labels": [_label_doc(l) for l in T.selection.labels], "k": T.k},
        "divisor": {"degree": T.divisor.degree(), "equation": str(T.divisor)},
        "freeness": {
            "free": fr.free,
            "exponents": list(fr.exponents) if fr.exponents else None,
            "min_gen_degrees": list(fr.min_gen_degrees),
            "saito_constant": _num(fr.saito_constant) if fr.saito_constant is not None else None,
        },
        "tjurina": {"tau": fr.tjurina, "tau_target": fr.tjurina_target, "zk_degree": fr.zk_degree},
        "theorem": {
            "scope": "IN_SCOPE" if T.in_scope else "OUT_OF_THEOREM_SCOPE",
            "expected_exponents": list(T.expected_exponents) if T.expected_exponents else None,
            "contains_Dsg": fr.contains_Dsg,
            "lci_pass": fr.lci_pass,
            "criterion_consistent": T.criterion_consistent,
            "residual_consistent": T.residual_consistent,
            "off_base_tjurina": [{**_label_doc(l), "value": v} for l, v in T.off_base.items()],
        },
        "diagnostics": {"version": __version__, "prime_filter": prime_filter},
    }


def dumps(doc: Dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# commands


def _load(path: str) -> PencilFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_pencil_file(fh.read())
    except OSError as exc:
        raise ValidationError("NO_FILE", str(exc))


def _budget(value: Optional[str]) -> Budget:
    if value is None:
        return DEFAULT_BUDGET
    try:
        units = int(value)
    except ValueError:
        raise ValidationError("BAD_OPTION", f"budget must be an integer, got {value!r}")
    if units < 1:
        raise ValidationError("BAD_OPTION", "budget must be positive")
    return Budget.scaled(units)


def run_analyze(pf: PencilFile, selection: Optional[str] = None, budget: Optional[str] = None,
                prime_filter: Optional[bool] = None) -> Dict:
    if prime_filter is None:
        prime_filter = pf.options.get("prime_filter", "on").lower() not in ("off", "false", "0", "no")
    B = _budget(budget if budget is not None else pf.options.get("budget"))
    f, g = pf.forms()
    P = validate_pencil(f, g, B)
    report = discriminant(P, budget=B)
    sel_text = selection or pf.selection or "all-singular"
    sel = parse_selection(sel_text, report)
    T = theorem_report(P, sel, report, prime_filter=prime_filter, budget=B)
    return analysis_doc(T, report, sel_text, base_locus_degree(P, B), prime_filter)


def run_discriminant(pf: PencilFile, budget: Optional[str] = None) -> Dict:
    B = _budget(budget if budget is not None else pf.options.get("budget"))
    f, g = pf.forms()
    P = validate_pencil(f, g, B)
    report = discriminant(P, budget=B)
    smooth = base_locus_is_smooth(P, B)
    return {"pencil": pencil_doc(P, smooth, base_locus_degree(P, B)), "discriminant": discriminant_doc(report)}


def run_catalog(name: str) -> PencilFile:
    return get_catalog(name)


def _summary(doc: Dict) -> str:
    fr, tj = doc["freeness"], doc["tjurina"]
    verdict = f"free, exponents {tuple(fr['exponents'])}" if fr["free"] else \
        f"not free, minimal generator degrees {tuple(fr['min_gen_degrees'])}"
    return (f"n={doc['pencil']['n']} k={doc['selection']['k']} degree {doc['divisor']['degree']}: {verdict}; "
            f"tau={tj['tau']} target={tj['tau_target']} deg Z={tj['zk_degree']}")


def _guard(fn, out, err) -> int:
    try:
        return fn()
    except (ValidationError, ParseError) as exc:
        code = getattr(exc, "code", "PARSE_ERROR")
        print(f"error [{code}]: {exc}", file=err)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    except IdentityViolated as exc:
        print(f"internal identity violated: {exc}", file=err)
        return EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pencilfree", description="Freeness of divisors made of members of a pencil of plane curves.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze a pencil file")
    a.add_argument("file")
    a.add_argument("--selection")
    a.add_argument("--budget")
    a.add_argument("--no-prime-filter", action="store_true")
    c = sub.add_parser("catalog", help="print a built-in pencil file")
    c.add_argument("name", choices=sorted(CATALOG))
    d = sub.add_parser("discriminant", help="discriminant and singular members of a pencil file")
    d.add_argument("file")
    d.add_argument("--budget")
    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--budget")
    s.add_argument("--quick", action="store_true", help="skip the slow criteria")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)

    if args.command == "analyze":
        def go():
            doc = run_analyze(_load(args.file), args.selection, args.budget,
                              False if args.no_prime_filter else None)
            out.write(dumps(doc))
            print(_summary(doc), file=err)
            return EXIT_OK
        return _guard(go, out, err)
    if args.command == "discriminant":
        def go():
            out.write(dumps(run_discriminant(_load(args.file), args.budget)))
            return EXIT_OK
        return _guard(go, out, err)
    if args.command == "catalog":
        out.write(run_catalog(args.name).to_text())
        return EXIT_OK
    from .acceptance import run_selftest
    return run_selftest(budget=_budget(args.budget) if args.budget else None, quick=args.quick, out=err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
