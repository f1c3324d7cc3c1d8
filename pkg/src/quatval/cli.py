"""Command line entry point: ``quatval verify`` and ``quatval emit table``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .scalars import ExactScalar, ScalarFraction, as_scalar
from .verify import TARGETS, exit_code, render_value, reports_json, run_verification

TABLES = ("derivation", "klain", "products", "pd", "kinematic", "multipliers", "dimensions",
          "lambda-catalog")
FORMATS = ("text", "json", "latex")


class UsageError(Exception):
    pass


# --- label rendering ---------------------------------------------------------------------

def _sub(label: str) -> str:
    """φ4,4 -> φ_{4,4}, Λ3,2 -> Λ_{3,2}, v2^3 -> v_{2}^{3}."""
    m = re.fullmatch(r"([φΛ])(\d),(\d)", label)
    if m:
        return f"{m[1]}_{{{m[2]},{m[3]}}}"
    m = re.fullmatch(r"v(\d)\^(\d)", label)
    if m:
        return f"v_{{{m[1]}}}^{{{m[2]}}}"
    return label


def _inline_latex(x) -> str:
    """Slash fractions with \\pi powers: the form used for kinematic summands."""
    x = x.reduce() if isinstance(x, ScalarFraction) else as_scalar(x)
    if isinstance(x, ScalarFraction):
        return render_value(x, "latex")
    text = x.render()
    return re.sub(r"·?π(?:\^\(?(-?\d+(?:/2)?)\)?)?",
                  lambda m: "\\pi" + (f"^{{{m[1]}}}" if m[1] else ""), text)


# --- tables --------------------------------------------------------------------------------
# every builder returns {"table": name, ..., "rows": [...]} with string leaves only

def table_derivation(basis: Optional[str], degree: Optional[int]) -> dict:
    from .rumin import derivation_table

    basis = basis or "lambda"
    if basis not in ("lambda", "v"):
        raise UsageError("derivation basis is 'lambda' or 'v'")
    rows = [{"source": s, "image": t} for s, t in derivation_table(basis)]
    if degree is not None:
        rows = [r for r in rows if _degree_of(r["source"]) == degree]
    return {"table": "derivation", "basis": basis, "rows": rows}


def _degree_of(label: str) -> int:
    m = re.fullmatch(r"Λ(\d),\d|v\d\^(\d)", label)
    return int(m[1] or m[2])


def table_klain(basis: Optional[str], degree: Optional[int]) -> dict:
    from .catalog import V_TABLE, build_v
    from .klain import f_basis
    from .valgebra import globalize

    rows = []
    for k, i in sorted(V_TABLE):
        if degree is not None and k != degree:
            continue
        v = globalize(build_v(k, i))
        coords = v.coords(k)
        rows.append({"label": f"v_{i}^{k}", "degree": str(k),
                     "coords": {f"f{min(k, 8 - k)},{j}": c.render() for j, c in zip(f_basis(k), coords)}})
    return {"table": "klain", "basis": "f", "rows": rows}


def table_products(basis: Optional[str], degree: Optional[int]) -> dict:
    from .valgebra import basis as get_basis
    from .valgebra import coordinates, multiply

    B = get_basis(basis or "tkn")
    rows = []
    for a in range(len(B.labels)):
        for b in range(a, len(B.labels)):
            da, db = B.degree(a), B.degree(b)
            if da == 0 or db == 0 or da + db > 8:
                continue
            if degree is not None and da + db != degree:
                continue
            prod = coordinates(multiply(B.elements[a], B.elements[b]), B.name)
            rows.append({"a": B.labels[a], "b": B.labels[b],
                         "product": {l: render_value(c) for l, c in prod.items()}})
    return {"table": "products", "basis": B.name, "rows": rows}


def table_pd(basis: Optional[str], degree: Optional[int]) -> dict:
    from .valgebra import basis as get_basis
    from .valgebra import pd_matrix

    B = get_basis(basis or "tkn")
    P = pd_matrix(B.name)
    rows = [{"label": l, "row": [x.render() for x in r]} for l, r in zip(B.labels, P)]
    return {"table": "pd", "basis": B.name, "labels": list(B.labels), "rows": rows}


def table_kinematic(basis: Optional[str], degree: Optional[int]) -> dict:
    from .valgebra import kinematic_operator

    K = kinematic_operator(basis or "phi")
    rows = [{"a": a, "b": b, "coef": render_value(c)} for (a, b), c in K.odot().items()]
    return {"table": "kinematic", "basis": K.basis, "rows": rows}


def table_multipliers(basis: Optional[str], degree: Optional[int]) -> dict:
    from .harmonic import WeightVector, multiplier_rows

    rows = [{"operator": r.op, "degree": str(r.k), "module": WeightVector(r.module).label(),
             "printed": r.printed.render(), "computed": r.computed.render(),
             "status": "pass" if r.ok else "fail"}
            for r in multiplier_rows() if degree is None or r.k == degree]
    return {"table": "multipliers", "rows": rows}


def table_dimensions(basis: Optional[str], degree: Optional[int]) -> dict:
    from .harmonic import dimension_table

    t = dimension_table()
    forms = [{k: str(v) for k, v in r.items()} for r in t["forms"]]
    modules = [{k: str(v) for k, v in r.items()} for r in t["modules"]]
    return {"table": "dimensions", "forms": forms, "rows": modules}


def table_lambda_catalog(basis: Optional[str], degree: Optional[int]) -> dict:
    from .catalog import build_lambda, lambda_coord, lambda_names

    rows = []
    for k, i in lambda_names():
        if degree is not None and k != degree:
            continue
        rows.append({"label": f"Λ{k},{i}", "words": build_lambda(k, i).render(),
                     "coordinates": lambda_coord(k, i).render()})
    return {"table": "lambda-catalog", "rows": rows}


BUILDERS: Dict[str, Callable[[Optional[str], Optional[int]], dict]] = {
    "derivation": table_derivation,
    "klain": table_klain,
    "products": table_products,
    "pd": table_pd,
    "kinematic": table_kinematic,
    "multipliers": table_multipliers,
    "dimensions": table_dimensions,
    "lambda-catalog": table_lambda_catalog,
}


# --- rendering -----------------------------------------------------------------------------

def _latex_scalar(text: str) -> str:
    return ExactScalar.parse(text).render("latex") if _parses(text) else text


def _parses(text: str) -> bool:
    try:
        ExactScalar.parse(text)
        return True
    except ValueError:
        return False


def _combo(coeffs: Dict[str, str], fmt: str) -> str:
    if not coeffs:
        return "0"
    if fmt == "latex":
        terms = [f"{_latex_scalar(c)}\\,{_sub(l)}" for l, c in coeffs.items()]
    else:
        terms = [l if c == "1" else f"-{l}" if c == "-1" else f"{c}·{l}" for l, c in coeffs.items()]
    return " ".join(t if n == 0 else (f"- {t[1:]}" if t.startswith("-") else f"+ {t}")
                    for n, t in enumerate(terms))


def render_table(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    name = data["table"]
    lines: List[str] = []
    rows = data["rows"]
    if name == "derivation":
        w = max((len(r["source"]) for r in rows), default=0)
        for r in rows:
            if fmt == "latex":
                img = re.sub(r"Λ(\d),(\d)", r"\\Lambda_{\1,\2}", r["image"])
                img = re.sub(r"v(\d)\^(\d)", r"v_{\1}^{\2}", img)
                src = re.sub(r"Λ(\d),(\d)", r"\\Lambda_{\1,\2}", r["source"])
                src = re.sub(r"v(\d)\^(\d)", r"v_{\1}^{\2}", src)
                lines.append(f"\\mathcal{{L}}({src}) &= {img} \\\\")
            else:
                lines.append(f"L({r['source']}){' ' * (w - len(r['source']))} = {r['image']}")
    elif name == "klain":
        for r in rows:
            coords = r["coords"]
            if len(coords) == 1 and r["degree"] in ("0", "8"):
                (c,) = coords.values()
                body = _latex_scalar(c) if fmt == "latex" else c
            else:
                body = _combo({k: c for k, c in coords.items() if c != "0"}, fmt)
                body = body.replace("·f", "·f_") if fmt == "text" else body
            label = r["label"] if fmt == "text" else _sub_v(r["label"])
            lines.append(f"{label}: {body}")
    elif name == "products":
        for r in rows:
            if fmt == "latex":
                lines.append(f"{_sub(r['a'])}\\cdot {_sub(r['b'])} &= {_combo(r['product'], fmt)} \\\\")
            else:
                lines.append(f"{r['a']}·{r['b']} = {_combo(r['product'], fmt)}")
    elif name == "pd":
        labels = data["labels"]
        if fmt == "latex":
            lines.append("\\begin{pmatrix}")
            for r in rows:
                lines.append(" & ".join(_latex_scalar(x) for x in r["row"]) + " \\\\")
            lines.append("\\end{pmatrix}")
        else:
            cells = [[x for x in r["row"]] for r in rows]
            width = max(len(x) for row in cells for x in row + labels)
            lines.append(" " * width + " " + " ".join(l.rjust(width) for l in labels))
            for l, row in zip(labels, cells):
                lines.append(l.rjust(width) + " " + " ".join(x.rjust(width) for x in row))
    elif name == "kinematic":
        for r in rows:
            if fmt == "latex":
                lines.append(f"{_inline_latex(ExactScalar.parse(r['coef']))} {_sub(r['a'])}⊙{_sub(r['b'])}"
                             if _parses(r["coef"]) else f"{r['coef']} {_sub(r['a'])}⊙{_sub(r['b'])}")
            else:
                lines.append(f"{r['coef']} {r['a']}⊙{r['b']}")
    elif name == "multipliers":
        for r in rows:
            value = _latex_scalar(r["computed"]) if fmt == "latex" else r["computed"]
            lines.append(f"{r['operator']} on Val_{r['degree']} {r['module']}: {value}"
                         f"  [{r['status']}]")
    elif name == "dimensions":
        for r in data["forms"]:
            lines.append(f"k={r['k']}: Ω^(k,7-k) = {r['top']};  Ω^(k-1,6-k) = {r['lower']}")
        for r in rows:
            lines.append(f"k={r['k']}: Val = {r['val']} (dim {r['dim_val']});  "
                         f"Curv = {r['curv']} (dim {r['dim_curv']})")
    elif name == "lambda-catalog":
        for r in rows:
            lines.append(f"{r['label']} = {r['words']}\n    = {r['coordinates']}")
    return "\n".join(lines) + "\n"


def _sub_v(label: str) -> str:
    m = re.fullmatch(r"v_(\d)\^(\d)", label)
    return f"v_{{{m[1]}}}^{{{m[2]}}}" if m else label


def emit_table(name: str, basis: Optional[str] = None, degree: Optional[int] = None,
               fmt: str = "text") -> str:
    if name not in BUILDERS:
        raise UsageError(f"unknown table {name!r}; choose from {', '.join(TABLES)}")
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    try:
        data = BUILDERS[name](basis, degree)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    return render_table(data, fmt)


# --- Klain evaluation at a plane -----------------------------------------------------------

def _angles(raw) -> List[tuple]:
    """Angles as [c, s] pairs; a flat list of [num, den] fractions is also accepted."""
    from fractions import Fraction

    pairs = [tuple(Fraction(x) for x in a) for a in raw]
    if all(c * c + s * s == 1 for c, s in pairs):
        return pairs
    fracs = [Fraction(n) / Fraction(d) for n, d in pairs]
    if len(fracs) % 2 == 0:
        return list(zip(fracs[::2], fracs[1::2]))
    return pairs


def plane_from_json(data: dict):
    from .model import orthocomplement, special_plane

    E = special_plane(_angles(data["angles"]))
    if len(E.angles) != data.get("k", len(E.angles)):
        raise UsageError("'k' does not match the number of angles")
    return orthocomplement(E) if data.get("complement") else E


def klain_value(valuation: str, plane: dict) -> str:
    from .valgebra import named

    E = plane_from_json(plane)
    v = named(valuation)
    return v.klain_at(E, E.dim).render()


# --- argument parsing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatval", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check computed values against the published tables")
    v.add_argument("target", choices=list(TARGETS) + ["all"])
    v.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    v.add_argument("--quiet", action="store_true", help="print only the summary lines")

    e = sub.add_parser("emit", help="render a table")
    esub = e.add_subparsers(dest="what", required=True)
    t = esub.add_parser("table")
    t.add_argument("name")
    t.add_argument("--basis")
    t.add_argument("--degree", type=int)
    t.add_argument("--format", default="text", choices=FORMATS)
    t.add_argument("--out", metavar="PATH")

    k = sub.add_parser("klain", help="evaluate the Klain function of a named valuation at a plane")
    k.add_argument("valuation", help="e.g. t, κ₂, u, φ4,3")
    k.add_argument("plane", help='plane JSON, e.g. {"k": 2, "angles": [["3","5"],["4","5"]]}, or a path')
    return p


def _load_plane(arg: str) -> dict:
    path = Path(arg)
    text = path.read_text() if not arg.lstrip().startswith("{") and path.exists() else arg
    return json.loads(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    if args.command == "verify":
        reports = run_verification(args.target)
        for r in reports:
            if args.quiet:
                print(r.render().splitlines()[-1])
            else:
                print(r.render())
        if args.json:
            Path(args.json).write_text(reports_json(reports) + "\n", encoding="utf-8")
        return exit_code(reports)

    if args.command == "emit":
        try:
            out = emit_table(args.name, args.basis, args.degree, args.format)
        except UsageError as exc:
            parser.print_usage(sys.stderr)
            print(f"quatval: error: {exc}", file=sys.stderr)
            return 2
        if args.out:
            Path(args.out).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
        return 0

    try:
        print(klain_value(args.valuation, _load_plane(args.plane)))
    except (UsageError, ValueError, KeyError) as exc:
        print(f"quatval: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
