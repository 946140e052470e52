"""Command-line front end.

Every subcommand reads JSON operands (inline, or ``@path`` to read a file),
prints one report on stdout and exits 0. Validation failures print a
structured ``{"error": ...}`` object on stderr and exit 2; internal invariant
breaches exit 3. Output is a pure function of the arguments.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .classes import CRVector, KClass, add, ch_orb, dual, slope, tensor
from .curve import (
    CurveSignature,
    cr_rank,
    dimension_report,
    enumerate_negative_triples,
    negative_family,
    omega_degree,
)
from .errors import InvariantViolation, NCCurveError
from .hn import FilteredObject, hn_normalize
from .quiver import Quiver, classify, quiver_dimension_report
from .stability import (
    StabParams,
    check_support,
    min_h_for_epsilon,
    sampled_sup_gap,
    serre_twist_phase_gap,
    support_lower_bound,
)
from .table import table_rows, render_markdown

EXIT_OK, EXIT_INVALID, EXIT_BUG = 0, 2, 3

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def real12(x: float) -> str:
    return f"{x:.12f}"


def md_fraction(q) -> str:
    """Render a rational with unicode super/subscript digits, e.g. ``-¹⁄₃₀``."""
    if q == float("inf"):
        return "∞"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}{str(abs(q.numerator)).translate(_SUPERSCRIPT)}⁄{str(q.denominator).translate(_SUBSCRIPT)}"


def _load(text: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise NCCurveError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise NCCurveError(f"malformed JSON: {exc.msg} at position {exc.pos}") from exc


def _signature(text: str) -> CurveSignature:
    return CurveSignature.from_dict(_load(text))


def _md_kv(title: str, pairs: list[tuple[str, str]]) -> str:
    lines = [f"## {title}", ""] + [f"- **{k}**: {v}" for k, v in pairs]
    return "\n".join(lines) + "\n"


def _md_report(report) -> str:
    cols = ("hdim", "rdim", "ddim", "Sdim", "gldim")
    vals = [str(report.hdim), str(report.rdim), str(report.ddim),
            md_fraction(report.sdim), md_fraction(report.gldim)]
    return ("| " + " | ".join(cols) + " |\n" + "|---" * len(cols) + "|\n"
            + "| " + " | ".join(vals) + " |\n")


def cmd_curve_report(args):
    sig = _signature(args.signature)
    family = negative_family(sig)
    report = dimension_report(sig)
    data = {
        "signature": sig.to_dict(),
        "omega_degree": str(omega_degree(sig)),
        "cr_rank": cr_rank(sig),
        "family": family.kind if family else None,
        "report": report.to_dict(),
    }
    md = _md_kv(f"Orbifold curve {sig}", [
        ("deg ω", md_fraction(omega_degree(sig))),
        ("Chen-Ruan rank", str(cr_rank(sig))),
        ("negative family", str(family) if family else "none"),
    ]) + "\n" + _md_report(report)
    return data, md


def cmd_quiver_report(args):
    q = Quiver.from_dict(_load(args.quiver))
    c = classify(q)
    report = quiver_dimension_report(q)
    data = {"quiver": q.to_dict(), "classification": c.to_dict(), "report": report.to_dict()}
    kind = f"Dynkin {c.type_name} (h = {c.coxeter})" if c.kind == "Dynkin" else c.kind
    md = _md_kv(f"Quiver with {q.vertex_count} vertices", [("type", kind)]) + "\n" + _md_report(report)
    return data, md


def cmd_table(args):
    rows = table_rows()
    return {"columns": ["hdim", "rdim", "ddim", "Sdim", "gldim"], "rows": rows}, render_markdown(rows)


def _kclass(text: str) -> KClass:
    return KClass.from_dict(_load(text))


def cmd_k_op(args):
    unary = {"dual", "chorb", "slope"}
    need = 1 if args.op in unary else 2
    if len(args.operands) != need:
        raise NCCurveError(f"k-op {args.op} takes {need} operand(s), got {len(args.operands)}")
    a = _kclass(args.operands[0])
    sig = _signature(args.sig) if args.sig else None
    if args.op == "add":
        out = add(a, _kclass(args.operands[1]))
    elif args.op == "tensor":
        out = tensor(a, _kclass(args.operands[1]))
    elif args.op == "dual":
        out = dual(a)
    elif args.op == "chorb":
        v: CRVector = ch_orb(a, sig)
        return {"op": "chorb", "result": v.to_dict()}, _md_kv("ch_orb", [("vector", str(list(v.flat())))])
    else:
        mu = slope(a)
        text = "inf" if mu == float("inf") else str(mu)
        return {"op": "slope", "result": text}, _md_kv("slope", [("μ", md_fraction(mu))])
    md = _md_kv(args.op, [("rank", str(out.rank)), ("degree", md_fraction(out.degree)),
                          ("locals", str([list(v) for v in out.locals]))])
    return {"op": args.op, "result": out.to_dict()}, md


def cmd_stab_check(args):
    sig = _signature(args.signature)
    report = check_support(sig, args.bound)
    md = _md_kv(f"Support property on {sig}, box [0, {args.bound}]", [
        ("vectors checked", str(report.checked)),
        ("min |Z|²/‖ch‖²", md_fraction(report.min_ratio)),
        ("required constant", md_fraction(support_lower_bound(sig))),
        ("ok", str(report.ok).lower()),
    ])
    return report.to_dict(), md


def _random_heart_class(rng: random.Random, orders) -> KClass:
    rank = rng.randint(0, 4)
    locs = tuple(tuple(rng.randint(0, 3) for _ in range(e - 1)) for e in orders)
    coarse = rng.randint(-20, 20)
    a = KClass(rank, Fraction(0), locs)
    degree = coarse + a.local_weight()
    if rank == 0 and degree <= 0:
        degree = abs(coarse) + 1 + a.local_weight()
    return KClass(rank, degree, locs)


def cmd_gldim_h(args):
    sig = _signature(args.signature)
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError) as exc:
        raise NCCurveError(f"eps must be a rational like 1/2, got {args.eps!r}") from exc
    h = min_h_for_epsilon(sig, eps)
    d = omega_degree(sig)
    probe = Fraction(h * (1 + 1e-6)) if h > 0 else Fraction(1)
    sup_above = sampled_sup_gap(float(abs(d) / probe)) if d else 0.0
    # random heart classes at H just above the bound must all stay within eps
    rng = random.Random(args.seed)
    params = StabParams(Fraction(0), probe)
    samples = 200
    for _ in range(samples):
        a = _random_heart_class(rng, sig.orders)
        gap = serre_twist_phase_gap(params, a, sig)
        if not gap < eps:
            raise InvariantViolation(f"phase gap {gap} >= eps for {a} at H = {float(probe)}")
    data = {
        "signature": sig.to_dict(),
        "omega_degree": str(d),
        "eps": str(eps),
        "h": real12(h),
        "sampled_sup_gap": real12(sup_above),
        "random_classes_checked": samples,
    }
    md = f"H = {real12(h)}\n"
    return data, md


def cmd_hn_normalize(args):
    data = _load(args.pieces)
    raw = data.get("pieces") if isinstance(data, dict) else data
    if not isinstance(raw, list):
        raise NCCurveError('expected {"pieces": [<KClass>, ...]} or a list of KClasses')
    f: FilteredObject = hn_normalize(KClass.from_dict(p) for p in raw)
    slopes = ["inf" if s == float("inf") else str(s) for s in f.slopes]
    md = "| piece | rank | degree | slope |\n|---|---|---|---|\n" + "".join(
        f"| {i} | {a.rank} | {md_fraction(a.degree)} | {md_fraction(slope(a))} |\n"
        for i, a in enumerate(f.pieces, start=1)
    )
    return {**f.to_dict(), "slopes": slopes}, md


def cmd_triple_scan(args):
    if args.bound < 2:
        raise NCCurveError(f"bound must be >= 2, got {args.bound}")
    triples = sorted(enumerate_negative_triples(args.bound))
    listed = []
    for t in triples:
        fam = negative_family(CurveSignature(0, tuple(a for a in t if a > 1)))
        if fam is None:
            raise InvariantViolation(f"enumerated triple {t} has no family")
        listed.append({"triple": list(t), "family": fam.kind})
    data = {"bound": args.bound, "count": len(listed), "triples": listed}
    md = f"{len(listed)} negative triples up to {args.bound}\n\n| triple | family |\n|---|---|\n" + "".join(
        f"| {tuple(x['triple'])} | {x['family']} |\n" for x in listed
    )
    return data, md


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nccurves", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "markdown"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-report", parents=[common], help="dimensions of an orbifold curve")
    p.add_argument("signature", help='{"genus": g, "orders": [...]} or @file')
    p.set_defaults(func=cmd_curve_report)

    p = sub.add_parser("quiver-report", parents=[common], help="classify an acyclic quiver")
    p.add_argument("quiver", help='{"vertices": n, "arrows": [[s, t], ...]} or @file')
    p.set_defaults(func=cmd_quiver_report)

    p = sub.add_parser("table", parents=[common], help="dimension table of noncommutative curves")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("k-op", parents=[common], help="K-theory operations")
    p.add_argument("op", choices=("add", "tensor", "dual", "chorb", "slope"))
    p.add_argument("operands", nargs="+", help="KClass JSON or @file")
    p.add_argument("--sig", help="signature the classes live on (checked by chorb)")
    p.set_defaults(func=cmd_k_op)

    p = sub.add_parser("stab-check", parents=[common], help="verify the support property on a box")
    p.add_argument("signature")
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=cmd_stab_check)

    p = sub.add_parser("gldim-h", parents=[common], help="H making Serre phase gaps < eps")
    p.add_argument("signature")
    p.add_argument("--eps", required=True)
    p.set_defaults(func=cmd_gldim_h)

    p = sub.add_parser("hn-normalize", parents=[common], help="normal form of HN pieces")
    p.add_argument("pieces")
    p.set_defaults(func=cmd_hn_normalize)

    p = sub.add_parser("triple-scan", parents=[common], help="negative-degree weight triples")
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=cmd_triple_scan)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        data, md = args.func(args)
    except NCCurveError as exc:
        err.write(json.dumps({"error": exc.to_dict()}, ensure_ascii=False) + "\n")
        return EXIT_INVALID
    except InvariantViolation as exc:
        err.write(json.dumps({"error": {"type": "internal_invariant", "message": str(exc)}}) + "\n")
        return EXIT_BUG
    if args.format == "markdown":
        out.write(md)
    else:
        out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
