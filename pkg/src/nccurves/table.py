"""The classification table of dimensions for noncommutative curves.

Each row is assembled by running the classifiers over a family of
representatives and collecting the distinct values per column. The Dynkin
row is checked against ``1 - 2/h`` for every representative and then
rendered symbolically.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .curve import CurveSignature, DimensionReport, dimension_report
from .errors import InvariantViolation
from .quiver import Quiver, classify, dynkin_graph, gl_star_quiver, quiver_dimension_report

COLUMNS = ("hdim", "rdim", "ddim", "Sdim", "gldim")
ROWS = (
    "mod(k)",
    "rep(Q_ADE)",
    "rep(Q_non-ADE)",
    "rational orbifold curve",
    "irrational orbifold curve",
)
COXETER_SYMBOL = "1-2/h"


def _dynkin_representatives() -> list[Quiver]:
    tags = [f"A{n}" for n in range(2, 10)] + [f"D{n}" for n in range(4, 10)] + ["E6", "E7", "E8"]
    quivers = [dynkin_graph(t) for t in tags]
    # opposite orientations too; the invariants must not notice
    quivers += [Quiver(q.vertex_count, tuple((t, s) for s, t in q.arrows)) for q in quivers]
    return quivers


def _non_dynkin_representatives() -> list[Quiver]:
    out = [
        Quiver(2, ((0, 1), (0, 1))),                      # Kronecker
        Quiver(2, ((0, 1), (0, 1), (0, 1))),              # 3-Kronecker (wild)
        Quiver(5, ((0, 1), (0, 2), (0, 3), (0, 4))),      # four-subspace
        Quiver(6, ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5))),
        Quiver(3, ((0, 1), (1, 2), (0, 2))),              # acyclic triangle
    ]
    out += [gl_star_quiver(*t) for t in ((2, 3, 5), (2, 3, 4), (2, 3, 3), (2, 2, 5), (1, 3, 4))]
    return out


def _rational_signatures() -> list[CurveSignature]:
    sigs = []
    for n in range(5):
        for orders in itertools.combinations_with_replacement(range(2, 8), n):
            sigs.append(CurveSignature(0, orders))
    return sigs


def _irrational_signatures() -> list[CurveSignature]:
    sigs = []
    for g in (1, 2, 3):
        for n in range(3):
            for orders in itertools.combinations_with_replacement(range(2, 6), n):
                sigs.append(CurveSignature(g, orders))
    return sigs


def _cells(reports: list[DimensionReport]) -> list[set]:
    return [set(values) for values in zip(*(r.as_tuple() for r in reports))]


def _render(values: set) -> str:
    ordered = sorted(values)
    return " or ".join(str(v) for v in ordered)


def table_rows() -> list[dict]:
    """Rows of the table as ``{"category": ..., column: cell}`` with string cells."""
    rows = []

    rows.append(("mod(k)", _cells([quiver_dimension_report(Quiver(1))])))

    dynkin = _dynkin_representatives()
    reports = []
    for q in dynkin:
        r, c = quiver_dimension_report(q), classify(q)
        if r.sdim != 1 - Fraction(2, c.coxeter) or r.gldim != r.sdim:
            raise InvariantViolation(f"{c.type_name}: Sdim/gldim differ from 1 - 2/h")
        reports.append(r)
    cells = _cells(reports)
    cells[3] = cells[4] = {COXETER_SYMBOL}
    rows.append(("rep(Q_ADE)", cells))

    rows.append(("rep(Q_non-ADE)", _cells([quiver_dimension_report(q) for q in _non_dynkin_representatives()])))
    rows.append(("rational orbifold curve", _cells([dimension_report(s) for s in _rational_signatures()])))
    rows.append(("irrational orbifold curve", _cells([dimension_report(s) for s in _irrational_signatures()])))

    out = []
    for name, cells in rows:
        row = {"category": name}
        row.update({col: _render(vals) for col, vals in zip(COLUMNS, cells)})
        out.append(row)
    return out


def render_markdown(rows: list[dict]) -> str:
    header = "| A | " + " | ".join(COLUMNS) + " |"
    rule = "|---" * (len(COLUMNS) + 1) + "|"
    lines = [header, rule]
    for row in rows:
        lines.append("| " + " | ".join([row["category"]] + [row[c] for c in COLUMNS]) + " |")
    return "\n".join(lines) + "\n"
