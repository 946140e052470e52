"""Finite acyclic quivers: Dynkin recognition, Coxeter numbers, dimension rows.

Recognition goes through the Tits form
``q(x) = sum_v x_v^2 - sum_{a: s -> t} x_s x_t``: a connected quiver is
Dynkin iff ``q`` is positive definite, extended Dynkin iff it is positive
semidefinite with nonzero radical, and wild otherwise. Definiteness is
decided by exact symmetric elimination over the rationals. The ADE label of
a Dynkin quiver is then read off its tree shape.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from .curve import CurveSignature, DimensionReport, negative_family
from .errors import InvariantViolation, NotNegativeFamilyError, QuiverError

__all__ = [
    "Quiver",
    "QuiverClassification",
    "Definiteness",
    "tits_definiteness",
    "classify",
    "ade_type_of_tree",
    "dynkin_graph",
    "positive_roots",
    "highest_root",
    "coxeter_number",
    "quiver_dimension_report",
    "star_quiver",
    "gl_star_quiver",
]


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if isinstance(self.vertex_count, bool) or not isinstance(self.vertex_count, int) \
                or self.vertex_count < 1:
            raise QuiverError(f"vertex count must be a positive integer, got {self.vertex_count!r}")
        arrows = []
        for arrow in self.arrows:
            try:
                s, t = arrow
            except (TypeError, ValueError):
                raise QuiverError(f"arrow must be a (source, target) pair, got {arrow!r}") from None
            if not all(isinstance(v, int) and 0 <= v < self.vertex_count for v in (s, t)):
                raise QuiverError(f"arrow {arrow!r} has an endpoint outside 0..{self.vertex_count - 1}")
            if s == t:
                raise QuiverError(f"loop at vertex {s}: quiver must be acyclic")
            arrows.append((s, t))
        object.__setattr__(self, "arrows", tuple(arrows))
        if not self._is_acyclic():
            raise QuiverError("quiver has an oriented cycle")

    def _is_acyclic(self) -> bool:
        indeg = [0] * self.vertex_count
        out = [[] for _ in range(self.vertex_count)]
        for s, t in self.arrows:
            out[s].append(t)
            indeg[t] += 1
        ready = deque(v for v in range(self.vertex_count) if indeg[v] == 0)
        seen = 0
        while ready:
            v = ready.popleft()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return seen == self.vertex_count

    def is_connected(self) -> bool:
        nbrs = self.neighbours()
        seen, todo = {0}, [0]
        while todo:
            for w in nbrs[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.vertex_count

    def neighbours(self) -> list[set[int]]:
        nbrs = [set() for _ in range(self.vertex_count)]
        for s, t in self.arrows:
            nbrs[s].add(t)
            nbrs[t].add(s)
        return nbrs

    def edge_multiplicities(self) -> dict[tuple[int, int], int]:
        """Number of arrows between each unordered pair of vertices."""
        mult: dict = {}
        for s, t in self.arrows:
            key = (min(s, t), max(s, t))
            mult[key] = mult.get(key, 0) + 1
        return mult

    def reversed_arrow(self, k: int) -> "Quiver":
        arrows = list(self.arrows)
        s, t = arrows[k]
        arrows[k] = (t, s)
        return Quiver(self.vertex_count, tuple(arrows))

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        if not isinstance(data, dict) or "vertices" not in data:
            raise QuiverError('quiver JSON must look like {"vertices": n, "arrows": [[s, t], ...]}')
        return cls(data["vertices"], tuple(tuple(a) for a in data.get("arrows", [])))


class Definiteness(NamedTuple):
    kind: str  # "positive definite" | "positive semidefinite" | "indefinite"
    radical: int


def tits_definiteness(q: Quiver) -> Definiteness:
    """Definiteness of ``2 q(x) = x^T (2I - A - A^T) x`` by exact elimination.

    Pivots are taken on positive diagonal entries of minimal off-diagonal
    support, so trees and cycles eliminate without fill-in. A negative
    diagonal entry, or a zero diagonal with a nonzero off-diagonal entry in
    its row, certifies indefiniteness.
    """
    n = q.vertex_count
    diag = {v: Fraction(2) for v in range(n)}
    off: dict[int, dict[int, Fraction]] = {v: {} for v in range(n)}
    for (s, t), m in q.edge_multiplicities().items():
        off[s][t] = off[t][s] = Fraction(-m)

    positive = set(diag)
    while diag:
        if not positive:
            if any(off[v] for v in diag):
                return Definiteness("indefinite", 0)
            return Definiteness("positive semidefinite", len(diag))
        k = min(positive, key=lambda v: (len(off[v]), v))
        positive.discard(k)
        pivot, row = diag.pop(k), off.pop(k)
        for i in row:
            del off[i][k]
        for i, a in row.items():
            d = diag[i] = diag[i] - a * a / pivot
            if d < 0:
                return Definiteness("indefinite", 0)
            if d == 0:
                positive.discard(i)
            for j, b in row.items():
                if i != j:
                    val = off[i].get(j, 0) - a * b / pivot
                    if val:
                        off[i][j] = val
                    else:
                        off[i].pop(j, None)
    return Definiteness("positive definite", 0)


@dataclass(frozen=True)
class QuiverClassification:
    kind: str  # "Dynkin" | "Extended" | "Wild"
    type_name: str | None = None
    coxeter: int | None = None
    is_a1: bool = False

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "Dynkin":
            out["type"] = self.type_name
            out["coxeter_number"] = self.coxeter
        out["is_a1"] = self.is_a1
        return out


def _arm_lengths(nbrs: list[set[int]], centre: int) -> list[int]:
    lengths = []
    for start in nbrs[centre]:
        prev, cur, length = centre, start, 1
        while True:
            nxt = [w for w in nbrs[cur] if w != prev]
            if len(nxt) != 1:
                if nxt:
                    return []  # another branch point
                break
            prev, cur, length = cur, nxt[0], length + 1
        lengths.append(length)
    return sorted(lengths)


def ade_type_of_tree(nbrs: Sequence[set[int]]) -> str | None:
    """ADE label of a tree given by adjacency sets, or ``None`` if it is not a Dynkin shape."""
    n = len(nbrs)
    if sum(len(s) for s in nbrs) != 2 * (n - 1):
        return None
    degrees = [len(s) for s in nbrs]
    if max(degrees, default=0) <= 2:
        return f"A{n}"
    branch = [v for v, d in enumerate(degrees) if d >= 3]
    if len(branch) != 1 or degrees[branch[0]] != 3:
        return None
    arms = _arm_lengths(list(nbrs), branch[0])
    if len(arms) != 3:
        return None
    p, q, r = arms
    if (p, q) == (1, 1):
        return f"D{n}"
    if (p, q) == (1, 2) and r in (2, 3, 4):
        return f"E{n}"
    return None


def classify(q: Quiver) -> QuiverClassification:
    if not q.is_connected():
        raise QuiverError("classification needs a connected quiver")
    form = tits_definiteness(q)
    if form.kind == "indefinite":
        return QuiverClassification("Wild")
    if form.kind == "positive semidefinite":
        return QuiverClassification("Extended")
    if any(m > 1 for m in q.edge_multiplicities().values()):
        raise InvariantViolation("positive definite Tits form on a multigraph")
    name = ade_type_of_tree(q.neighbours())
    if name is None:
        raise InvariantViolation(f"positive definite Tits form on a non-ADE shape: {q}")
    return QuiverClassification("Dynkin", name, coxeter_number(name), is_a1=(name == "A1"))


def _parse_tag(tag: str) -> tuple[str, int]:
    letter, digits = tag[:1].upper(), tag[1:]
    if letter not in "ADE" or not digits.isdigit():
        raise QuiverError(f"not an ADE tag: {tag!r}")
    rank = int(digits)
    if (letter == "A" and rank < 1) or (letter == "D" and rank < 4) \
            or (letter == "E" and rank not in (6, 7, 8)):
        raise QuiverError(f"not an ADE tag: {tag!r}")
    return letter, rank


def _star_edges(arms: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    """Tree with a centre 0 and arms of the given lengths, edges pointing away from 0."""
    edges, nxt = [], 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return nxt, edges


def dynkin_graph(tag: str) -> Quiver:
    """A (linearly oriented) quiver of the given ADE type."""
    letter, rank = _parse_tag(tag)
    if letter == "A":
        return Quiver(rank, tuple((i, i + 1) for i in range(rank - 1)))
    arms = (1, 1, rank - 3) if letter == "D" else (1, 2, rank - 4)
    n, edges = _star_edges(arms)
    return Quiver(n, tuple(edges))


def _pairing_rows(q: Quiver) -> list[list[tuple[int, int]]]:
    """Sparse Cartan matrix: for each ``i``, the pairs ``(j, C_ji)`` with ``C_ji != 0``."""
    rows = [[(i, 2)] for i in range(q.vertex_count)]
    for (s, t), m in q.edge_multiplicities().items():
        rows[s].append((t, -m))
        rows[t].append((s, -m))
    return rows


def _pair(beta: Sequence[int], row: list[tuple[int, int]]) -> int:
    return sum(beta[j] * c for j, c in row)


def positive_roots(q: Quiver, limit: int = 10_000) -> list[tuple[int, ...]]:
    """Positive roots of a Dynkin quiver's root system in simple-root coordinates.

    Closes the simple roots under simple reflections, keeping the positive
    images. Raises if more than ``limit`` roots appear (not of finite type).
    """
    rows = _pairing_rows(q)
    n = q.vertex_count
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    todo = deque(simple)
    while todo:
        beta = todo.popleft()
        for i in range(n):
            c = _pair(beta, rows[i])
            if c == 0:
                continue
            image = beta[:i] + (beta[i] - c,) + beta[i + 1:]
            if min(image) >= 0 and image not in seen:
                seen.add(image)
                todo.append(image)
                if len(seen) > limit:
                    raise QuiverError("root closure does not terminate: not of finite type")
    return sorted(seen, key=lambda r: (sum(r), r))


def highest_root(q: Quiver, limit: int = 10_000) -> tuple[int, ...]:
    """The dominant positive root, reached from a simple root by height-raising reflections.

    In a simply-laced irreducible root system this is the unique root of
    maximal height.
    """
    rows = _pairing_rows(q)
    beta = [int(j == 0) for j in range(q.vertex_count)]
    for _ in range(limit):
        for i, row in enumerate(rows):
            c = _pair(beta, row)
            if c < 0:
                beta[i] -= c
                break
        else:
            return tuple(beta)
    raise QuiverError("no dominant root reached: not of finite type")


@lru_cache(maxsize=None)
def coxeter_number(tag: str) -> int:
    """``h = 2 |positive roots| / rank``, with the roots enumerated explicitly."""
    q = dynkin_graph(tag)
    count = len(positive_roots(q))
    h, rem = divmod(2 * count, q.vertex_count)
    if rem:
        raise InvariantViolation(f"{tag}: 2*{count} not divisible by rank {q.vertex_count}")
    return h


def quiver_dimension_report(q: Quiver) -> DimensionReport:
    c = classify(q)
    if c.is_a1:
        return DimensionReport(0, 0, 0, Fraction(0), Fraction(0))
    if c.kind == "Dynkin":
        value = 1 - Fraction(2, c.coxeter)
        return DimensionReport(1, 0, 1, value, value)
    return DimensionReport(1, 1, 1, Fraction(1), Fraction(1))


def _triple(a1: int, a2: int, a3: int) -> tuple[int, int, int]:
    triple = tuple(sorted((a1, a2, a3)))
    if any(not isinstance(a, int) or a < 1 for a in triple):
        raise NotNegativeFamilyError(f"weights must be positive integers, got {triple}")
    return triple


def star_quiver(a1: int, a2: int, a3: int) -> Quiver:
    """Star with arms of lengths ``a_i - 1`` around a centre, arrows pointing outward."""
    n, edges = _star_edges([a - 1 for a in _triple(a1, a2, a3)])
    return Quiver(n, tuple(edges))


def gl_star_quiver(a1: int, a2: int, a3: int) -> Quiver:
    """Extended star quiver attached to a negative-degree orbifold projective line.

    The star of :func:`star_quiver` is Dynkin; one extending vertex is joined
    to each vertex ``i`` by ``(theta, alpha_i)`` arrows, ``theta`` being the
    highest root of the star's own root system. No type table is consulted.
    """
    triple = _triple(a1, a2, a3)
    sig = CurveSignature(0, tuple(a for a in triple if a > 1))
    if negative_family(sig) is None:
        raise NotNegativeFamilyError(
            f"{triple} is not a negative-degree weight triple: deg(omega) must be < 0",
            bound="deg(omega) < 0",
        )
    star = star_quiver(*triple)
    if tits_definiteness(star).kind != "positive definite":
        raise InvariantViolation(f"star {triple} is not Dynkin")
    theta = highest_root(star)
    ext = star.vertex_count
    arrows = list(star.arrows)
    for i, row in enumerate(_pairing_rows(star)):
        arrows.extend([(i, ext)] * _pair(theta, row))
    quiver = Quiver(ext + 1, tuple(arrows))
    if classify(quiver).kind != "Extended":
        raise InvariantViolation(f"extended star for {triple} is not of extended Dynkin type")
    return quiver
