"""Shared generators for randomised tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from nccurves.classes import CRVector, KClass, ch_orb_inverse
from nccurves.curve import CurveSignature

ORDER_SETS = [(), (2,), (3,), (2, 3), (2, 2, 4), (3, 5)]


def random_signature(rng: random.Random, max_genus=5, max_n=4, max_order=9) -> CurveSignature:
    n = rng.randint(0, max_n)
    return CurveSignature(rng.randint(0, max_genus), tuple(rng.randint(2, max_order) for _ in range(n)))


def random_class(rng: random.Random, orders, rank=(-3, 4), spread=6) -> KClass:
    """A random integral class, built through the inverse Chern character."""
    locs = tuple(tuple(rng.randint(-spread, spread) for _ in range(e - 1)) for e in orders)
    v = CRVector(rng.randint(*rank), rng.randint(-3 * spread, 3 * spread), locs)
    return ch_orb_inverse(v)


def random_heart_class(rng: random.Random, orders) -> KClass:
    """A nonzero class with rank > 0, or rank 0 and positive degree."""
    while True:
        a = random_class(rng, orders, rank=(0, 4), spread=4)
        if a.rank > 0 or a.degree > 0:
            return a


def random_piece_with_slope(rng: random.Random, orders, mu: Fraction) -> KClass:
    """Rank-r piece of slope exactly ``mu`` with no local data (``mu * r`` integral)."""
    r = mu.denominator * rng.randint(1, 2)
    return KClass(r, mu * r, tuple((0,) * (e - 1) for e in orders))


@st.composite
def kclasses(draw, orders, bound=5):
    locs = tuple(tuple(draw(st.integers(-bound, bound)) for _ in range(e - 1)) for e in orders)
    rank = draw(st.integers(-bound, bound))
    coarse = draw(st.integers(-4 * bound, 4 * bound))
    return ch_orb_inverse(CRVector(rank, coarse, locs))


@st.composite
def class_tuples(draw, size):
    orders = draw(st.sampled_from(ORDER_SETS))
    return tuple(draw(kclasses(orders)) for _ in range(size))


signatures = st.builds(
    CurveSignature,
    st.integers(0, 6),
    st.lists(st.integers(2, 12), max_size=5).map(tuple),
)


def set_partitions(items):
    """All set partitions of ``items`` (lists of lists)."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[head] + part[k]] + part[k + 1:]
        yield [[head]] + part


def brute_hn(pieces):
    """Reference normal form: the unique set partition into equal-slope blocks
    with pairwise distinct block slopes, listed by decreasing slope."""
    from nccurves.classes import add, slope

    found = set()
    for part in set_partitions(range(len(pieces))):
        slopes = [{slope(pieces[i]) for i in block} for block in part]
        if any(len(s) != 1 for s in slopes):
            continue
        mus = [next(iter(s)) for s in slopes]
        if len(set(mus)) != len(mus):
            continue
        blocks = []
        for mu, block in sorted(zip(mus, part), key=lambda t: t[0], reverse=True):
            total = pieces[block[0]]
            for i in block[1:]:
                total = add(total, pieces[i])
            blocks.append(total)
        found.add(tuple(blocks))
    if len(found) != 1:
        raise AssertionError(f"normal form is not unique: {len(found)} candidates")
    return found.pop()


SLOPE_POOL = [Fraction(n, d) for n in range(-6, 7) for d in (1, 2, 3)]


def random_pieces(rng: random.Random, orders, size, torsion_chance=0.2):
    """Heart-effective pieces with slopes drawn from a small pool so collisions happen."""
    out = []
    for _ in range(size):
        if rng.random() < torsion_chance:
            out.append(KClass(0, Fraction(rng.randint(1, 5)), tuple((0,) * (e - 1) for e in orders)))
        else:
            out.append(random_piece_with_slope(rng, orders, rng.choice(SLOPE_POOL)))
    return out


def _star_graph(arms):
    import networkx as nx

    g = nx.Graph()
    g.add_node(0)
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            g.add_edge(prev, nxt)
            prev, nxt = nxt, nxt + 1
    return g


def _dtilde_graph(n):
    """Extended D_n on n + 1 vertices (n >= 5): two forks joined by a path."""
    import networkx as nx

    g = nx.path_graph(n - 1)
    g.add_edge(n - 1, 1)
    g.add_edge(n, n - 3)
    return g


def tree_catalogue(max_vertices=9):
    """Hand-built Dynkin and extended Dynkin trees as ``(graph, kind, type, coxeter)``."""
    import networkx as nx

    out = []
    for n in range(1, max_vertices + 1):
        out.append((nx.path_graph(n), "Dynkin", f"A{n}", n + 1))
    for n in range(4, max_vertices + 1):
        out.append((_star_graph((1, 1, n - 3)), "Dynkin", f"D{n}", 2 * n - 2))
    for arms, name, h in (((1, 2, 2), "E6", 12), ((1, 2, 3), "E7", 18), ((1, 2, 4), "E8", 30)):
        out.append((_star_graph(arms), "Dynkin", name, h))
    out.append((_star_graph((1, 1, 1, 1)), "Extended", None, None))
    for n in range(5, max_vertices):
        out.append((_dtilde_graph(n), "Extended", None, None))
    for arms in ((2, 2, 2), (1, 3, 3), (1, 2, 5)):
        out.append((_star_graph(arms), "Extended", None, None))
    return [entry for entry in out if entry[0].number_of_nodes() <= max_vertices]


def catalogue_lookup(graph, catalogue):
    import networkx as nx

    for g, kind, name, h in catalogue:
        if g.number_of_nodes() == graph.number_of_nodes() and nx.is_isomorphic(g, graph):
            return kind, name, h
    return "Wild", None, None


def all_orientations(graph):
    """Every orientation of a tree's edges as a list of arrow tuples."""
    edges = list(graph.edges())
    for mask in range(1 << len(edges)):
        yield tuple((t, s) if mask >> k & 1 else (s, t) for k, (s, t) in enumerate(edges))
