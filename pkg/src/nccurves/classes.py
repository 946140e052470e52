"""Divisors and numerical K-theory of an orbifold curve.

A :class:`KClass` records the rank, the (rational) degree, and for every
stacky point ``p_i`` of order ``e_i`` the multiplicities ``m_{i,1..e_i-1}`` of
the nontrivial characters of ``mu_{e_i}`` in the fibre at ``p_i``. The
multiplicity of the trivial character is implied: ``rank - sum(m_i)``.

Degrees are exact :class:`fractions.Fraction` values throughout. The
Picard factor of K_0 is represented only through its degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .curve import CurveSignature, cr_rank
from .errors import (
    IntegralityError,
    NCCurveError,
    PointIndexError,
    SignatureMismatchError,
    ThresholdError,
    ZeroClassError,
)

__all__ = [
    "Stacky",
    "Smooth",
    "PointId",
    "WeilDivisor",
    "KClass",
    "CRVector",
    "divisor_degree",
    "pushforward_floor",
    "line_bundle_class",
    "pullback_class",
    "add",
    "tensor",
    "dual",
    "ch_orb",
    "ch_orb_inverse",
    "slope",
    "std_generating_class",
    "orlov_generating_sheaf_class",
    "orlov_generator_class",
]


@dataclass(frozen=True, order=True)
class Stacky:
    index: int

    def __str__(self):
        return f"p{self.index}"


@dataclass(frozen=True, order=True)
class Smooth:
    label: str

    def __str__(self):
        return self.label


PointId = Union[Stacky, Smooth]


def _point_key(p: PointId):
    return (0, p.index, "") if isinstance(p, Stacky) else (1, 0, p.label)


class WeilDivisor:
    """Finite formal sum of points with integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[PointId, int] | None = None):
        coeffs = {}
        for point, n in (coefficients or {}).items():
            if not isinstance(point, (Stacky, Smooth)):
                raise PointIndexError(f"not a point: {point!r}")
            if isinstance(n, bool) or not isinstance(n, int):
                raise NCCurveError(f"divisor coefficients must be integers, got {n!r}")
            if n:
                coeffs[point] = coeffs.get(point, 0) + n
        self._coeffs = {p: coeffs[p] for p in sorted(coeffs, key=_point_key) if coeffs[p]}

    @classmethod
    def stacky(cls, index: int, n: int = 1) -> "WeilDivisor":
        return cls({Stacky(index): n})

    @classmethod
    def smooth(cls, label: str, n: int = 1) -> "WeilDivisor":
        return cls({Smooth(label): n})

    def __getitem__(self, point: PointId) -> int:
        return self._coeffs.get(point, 0)

    def items(self):
        return self._coeffs.items()

    def __iter__(self) -> Iterator[PointId]:
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, WeilDivisor):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other: "WeilDivisor") -> "WeilDivisor":
        out = dict(self._coeffs)
        for p, n in other.items():
            out[p] = out.get(p, 0) + n
        return WeilDivisor(out)

    def __neg__(self):
        return WeilDivisor({p: -n for p, n in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return WeilDivisor({p: k * n for p, n in self.items()})

    def __repr__(self):
        if not self._coeffs:
            return "WeilDivisor(0)"
        return "WeilDivisor(" + " + ".join(f"{n}*{p}" for p, n in self.items()) + ")"

    def to_dict(self) -> dict:
        stacky = {str(p.index): n for p, n in self.items() if isinstance(p, Stacky)}
        smooth = {p.label: n for p, n in self.items() if isinstance(p, Smooth)}
        return {"stacky": stacky, "smooth": smooth}

    @classmethod
    def from_dict(cls, data: dict) -> "WeilDivisor":
        coeffs: dict = {}
        try:
            for key, n in data.get("stacky", {}).items():
                coeffs[Stacky(int(key))] = n
            for label, n in data.get("smooth", {}).items():
                coeffs[Smooth(str(label))] = n
        except (AttributeError, TypeError, ValueError) as exc:
            raise NCCurveError(f"malformed divisor JSON: {exc}") from exc
        return cls(coeffs)


def _check_points(D: WeilDivisor, sig: CurveSignature) -> None:
    for p in D:
        if isinstance(p, Stacky) and not 0 <= p.index < sig.n:
            raise PointIndexError(
                f"stacky index {p.index} out of range for {sig}", index=p.index, n=sig.n
            )


def divisor_degree(D: WeilDivisor, sig: CurveSignature) -> Fraction:
    """``sum n_P deg(P)`` with ``deg(p_i) = 1/e_i`` and ``deg(q) = 1`` for smooth ``q``."""
    _check_points(D, sig)
    total = Fraction(0)
    for p, n in D.items():
        total += Fraction(n, sig.orders[p.index]) if isinstance(p, Stacky) else n
    return total


def coarse_label(index: int) -> str:
    """Label of the image of stacky point ``index`` on the coarse curve."""
    return f"pi(p{index})"


def pushforward_floor(D: WeilDivisor, sig: CurveSignature) -> WeilDivisor:
    """Divisor ``floor(D)`` on the coarse curve with ``pi_* O(D) = O(floor(D))``."""
    _check_points(D, sig)
    out: dict = {}
    for p, n in D.items():
        if isinstance(p, Stacky):
            q, m = Smooth(coarse_label(p.index)), n // sig.orders[p.index]
        else:
            q, m = p, n
        out[q] = out.get(q, 0) + m
    return WeilDivisor(out)


@dataclass(frozen=True)
class KClass:
    """Numerical K-theory class ``(rank, degree, local character multiplicities)``."""

    rank: int
    degree: Fraction
    locals: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise NCCurveError(f"rank must be an integer, got {self.rank!r}")
        object.__setattr__(self, "degree", Fraction(self.degree))
        locs = tuple(tuple(v) for v in self.locals)
        for v in locs:
            if not v:
                raise NCCurveError("a stacky point of order e needs e-1 >= 1 local entries")
            for m in v:
                if isinstance(m, bool) or not isinstance(m, int):
                    raise NCCurveError(f"local multiplicities must be integers, got {m!r}")
        object.__setattr__(self, "locals", locs)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(v) + 1 for v in self.locals)

    @classmethod
    def zero(cls, orders: Sequence[int] = ()) -> "KClass":
        return cls(0, Fraction(0), tuple((0,) * (e - 1) for e in orders))

    @classmethod
    def trivial(cls, orders: Sequence[int] = ()) -> "KClass":
        """Class of the structure sheaf."""
        return cls(1, Fraction(0), tuple((0,) * (e - 1) for e in orders))

    def character_vector(self, i: int) -> tuple[int, ...]:
        """All ``e_i`` character multiplicities at point ``i``, trivial character first."""
        v = self.locals[i]
        return (self.rank - sum(v),) + v

    def local_weight(self) -> Fraction:
        """``sum_i (1/e_i) sum_j j * m_{i,j}``: the part of the degree living at stacky points."""
        return sum(
            (Fraction(sum(j * m for j, m in enumerate(v, start=1)), len(v) + 1)
             for v in self.locals),
            Fraction(0),
        )

    def coarse_degree(self) -> Fraction:
        return self.degree - self.local_weight()

    def is_integral(self) -> bool:
        return self.coarse_degree().denominator == 1

    def is_zero(self) -> bool:
        return self.rank == 0 and self.degree == 0 and not any(any(v) for v in self.locals)

    def is_heart_effective(self) -> bool:
        """Positive rank, or rank zero with positive degree (a torsion sheaf's numerics)."""
        return self.rank > 0 or (self.rank == 0 and self.degree > 0)

    def is_effective(self) -> bool:
        """All character multiplicities, including the trivial one, are non-negative."""
        if self.rank < 0:
            return False
        return all(m >= 0 for i in range(len(self.locals)) for m in self.character_vector(i))

    def __add__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return add(self, other)

    def __neg__(self):
        return KClass(-self.rank, -self.degree, tuple(tuple(-m for m in v) for v in self.locals))

    def __sub__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return add(self, -other)

    def __mul__(self, k: int):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return KClass(k * self.rank, k * self.degree, tuple(tuple(k * m for m in v) for v in self.locals))

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"rank": self.rank, "degree": str(self.degree), "locals": [list(v) for v in self.locals]}

    @classmethod
    def from_dict(cls, data: dict) -> "KClass":
        try:
            return cls(int(data["rank"]), Fraction(str(data["degree"])),
                       tuple(tuple(v) for v in data.get("locals", [])))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise NCCurveError(f"malformed KClass JSON: {exc}") from exc


@dataclass(frozen=True)
class CRVector:
    """Coordinates in the algebraic Chen-Ruan lattice.

    ``rank`` is the H^0 coordinate, ``coarse_degree`` the H^2 coordinate, and
    ``locals`` the twisted-sector coordinates, one block per stacky point.
    """

    rank: int
    coarse_degree: int
    locals: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "locals", tuple(tuple(v) for v in self.locals))

    def flat(self) -> tuple[int, ...]:
        return (self.rank, self.coarse_degree) + tuple(m for v in self.locals for m in v)

    @classmethod
    def from_flat(cls, sig: CurveSignature, values: Sequence[int]) -> "CRVector":
        if len(values) != cr_rank(sig):
            raise SignatureMismatchError(
                f"expected {cr_rank(sig)} coordinates for {sig}, got {len(values)}"
            )
        locs, pos = [], 2
        for e in sig.orders:
            locs.append(tuple(values[pos:pos + e - 1]))
            pos += e - 1
        return cls(values[0], values[1], tuple(locs))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "coarse_degree": self.coarse_degree,
                "locals": [list(v) for v in self.locals]}


def _same_shape(a: KClass, b: KClass) -> None:
    if a.orders != b.orders:
        raise SignatureMismatchError(
            f"classes live on different curves: orders {a.orders} vs {b.orders}"
        )


def _check_sig(a: KClass, sig: CurveSignature) -> None:
    if a.orders != sig.orders:
        raise SignatureMismatchError(f"class has orders {a.orders}, signature has {sig.orders}")


def line_bundle_class(D: WeilDivisor, sig: CurveSignature) -> KClass:
    """Class of ``O(D)``.

    At ``p_i`` the fibre of ``O(n p_i)`` is the character ``z -> z^n``, so the
    local vector is the indicator of ``n mod e_i`` (zero when ``e_i | n``).
    """
    degree = divisor_degree(D, sig)
    locs = []
    for i, e in enumerate(sig.orders):
        v = [0] * (e - 1)
        r = D[Stacky(i)] % e
        if r:
            v[r - 1] = 1
        locs.append(tuple(v))
    return KClass(1, degree, tuple(locs))


def pullback_class(coarse_degree: int, sig: CurveSignature) -> KClass:
    """Class of ``pi^* M`` for a line bundle ``M`` of the given degree on the coarse curve."""
    return KClass(1, Fraction(coarse_degree), tuple((0,) * (e - 1) for e in sig.orders))


def add(a: KClass, b: KClass) -> KClass:
    _same_shape(a, b)
    return KClass(
        a.rank + b.rank,
        a.degree + b.degree,
        tuple(tuple(x + y for x, y in zip(u, v)) for u, v in zip(a.locals, b.locals)),
    )


def _convolve(u: Sequence[int], v: Sequence[int]) -> list[int]:
    e = len(u)
    out = [0] * e
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                out[(i + j) % e] += x * y
    return out


def tensor(a: KClass, b: KClass) -> KClass:
    """Product in K_0.

    Degrees follow ``deg(A (x) B) = rk A deg B + rk B deg A``; at each stacky
    point the full character vectors multiply as elements of the group ring
    of ``Z/e``.
    """
    _same_shape(a, b)
    locs = []
    for i in range(len(a.locals)):
        full = _convolve(a.character_vector(i), b.character_vector(i))
        locs.append(tuple(full[1:]))
    return KClass(a.rank * b.rank, a.rank * b.degree + b.rank * a.degree, tuple(locs))


def dual(a: KClass) -> KClass:
    # character j dualises to -j mod e, i.e. the 1..e-1 block reverses
    return KClass(a.rank, -a.degree, tuple(tuple(reversed(v)) for v in a.locals))


def ch_orb(a: KClass, sig: CurveSignature | None = None) -> CRVector:
    """Orbifold Chern character ``(rank, deg pi_* E, local multiplicities)``.

    The coarse degree is ``deg E - sum_i (1/e_i) sum_j j m_{i,j}``, which must
    be an integer.
    """
    if sig is not None:
        _check_sig(a, sig)
    coarse = a.coarse_degree()
    if coarse.denominator != 1:
        raise IntegralityError(
            f"degree {a.degree} is incompatible with the local data: "
            f"coarse degree would be {coarse}",
            degree=a.degree,
            coarse_degree=coarse,
        )
    return CRVector(a.rank, int(coarse), a.locals)


def ch_orb_inverse(v: CRVector, sig: CurveSignature | None = None) -> KClass:
    if sig is not None and tuple(len(b) + 1 for b in v.locals) != sig.orders:
        raise SignatureMismatchError(f"vector shape does not match {sig}")
    shell = KClass(v.rank, Fraction(0), v.locals)
    return KClass(v.rank, v.coarse_degree + shell.local_weight(), v.locals)


def slope(a: KClass) -> Fraction | float:
    """``degree / rank``, or ``math.inf`` for rank-zero classes."""
    if a.is_zero():
        raise ZeroClassError("slope of the zero class is undefined")
    if a.rank < 0:
        raise NCCurveError(f"slope is only defined for rank >= 0, got rank {a.rank}")
    if a.rank == 0:
        return math.inf
    return a.degree / a.rank


def _sum(classes: Iterable[KClass], orders) -> KClass:
    return reduce(add, classes, KClass.zero(orders))


def std_generating_class(sig: CurveSignature) -> KClass:
    """Class of the standard generating sheaf.

    ``(x)_i (+)_j O(j p_i)  (+)  (x)_i (+)_j O(-j p_i)`` with ``j = 0..e_i - 1``.
    """
    orders = sig.orders
    plus = minus = KClass.trivial(orders)
    for i, e in enumerate(orders):
        up = _sum((line_bundle_class(WeilDivisor.stacky(i, j), sig) for j in range(e)), orders)
        down = _sum((line_bundle_class(WeilDivisor.stacky(i, -j), sig) for j in range(e)), orders)
        plus, minus = tensor(plus, up), tensor(minus, down)
    return add(plus, minus)


def orlov_generating_sheaf_class(sig: CurveSignature) -> KClass:
    """Class of ``(+)_i (+)_{j=0}^{e_i-1} O(-j p_i)``; the structure sheaf when ``n = 0``."""
    if not sig.orders:
        return KClass.trivial()
    return _sum(
        (line_bundle_class(WeilDivisor.stacky(i, -j), sig)
         for i, e in enumerate(sig.orders) for j in range(e)),
        sig.orders,
    )


def orlov_generator_class(sig: CurveSignature, L_degree: int) -> list[KClass]:
    """The four summands of the one-step generator built from a line bundle ``L``.

    Returns the classes of ``pi^*L^-1 (x) E``, ``E``, ``pi^*L (x) E^v`` and
    ``pi^*L^2 (x) E^v`` where ``E`` is :func:`orlov_generating_sheaf_class`.
    Requires ``deg L >= 8g + 4n``.
    """
    threshold = 8 * sig.genus + 4 * sig.n
    if L_degree < threshold:
        raise ThresholdError(
            f"deg(L) = {L_degree} is below 8g + 4n = {threshold}",
            bound="deg(L) >= 8g + 4n",
            L_degree=L_degree,
            threshold=threshold,
        )
    E = orlov_generating_sheaf_class(sig)
    Ev = dual(E)
    return [
        tensor(pullback_class(-L_degree, sig), E),
        E,
        tensor(pullback_class(L_degree, sig), Ev),
        tensor(pullback_class(2 * L_degree, sig), Ev),
    ]
