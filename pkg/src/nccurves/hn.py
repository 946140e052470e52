"""Harder-Narasimhan graded objects at the level of K-classes.

A :class:`FilteredObject` stores the graded pieces of an HN filtration,
top slope first. Objects are treated as direct sums of semistable pieces;
merging pieces of equal slope keeps only the polystable numerics, since
extension data is invisible in K-theory. Semistability of the pieces is the
caller's assertion and is not verified.

Duals reverse the filtration. For ``0 = F_0 < ... < F_n = F`` the dual
filtration ``K_i = ker(F^v -> F_i^v)`` has graded pieces
``K_{i-1}/K_i = (F_i/F_{i-1})^v``; here both filtrations are indexed from
the top slope down, so ``dual_hn`` simply reverses and dualises the list.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .classes import KClass, add, dual, slope, tensor
from .curve import CurveSignature, omega_degree
from .errors import FiltrationError, NCCurveError, NotHeartEffectiveError

__all__ = [
    "FilteredObject",
    "OrlovSplit",
    "Vanishing",
    "VanishingVerdict",
    "hn_normalize",
    "dual_hn",
    "twist",
    "orlov_threshold",
    "orlov_split",
    "vanishing_oracle",
    "ssvanishing_applies",
    "twosections_threshold",
]


def _check_piece(a: KClass) -> None:
    if a.is_zero() or not a.is_heart_effective():
        raise NotHeartEffectiveError(
            f"HN pieces must be nonzero with rank > 0, or rank 0 and degree > 0; "
            f"got rank {a.rank}, degree {a.degree}"
        )


@dataclass(frozen=True)
class FilteredObject:
    pieces: tuple[KClass, ...] = ()

    def __post_init__(self):
        pieces = tuple(self.pieces)
        object.__setattr__(self, "pieces", pieces)
        for a in pieces:
            _check_piece(a)
        if len({a.orders for a in pieces}) > 1:
            raise FiltrationError("pieces live on different curves")
        slopes = [slope(a) for a in pieces]
        for hi, lo in zip(slopes, slopes[1:]):
            if not hi > lo:
                raise FiltrationError(f"slopes must strictly decrease, got {slopes}")

    @property
    def slopes(self) -> list:
        return [slope(a) for a in self.pieces]

    @property
    def has_torsion(self) -> bool:
        return bool(self.pieces) and self.pieces[0].rank == 0

    def total(self) -> KClass:
        if not self.pieces:
            raise FiltrationError("empty filtration has no ambient curve")
        out = self.pieces[0]
        for a in self.pieces[1:]:
            out = add(out, a)
        return out

    def __len__(self):
        return len(self.pieces)

    def to_dict(self) -> dict:
        return {"pieces": [a.to_dict() for a in self.pieces]}

    @classmethod
    def from_dict(cls, data: dict) -> "FilteredObject":
        return cls(tuple(KClass.from_dict(p) for p in data["pieces"]))


def hn_normalize(pieces: Iterable[KClass]) -> FilteredObject:
    """Sort by slope, merging pieces of equal slope (all torsion merges into one top piece)."""
    pieces = list(pieces)
    by_slope: dict = {}
    for a in pieces:
        _check_piece(a)
        mu = slope(a)
        by_slope[mu] = add(by_slope[mu], a) if mu in by_slope else a
    return FilteredObject(tuple(by_slope[mu] for mu in sorted(by_slope, reverse=True)))


def dual_hn(f: FilteredObject) -> FilteredObject:
    if f.has_torsion:
        raise FiltrationError("dual HN filtration is only defined for vector bundles")
    return FilteredObject(tuple(dual(a) for a in reversed(f.pieces)))


def twist(f: FilteredObject, L: KClass) -> FilteredObject:
    """Tensor every piece with the line-bundle class ``L``.

    Each bundle slope moves by exactly ``deg L`` (the determinant of
    ``F (x) L`` is ``det F (x) L^rk F``); torsion pieces stay torsion.
    """
    if L.rank != 1:
        raise NCCurveError(f"twist needs a rank-1 class, got rank {L.rank}")
    return FilteredObject(tuple(tensor(a, L) for a in f.pieces))


def orlov_threshold(sig: CurveSignature) -> int:
    return 4 * sig.genus + 2 * sig.n


class OrlovSplit(NamedTuple):
    top: FilteredObject | None
    bottom: FilteredObject | None


def orlov_split(f: FilteredObject, sig: CurveSignature) -> OrlovSplit:
    """Cut the filtration at the last piece with slope ``>= 4g + 2n``.

    ``top`` carries the graded pieces of ``F_i`` and ``bottom`` those of
    ``F/F_i``; either side is ``None`` when empty.
    """
    threshold = orlov_threshold(sig)
    top = tuple(a for a in f.pieces if slope(a) >= threshold)
    bottom = f.pieces[len(top):]
    return OrlovSplit(FilteredObject(top) if top else None,
                      FilteredObject(bottom) if bottom else None)


class Vanishing(enum.Enum):
    ZERO = "Zero"
    UNKNOWN = "Unknown"


class VanishingVerdict(NamedTuple):
    h0: Vanishing
    h1: Vanishing

    def to_dict(self) -> dict:
        return {"h0": self.h0.value, "h1": self.h1.value}


def vanishing_oracle(a: KClass, sig: CurveSignature) -> VanishingVerdict:
    """Sound vanishing of ``H^0`` and ``H^1`` for a semistable class.

    ``H^0 = 0`` when the slope is negative. ``H^1(F)`` is dual to
    ``H^0(F^v (x) omega)``, whose slope ``deg(omega) - mu(F)`` is negative
    exactly when ``mu(F) > deg(omega)``. Torsion classes have no ``H^1``.
    Anything else is ``UNKNOWN``; the oracle never guesses.
    """
    if not a.is_heart_effective() or a.is_zero():
        raise NotHeartEffectiveError("vanishing oracle needs a heart-effective class")
    if a.rank == 0:
        return VanishingVerdict(Vanishing.UNKNOWN, Vanishing.ZERO)
    mu = slope(a)
    h0 = Vanishing.ZERO if mu < 0 else Vanishing.UNKNOWN
    h1 = Vanishing.ZERO if mu > omega_degree(sig) else Vanishing.UNKNOWN
    return VanishingVerdict(h0, h1)


def ssvanishing_applies(mu, L_degree, sig: CurveSignature) -> bool:
    """Whether ``H^1(F (x) L) = 0`` is guaranteed by ``mu(F) >= 2g + n`` and ``deg L >= -1``."""
    return mu != math.inf and Fraction(mu) >= 2 * sig.genus + sig.n and L_degree >= -1


def twosections_threshold(g: int, d: int) -> bool:
    """Whether a degree-``d`` line bundle on a genus-``g`` curve is a quotient of ``O^2``."""
    if g < 1:
        raise NCCurveError(f"needs genus >= 1, got {g}", bound="g >= 1")
    return d >= 2 * g
