"""Orbifold curve signatures and their dimension invariants.

An orbifold curve is recorded numerically by the genus ``g`` of its coarse
moduli space and the orders ``e_1 <= ... <= e_n`` of its stacky points.
Everything downstream (canonical degree, Chen-Ruan rank, the five dimension
invariants) is a function of that pair.

>>> sig = CurveSignature(0, (2, 3, 5))
>>> omega_degree(sig)
Fraction(-1, 30)
>>> negative_family(sig).kind
'(2,3,5)'
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import InvariantViolation, SignatureError

__all__ = [
    "CurveSignature",
    "DimensionReport",
    "NegativeFamily",
    "omega_degree",
    "cr_rank",
    "dimension_report",
    "negative_family",
    "enumerate_negative_triples",
    "FAMILY_KINDS",
]

FAMILY_KINDS = ("(1,p,q)", "(2,2,r)", "(2,3,3)", "(2,3,4)", "(2,3,5)")


@dataclass(frozen=True)
class CurveSignature:
    """Genus of the coarse curve plus the sorted stacky orders (each >= 2)."""

    genus: int
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        if isinstance(self.genus, bool) or not isinstance(self.genus, int):
            raise SignatureError(f"genus must be an integer, got {self.genus!r}")
        if self.genus < 0:
            raise SignatureError(f"genus must be >= 0, got {self.genus}", bound="g >= 0")
        orders = tuple(self.orders)
        for e in orders:
            if isinstance(e, bool) or not isinstance(e, int):
                raise SignatureError(f"stacky orders must be integers, got {e!r}")
            if e < 2:
                raise SignatureError(
                    f"stacky orders must be >= 2, got {e}", bound="e_i >= 2"
                )
        object.__setattr__(self, "orders", tuple(sorted(orders)))

    @property
    def n(self) -> int:
        return len(self.orders)

    @classmethod
    def parse(cls, genus: int, orders: Iterable[int]) -> "CurveSignature":
        """Build a signature from raw input, dropping order-1 points.

        Order-1 points are ordinary points and change nothing; they are
        removed with a warning so that equality stays canonical.
        """
        orders = list(orders)
        trivial = [e for e in orders if e == 1]
        if trivial:
            warnings.warn(
                f"dropping {len(trivial)} order-1 point(s): they are ordinary points",
                stacklevel=2,
            )
        return cls(genus, tuple(e for e in orders if e != 1))

    @classmethod
    def from_dict(cls, data: dict) -> "CurveSignature":
        if not isinstance(data, dict) or "genus" not in data:
            raise SignatureError('signature JSON must look like {"genus": g, "orders": [...]}')
        orders = data.get("orders", [])
        if not isinstance(orders, list):
            raise SignatureError("orders must be a list of integers")
        return cls.parse(data["genus"], orders)

    def to_dict(self) -> dict:
        return {"genus": self.genus, "orders": list(self.orders)}

    def __str__(self):
        return f"(g={self.genus}, {list(self.orders)})"


def _orbifold_euler_sum(genus: int, orders: Iterable[int]) -> Fraction:
    # orders of 1 contribute 0, which lets padded triples go through directly
    return 2 * genus - 2 + sum((Fraction(e - 1, e) for e in orders), Fraction(0))


def omega_degree(sig: CurveSignature) -> Fraction:
    """Degree of the canonical bundle, ``2g - 2 + sum((e_i - 1) / e_i)``."""
    return _orbifold_euler_sum(sig.genus, sig.orders)


def cr_rank(sig: CurveSignature) -> int:
    """Rank of the algebraic Chen-Ruan lattice ``H^0 + H^2 + sum Z^(e_i - 1)``."""
    return 2 + sum(e - 1 for e in sig.orders)


@dataclass(frozen=True)
class DimensionReport:
    hdim: int
    rdim: int
    ddim: int
    sdim: Fraction
    gldim: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sdim", Fraction(self.sdim))
        object.__setattr__(self, "gldim", Fraction(self.gldim))
        if self.hdim >= 1 and not (self.rdim <= self.ddim <= 2 * self.hdim):
            raise InvariantViolation(f"rdim <= ddim <= 2 hdim fails for {self}")
        if self.sdim > self.gldim:
            raise InvariantViolation(f"Sdim <= gldim fails for {self}")

    def as_tuple(self) -> tuple:
        return (self.hdim, self.rdim, self.ddim, self.sdim, self.gldim)

    def to_dict(self) -> dict:
        return {
            "hdim": self.hdim,
            "rdim": self.rdim,
            "ddim": self.ddim,
            "sdim": str(self.sdim),
            "gldim": str(self.gldim),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DimensionReport":
        return cls(
            int(data["hdim"]),
            int(data["rdim"]),
            int(data["ddim"]),
            Fraction(data["sdim"]),
            Fraction(data["gldim"]),
        )


def dimension_report(sig: CurveSignature) -> DimensionReport:
    """The five dimensions of the derived category of the orbifold curve.

    Only the diagonal dimension depends on the curve: it is 1 exactly when the
    canonical bundle has negative degree, and 2 otherwise. Rouquier, Serre and
    global dimension are all 1 for every orbifold curve (global dimension in
    the rational case being the known result for orbifold projective lines).
    """
    ddim = 1 if omega_degree(sig) < 0 else 2
    return DimensionReport(hdim=1, rdim=1, ddim=ddim, sdim=Fraction(1), gldim=Fraction(1))


class NegativeFamily(NamedTuple):
    kind: str
    triple: tuple[int, int, int]

    def __str__(self):
        a1, a2, a3 = self.triple
        if self.kind == "(1,p,q)":
            return f"(1,p,q) with p={a2}, q={a3}"
        if self.kind == "(2,2,r)":
            return f"(2,2,r) with r={a3}"
        return self.kind


def _family_of_triple(triple: tuple[int, int, int]) -> NegativeFamily | None:
    a1, a2, a3 = triple
    if a1 == 1:
        return NegativeFamily("(1,p,q)", triple)
    if (a1, a2) == (2, 2):
        return NegativeFamily("(2,2,r)", triple)
    if (a1, a2) == (2, 3) and a3 in (3, 4, 5):
        return NegativeFamily(f"(2,3,{a3})", triple)
    return None


def negative_family(sig: CurveSignature) -> NegativeFamily | None:
    """Which negative-degree family of orbifold projective lines ``sig`` is in.

    Returns ``None`` for positive genus, for four or more stacky points, and
    for genus-0 signatures with ``deg(omega) >= 0``.
    """
    negative = sig.genus == 0 and omega_degree(sig) < 0
    family = None
    if sig.genus == 0 and sig.n <= 3:
        padded = tuple(sorted((1,) * (3 - sig.n) + sig.orders))
        family = _family_of_triple(padded)
    if (family is not None) != negative:
        raise InvariantViolation(
            f"family lookup {family} disagrees with sign of deg(omega) for {sig}"
        )
    return family


def enumerate_negative_triples(bound: int) -> set[tuple[int, int, int]]:
    """All sorted ``(a1, a2, a3)`` with entries in ``1..bound`` and ``deg(omega) < 0``.

    Exhaustive sign evaluation at genus 0; order-1 entries stand for ordinary
    points.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    found = set()
    for a1 in range(1, bound + 1):
        for a2 in range(a1, bound + 1):
            for a3 in range(a2, bound + 1):
                if _orbifold_euler_sum(0, (a1, a2, a3)) < 0:
                    found.add((a1, a2, a3))
    return found
