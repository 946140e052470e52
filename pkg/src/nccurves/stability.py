"""Central charges ``Z = -deg + (beta + iH) rank`` on coherent sheaves.

Charges, the support constant and the support check are exact. Phases are
transcendental and computed in floating point; compare them with
:data:`PHASE_TOL`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .classes import CRVector, KClass
from .curve import CurveSignature, cr_rank, omega_degree
from .errors import InvariantViolation, NCCurveError, NotHeartEffectiveError

__all__ = [
    "PHASE_TOL",
    "StabParams",
    "ChargeValue",
    "SupportReport",
    "central_charge",
    "phase",
    "support_lower_bound",
    "check_support",
    "arccot",
    "serre_twist_phase_gap",
    "phase_gap_curve",
    "sampled_sup_gap",
    "min_h_for_degree",
    "min_h_for_epsilon",
    "stab_space_dim",
]

PHASE_TOL = 1e-12

# x-range over which the uniform phase-gap bound is sampled
SAMPLE_HALF_WIDTH = 1e6


@dataclass(frozen=True)
class StabParams:
    beta: Fraction = Fraction(0)
    h: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "h", Fraction(self.h))
        if self.h <= 0:
            raise NCCurveError(f"H must be > 0, got {self.h}", bound="H > 0")


@dataclass(frozen=True)
class ChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return ChargeValue(self.re + other.re, self.im + other.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im


def central_charge(params: StabParams, a: KClass) -> ChargeValue:
    return ChargeValue(-a.degree + params.beta * a.rank, params.h * a.rank)


def _require_heart(a: KClass) -> None:
    if not a.is_heart_effective():
        raise NotHeartEffectiveError(
            f"class (rank {a.rank}, degree {a.degree}) is not in the effective cone of Coh: "
            "need rank > 0, or rank = 0 with degree > 0"
        )


def arccot(x):
    """Inverse cotangent with values in ``(0, pi)``; vectorised over numpy arrays."""
    return np.pi / 2 - np.arctan(x)


def phase(params: StabParams, a: KClass) -> float:
    """Phase in ``(0, 1]``; torsion classes sit at exactly 1."""
    _require_heart(a)
    if a.rank == 0:
        return 1.0
    z = central_charge(params, a)
    return math.atan2(float(z.im), float(z.re)) / math.pi


def support_lower_bound(sig: CurveSignature) -> Fraction:
    """``min 1/e_i^2`` over stacky points, and 1 when there are none."""
    if not sig.orders:
        return Fraction(1)
    return Fraction(1, max(sig.orders) ** 2)


@dataclass(frozen=True)
class SupportReport:
    checked: int
    min_ratio: Fraction
    ok: bool
    witness: CRVector | None = None

    def to_dict(self) -> dict:
        return {"checked": self.checked, "min_ratio": str(self.min_ratio), "ok": self.ok}


def check_support(sig: CurveSignature, bound: int) -> SupportReport:
    """Exhaustively verify ``|Z_{0,1}(v)|^2 >= c ||v||^2`` on the non-negative box.

    Every nonzero Chen-Ruan vector with all coordinates in ``[0, bound]`` is
    enumerated in lexicographic order. ``Z`` is evaluated through the inverse
    Chern character, so ``-Re Z = coarse_degree + sum_i (1/e_i) sum_j j y_ij``.
    With ``L = lcm(e_i)`` both sides are scaled to integers and compared
    exactly; ``min_ratio`` is the smallest ``|Z|^2 / ||v||^2`` found, with the
    first minimiser in lexicographic order as ``witness``.
    """
    if bound < 1:
        raise NCCurveError(f"bound must be >= 1, got {bound}")
    dim = cr_rank(sig)
    lcm = reduce(math.lcm, sig.orders, 1)
    # integer weight of each coordinate in L * (-Re Z)
    weights = [0, lcm] + [lcm // e * j for e in sig.orders for j in range(1, e)]

    side = np.arange(bound + 1, dtype=np.int64)
    shape = (bound + 1,) * dim
    linear = np.zeros(shape, dtype=np.int64)
    norm2 = np.zeros(shape, dtype=np.int64)
    for axis, w in enumerate(weights):
        view = [1] * dim
        view[axis] = bound + 1
        coord = side.reshape(view)
        linear = linear + w * coord
        norm2 = norm2 + coord * coord
    rank_axis = [1] * dim
    rank_axis[0] = bound + 1
    # L^2 |Z|^2 = (L x0)^2 + (L deg)^2
    z2 = (lcm * side.reshape(rank_axis)) ** 2 + linear * linear
    z2 = np.broadcast_to(z2, shape).ravel()[1:]
    norm2 = norm2.ravel()[1:]
    if np.any(z2 < 0) or np.any(norm2 <= 0):
        raise InvariantViolation("integer overflow in support enumeration; lower the bound")

    c = support_lower_bound(sig)
    scale = max(int(z2.max()), int(norm2.max()) * lcm * lcm, c.denominator)
    if scale * scale >= 2**62:
        z2, norm2 = z2.astype(object), norm2.astype(object)

    # locate the minimum in floating point, then certify it with integer cross-products
    guess = int(np.argmin(z2.astype(float) / norm2.astype(float)))
    num, den = int(z2[guess]), int(norm2[guess])
    below = np.flatnonzero(z2 * den < norm2 * num)
    if below.size:
        guess = min(below.tolist(), key=lambda k: Fraction(int(z2[k]), int(norm2[k])))
        num, den = int(z2[guess]), int(norm2[guess])
    first = int(np.flatnonzero(z2 * den == norm2 * num)[0])
    min_ratio = Fraction(int(z2[first]), int(norm2[first]) * lcm * lcm)

    ok = bool(np.all(z2 * c.denominator >= norm2 * (c.numerator * lcm * lcm)))
    witness = CRVector.from_flat(sig, [int(x) for x in np.unravel_index(first + 1, shape)])
    return SupportReport(checked=len(z2), min_ratio=min_ratio, ok=ok, witness=witness)


def phase_gap_curve(x, t: float):
    """``(1/pi) |arccot(x - t) - arccot(x)|``, vectorised in ``x``."""
    return np.abs(arccot(np.asarray(x, dtype=float) - t) - arccot(x)) / np.pi


def serre_twist_phase_gap(params: StabParams, a: KClass, sig: CurveSignature) -> float:
    """Phase change of ``a`` under tensoring with the canonical bundle.

    Zero for torsion classes, whose phase stays at 1.
    """
    _require_heart(a)
    if a.rank == 0:
        return 0.0
    mu = a.degree / a.rank
    x = (params.beta - mu) / params.h
    t = omega_degree(sig) / params.h
    return float(phase_gap_curve(float(x), float(t)))


def sampled_sup_gap(t: float, *, half_width: float = SAMPLE_HALF_WIDTH,
                    points: int = 200_001, refinements: int = 6) -> float:
    """Sampled ``sup_x`` of :func:`phase_gap_curve` over ``[-half_width, half_width]``.

    A uniform grid over the whole window plus a fine grid over
    ``[-50 (1 + |t|), 50 (1 + |t|)]``, followed by repeated local regridding
    around the best sample.
    """
    t = float(t)
    if t == 0:
        return 0.0
    inner = 50.0 * (1.0 + abs(t))
    xs = np.concatenate([
        np.linspace(-half_width, half_width, points),
        np.linspace(-inner, inner, points),
    ])
    ys = phase_gap_curve(xs, t)
    k = int(np.argmax(ys))
    best_x, best = float(xs[k]), float(ys[k])
    step = 2 * inner / (points - 1)
    for _ in range(refinements):
        xs = np.linspace(best_x - 2 * step, best_x + 2 * step, 2001)
        ys = phase_gap_curve(xs, t)
        k = int(np.argmax(ys))
        if ys[k] > best:
            best_x, best = float(xs[k]), float(ys[k])
        step = 4 * step / 2000
    return best


def min_h_for_degree(d, eps) -> float:
    """Smallest ``H`` such that every ``H' > H`` keeps all Serre phase gaps below ``eps``.

    The gap ``(1/pi)(arccot(x - t) - arccot(x))`` with ``t = |d|/H`` peaks at
    ``x = t/2`` with value ``(2/pi) arctan(t/2)``, giving
    ``H = |d| / (2 tan(pi eps / 2))``. The returned value is checked against
    :func:`sampled_sup_gap` just above it.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise NCCurveError(f"eps must lie in (0, 1), got {eps}", bound="0 < eps < 1")
    d = abs(Fraction(d))
    if d == 0:
        return 0.0
    h = float(d) / (2.0 * math.tan(math.pi * float(eps) / 2.0))
    above = sampled_sup_gap(float(d) / (h * (1 + 1e-6)))
    if not above < float(eps):
        raise InvariantViolation(f"sampled gap {above} >= eps {eps} just above H = {h}")
    return h


def min_h_for_epsilon(sig: CurveSignature, eps) -> float:
    return min_h_for_degree(omega_degree(sig), eps)


def stab_space_dim(sig: CurveSignature) -> int:
    """Complex dimension of the stability manifold for the Chen-Ruan charge lattice."""
    return cr_rank(sig)
