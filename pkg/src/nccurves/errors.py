"""Exception hierarchy.

Validation failures derive from :class:`NCCurveError` (a ``ValueError``) and
carry enough structure for the CLI to emit a machine-readable error object.
:class:`InvariantViolation` is reserved for internal consistency breaches,
i.e. bugs, and deliberately does not derive from ``ValueError``.
"""

from __future__ import annotations


class NCCurveError(ValueError):
    """Base class for precondition violations.

    ``bound`` names the numeric threshold that was violated, when there is one
    (for instance ``"deg(L) >= 8g + 4n"``).
    """

    kind = "validation_error"

    def __init__(self, message: str, *, bound: str | None = None, **details):
        super().__init__(message)
        self.message = message
        self.bound = bound
        self.details = details

    def to_dict(self) -> dict:
        out = {"type": self.kind, "message": self.message}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.details:
            out["details"] = {k: _plain(v) for k, v in sorted(self.details.items())}
        return out


class SignatureError(NCCurveError):
    kind = "invalid_signature"


class SignatureMismatchError(NCCurveError):
    kind = "signature_mismatch"


class PointIndexError(NCCurveError):
    kind = "invalid_point"


class IntegralityError(NCCurveError):
    kind = "integrality_violation"


class ZeroClassError(NCCurveError):
    kind = "zero_class"


class NotHeartEffectiveError(NCCurveError):
    kind = "not_heart_effective"


class ThresholdError(NCCurveError):
    kind = "threshold_violation"


class FiltrationError(NCCurveError):
    kind = "invalid_filtration"


class QuiverError(NCCurveError):
    kind = "invalid_quiver"


class NotNegativeFamilyError(NCCurveError):
    kind = "not_negative_family"


class InvariantViolation(RuntimeError):
    """An internal postcondition failed. Always a bug."""


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)
