"""Exception hierarchy.

Validation errors (bad or out-of-domain input) map to CLI exit code 2,
numerical failures to exit code 1.
"""
from __future__ import annotations


class PainleveError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        for k, v in self.details.items():
            if isinstance(v, complex):
                v = [v.real, v.imag]
            out[k] = v
        return out


class ValidationError(PainleveError):
    exit_code = 2


class NumericalError(PainleveError):
    exit_code = 1


# params
class ThetaInfZero(ValidationError):
    pass


# monodromy
class BoundaryClass(ValidationError):
    """Trace lies on the boundary (log/Taylor or Re sigma = 1 regime)."""

    def __init__(self, message: str = "", sigma: complex | None = None, **details):
        super().__init__(message, sigma=sigma, **details)
        self.sigma = sigma


class DegenerateDenominator(NumericalError):
    pass


class SingularA(ValidationError):
    pass


# symmetry
class DivisionByZero(ValidationError):
    pass


class ReciprocalOfZeroSeries(NumericalError):
    pass


# series / shimomura / elliptic
class ResonanceError(NumericalError):
    pass


class ConditionViolation(ValidationError):
    pass


class OutsideDomain(ValidationError):
    pass


class OutsideDomainWarning(UserWarning):
    pass


class AsymptoticOnlyWarning(UserWarning):
    pass


class DenominatorNearZero(NumericalError):
    pass


class CoshArgumentOverflow(NumericalError):
    pass


class NearSingularity(ValidationError):
    pass


class LatticePoint(ValidationError):
    pass


class DegenerateLattice(ValidationError):
    pass


# poles
class DegenerateRadical(NumericalError):
    pass


class ReversionBreakdown(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


# ode oracle
class StepUnderflow(NumericalError):
    pass


class SingularityOnPath(ValidationError):
    pass


class NonPowerLaw(NumericalError):
    pass


class FitDivergence(NumericalError):
    pass
