"""Exception hierarchy shared by every wgwa module."""


class WGWAError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class NonPrimeModulus(WGWAError):
    code = "non_prime_modulus"


class ZeroLeadingCoefficient(WGWAError):
    code = "zero_leading_coefficient"


class InvalidIdeal(WGWAError):
    """Raised for points that are not maximal ideals of the universe."""

    code = "invalid_ideal"


class NotAnEdge(WGWAError):
    code = "not_an_edge"


class NotEssential(WGWAError):
    code = "not_essential"

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class NoPredecessor(WGWAError):
    # no current backend raises this; down() is total on all of them
    code = "no_predecessor"


class ChainBroken(WGWAError):
    code = "chain_broken"

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class BoundaryConditionFailed(WGWAError):
    code = "boundary_condition_failed"

    def __init__(self, message: str, kind: str, which: str):
        super().__init__(message)
        self.kind = kind
        self.which = which


class WindowExhausted(WGWAError):
    code = "window_exhausted"

    def __init__(self, position: int):
        super().__init__(f"position {position} lies outside the stored window")
        self.position = position


class CertificateRequired(WGWAError):
    code = "certificate_required"


class InvalidCertificate(WGWAError):
    code = "invalid_certificate"


class NotOnCycle(WGWAError):
    code = "not_on_cycle"


class FieldMismatch(WGWAError):
    code = "field_mismatch"


class FieldTooLarge(WGWAError):
    code = "field_too_large"


class NotFinite(WGWAError):
    code = "not_finite"


class BudgetExceeded(WGWAError):
    code = "budget_exceeded"


class UnsupportedFSpec(WGWAError):
    code = "unsupported_f_spec"
