"""Exception types shared across the library."""


class ParshinError(Exception):
    """Base class for all library errors."""


class ZeroValuation(ParshinError):
    """Valuation requested for the zero series."""


class NotAUnit(ParshinError):
    """Series inversion requested for a non-invertible element."""


class NotPrincipalUnit(ParshinError):
    """Unit factorization requested outside the principal-unit cone."""


class UnsupportedPair(ParshinError):
    """Symbol pair outside the supported normalization shapes."""


class WindowTooSmall(ParshinError):
    """A guaranteed-exact coefficient was requested outside the tracked window."""


class DivisibilityError(ParshinError):
    """Ghost inversion hit a component that is not divisible by the required p-power."""


class BadIndex(ParshinError):
    """Index excluded by the coprimality / positivity constraints."""


class InputError(ParshinError):
    """Malformed user input (CLI expressions, configuration)."""
