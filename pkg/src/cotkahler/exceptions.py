"""Exception types raised across the package."""


class DomainError(ValueError):
    """A point lies outside the chart (or too close to its boundary)."""


class SingularProfile(ArithmeticError):
    """A coefficient denominator vanishes at the requested energy density.

    Attributes:
      t: the energy density at which evaluation failed.
      which: name of the offending denominator.
    """

    def __init__(self, t, which, value=None):
        self.t = float(t)
        self.which = which
        self.value = value
        msg = f"singular profile at t={self.t!r}: {which}"
        if value is not None:
            msg += f" = {value!r}"
        super().__init__(msg)


class InvalidCaseParams(ValueError):
    """Parameters for a case family violate one of its sign conditions."""
