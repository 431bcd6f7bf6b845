"""Exception types shared across the package."""


class RnajointError(Exception):
    """Base class for all package-specific errors."""


class ZeroConstantDivisor(RnajointError):
    """Division by a (possibly shifted) series whose constant term is zero."""


class BadConstantTerm(RnajointError):
    """Square root requires a series with constant term one."""


class NonzeroInnerConstant(RnajointError):
    """Composition requires the substituted series to vanish at the origin."""


class DegreeCapTooLow(RnajointError):
    """Degree caps cannot guarantee coefficients to the requested order."""


class CapExceeded(RnajointError):
    """A brute-force enumeration was asked to exceed its configured cap."""


class NoConvergence(RnajointError):
    """A fixed-point iteration failed to stabilise within its proven bound."""


class InvalidDiagram(RnajointError):
    """A diagram violates the joint-structure axioms."""


class OutOfDomain(RnajointError):
    """Numeric evaluation was attempted outside the real domain."""


class RootNotFound(RnajointError):
    """No sign change was found in the search interval."""


class RootAtBoundary(RnajointError):
    """The first sign change sits at the edge of the search interval."""


class PoorConvergence(RnajointError):
    """Convergence acceleration failed to stabilise within tolerance."""
