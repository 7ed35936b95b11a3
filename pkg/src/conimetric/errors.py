"""Exception hierarchy.

Input problems (bad orders, punctures, branch cuts) derive from
:class:`DomainError`; numerical faults derive from :class:`NumericalFault`.
The CLI maps the first family to exit status 2 and the second to 3.
"""


class ConimetricError(Exception):
    pass


class DomainError(ConimetricError, ValueError):
    pass


class ParamError(DomainError):
    pass


class InadmissibleOrdersError(ParamError):
    pass


class PunctureError(DomainError):
    pass


class BranchCutError(DomainError):
    pass


class NumericalFault(ConimetricError, ArithmeticError):
    pass


class PoleError(NumericalFault):
    """Gamma evaluated at (or numerically at) a non-positive integer."""


class ConvergenceError(NumericalFault):
    pass


class NonPositiveDensityError(NumericalFault):
    pass
