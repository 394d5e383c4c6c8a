"""Exception types raised across the package.

Every class carries a short machine-readable ``code`` that the CLI reports.
"""


class IPBError(Exception):
    code = "error"


class InputTooLargeError(IPBError, ValueError):
    code = "input-too-large"


class NonzeroConstantTermError(IPBError, ValueError):
    code = "nonzero-constant-term"


class ValuationError(IPBError, ZeroDivisionError):
    code = "valuation"


class NotPrimeError(IPBError, ValueError):
    code = "not-prime"


class DomainError(IPBError, ValueError):
    code = "domain"


class NoConvergenceError(IPBError, ArithmeticError):
    code = "no-convergence"
