"""Exception types shared across the package."""


class TwistedZetaError(Exception):
    """Base class for all package-specific errors."""


class NotHyperbolic(TwistedZetaError):
    """Matrix is elliptic or parabolic (|trace| <= 2); no translation length."""


class BudgetExceeded(TwistedZetaError):
    """Enumeration frontier exceeded the configured node budget.

    Lower the length cutoff or raise the budget.
    """


class IllConditioned(TwistedZetaError):
    """A numerical rank/gap decision has no safe singular-value margin."""


class OutsideConvergence(TwistedZetaError):
    """Evaluation point lies outside the estimated convergence half-plane."""


class EmptySpectrumWarning(UserWarning):
    """Zeta evaluation over an empty spectrum; the product is trivially 1."""


class NotAcyclic(TwistedZetaError):
    """Torsion undefined: det(Id - rho(c)) vanishes."""


class NotApplicable(TwistedZetaError):
    """Prediction formulas do not cover this representation class."""


class ChainConditionViolated(TwistedZetaError):
    """d1 @ d0 != 0; convention mismatch or invalid representation."""


class ConstructionFailed(TwistedZetaError):
    """A shipped construction produced an invalid representation."""


class InputError(TwistedZetaError):
    """Bad user input (CLI exit status 2); message names the offending field."""
