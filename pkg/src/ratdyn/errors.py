"""Error taxonomy shared by the library and the CLI.

Exit-code mapping used by the CLI: parse and precondition problems are
exit code 2, cap-limited searches are 3, internal consistency failures
(which are always either a bug or a counterexample) are 4.
"""


class RatDynError(Exception):
    """Base class for all library errors."""


class ParseError(RatDynError):
    """Raised on malformed expression input; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class PreconditionError(RatDynError):
    """An operation was called outside its stated domain."""


class NotDefined(PreconditionError):
    """The maximal self-orbifold is not defined for this map."""


class NonRationalPosition(PreconditionError):
    """A construction needs singular points at rational positions."""


class ReducibleCurve(RatDynError):
    """An operation needing an irreducible curve received a reducible one."""

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)


class Inconclusive(RatDynError):
    """A bounded search hit its cap without certifying an answer."""


class TheoremViolation(RatDynError):
    """Internal consistency check failed; a bug or a counterexample."""


class ChainError(RatDynError):
    """A commuting-square chain could not be extended."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level
