class ThresholdGameError(Exception):
    """
    Base class for every error raised by this package.
    """


class ContractViolation(ThresholdGameError, ValueError):
    """
    A game-core precondition was broken by the caller.
    """


class ConfigurationError(ThresholdGameError, ValueError):
    pass


class ParseError(ThresholdGameError, ValueError):
    pass


class InfeasibleError(ThresholdGameError):
    """
    No threshold schedule keeps every attack within the requested damage cap.
    """


class OracleBoundError(ThresholdGameError):
    pass
