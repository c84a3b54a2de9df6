"""Exception hierarchy shared by all modules."""


class LeakyCavError(Exception):
    pass


class DimensionError(LeakyCavError, ValueError):
    pass


class CompositionError(LeakyCavError, ValueError):
    pass


class ArgumentError(LeakyCavError, ValueError):
    pass


class ConfigurationError(LeakyCavError, ValueError):
    pass


class NumericalError(LeakyCavError, ArithmeticError):
    pass


class NumericalFailure(NumericalError):
    """Integrator guard tripped (positivity or trace); ``time`` is where it happened."""

    def __init__(self, message: str, time: float):
        super().__init__(f"{message} (t = {time:.6g})")
        self.time = time


class AssemblyError(LeakyCavError):
    pass


class InternalConsistencyError(LeakyCavError):
    pass


class TraceDeficitWarning(UserWarning):
    pass
