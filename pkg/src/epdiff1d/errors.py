"""Exception types shared across the package."""


class RealityError(ArithmeticError):
    """A field that must be real came back with a non-negligible imaginary part.

    This signals a conjugation bug, not bad user input.
    """


class UnsupportedOperandError(TypeError):
    """An operator matrix lacks the factored form an operation needs."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a size guard (dense tensors grow like P**5)."""


class StepFailure(RuntimeError):
    """A nonlinear time step (or q-path update) did not converge."""

    def __init__(self, message, report=None, condition=None):
        super().__init__(message)
        self.report = report
        self.condition = condition


class DivergenceError(RuntimeError):
    """The reference solver blew up."""


class ConfigError(ValueError):
    """Invalid run configuration.

    ``field`` names the offending key (dotted path); ``line``/``column`` are
    1-based positions for syntax errors.
    """

    def __init__(self, message, field=None, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif field is not None:
            where = f" [{field}]"
        super().__init__(message + where)
        self.field = field
        self.line = line
        self.column = column
