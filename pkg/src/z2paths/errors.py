"""Exception hierarchy shared across the package."""


class Z2PathsError(Exception):
    """Base class for every domain error raised by z2paths."""


class UnrankedVariableError(Z2PathsError):
    pass


class MissingAssignmentError(Z2PathsError):
    pass


class PolynomialSyntaxError(Z2PathsError):
    pass


class CircuitSyntaxError(Z2PathsError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CircuitValidationError(Z2PathsError):
    """Raised when a grid fails vertical-dataflow validation.

    ``problems`` holds the individual :class:`~z2paths.circuit.PlacementError`
    records.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "; ".join(str(p) for p in self.problems)
        super().__init__(f"invalid grid: {lines}")


class ResourceCapError(Z2PathsError):
    pass


class BitstringError(Z2PathsError):
    pass
