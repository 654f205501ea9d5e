"""Exception types shared by the package."""


class GainGraphError(ValueError):
    """Invalid graph input or an operation applied to the wrong kind of graph."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class CapExceededError(ValueError):
    """An exponential-time routine was asked to run above its size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class GraphFileError(ValueError):
    """A graph file could not be parsed; ``location`` names the line or field."""

    def __init__(self, message, location=None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
