"""Exception types shared across the package."""


class ReduktorError(Exception):
    """Base class for all library errors."""


class ResourceError(ReduktorError):
    """A configured computation budget was exceeded.

    ``budget`` names the cap that was hit so callers (and the CLI) can say
    which knob to raise.
    """

    def __init__(self, budget: str, limit, message: str = ""):
        self.budget = budget
        self.limit = limit
        text = f"resource budget '{budget}' exceeded (limit {limit})"
        if message:
            text += f": {message}"
        super().__init__(text)


class InconsistencyError(ReduktorError):
    """Two routes that must agree did not; indicates a bug or bad luck."""


class HomogeneityError(ReduktorError, ValueError):
    """A generator that should be homogeneous is not."""


class GuardError(ReduktorError, ValueError):
    """Input exceeds a desk-scale guard for an exact symbolic computation."""


class SamplingError(ReduktorError):
    """Random sampling failed to produce a usable specialization."""
