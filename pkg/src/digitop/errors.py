class DigitopError(ValueError):
    """Base class for input and hypothesis errors raised by this package."""


class HypothesisError(DigitopError):
    """A theorem-check was invoked on an instance violating the theorem's hypotheses."""

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"hypothesis '{name}' fails" + (f": {detail}" if detail else ""))


class IndeterminateComparison(DigitopError):
    """A floating-point comparison fell within tolerance and cannot be decided exactly."""
