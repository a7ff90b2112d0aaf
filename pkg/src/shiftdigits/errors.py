"""Exception types shared by the analysis modules."""


class InvalidParametersError(ValueError):
    """Parameters lie outside the hypotheses of the identity being evaluated."""


class TheoremViolation(ArithmeticError):
    """A proven identity failed on concrete input; carries the nonzero witness."""

    def __init__(self, message: str, witness: str | None = None, report=None):
        super().__init__(message)
        self.witness = witness
        self.report = report
