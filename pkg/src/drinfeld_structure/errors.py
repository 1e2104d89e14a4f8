"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid input parameters (bad prime, malformed polynomial, wrong field...)."""


class CapExceeded(RuntimeError):
    """A configured size or search cap was hit before the computation finished."""


class NotInImage(ValueError):
    """An Ore polynomial is not of the form phi_a for any a in F_q[T]."""


class InternalConsistencyError(AssertionError):
    """A mathematical invariant that must always hold was observed to fail.

    Raised loudly instead of returning a wrong answer; carries the offending
    data in ``details`` so the failure can be reproduced.
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details
