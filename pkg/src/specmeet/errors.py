"""Exception types shared across the toolkit."""


class SpecmeetError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SpecmeetError):
    """Malformed input: bad tolerances, file contents, set specs, or config."""


class NonHermitianInput(InvalidInput):
    """Matrix entries are not Hermitian within the configured tolerance."""


class EigenFailure(SpecmeetError):
    """The underlying eigensolver iteration did not converge."""


class DimensionMismatch(SpecmeetError):
    """Operands live on spaces of different dimension."""


class EmptyFamily(SpecmeetError):
    """An operation that needs at least one operator received none."""


class CapExceeded(SpecmeetError):
    """Partition enumeration over more atoms than the configured cap.

    Carries the number of partitions the enumeration would have produced.
    """

    def __init__(self, size: int, required: int, cap: int):
        super().__init__(
            f"partitioning {size} atoms needs {required} partitions, "
            f"cap is {cap} atoms"
        )
        self.size = size
        self.required = required
        self.cap = cap
