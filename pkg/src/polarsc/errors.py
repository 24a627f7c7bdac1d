"""Exception types shared across the toolkit."""


class InvalidParameterError(ValueError):
    """An argument violates a documented precondition (bad length, range, ...)."""


class SequencingError(RuntimeError):
    """Decisions were pushed into a partial-sum state out of index order."""


class NotReadyError(RuntimeError):
    """Partial sums were queried before the feeding sub-block was decided."""


class SchedulingError(RuntimeError):
    """A simulated clock cycle consumed a value that was not yet produced."""


class EquivalenceError(RuntimeError):
    """An architectural run diverged from the functional reference decoder."""
