"""Exception types shared across the package."""


class MWCError(Exception):
    """Base class for all package errors."""


class GraphInputError(MWCError, ValueError):
    """Malformed graph, vertex set, partition, or out-of-range parameter."""


class CapExceededError(MWCError, RuntimeError):
    """An exact enumeration would exceed its configured budget.

    Exceeding a cap is always an error, never a silent fallback to a
    heuristic: callers must either raise the cap explicitly or use a
    sweep-mode routine.
    """

    def __init__(self, cap_name: str, limit: int, required: int):
        self.cap_name = cap_name
        self.limit = limit
        self.required = required
        super().__init__(
            f"cap '{cap_name}' exceeded: limit {limit}, required {required}"
        )


class UnsplittableError(MWCError, RuntimeError):
    """A piece of fewer than 2 vertices was selected for division."""


class EigensolverError(MWCError, RuntimeError):
    """Dense symmetric eigensolver failed or exceeded its size cap."""
