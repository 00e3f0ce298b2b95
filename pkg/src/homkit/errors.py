"""Exception types shared across the toolkit."""


class HomkitError(Exception):
    """Base class for all toolkit errors."""


class BudgetExceeded(HomkitError):
    """An input is larger than the configured desk-scale budget allows."""


class SelfLoopRejection(HomkitError):
    """A quotient identified two adjacent vertices; the result is not loop-free."""


class ExactnessUnavailable(HomkitError):
    """An exact invariant was requested above the exact-mode threshold without a witness."""


class NotACore(HomkitError):
    """An operation requiring a core graph was given a non-core."""


class NotALineGraph(HomkitError):
    """No Krausz clique partition exists; the graph is not a line graph."""


class InvalidDecomposition(HomkitError):
    """A tree decomposition failed validation against its graph."""


class InvalidWitness(HomkitError):
    """A supplied coloring or certificate witness failed validation."""


class InvalidColoring(HomkitError):
    """A vertex coloring does not satisfy the homomorphism condition."""


class DecodeFailure(HomkitError):
    """A graph is not in the image of the string encoding.

    ``reason`` is one of: ``non-path-component``, ``duplicate-path``,
    ``path-too-long``, ``empty``.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class RankDeficiencyTimeout(HomkitError):
    """The constituent-extraction linear system never reached full rank.

    This signals an implementation bug, never bad input.
    """


class UnsupportedSpeciesPair(HomkitError):
    """basis_transform only converts between adjacent species pairs."""
