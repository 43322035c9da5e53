"""Exception types shared across the package."""

from __future__ import annotations


class EquicharError(Exception):
    """Base class for all equichar errors."""


class DimensionTooLargeError(EquicharError):
    """Exhaustive row-subset enumeration is infeasible beyond 2^20 sums per row."""


class SizeExceededError(EquicharError):
    """A tensor-power action would exceed the point budget."""


class NotMonomialError(EquicharError):
    """An operation required monomial generators but one is not monomial."""


class UnboundedGroupError(EquicharError):
    """No positive diagonal rescaling exists; the generated group is unbounded.

    The obstruction is always a cycle of the index graph whose coefficient
    magnitudes do not multiply to one.  Indices in ``description`` are
    1-based for reporting; the structured attributes are 0-based.
    """

    def __init__(
        self,
        description: str,
        *,
        generator: int,
        source: int,
        target: int,
        log_weight: float,
        mismatch: float,
    ) -> None:
        super().__init__(description)
        self.description = description
        self.generator = generator
        self.source = source
        self.target = target
        self.log_weight = log_weight
        self.mismatch = mismatch


class EndpointViolationError(EquicharError):
    """A profile on [1, b] does not satisfy eta(b) = b * eta(1)."""


class NonPositiveInputError(EquicharError, ValueError):
    """A strictly positive real input was required."""


class GeneratorCountMismatchError(EquicharError, ValueError):
    """Two parallel actions were given different numbers of generators."""


class ShapeMismatchError(EquicharError, ValueError):
    """Matrix, vector, or action shapes do not chain."""


class CountMismatchError(EquicharError, ValueError):
    """Coefficient counts do not match basis element counts."""
