"""Exception types shared across the package."""


class TpglError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrixError(TpglError, ValueError):
    """A matrix required to be invertible is singular."""


class NotUnitriangularError(TpglError, ValueError):
    """Input is not unitriangular of the requested sign."""


class NotReducedWordError(TpglError, ValueError):
    """Letter sequence is not a reduced word for the longest permutation."""


class MembershipError(TpglError, ValueError):
    """A positivity-membership precondition failed."""


class TorusDomainError(TpglError, ValueError):
    """Element does not lie on the given maximal torus."""


class EigenSplitError(TpglError, RuntimeError):
    """Eigendecomposition failed: numerical residual too large or the
    spectrum is degenerate where total positivity forbids it."""


class InvariantViolationError(TpglError, RuntimeError):
    """An internal invariant that should be unconditionally true failed;
    this indicates a bug in the implementation, not bad input."""
