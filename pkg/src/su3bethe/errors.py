"""Exception hierarchy shared by every module."""


class Su3BetheError(Exception):
    """Base class; ``kind`` is the short tag used in CLI error objects."""

    kind = "error"


class PoleError(Su3BetheError, ZeroDivisionError):
    """A kernel or prefactor was evaluated on one of its poles."""

    kind = "pole"


class SingularError(Su3BetheError):
    """Floating-point determinant is numerically singular."""

    kind = "singular"


class CardinalityError(Su3BetheError, ValueError):
    kind = "cardinality"


class SizeError(Su3BetheError, ValueError):
    kind = "size"


class ConflictError(Su3BetheError, ValueError):
    """A point carries two incompatible required r-values."""

    kind = "conflict"


class DegenerateError(Su3BetheError, ValueError):
    kind = "degenerate"


class NoConvergence(Su3BetheError, RuntimeError):
    kind = "no_convergence"


class CollisionError(Su3BetheError, RuntimeError):
    kind = "collision"


class DegeneracyWarning(UserWarning):
    """Eigenvalue gaps too small for reliable eigenvector matching."""
