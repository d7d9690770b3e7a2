"""Exception hierarchy for norm0.

Every failure raised by the core carries the offending values in its message so the CLI
can print it verbatim.  Classes also inherit from the matching builtin so callers that
only know ``ValueError``/``RuntimeError``/``KeyError`` still catch them.
"""

from __future__ import annotations


class Norm0Error(Exception):
    """Base class for all norm0 errors."""


class SingularMatrix(Norm0Error, ValueError):
    """A matrix with determinant 0 cannot be canonicalized."""


class OrientationReversing(Norm0Error, ValueError):
    """A matrix with negative determinant does not act on the upper half-plane."""


class CapExceeded(Norm0Error, ValueError):
    """An input is above a configured cap (factorization or oracle)."""


class NotExactDivisor(Norm0Error, ValueError):
    """``m`` is not an exact divisor of ``N`` (m | N and gcd(m, N/m) = 1)."""


class NotInNormalizer(Norm0Error, ValueError):
    """The requested element does not normalize Gamma0(N)."""


class ShiftNotInNormalizer(NotInNormalizer):
    """A shift S_k was requested with k not dividing v(N)."""


class BudgetExceeded(Norm0Error, RuntimeError):
    """Group closure produced more elements than the configured budget."""


class UnknownGenerator(Norm0Error, KeyError):
    """A word refers to a name that cannot be resolved."""

    def __str__(self) -> str:  # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else "unknown generator"


class WordParseError(Norm0Error, ValueError):
    """A word string does not follow the word grammar."""


class NotASubgroup(Norm0Error, ValueError):
    """An index set handed in as a factor is not closed under the group law."""


class DecompositionFailed(Norm0Error, RuntimeError):
    """No w_m * Omega decomposition was found (would contradict the structure theorem)."""


class CacheCorrupt(Norm0Error):
    """A cache payload failed validation; callers recompute."""
