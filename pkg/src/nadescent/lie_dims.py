"""Graded dimensions for the nilpotent tower over a genus-g surface group.

For a closed orientable surface of genus g >= 2, the graded pieces of the
associated Lie algebra of the lower central series have dimensions r_n
determined by the divisor sum

    sum_{d | n} d * r_d  =  L_n,

where L_n = (g + sqrt(g^2 - 1))^n + (g - sqrt(g^2 - 1))^n is the integer
Lucas-type sequence

    L_0 = 2,   L_1 = 2g,   L_n = 2g * L_{n-1} - L_{n-2}.

Moebius inversion recovers each r_n exactly:

    n * r_n = sum_{d | n} mu(n / d) * L_d,

and the sum must divide exactly -- a non-integer quotient means the inputs
are corrupt, so it is a hard error rather than a rounding.  The unipotent
quotient U_n below filtration level n has dim U_n = r_1 + ... + r_{n-1}.

Everything here is arbitrary-precision integer arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import divisors, mobius
from .errors import DomainError, InvariantError

#: Default ceiling on n_max; raise explicitly via the ``cap`` argument if a
#: computation genuinely needs deeper levels.
DEFAULT_LEVEL_CAP = 10_000


def validate_genus(g: int) -> int:
    if not isinstance(g, int) or isinstance(g, bool) or g < 2:
        raise DomainError(f"genus must be an integer >= 2, got {g!r}")
    return g


def lucas_sequence(g: int, n_max: int) -> list[int]:
    """[L_0, ..., L_n_max] for the recurrence L_n = 2g L_{n-1} - L_{n-2}."""
    validate_genus(g)
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    seq = [2, 2 * g]
    while len(seq) <= n_max:
        seq.append(2 * g * seq[-1] - seq[-2])
    return seq[: n_max + 1]


@dataclass(frozen=True)
class GradedDims:
    """Graded dimension data for one genus, degrees 1..n_max."""

    g: int
    lucas: tuple[int, ...]     # L_0 .. L_n_max
    graded: tuple[int, ...]    # r_1 .. r_n_max

    @property
    def n_max(self) -> int:
        return len(self.graded)

    def lucas_value(self, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise DomainError(f"L_{n} not computed (n_max={self.n_max})")
        return self.lucas[n]

    def r(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise DomainError(f"r_{n} not computed (n_max={self.n_max})")
        return self.graded[n - 1]


def graded_dims(g: int, n_max: int, cap: int = DEFAULT_LEVEL_CAP) -> GradedDims:
    """Dimensions r_1..r_n_max of the graded pieces, by Moebius inversion."""
    validate_genus(g)
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if n_max > cap:
        raise DomainError(
            f"n_max={n_max} exceeds the level cap {cap}; pass a larger cap "
            "explicitly if this is intentional"
        )
    return _graded_dims_cached(g, n_max)


@lru_cache(maxsize=64)
def _graded_dims_cached(g: int, n_max: int) -> GradedDims:
    lucas = lucas_sequence(g, n_max)
    graded = []
    for n in range(1, n_max + 1):
        total = sum(mobius(n // d) * lucas[d] for d in divisors(n))
        if total % n != 0:
            raise InvariantError(
                f"Moebius sum {total} for degree {n} (g={g}) is not "
                f"divisible by {n}"
            )
        rn = total // n
        if rn <= 0:
            raise InvariantError(f"non-positive graded dimension r_{n}={rn}")
        graded.append(rn)
    return GradedDims(g=g, lucas=tuple(lucas), graded=tuple(graded))


def cumulative_dim(dims: GradedDims, n: int) -> int:
    """dim U_n = r_1 + ... + r_{n-1}, valid for 2 <= n <= n_max + 1."""
    if not 2 <= n <= dims.n_max + 1:
        raise DomainError(
            f"cumulative dimension defined for 2 <= n <= {dims.n_max + 1}, "
            f"got {n}"
        )
    return sum(dims.graded[: n - 1])
