"""Upper/lower dimension bound tables and the descent halting level.

Two integer sequences are tracked level by level:

* ``selmer_ub`` -- an upper bound for the dimension of the level-n Selmer
  variety, seeded at level 2 by the Mordell-Weil rank and grown by one
  Galois-cohomology step per level:

      UB(n+1) = UB(n) + minus_dim_bound(n)
                      + |S| * local_h2_bound(n, bad prime)
                      + local_h2_bound(n, the good prime p)

* ``derham_lb`` -- a lower bound for the dimension of the de Rham quotient
  U_n / F^0, seeded at level 2 by g and grown by

      LB(n+1) = LB(n) + max(0, r_n - g^n).

The halting level t is the least n with UB(n) < LB(n): from there on a
nonzero algebraic obstruction is guaranteed, which is what the rest of the
pipeline consumes.

Parity modes
------------
The "minus part" of a graded piece is half its dimension in odd degree and
the full dimension in even degree.  ``FAITHFUL`` applies that rule to the
degree n actually consumed by the step (and raises ParityError if an
odd-degree piece is odd-dimensional, which would make "half" meaningless).
``PAPER_VERBATIM`` reproduces a published pair of displayed inequalities
that attach the halving to steps landing on an odd *target* level n+1
instead, i.e. to even n, with a ceiling on the half.  Both modes yield
finite halting levels; they simply bracket an ambiguity in the source
bookkeeping.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .arith import is_prime
from .errors import DomainError, ParityError
from .lie_dims import GradedDims, graded_dims, validate_genus


class ParityMode(enum.Enum):
    FAITHFUL = "faithful"
    PAPER_VERBATIM = "verbatim"

    @classmethod
    def parse(cls, text) -> "ParityMode":
        if isinstance(text, cls):
            return text
        for mode in cls:
            if mode.value == text:
                return mode
        raise DomainError(
            f"unknown parity mode {text!r}; expected 'faithful' or 'verbatim'"
        )


class Place(enum.Enum):
    BAD_PRIME = "bad"
    GOOD_P = "good"


@dataclass(frozen=True)
class CurveParams:
    """Arithmetic inputs for the bound recursion.

    ``bad_primes`` is optional -- only its cardinality enters the bounds --
    but when present it must be consistent with ``bad_prime_count`` and must
    not contain the working prime p.
    """

    g: int
    bad_prime_count: int
    p: int
    mw_rank: int
    bad_primes: Optional[frozenset[int]] = None

    def __post_init__(self):
        validate_genus(self.g)
        if self.bad_prime_count < 0:
            raise DomainError(f"|S| must be >= 0, got {self.bad_prime_count}")
        if not is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")
        if self.mw_rank < 0:
            raise DomainError(f"Mordell-Weil rank must be >= 0, got {self.mw_rank}")
        if self.bad_primes is not None:
            object.__setattr__(self, "bad_primes", frozenset(self.bad_primes))
            if len(self.bad_primes) != self.bad_prime_count:
                raise DomainError(
                    f"bad_prime_count={self.bad_prime_count} disagrees with "
                    f"bad_primes of size {len(self.bad_primes)}"
                )
            if self.p in self.bad_primes:
                raise DomainError(f"p={self.p} must be a prime of good reduction")
            for q in self.bad_primes:
                if not is_prime(q):
                    raise DomainError(f"bad prime {q} is not prime")


class BoundRow(NamedTuple):
    n: int
    selmer_ub: int
    derham_lb: int


@dataclass(frozen=True)
class BoundTable:
    """Rows (n, UB(n), LB(n)) together with the halting level, if found."""

    params: CurveParams
    mode: ParityMode
    rows: tuple[BoundRow, ...]
    halting_level: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "g": self.params.g,
            "bad_prime_count": self.params.bad_prime_count,
            "p": self.params.p,
            "mw_rank": self.params.mw_rank,
            "mode": self.mode.value,
            "rows": [
                {"n": r.n, "selmer_ub": r.selmer_ub, "derham_lb": r.derham_lb}
                for r in self.rows
            ],
            "halting_level": self.halting_level,
        }


def minus_dim_bound(dims: GradedDims, n: int, mode: ParityMode) -> int:
    """Contribution of the degree-n graded piece to one upper-bound step."""
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    rn = dims.r(n)
    if mode is ParityMode.FAITHFUL:
        if n % 2 == 1:
            if rn % 2 != 0:
                raise ParityError(
                    f"r_{n}={rn} is odd in odd degree {n}; cannot halve"
                )
            return rn // 2
        return rn
    # PAPER_VERBATIM: halve (with ceiling) when the step lands on an odd
    # target level n+1, i.e. when n is even.
    if n % 2 == 0:
        return (rn + 1) // 2
    return rn


def local_h2_bound(g: int, n: int, place: Place) -> int:
    """Upper bound for one local H^2 contribution in degree n."""
    validate_genus(g)
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    good = n * g**n
    if place is Place.GOOD_P:
        return good
    pairs = n * (n - 1) // 2
    if pairs == 0:
        return good
    return good + pairs * (2 * g - 2) ** 2 * g ** (n - 2)


def h1_step_bound(
    dims: GradedDims, n: int, s_count: int, mode: ParityMode
) -> int:
    """UB(n+1) - UB(n): the full growth allowance when consuming degree n."""
    if n < 2:
        raise DomainError(f"bound steps start at degree 2, got {n}")
    if s_count < 0:
        raise DomainError(f"|S| must be >= 0, got {s_count}")
    return (
        minus_dim_bound(dims, n, mode)
        + s_count * local_h2_bound(dims.g, n, Place.BAD_PRIME)
        + local_h2_bound(dims.g, n, Place.GOOD_P)
    )


def middle_hodge_component_bound(g: int, m: int) -> int:
    """binom(2m, m) * g^(2m): the ambient dimension of the middle (m, m)
    Hodge component in even weight 2m.

    Documented for a future refinement of the even-degree bookkeeping; it
    enters none of the bounds computed here.
    """
    validate_genus(g)
    if m < 1:
        raise DomainError(f"half-weight must be >= 1, got {m}")
    return math.comb(2 * m, m) * g ** (2 * m)


def selmer_ub_table(
    params: CurveParams, dims: GradedDims, n_cap: int, mode: ParityMode
) -> list[int]:
    """[UB(2), ..., UB(n_cap)]."""
    _check_cap(dims, n_cap)
    ub = [params.mw_rank]
    for n in range(2, n_cap):
        ub.append(ub[-1] + h1_step_bound(dims, n, params.bad_prime_count, mode))
    return ub


def derham_lb_table(dims: GradedDims, n_cap: int) -> list[int]:
    """[LB(2), ..., LB(n_cap)]."""
    _check_cap(dims, n_cap)
    g = dims.g
    lb = [g]
    for n in range(2, n_cap):
        lb.append(lb[-1] + max(0, dims.r(n) - g**n))
    return lb


def _check_cap(dims: GradedDims, n_cap: int) -> None:
    if n_cap < 2:
        raise DomainError(f"n_cap must be >= 2, got {n_cap}")
    if n_cap - 1 > dims.n_max:
        raise DomainError(
            f"need graded dimensions through degree {n_cap - 1}, have "
            f"{dims.n_max}"
        )


def bound_table(
    params: CurveParams,
    n_cap: int = 64,
    mode: ParityMode = ParityMode.FAITHFUL,
    dims: Optional[GradedDims] = None,
) -> BoundTable:
    """Full table over n = 2..n_cap, with halting_level set if one occurs."""
    if dims is None:
        dims = graded_dims(params.g, max(n_cap - 1, 1))
    ubs = selmer_ub_table(params, dims, n_cap, mode)
    lbs = derham_lb_table(dims, n_cap)
    rows = tuple(
        BoundRow(n, ub, lb) for n, (ub, lb) in enumerate(zip(ubs, lbs), start=2)
    )
    level = next((r.n for r in rows if r.selmer_ub < r.derham_lb), None)
    return BoundTable(params=params, mode=mode, rows=rows, halting_level=level)


def halting_level(
    params: CurveParams,
    n_cap: int = 64,
    mode: ParityMode = ParityMode.FAITHFUL,
    dims: Optional[GradedDims] = None,
) -> BoundTable:
    """Least n in [2, n_cap] with UB(n) < LB(n).

    Returns a BoundTable whose rows stop at the halting level when one is
    found (``halting_level`` is then that n); when the cap is exhausted the
    rows run through n_cap and ``halting_level`` is None.
    """
    if dims is None:
        dims = graded_dims(params.g, max(n_cap - 1, 1))
    _check_cap(dims, n_cap)
    g = dims.g
    ub, lb = params.mw_rank, g
    rows = [BoundRow(2, ub, lb)]
    n = 2
    while ub >= lb and n < n_cap:
        ub += h1_step_bound(dims, n, params.bad_prime_count, mode)
        lb += max(0, dims.r(n) - g**n)
        n += 1
        rows.append(BoundRow(n, ub, lb))
    found = ub < lb
    return BoundTable(
        params=params,
        mode=mode,
        rows=tuple(rows),
        halting_level=n if found else None,
    )
