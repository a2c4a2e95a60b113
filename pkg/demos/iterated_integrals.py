"""Word-indexed iterated integrals and the shuffle identity.

Given differential forms f_1, ..., f_k (p-integral power series on the
unit disk), the iterated integral attached to a word w = (i_1, ..., i_m)
is built inside out: a_empty = 1, and a_{(i, w')} is the antiderivative of
f_i * a_{w'} vanishing at 0.  Products of these functions satisfy the
shuffle identity

    a_u * a_v = sum over w in shuffle(u, v) of mult(w) * a_w,

which is what lets linear combinations of words act as honest observables.

Run:  python3 demos/iterated_integrals.py
"""

import math

from nadescent import (
    PadicNumber,
    FormSystem,
    Observable,
    PadicSeries,
    evaluate_observable,
    iterated_integral,
    observable_product,
    shuffle,
)

P = 5
TRUNC = 8


def main() -> None:
    print("shuffle((1,), (2,))   =", shuffle((1,), (2,)))
    print("shuffle((1,), (1,))   =", shuffle((1,), (1,)))
    print("shuffle((1,2), (3,))  =", shuffle((1, 2), (3,)))
    print()

    ones = FormSystem((PadicSeries.constant(P, 1, TRUNC),))
    one = PadicNumber.from_int(P, 1)
    print(f"with f_1 = 1 the integrals are z^k / k!  (checked p-adically):")
    for k in range(1, 5):
        series = iterated_integral(ones, (1,) * k)
        lead = series.coeff(k)
        exact = lead.scale_int(math.factorial(k)).agrees_with(one)
        print(f"  a_(1^{k}): z^{k} coefficient times {k}! == 1 ?  {exact}")
    half = iterated_integral(ones, (1, 1)).coeff(2)
    print(f"  (the z^2 coefficient of a_(1,1) is the 5-adic 1/2: {half})")
    print()

    # the shuffle identity on a less trivial pair of forms
    system = FormSystem(
        (
            PadicSeries.from_int_coeffs(P, [1, 2, 0, 3, 0, 0, 1, 0, 4]),
            PadicSeries.from_int_coeffs(P, [2, 0, 1, 0, 0, 1, 0, 2, 0]),
        )
    )
    u, v = (1,), (2, 1)
    lhs = iterated_integral(system, u) * iterated_integral(system, v)
    rhs = None
    for w, mult in shuffle(u, v).items():
        piece = iterated_integral(system, w).scale_int(mult)
        rhs = piece if rhs is None else rhs + piece
    print(f"shuffle identity for u={u}, v={v}: "
          f"{'HOLDS' if lhs.agrees_with(rhs) else 'FAILS'}")
    print()

    # observables: formal sums of words, evaluated in one pass
    a1 = Observable.from_terms(P, [((1,), 1)])
    squared = observable_product(a1, a1)
    print("a_(1) * a_(1) as an observable:",
          {w: str(c) for w, c in squared.terms})
    cancel = Observable.from_terms(
        P, list(squared.terms) + [((1, 1), -2)]
    )
    result = evaluate_observable(cancel, ones)
    print("a_(1)^2 - 2 a_(1,1) evaluates to zero? ",
          result.indistinguishable_from_zero())


if __name__ == "__main__":
    main()
