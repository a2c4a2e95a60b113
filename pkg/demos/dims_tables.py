"""Graded dimension tables for the fundamental-group Lie algebra.

For a curve of genus g the relevant graded Lie algebra is free on 2g
generators modulo one quadratic relation, and its graded dimensions r_n
are Witt-style necklace numbers driven by the integer Lucas-type sequence
L_n = x^n + y^n with x + y = 2g, xy = 1.  The unipotent quotient U_n then
has dim U_n = r_1 + ... + r_{n-1}.

Run:  python3 demos/dims_tables.py
"""

from nadescent import cumulative_dim, graded_dims

from_text = "{:>4} {:>14} {:>14} {:>14}"


def table(g: int, n_max: int) -> None:
    dims = graded_dims(g, n_max)
    print(f"g = {g}")
    print(from_text.format("n", "L_n", "r_n", "dim U_n"))
    for n in range(1, n_max + 1):
        dim_u = 0 if n == 1 else cumulative_dim(dims, n)
        print(from_text.format(n, dims.lucas_value(n), dims.r(n), dim_u))
    print()


def pbw_check(g: int, upto: int) -> None:
    """Multiply out prod (1-t^n)^(-r_n) and compare with 1/(1-2g t + t^2)."""
    dims = graded_dims(g, upto)
    acc = [1] + [0] * upto
    for n in range(1, upto + 1):
        rn = dims.r(n)
        out = [0] * (upto + 1)
        for i, ai in enumerate(acc):
            if ai == 0:
                continue
            k = 0
            while i + n * k <= upto:
                from math import comb

                out[i + n * k] += ai * comb(rn + k - 1, k)
                k += 1
        acc = out
    target = [1, 2 * g]
    while len(target) <= upto:
        target.append(2 * g * target[-1] - target[-2])
    status = "MATCH" if acc == target else "MISMATCH"
    print(f"PBW check (g={g}, through t^{upto}): {status}")
    print(f"  product coefficients: {acc}")
    print(f"  rational target:      {target}")
    print()


if __name__ == "__main__":
    table(2, 8)
    table(3, 6)
    pbw_check(2, 10)
    pbw_check(4, 10)
