"""Where the Selmer upper bound dips below the de Rham lower bound.

The descent machine climbs levels n = 2, 3, ... comparing a Galois-side
upper bound (rank plus accumulated local H^1/H^2 contributions) with a
de Rham-side lower bound (accumulated excess of r_n over g^n).  The first
level where UB < LB is the halting level t: from there on the method is
guaranteed to cut out a finite set.

The odd/even halving convention for the minus part is selectable:
'faithful' halves the odd-degree graded pieces (and insists they are
even-dimensional); 'verbatim' reproduces the halving as originally
tabulated, on even degrees with a ceiling.

Run:  python3 demos/halting_levels.py
"""

from nadescent import CurveParams, ParityMode, halting_level


def bound_table(rank: int) -> None:
    params = CurveParams(g=2, bad_prime_count=1, p=101, mw_rank=rank)
    table = halting_level(params, mode=ParityMode.FAITHFUL)
    print(f"g=2, |S|=1, p=101, rank={rank} (faithful)")
    print(f"{'n':>4} {'selmer UB':>14} {'de Rham LB':>14}")
    for row in table.rows:
        print(f"{row.n:>4} {row.selmer_ub:>14} {row.derham_lb:>14}")
    print(f"halting level: t = {table.halting_level}")
    print()


def rank_sweep() -> None:
    print("halting level t by rank and convention (g=2, |S|=1, p=101)")
    print(f"{'rank':>6} {'faithful':>10} {'verbatim':>10}")
    for rank in range(0, 11):
        levels = []
        for mode in (ParityMode.FAITHFUL, ParityMode.PAPER_VERBATIM):
            params = CurveParams(g=2, bad_prime_count=1, p=101, mw_rank=rank)
            levels.append(halting_level(params, mode=mode).halting_level)
        print(f"{rank:>6} {levels[0]:>10} {levels[1]:>10}")
    print()


if __name__ == "__main__":
    bound_table(0)
    bound_table(2)
    rank_sweep()
