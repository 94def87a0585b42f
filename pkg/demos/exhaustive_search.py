"""Drive the exhaustive matrix-product oracle end to end.

Shows the solution listings for small sizes, the batched survey of all
eight named targets at one size, and a histogram refined by last
component compared against its generating-series prediction.
"""

from quiddity import census
from quiddity.matrices import TARGETS, m_n
from quiddity.oracle import OracleQuery, solve, survey


def main():
    print("All solutions for the identity target, sizes 3..6")
    for size in range(3, 7):
        res = solve(OracleQuery(target="Id", size=size, list_solutions=True))
        print(f"  size {size}: {res.count} solutions")
        for digits in res.solutions:
            word = ",".join(str(d) for d in digits)
            print(f"    ({word})  product {m_n(digits)!r}")

    print()
    print("Survey of every named target at size 8 (bound 8)")
    sv = survey(8)
    for name in TARGETS:
        exhaustive = "complete" if sv.exhaustive_within_bound[name] else "boxed"
        print(f"  {name:>5}: {sv.counts[name]:6d} solutions, "
              f"{sv.bound_touches[name]} at the bound  [{exhaustive}]")

    print()
    print("Identity solutions at size 9 by last component, search vs series")
    res = solve(OracleQuery(target="Id", size=9))
    n = 9 - 2
    for last in sorted(res.by_last):
        predicted = census.series_V(last, n).coeff(n)
        flag = "ok" if predicted == res.by_last[last] else "MISMATCH"
        print(f"  last = {last}: {res.by_last[last]:4d} found, "
              f"{predicted:4d} predicted  {flag}")

    print()
    print("An arbitrary matrix target is searched inside the box only")
    res = solve(OracleQuery(target="[[2,1],[1,1]]", size=6, bound=8,
                            list_solutions=True))
    print(f"  [[2,1],[1,1]] at size 6, bound 8: count {res.count}, "
          f"exhaustive_within_bound {res.exhaustive_within_bound}")
    for digits in res.solutions[:5]:
        print(f"    {digits}")


if __name__ == "__main__":
    main()
