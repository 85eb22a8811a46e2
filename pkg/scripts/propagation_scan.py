#!/usr/bin/env python3
"""Scan crisp thresholds on the Lukasiewicz/product sum and report which
operators propagate consistency through the strong conjunction.

The lattice conjunction and the implication always propagate; the strong
conjunction is the interesting case.  Thresholds strictly above the
zero-negation infimum admit pairs whose product drops below the threshold
while staying inside the region, so propagation fails there.
"""

from fractions import Fraction

from mtlfi.chain import builtin_chains
from mtlfi.operators import crisp_op, max_op, min_op
from mtlfi.semantics import ChainModel, check_propagation


def main():
    lp = builtin_chains()["LP"]
    rows = [("min", min_op(lp)), ("max", max_op(lp))]
    for num in range(30, 60, 5):
        t = Fraction(num, 60)
        rows.append((f"crisp {t}", crisp_op(lp, t)))
    print(f"{'operator':14s} {'& propagates':>14s} {'counterpair'}")
    for label, op in rows:
        res = check_propagation(ChainModel("LP", lp, op), "&")
        verdict = {True: "yes", False: "no", None: "unknown"}[res.holds]
        pair = "" if res.pair is None else f"{res.pair[0]}, {res.pair[1]}"
        print(f"{label:14s} {verdict:>14s} {pair}")


if __name__ == "__main__":
    main()
