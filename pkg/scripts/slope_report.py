#!/usr/bin/env python3
"""Slope ledger: the known table plus the operator-derived classes behind it."""

from siegelops.slopes import (CITED_GENUS6_FORM_CLASS, class_N0prime,
                              class_operator_output, class_tnull, hyperelliptic_bound,
                              moving_bound, render_table, slope, torelli_pullback)


def main() -> int:
    print(render_table())
    print("operator-derived classes:")
    for g, base in ((2, class_tnull(2)), (3, class_tnull(3)),
                    (4, class_N0prime(4)), (5, class_N0prime(5)),
                    (6, CITED_GENUS6_FORM_CLASS)):
        out = class_operator_output(g, base)
        print(f"  g={g}: {base.label or base} -> {out}  "
              f"slope {slope(out)}  bound {moving_bound(g, base)}")
    print("\nhyperelliptic thresholds: "
          + ", ".join(f"g={g}: {hyperelliptic_bound(g)}" for g in (3, 4, 5, 6)))
    pb = torelli_pullback(class_operator_output(4, class_N0prime(4)))
    print(f"curve-side pullback at g=4: {pb.lam1}L1 - {pb.deltap}D'  "
          f"slope {pb.slope()}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
