#!/usr/bin/env python3
"""Pluriharmonicity sweep: coefficient identity, symbolic verifier, oracle.

Runs the combinatorial coefficient condition for genus 2..6, the symbolic
second-order verifier for genus 2..4 (all weights at once) and genus 5 at two
numeric weights, and the brute-force matrix-space oracle for the small
genus-2 weights.  Prints timing per stage; exits nonzero on any failure.
"""

import time
from fractions import Fraction

from siegelops.opgen import (build_Q, symbolic_weight, verify_harmonic_condition,
                             verify_pluriharmonic, xspace_oracle)


def stage(name, fn):
    t0 = time.time()
    ok = fn()
    print(f"{'PASS' if ok else 'FAIL'}  {name}  [{time.time() - t0:.2f}s]")
    return 0 if ok else 1


def main() -> int:
    failures = 0
    a = symbolic_weight()
    for g in range(2, 7):
        failures += stage(f"coefficient condition, genus {g} (symbolic)",
                          lambda g=g: verify_harmonic_condition(g, a))
    for g in (2, 3, 4):
        failures += stage(f"second-order verifier, genus {g} (symbolic)",
                          lambda g=g: verify_pluriharmonic(build_Q(g, a)))
    for w in (3, 108):
        failures += stage(f"second-order verifier, genus 5, weight {w}",
                          lambda w=w: verify_pluriharmonic(build_Q(5, Fraction(w))))
    for w in (1, 2):
        failures += stage(f"matrix-space oracle, genus 2, weight {w}",
                          lambda w=w: xspace_oracle(2, 2 * w,
                                                    build_Q(2, Fraction(w)).Q).is_zero())
    failures += stage("mis-normalized control fails (factor 1)",
                      lambda: not verify_pluriharmonic(build_Q(2, a),
                                                       second_order_factor=1))
    print(f"{failures} failure(s)")
    return failures


if __name__ == "__main__":
    raise SystemExit(main())
