"""Exact divisor-class bookkeeping: classes a*lambda - b*delta and slopes.

All arithmetic is over exact rationals.  Class formulas that are computable
are computed; the handful of constants with no formula at this scale (the
genus-6 effective interval and the class of the weight-14 cusp form behind
it) are stored as cited constants with provenance strings and are never
recomputed.  Upper-bound and conjectural qualifiers are first-class data on
table entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = math.inf


@dataclass(frozen=True)
class DivClass:
    """A divisor class lam * lambda - delta * delta_boundary."""

    lam: Fraction
    delta: Fraction
    label: str = ""
    delta_lower_bound: bool = False  # the boundary coefficient is only a bound

    def __str__(self):
        return f"{_fmt(self.lam)}L - {_fmt(self.delta)}D"


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def make_class(lam, delta, label: str = "", delta_lower_bound: bool = False) -> DivClass:
    return DivClass(Fraction(lam), Fraction(delta), label, delta_lower_bound)


def slope(c: DivClass):
    """lam/delta exactly; forms that do not vanish on the boundary get inf."""
    if c.delta == 0:
        return INF
    return c.lam / c.delta


def class_tnull(g: int) -> DivClass:
    """Class of the theta-null product: 2^(g-2)(2^g+1) lambda - 2^(2g-5) delta.

    The formula is uniform; at g = 2 it produces the half-integral boundary
    coefficient 1/2 (the class is integral only after doubling there).
    """
    if g < 2:
        raise ValueError("theta-null classes start at genus 2")
    lam = Fraction(2) ** (g - 2) * (2 ** g + 1)
    delta = Fraction(2) ** (2 * g - 5)
    return DivClass(lam, delta, label=f"theta-null g={g}")


def class_N0prime(g: int) -> DivClass:
    """Class of the residual singular-theta-divisor component (genus >= 4)."""
    if g < 4:
        raise ValueError("the residual component is a divisor only for g >= 4")
    lam = Fraction(math.factorial(g) * (g + 3), 4) - Fraction(2) ** (g - 3) * (2 ** g + 1)
    delta = Fraction(math.factorial(g + 1), 24) - Fraction(2) ** (2 * g - 6)
    return DivClass(lam, delta, label=f"N0' g={g}")


def class_operator_output(g: int, c: DivClass) -> DivClass:
    """Class of the degree-g operator output: (g a + 2) lambda - (g b) delta.

    The boundary coefficient is a lower bound on the true vanishing order and
    the result is flagged accordingly.
    """
    return DivClass(g * c.lam + 2, g * c.delta,
                    label=f"operator output of ({c.label or c})",
                    delta_lower_bound=True)


def moving_bound(g: int, c: DivClass) -> Fraction:
    """Moving-slope upper bound a/b + 2/(b g) from a class a*lambda - b*delta."""
    if c.delta <= 0:
        raise ValueError("the bound needs a boundary-vanishing class")
    return c.lam / c.delta + Fraction(2) / (c.delta * g)


def hyperelliptic_bound(g: int) -> Fraction:
    """Slope threshold 8 + 4/g below which divisors contain the hyperelliptic locus."""
    if g < 3:
        raise ValueError("the hyperelliptic constraint needs genus >= 3")
    return Fraction(8) + Fraction(4, g)


@dataclass(frozen=True)
class CurveClass:
    """A divisor class on the one-node curve moduli space: lam1, delta'."""

    lam1: Fraction
    deltap: Fraction
    label: str = ""

    def slope(self):
        return INF if self.deltap == 0 else self.lam1 / self.deltap


def torelli_pullback(c: DivClass) -> CurveClass:
    """Pull back along the Jacobian map: coefficients relabel unchanged."""
    return CurveClass(c.lam, c.delta, label=f"pullback of ({c.label or c})")


# -- cited constants ------------------------------------------------------------

CITED_GENUS6_FORM_CLASS = DivClass(
    Fraction(14), Fraction(2),
    label="cited: weight-14 lattice-theta cusp form on genus 6, class 14L-2D")

CITED_GENUS6_EFF_LOWER = Fraction(53, 10)  # cited lower bound for s_Eff, genus 6
CITED_GENUS1_EFF = Fraction(12)  # the discriminant cusp form, class 12L-D


# -- the known-slopes table -------------------------------------------------------


@dataclass(frozen=True)
class SlopeEntry:
    """One table cell: an exact value, an upper bound, or an interval."""

    value: Fraction | None = None
    interval: tuple | None = None
    qualifier: str = ""  # "", "upper-bound", "conjectural-upper"
    source: str = ""

    def render(self) -> str:
        if self.value is None and self.interval is None:
            return ""
        if self.interval is not None:
            body = f"[{_fmt(self.interval[0])}, {_fmt(self.interval[1])}]"
        else:
            body = _fmt(self.value)
        if self.qualifier == "upper-bound":
            return f"<= {body}"
        if self.qualifier == "conjectural-upper":
            return f"(?) <= {body}"
        return body


@dataclass(frozen=True)
class TableRow:
    genus: int
    eff: SlopeEntry
    mov: SlopeEntry


def known_slopes_table() -> list[TableRow]:
    """Effective/moving slope table for genus 1..6, cross-computed where possible."""
    rows = []
    rows.append(TableRow(1, SlopeEntry(CITED_GENUS1_EFF, source="cited"),
                         SlopeEntry()))
    t2 = class_tnull(2)
    rows.append(TableRow(
        2,
        SlopeEntry(slope(t2), source="computed: theta-null class"),
        SlopeEntry(slope(class_operator_output(2, t2)),
                   source="computed: operator output on the theta-null class")))
    t3 = class_tnull(3)
    rows.append(TableRow(
        3,
        SlopeEntry(slope(t3), source="computed: theta-null class"),
        SlopeEntry(moving_bound(3, t3),
                   source="computed: operator bound on the theta-null class")))
    i4 = class_N0prime(4)
    rows.append(TableRow(
        4,
        SlopeEntry(slope(i4), source="computed: residual singular-theta class"),
        SlopeEntry(moving_bound(4, i4), source="computed: operator bound")))
    i5 = class_N0prime(5)
    rows.append(TableRow(
        5,
        SlopeEntry(slope(i5), source="computed: residual singular-theta class"),
        SlopeEntry(moving_bound(5, i5), qualifier="upper-bound",
                   source="computed: operator bound")))
    c6 = CITED_GENUS6_FORM_CLASS
    rows.append(TableRow(
        6,
        SlopeEntry(interval=(CITED_GENUS6_EFF_LOWER, slope(c6)),
                   source="cited interval; upper endpoint from the weight-14 class"),
        SlopeEntry(moving_bound(6, c6), qualifier="conjectural-upper",
                   source="computed bound, conditional on the cited class")))
    return rows


def render_table(rows: list[TableRow] | None = None) -> str:
    rows = rows or known_slopes_table()
    lines = ["genus | s_eff        | s_mov",
             "------+--------------+--------------"]
    for r in rows:
        lines.append(f"{r.genus:>5} | {r.eff.render():<12} | {r.mov.render()}")
    return "\n".join(lines) + "\n"
