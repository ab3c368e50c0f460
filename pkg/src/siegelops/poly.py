"""Sparse multivariate polynomials over Q or Q(a), and determinant expansions.

Variables (VarId, a plain tuple):

  ("t", h)        auxiliary expansion variable t_h,        1 <= h <= g
  ("r", h, i, j)  entry (i,j) of the symmetric matrix R_h,  stored with i <= j
  ("x", i, nu)    entry of the concatenated rectangular matrix X = (X_1..X_g)

A monomial is a tuple of (VarId, exponent) pairs sorted by the global
variable order (t's first, then matrix entries by (h,i,j), then x-entries);
a polynomial is a dict mapping monomials to nonzero coefficients, plus a
coefficient-field tag ("Q" for Fraction coefficients, "Qa" for RatFunc).

The central objects built here are the coefficients of

    det(t_1 R_1 + ... + t_g R_g) = sum over n of  B(n) * t^n,

with n running over nonnegative integer vectors summing to g, together with
the same expansion for first minors.  Leibniz expansion over permutations is
used throughout: for g <= 6 the permutation count stays at most 720, so no
elimination strategy is needed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .scalars import RatFunc, frac_to_text, scalar_from_text, scalar_to_text

VarId = tuple
Mono = tuple  # tuple of (VarId, exponent) pairs, sorted by _var_key

_KIND_ORDER = {"t": 0, "r": 1, "x": 2}


def _var_key(v: VarId):
    return (_KIND_ORDER[v[0]],) + v[1:]


def t_var(h: int) -> VarId:
    return ("t", h)


def r_var(h: int, i: int, j: int) -> VarId:
    if i > j:
        i, j = j, i
    return ("r", h, i, j)


def x_var(i: int, nu: int) -> VarId:
    return ("x", i, nu)


def _mono_from_pairs(pairs) -> Mono:
    """Collect (var, exp) pairs (possibly repeated vars) into a canonical monomial."""
    acc: dict[VarId, int] = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e != 0),
                        key=lambda p: _var_key(p[0])))


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    return _mono_from_pairs(list(m1) + list(m2))


class FieldMismatch(ValueError):
    pass


class MultiPoly:
    """Sparse exact multivariate polynomial; immutable by convention."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: dict | None = None, field: str = "Q"):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.field = field

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: str = "Q") -> "MultiPoly":
        return cls({}, field)

    @classmethod
    def const(cls, c, field: str = "Q") -> "MultiPoly":
        if not isinstance(c, RatFunc):
            c = Fraction(c)
        return cls({(): c} if c else {}, field)

    @classmethod
    def var(cls, v: VarId, field: str = "Q") -> "MultiPoly":
        one = RatFunc(1) if field == "Qa" else Fraction(1)
        return cls({((v, 1),): one}, field)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check_field(self, other: "MultiPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"field tags differ: {self.field} vs {other.field}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_field(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return MultiPoly(out, self.field)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_field(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                s = c if s is None else s + c
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return MultiPoly(out, self.field)

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "MultiPoly":
        """Multiply by a scalar; promotes the field tag when c is a RatFunc."""
        field = self.field
        if isinstance(c, RatFunc):
            field = "Qa"
        if not c:
            return MultiPoly.zero(field)
        return MultiPoly({m: c * cm for m, cm in self.terms.items()}, field)

    def promote(self) -> "MultiPoly":
        """View a Q-polynomial as a Q(a)-polynomial."""
        if self.field == "Qa":
            return self
        return MultiPoly({m: RatFunc(c) for m, c in self.terms.items()}, "Qa")

    # -- calculus and substitution ----------------------------------------

    def diff_sym(self, h: int, i: int, j: int) -> "MultiPoly":
        """Symmetrized partial derivative ((1+delta_ij)/2) d/dr_{h;ij}."""
        v = r_var(h, i, j)
        half = Fraction(1, 2) if i != j else Fraction(1)
        out: dict = {}
        for m, c in self.terms.items():
            for idx, (vm, e) in enumerate(m):
                if vm == v:
                    rest = m[:idx] + ((vm, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
                    cc = c * (e * half)
                    s = out.get(rest)
                    s = cc if s is None else s + cc
                    if s:
                        out[rest] = s
                    elif rest in out:
                        del out[rest]
                    break
        return MultiPoly(out, self.field)

    def diff_plain(self, v: VarId) -> "MultiPoly":
        """Plain partial derivative d/dv (no symmetrization; used for x-vars)."""
        out: dict = {}
        for m, c in self.terms.items():
            for idx, (vm, e) in enumerate(m):
                if vm == v:
                    rest = m[:idx] + ((vm, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
                    cc = c * e
                    s = out.get(rest)
                    s = cc if s is None else s + cc
                    if s:
                        out[rest] = s
                    elif rest in out:
                        del out[rest]
                    break
        return MultiPoly(out, self.field)

    def mul_var(self, v: VarId, e: int = 1) -> "MultiPoly":
        return MultiPoly({_mono_mul(m, ((v, e),)): c for m, c in self.terms.items()},
                         self.field)

    def substitute(self, mapping: dict) -> "MultiPoly":
        """Substitute some variables by polynomials (others are kept)."""
        out = MultiPoly.zero(self.field)
        for m, c in self.terms.items():
            term = MultiPoly.const(c, self.field)
            for v, e in m:
                if v in mapping:
                    repl = mapping[v]
                    for _ in range(e):
                        term = term * repl
                else:
                    term = term.mul_var(v, e)
            out = out + term
        return out

    def vars_used(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def t_coefficient(self, n: tuple) -> "MultiPoly":
        """Coefficient of t^n (the t-variables are removed from the result)."""
        g = len(n)
        out: dict = {}
        for m, c in self.terms.items():
            texp = [0] * g
            rest = []
            for v, e in m:
                if v[0] == "t":
                    texp[v[1] - 1] = e
                else:
                    rest.append((v, e))
            if tuple(texp) == tuple(n):
                out[tuple(rest)] = c
        return MultiPoly(out, self.field)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def __repr__(self):
        return f"MultiPoly({len(self.terms)} terms, field={self.field})"


# -- multi-indices ----------------------------------------------------------

def multi_indices(g: int, total: int) -> list[tuple]:
    """All nonnegative integer g-vectors with the given coordinate sum."""
    if g == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in multi_indices(g - 1, total - first):
            out.append((first,) + rest)
    return out


def index_set_N(g: int) -> list[tuple]:
    """The index set for the degree-g determinant expansion (sum = g)."""
    return multi_indices(g, g)


def index_set_Nprime(g: int) -> list[tuple]:
    """The minor index set (sum = g - 1)."""
    return multi_indices(g, g - 1)


# -- determinant expansions --------------------------------------------------

@lru_cache(maxsize=None)
def det_expand(g: int) -> MultiPoly:
    """det(t_1 R_1 + ... + t_g R_g) as a polynomial in all t_h and r_{h;ij}.

    Homogeneous of degree g in the t's and of degree g in matrix entries.
    Expanded by Leibniz over permutations, with each matrix entry of the
    pencil distributed over its g summands t_h r_{h;i,sigma(i)}.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    out: dict = {}
    rows = range(1, g + 1)
    for sigma in itertools.permutations(rows):
        sign = _perm_sign(sigma)
        for hs in itertools.product(rows, repeat=g):
            pairs = [(t_var(h), 1) for h in hs]
            pairs += [(r_var(h, i, sigma[i - 1]), 1) for i, h in zip(rows, hs)]
            m = _mono_from_pairs(pairs)
            out[m] = out.get(m, 0) + sign
    return MultiPoly({m: Fraction(c) for m, c in out.items() if c}, "Q")


def _perm_sign(sigma: tuple) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def coeff_R(g: int, n: tuple) -> MultiPoly:
    """The basis polynomial B(n): coefficient of t^n in det(t_1 R_1 + ...)."""
    if len(n) != g or sum(n) != g or any(k < 0 for k in n):
        raise ValueError(f"multi-index {n} is not a composition of {g} into {g} parts")
    return det_expand(g).t_coefficient(n)


@lru_cache(maxsize=None)
def minor_det_expand(g: int, k: int, l: int) -> MultiPoly:
    """det of the pencil t_1 R_1 + ... with row k and column l deleted."""
    if not (1 <= k <= g and 1 <= l <= g):
        raise ValueError(f"minor indices ({k},{l}) out of range for g={g}")
    rows = [i for i in range(1, g + 1) if i != k]
    cols = [j for j in range(1, g + 1) if j != l]
    out: dict = {}
    for sigma in itertools.permutations(range(g - 1)):
        sign = _perm_sign(tuple(s + 1 for s in sigma))
        for hs in itertools.product(range(1, g + 1), repeat=g - 1):
            pairs = [(t_var(h), 1) for h in hs]
            pairs += [(r_var(h, rows[i], cols[sigma[i]]), 1) for i, h in enumerate(hs)]
            m = _mono_from_pairs(pairs)
            out[m] = out.get(m, 0) + sign
    return MultiPoly({m: Fraction(c) for m, c in out.items() if c}, "Q")


def minor_coeff_R(g: int, k: int, l: int, nprime: tuple) -> MultiPoly:
    """Coefficient of t^nprime in the (k,l) first-minor expansion."""
    if len(nprime) != g or sum(nprime) != g - 1 or any(v < 0 for v in nprime):
        raise ValueError(f"multi-index {nprime} is not a composition of {g-1} into {g} parts")
    return minor_det_expand(g, k, l).t_coefficient(nprime)


# -- POLY1 text format --------------------------------------------------------

def _var_to_text(v: VarId) -> str:
    if v[0] == "t":
        return f"t[{v[1]}]"
    if v[0] == "r":
        return f"r[{v[1]};{v[2]},{v[3]}]"
    return f"x[{v[1]},{v[2]}]"


def _var_from_text(s: str) -> VarId:
    kind, body = s[0], s[s.index("[") + 1:-1]
    if kind == "t":
        return t_var(int(body))
    if kind == "r":
        h, ij = body.split(";")
        i, j = ij.split(",")
        return r_var(int(h), int(i), int(j))
    i, nu = body.split(",")
    return x_var(int(i), int(nu))


def poly_to_text(p: MultiPoly) -> str:
    """POLY1: header line then one term per line, 'coeff | var^e var^e ...'."""
    lines = [f"POLY1 field={p.field} terms={len(p.terms)}"]
    for m in sorted(p.terms, key=lambda m: (sum(e for _, e in m),
                                            tuple((_var_key(v), e) for v, e in m))):
        vars_txt = " ".join(f"{_var_to_text(v)}^{e}" for v, e in m)
        lines.append(f"{scalar_to_text(p.terms[m])} | {vars_txt}")
    return "\n".join(lines) + "\n"


def poly_from_text(text: str) -> MultiPoly:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "POLY1":
        raise ValueError("not a POLY1 block")
    field = head[1].split("=")[1]
    terms: dict = {}
    for ln in lines[1:]:
        coeff_txt, _, vars_txt = ln.partition("|")
        pairs = []
        for tok in vars_txt.split():
            name, _, exp = tok.rpartition("^")
            pairs.append((_var_from_text(name), int(exp)))
        terms[_mono_from_pairs(pairs)] = scalar_from_text(coeff_txt.strip())
    return MultiPoly(terms, field)


def frac_text(q: Fraction) -> str:
    return frac_to_text(q)
