"""Exact univariate polynomials and the transversal-sum polynomials.

The weighted transition polynomial of a multimatroid sums, over all
transversals, the product of the element weights times y raised to the
transversal's nullity.  The interlace, global interlace and bracket
polynomials of a graph are subset sums of shifted powers over GF(2)
nullities and are expanded to the standard y basis immediately.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .bounds import (ORDER_GENERAL, VERTEX_GLOBAL_INTERLACE, VERTEX_INTERLACE,
                     check_order, check_size)
from .errors import (Degenerate, IncompleteWeights, MalformedInput,
                     NotSubtransversal)
from .matroids import Matroid
from .multimatroids import Element, Multimatroid, as_subtransversal, dual_pair


class Polynomial:
    """Dense univariate polynomial in y with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        return Polynomial(a * c for a in self.coeffs)

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*y^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"


def shifted_power_sum(counts: Mapping[int, object], shift: int) -> Polynomial:
    """Expand a sum of c_n * (y + shift)^n into the standard basis."""
    if not counts:
        return Polynomial.zero()
    top = max(counts)
    base = Polynomial((shift, 1))
    power = Polynomial.one()
    total = Polynomial.zero()
    for n in range(top + 1):
        c = counts.get(n, 0)
        if c:
            total = total + power.scale(c)
        if n < top:
            power = power * base
    return total


# -- transition polynomials ---------------------------------------------------


def q1(z: Multimatroid, order_bound: int = ORDER_GENERAL) -> Polynomial:
    """Transversal nullity generating polynomial (all weights one);
    integer coefficients, nonnegative, summing to the transversal count."""
    check_order(z.order, order_bound, "q1")
    counts: dict[int, int] = {}
    for t in z.carrier.transversals():
        n = len(t) - z._rank(frozenset(t))
        counts[n] = counts.get(n, 0) + 1
    out = [0] * (max(counts) + 1 if counts else 1)
    if not counts:
        out = [1]  # the empty multimatroid has the empty transversal
    for n, c in counts.items():
        out[n] = c
    return Polynomial(out)


def q1_avoiding(z: Multimatroid, banned: Iterable[Element],
                order_bound: int = ORDER_GENERAL) -> Polynomial:
    """q1 of the deletion of the banned elements, computed in place over the
    transversals that avoid them."""
    check_order(z.order, order_bound, "q1_avoiding")
    bans = frozenset(banned)
    counts: dict[int, int] = {}
    for t in z.carrier.transversals():
        if not bans.isdisjoint(t):
            continue
        n = len(t) - z._rank(frozenset(t))
        counts[n] = counts.get(n, 0) + 1
    out = [0] * (max(counts) + 1) if counts else []
    for n, c in counts.items():
        out[n] = c
    return Polynomial(out)


def transition(z: Multimatroid, weights: Mapping[Element, object],
               order_bound: int = ORDER_GENERAL) -> Polynomial:
    """Weighted transition polynomial with exact rational weights."""
    check_order(z.order, order_bound, "transition")
    for e in z.carrier.elements():
        if e not in weights:
            raise IncompleteWeights(f"missing weight for {e}")
    coeffs: list = [0] * (z.order + 1)
    for t in z.carrier.transversals():
        w = Fraction(1)
        for u in t:
            w *= weights[u]
        if w:
            coeffs[len(t) - z._rank(frozenset(t))] += w
    return Polynomial(coeffs)


def q1_expansion(z: Multimatroid, t: Iterable[Element], direction: str,
                 order_bound: int = ORDER_GENERAL) -> Polynomial:
    """Subset expansions of the transversal-sum polynomial over one
    transversal.

    direction "minus" evaluates the signed expansion equal to q1 of the
    deletion of t; direction "plus" evaluates the unsigned expansion equal
    to q1 of z itself.
    """
    check_order(z.order, order_bound, "q1_expansion")
    if not z.is_nondegenerate():
        raise Degenerate("expansion needs a nondegenerate multimatroid")
    tt = as_subtransversal(z.carrier, t)
    if len(tt) != z.order:
        raise NotSubtransversal("expansion needs a full transversal")
    total = Polynomial.zero()
    for size in range(len(tt) + 1):
        for sub in combinations(tt, size):
            f = frozenset(sub)
            nf = len(f) - z._rank(f)
            zf = z.minor(f)
            if direction == "minus":
                term = q1(zf).scale((-1) ** size)
            elif direction == "plus":
                emap = z.minor_class_map(f)
                inv = {c: i for i, c in enumerate(emap)}
                rest = [(inv[c], s) for (c, s) in tt if c in inv]
                term = q1(zf.delete(rest))
            else:
                raise MalformedInput(f"unknown direction {direction!r}")
            total = total + Polynomial.monomial(nf) * term
    return total


def tutte_diagonal(m: Matroid, x, order_bound: int = 10):
    """Diagonal Tutte value computed through the paired 2-matroid."""
    check_size(m.size, order_bound, "tutte_diagonal")
    z = dual_pair(m)
    return q1(z)(Fraction(x) - 1)


# -- graph polynomials ----------------------------------------------------------


def interlace(g, bound: int = VERTEX_INTERLACE) -> Polynomial:
    """Induced-subgraph nullity polynomial in (y - 1)."""
    check_size(g.n, bound, "interlace")
    counts: dict[int, int] = {}
    for xmask in range(1 << g.n):
        n = g.nullity_mask(xmask)
        counts[n] = counts.get(n, 0) + 1
    return shifted_power_sum(counts, -1)


def global_interlace(g, bound: int = VERTEX_GLOBAL_INTERLACE) -> Polynomial:
    """Loop-toggled induced-subgraph nullity polynomial in (y - 2)."""
    check_size(g.n, bound, "global_interlace")
    counts: dict[int, int] = {}
    for xmask in range(1 << g.n):
        toggle = xmask
        while True:
            n = g.nullity_mask(xmask, toggle)
            counts[n] = counts.get(n, 0) + 1
            if toggle == 0:
                break
            toggle = (toggle - 1) & xmask
    return shifted_power_sum(counts, -2)


def bracket(g, bound: int = VERTEX_INTERLACE) -> Polynomial:
    """Loop-toggle nullity polynomial over the full vertex set."""
    check_size(g.n, bound, "bracket")
    counts: dict[int, int] = {}
    full = (1 << g.n) - 1
    for toggle in range(1 << g.n):
        n = g.nullity_mask(full, toggle)
        counts[n] = counts.get(n, 0) + 1
    return shifted_power_sum(counts, 0)
