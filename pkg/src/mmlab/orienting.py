"""Orienting transversals and the evaluation suite.

A transversal is orienting when deleting it leaves a tight multimatroid.
Brute-force enumeration is the semantic ground truth; the coset construction
over one seed transversal is the accelerated route, and the two must agree
set for set.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .bounds import ORDER_EVALS, ORDER_ORT, check_order
from .errors import (Degenerate, NotBinaryTight3, NotOrienting, NotTight)
from .multimatroids import (Element, Multimatroid, as_subtransversal,
                            cycle_space_avoiding, is_multimatroid, is_tight,
                            sum_subtransversals, tight_quick)

_WEIGHT_SEED = 20260809


def orienting_transversals(z: Multimatroid, order_bound: int = ORDER_ORT,
                           threads: int = 1) -> list[tuple[Element, ...]]:
    """All transversals whose deletion is tight, in canonical order."""
    if not z.is_nondegenerate():
        raise Degenerate("orienting transversals need a nondegenerate multimatroid")
    check_order(z.order, order_bound, "orienting_transversals")
    ts = list(z.carrier.transversals())

    def orienting(t):
        return tight_quick(z.delete(t))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(orienting, ts))
    else:
        flags = [orienting(t) for t in ts]
    return [t for t, ok in zip(ts, flags) if ok]


def disjoint_orienting(z: Multimatroid, t: Iterable[Element],
                       order_bound: int = ORDER_ORT) -> list[tuple[Element, ...]]:
    """Orienting transversals avoiding the given transversal."""
    tt = set(as_subtransversal(z.carrier, t))
    return [y for y in orienting_transversals(z, order_bound)
            if tt.isdisjoint(y)]


def is_orienting(z: Multimatroid, t: Iterable[Element]) -> bool:
    """Circuit-intersection test on a tight nondegenerate multimatroid: a
    transversal is orienting iff it never meets a circuit in exactly one
    element."""
    if not z.is_nondegenerate():
        raise Degenerate("is_orienting needs a nondegenerate multimatroid")
    if not tight_quick(z):
        raise NotTight("is_orienting needs a tight multimatroid")
    tt = set(as_subtransversal(z.carrier, t))
    return all(len(tt & c) != 1 for c in z.circuits())


def orienting_from_seed(z: Multimatroid, seed: Iterable[Element],
                        order_bound: int = ORDER_ORT) -> list[tuple[Element, ...]]:
    """Coset route: seed plus each cycle of the deletion of the seed, under
    the triple-carrier sum."""
    check_order(z.order, order_bound, "orienting_from_seed")
    t0 = as_subtransversal(z.carrier, seed)
    if len(t0) != z.order:
        raise NotOrienting("seed must be a transversal")
    if not tight_quick(z.delete(t0)):
        raise NotOrienting("seed transversal is not orienting")
    cs = cycle_space_avoiding(z, t0, order_bound)
    return sorted(sum_subtransversals(z.carrier, t0, c) for c in cs)


# -- evaluation suite ------------------------------------------------------------


@dataclass
class EvalIdentity:
    name: str
    lhs: Fraction
    rhs: Fraction
    passed: bool
    odd_factor: int | None = None


@dataclass
class EvalReport:
    order: int
    transversal: tuple
    ort_count: int
    identities: list[EvalIdentity] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.identities)

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction) and x.denominator == 1:
                return str(x.numerator)
            return str(x)

        out = {
            "order": self.order,
            "transversal": [f"{c + 1}{'abcd'[s]}" for c, s in self.transversal],
            "ort_count": self.ort_count,
            "pass": self.passed,
            "identities": [],
        }
        for i in self.identities:
            rec = {"name": i.name, "lhs": num(i.lhs), "rhs": num(i.rhs),
                   "pass": i.passed}
            if i.odd_factor is not None:
                rec["odd_factor"] = str(i.odd_factor)
            out["identities"].append(rec)
        return out


def _validate_binary_tight3(z: Multimatroid) -> None:
    if not z.carrier.is_uniform(3):
        raise NotBinaryTight3("carrier must have class size 3 throughout")
    ok, _ = is_multimatroid(z)
    if not ok:
        raise NotBinaryTight3("not a multimatroid")
    ok, _ = is_tight(z)
    if not ok:
        raise NotBinaryTight3("not tight")
    circuits = z.circuits()
    for c1, c2 in combinations(circuits, 2):
        if len(z.carrier.classes_with_pair(c1 | c2)) % 2:
            raise NotBinaryTight3("circuit union with an odd number of skew pairs")


def _transition_eval(z: Multimatroid, weights, y: Fraction,
                     banned: frozenset = frozenset()) -> Fraction:
    total = Fraction(0)
    for t in z.carrier.transversals():
        if banned and not banned.isdisjoint(t):
            continue
        w = Fraction(1)
        for u in t:
            w *= weights[u]
            if not w:
                break
        if w:
            total += w * y ** (len(t) - z._rank(frozenset(t)))
    return total


def _q1_eval(z: Multimatroid, y, banned: frozenset = frozenset()) -> Fraction:
    total = Fraction(0)
    for t in z.carrier.transversals():
        if banned and not banned.isdisjoint(t):
            continue
        total += Fraction(y) ** (len(t) - z._rank(frozenset(t)))
    return total


def evaluation_suite(z: Multimatroid, t: Iterable[Element],
                     order_bound: int = ORDER_EVALS,
                     rng_seed: int = _WEIGHT_SEED) -> EvalReport:
    """Exact cross-checks of the transversal-sum evaluations against the
    orienting-transversal side, on a validated binary tight 3-matroid."""
    check_order(z.order, order_bound, "evaluation_suite")
    _validate_binary_tight3(z)
    tt = as_subtransversal(z.carrier, t)
    if len(tt) != z.order:
        raise NotBinaryTight3("reference transversal must be total")

    ell = z.order
    ort_all = [frozenset(y) for y in orienting_transversals(z)]
    report = EvalReport(order=ell, transversal=tt, ort_count=len(ort_all))
    ids = report.identities

    rng = random.Random(rng_seed + 7 * ell)
    weights = {e: Fraction(rng.randint(1, 9), rng.randint(1, 4))
               for e in sorted(z.carrier.elements())}

    def class_sum(cls: int, excluded: frozenset) -> Fraction:
        return sum((weights[x] for x in z.carrier.skew_class(cls)
                    if x not in excluded), Fraction(0))

    # weighted power-of-two evaluations, one and two orienting layers deep
    for level in (1, 2):
        lhs = _transition_eval(z, weights, Fraction(2 ** level))
        rhs = Fraction(0)
        if level == 1:
            for y1 in ort_all:
                term = Fraction(1)
                for cls in range(ell):
                    term *= class_sum(cls, y1)
                rhs += term
        else:
            for y1 in ort_all:
                for y2 in ort_all:
                    merged = y1 | y2
                    term = Fraction(1)
                    for cls in range(ell):
                        term *= class_sum(cls, merged)
                    rhs += term
        ids.append(EvalIdentity(f"weighted_pow2_depth{level}", lhs, rhs,
                                lhs == rhs))

    # the depth-one evaluation, reformulated per orienting transversal
    lhs = _transition_eval(z, weights, Fraction(2))
    rhs = Fraction(0)
    for y1 in ort_all:
        term = Fraction(1)
        for (c, s) in y1:
            term *= class_sum(c, frozenset([(c, s)]))
        rhs += term
    ids.append(EvalIdentity("weighted_at_2_per_class", lhs, rhs, lhs == rhs))

    # unweighted evaluation at 2
    lhs = _q1_eval(z, 2)
    rhs = Fraction(len(ort_all) * 2 ** ell)
    ids.append(EvalIdentity("q1_at_2", lhs, rhs, lhs == rhs))

    # deleted evaluation at 2 against intersection sizes
    tset = frozenset(tt)
    lhs_del2 = _q1_eval(z, 2, banned=tset)
    rhs = sum((Fraction(2 ** len(y & tset)) for y in ort_all), Fraction(0))
    ids.append(EvalIdentity("q1_deleted_at_2_vs_meets", lhs_del2, rhs,
                            lhs_del2 == rhs))

    # minor expansion of the same value, and the odd cofactor
    ort_minor_count: dict[frozenset, int] = {frozenset(): len(ort_all)}

    def ort_count_of_minor(f: frozenset) -> int:
        hit = ort_minor_count.get(f)
        if hit is None:
            hit = len(orienting_transversals(z.minor(f)))
            ort_minor_count[f] = hit
        return hit

    rank_t = z._rank(tset)
    rhs5 = Fraction(0)
    k = 0
    for size in range(ell + 1):
        for sub in combinations(tt, size):
            f = frozenset(sub)
            cnt = ort_count_of_minor(f)
            rf = z._rank(f)
            rhs5 += Fraction((-1) ** size * cnt * 2 ** (ell - rf))
            k += (-1) ** size * cnt * 2 ** (rank_t - rf)
    ids.append(EvalIdentity("q1_deleted_at_2_minor_expansion", lhs_del2, rhs5,
                            lhs_del2 == rhs5))

    n_t = ell - rank_t
    lhs_delm2 = _q1_eval(z, -2, banned=tset)
    ids.append(EvalIdentity("odd_cofactor_times_2pow", lhs_del2,
                            Fraction(k * 2 ** n_t),
                            lhs_del2 == k * 2 ** n_t and k % 2 == 1,
                            odd_factor=k))
    ids.append(EvalIdentity("odd_cofactor_times_abs_at_minus2", lhs_del2,
                            Fraction(k * abs(lhs_delm2)),
                            lhs_del2 == k * abs(lhs_delm2) and k % 2 == 1,
                            odd_factor=k))

    # residue of the deleted sum at -2
    rhs_res = Fraction((-1) ** ell * (-2) ** n_t)
    ids.append(EvalIdentity("deleted_residue_at_minus2", lhs_delm2, rhs_res,
                            lhs_delm2 == rhs_res))

    # evaluation at 4 against pairwise intersections
    lhs = _q1_eval(z, 4)
    rhs = sum((Fraction(2 ** len(y1 & y2)) for y1 in ort_all for y2 in ort_all),
              Fraction(0))
    ids.append(EvalIdentity("q1_at_4_pairwise", lhs, rhs, lhs == rhs))

    # signed evaluation at -4 against orienting nullities
    lhs = _q1_eval(z, -4)
    rhs = Fraction((-1) ** ell) * sum(
        (Fraction((-2) ** (ell - z._rank(y))) for y in ort_all), Fraction(0))
    ids.append(EvalIdentity("q1_at_minus4_signed", lhs, rhs, lhs == rhs))

    # halving decomposition at five random even integers
    for _ in range(5):
        y = Fraction(2 * rng.randint(-12, 12))
        lhs = _transition_eval(z, weights, y)
        rhs = sum((_transition_eval(z, weights, y / 2, banned=y1)
                   for y1 in ort_all), Fraction(0))
        ids.append(EvalIdentity(f"halving_at_{y.numerator}", lhs, rhs, lhs == rhs))

    return report
