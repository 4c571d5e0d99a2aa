"""Carriers, subtransversals and multimatroids.

Elements are (class_index, slot) pairs, canonically ordered lexicographically.
A multimatroid is a carrier plus one of two realizations: sheltered by an
ordinary matroid whose ground set is exactly the element set, or an explicit
family of circuit subtransversals.  Every algorithm goes through the single
rank oracle, so the two realizations are interchangeable.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from . import fields
from .bounds import MAX_CLASS_SIZE, ORDER_GENERAL, ORDER_ISO, check_order
from .errors import (GroundMismatch, InternalInconsistency, MalformedInput,
                     NotSubtransversal, NotTriple, TooLarge, UnknownElement)
from .matroids import Matroid

Element = tuple[int, int]

_SLOT_LETTERS = "abcd"


def element_label(e: Element) -> str:
    """Human-facing element label: 1-based class plus slot letter."""
    return f"{e[0] + 1}{_SLOT_LETTERS[e[1]]}"


def parse_element_label(text: str) -> Element:
    text = text.strip()
    if len(text) < 2 or text[-1] not in _SLOT_LETTERS or not text[:-1].isdigit():
        raise MalformedInput(f"bad element label {text!r}")
    return int(text[:-1]) - 1, _SLOT_LETTERS.index(text[-1])


class Carrier:
    """A partition of a finite ground set into skew classes."""

    __slots__ = ("class_sizes",)

    def __init__(self, class_sizes: Sequence[int]):
        sizes = tuple(class_sizes)
        if any(k < 1 for k in sizes):
            raise MalformedInput("class sizes must be positive")
        self.class_sizes = sizes

    @classmethod
    def uniform(cls, order: int, k: int) -> "Carrier":
        return cls((k,) * order)

    @property
    def order(self) -> int:
        return len(self.class_sizes)

    @property
    def ground_size(self) -> int:
        return sum(self.class_sizes)

    def is_nondegenerate(self) -> bool:
        return all(k >= 2 for k in self.class_sizes)

    def is_uniform(self, k: int) -> bool:
        return all(s == k for s in self.class_sizes)

    def elements(self) -> list[Element]:
        return [(c, s) for c, k in enumerate(self.class_sizes) for s in range(k)]

    def skew_class(self, c: int) -> tuple[Element, ...]:
        return tuple((c, s) for s in range(self.class_sizes[c]))

    def contains(self, e: Element) -> bool:
        return 0 <= e[0] < self.order and 0 <= e[1] < self.class_sizes[e[0]]

    def transversal_count(self) -> int:
        n = 1
        for k in self.class_sizes:
            n *= k
        return n

    def transversals(self) -> Iterator[tuple[Element, ...]]:
        """All transversals in canonical (lexicographic slot) order."""
        ranges = [range(k) for k in self.class_sizes]
        for slots in product(*ranges):
            yield tuple((c, s) for c, s in enumerate(slots))

    def subtransversals(self) -> Iterator[tuple[Element, ...]]:
        """All subtransversals; per class either absent or one slot."""
        ranges = [range(-1, k) for k in self.class_sizes]
        for slots in product(*ranges):
            yield tuple((c, s) for c, s in enumerate(slots) if s >= 0)

    def near_transversals(self) -> Iterator[tuple[tuple[Element, ...], int]]:
        """Pairs (S, missing_class) with S touching every class but one."""
        for miss in range(self.order):
            others = [c for c in range(self.order) if c != miss]
            for slots in product(*[range(self.class_sizes[c]) for c in others]):
                yield tuple((c, s) for c, s in zip(others, slots)), miss

    def classes_with_pair(self, w: Iterable[Element]) -> frozenset:
        """Classes containing at least two elements of w."""
        counts: dict[int, int] = {}
        for c, _ in set(w):
            counts[c] = counts.get(c, 0) + 1
        return frozenset(c for c, n in counts.items() if n >= 2)

    def __eq__(self, other) -> bool:
        return isinstance(other, Carrier) and self.class_sizes == other.class_sizes

    def __hash__(self) -> int:
        return hash(self.class_sizes)

    def __repr__(self) -> str:
        return f"Carrier({list(self.class_sizes)})"


def as_subtransversal(carrier: Carrier, elems: Iterable[Element]) -> tuple[Element, ...]:
    """Normalize to a sorted element tuple; reject repeated skew classes."""
    es = sorted(set(elems))
    seen = set()
    for e in es:
        if not isinstance(e, tuple) or len(e) != 2 or not carrier.contains(e):
            raise UnknownElement(f"{e!r} is not a carrier element")
        if e[0] in seen:
            raise NotSubtransversal(f"two elements in skew class {e[0]}")
        seen.add(e[0])
    return tuple(es)


def sum_subtransversals(carrier: Carrier, x: Iterable[Element],
                        y: Iterable[Element]) -> tuple[Element, ...]:
    """Triple-carrier sum: symmetric difference, then flip the doubly-hit
    classes to their third slot."""
    if not carrier.is_uniform(3):
        raise NotTriple("sum needs class size 3 everywhere")
    xs = set(as_subtransversal(carrier, x))
    ys = set(as_subtransversal(carrier, y))
    diff = xs ^ ys
    doubled = carrier.classes_with_pair(diff)
    flipped = set(diff)
    for c in doubled:
        slots = {s for cc, s in diff if cc == c}
        flipped -= {(c, s) for s in slots}
        flipped.add((c, ({0, 1, 2} - slots).pop()))
    return as_subtransversal(carrier, flipped)


class Multimatroid:
    """A carrier plus a rank oracle, realized as sheltered or circuit-list."""

    __slots__ = ("carrier", "_matroid", "_circuits", "_rank_cache",
                 "_colvec", "_field")

    def __init__(self, carrier: Carrier, matroid: Matroid | None = None,
                 circuits: Iterable[frozenset] | None = None, validate: bool = True):
        self.carrier = carrier
        self._matroid = matroid
        self._circuits = None
        self._rank_cache: dict[frozenset, int] = {}
        self._colvec = None
        self._field = None
        if (matroid is None) == (circuits is None):
            raise MalformedInput("exactly one of matroid/circuits required")
        if matroid is not None:
            if set(matroid.ground) != set(carrier.elements()):
                raise GroundMismatch("sheltering matroid must be grounded on the carrier")
            if matroid.is_represented:
                packed = matroid.matrix.columns_packed()
                self._colvec = {e: packed[i] for i, e in enumerate(matroid.ground)}
                self._field = matroid.matrix.field
        else:
            fam = tuple(sorted({frozenset(c) for c in circuits}, key=sorted))
            for c in fam:
                if not c:
                    raise MalformedInput("empty circuit")
                as_subtransversal(carrier, c)
            self._circuits = fam
            if validate:
                self._validate_semi_axioms()

    def _validate_semi_axioms(self):
        """Per-transversal circuit axioms, via compatible pairs: antichain
        plus circuit elimination whenever two circuits fit one transversal."""
        fam = self._circuits
        for c1, c2 in combinations(fam, 2):
            if c1 <= c2 or c2 <= c1:
                raise MalformedInput("nested circuits")
        for c1, c2 in combinations(fam, 2):
            union = c1 | c2
            if self.carrier.classes_with_pair(union):
                continue  # not inside a common transversal
            for e in c1 & c2:
                if not any(c3 <= union - {e} for c3 in fam):
                    raise MalformedInput("circuit elimination fails within a transversal")

    # -- realization access --------------------------------------------------

    @property
    def kind(self) -> str:
        return "sheltered" if self._matroid is not None else "circuits"

    @property
    def sheltering_matroid(self) -> Matroid | None:
        return self._matroid

    @property
    def circuit_family(self) -> tuple[frozenset, ...] | None:
        return self._circuits

    @property
    def order(self) -> int:
        return self.carrier.order

    def is_nondegenerate(self) -> bool:
        return self.carrier.is_nondegenerate()

    # -- rank oracle ---------------------------------------------------------

    def rank(self, elems: Iterable[Element]) -> int:
        s = frozenset(as_subtransversal(self.carrier, elems))
        return self._rank(s)

    def _rank(self, s: frozenset) -> int:
        cached = self._rank_cache.get(s)
        if cached is not None:
            return cached
        if self._colvec is not None:
            cv = self._colvec
            r = fields.rank_of_vectors(self._field, (cv[e] for e in s))
        elif self._matroid is not None:
            r = self._matroid.rank_of(s)
        else:
            r = self._rank_circuits(s)
        self._rank_cache[s] = r
        return r

    def _rank_circuits(self, s: frozenset) -> int:
        inside = [c for c in self._circuits if c <= s]
        if not inside:
            return len(s)
        elems = sorted(s)
        for size in range(len(elems), -1, -1):
            for sub in combinations(elems, size):
                w = frozenset(sub)
                if not any(c <= w for c in inside):
                    return size
        return 0

    def nullity(self, elems: Iterable[Element]) -> int:
        s = frozenset(as_subtransversal(self.carrier, elems))
        return len(s) - self._rank(s)

    def is_independent(self, elems: Iterable[Element]) -> bool:
        return self.nullity(elems) == 0

    # -- enumeration ---------------------------------------------------------

    def _check_enum_bounds(self, order_bound: int, op: str) -> None:
        check_order(self.order, order_bound, op)
        if self.carrier.class_sizes and max(self.carrier.class_sizes) > MAX_CLASS_SIZE:
            raise TooLarge(f"{op}: class size exceeds {MAX_CLASS_SIZE}")

    def circuits(self, order_bound: int = ORDER_GENERAL) -> list[frozenset]:
        """All minimal dependent subtransversals, lexicographically sorted."""
        self._check_enum_bounds(order_bound, "circuits")
        if self._circuits is not None:
            return list(self._circuits)
        found: list[frozenset] = []
        for size in range(1, self.order + 1):
            for class_set in combinations(range(self.order), size):
                for slots in product(*[range(self.carrier.class_sizes[c])
                                       for c in class_set]):
                    s = frozenset(zip(class_set, slots))
                    if any(c <= s for c in found):
                        continue
                    if self._rank(s) < size:
                        found.append(s)
        return sorted(found, key=sorted)

    def bases(self, order_bound: int = ORDER_GENERAL) -> list[tuple[Element, ...]]:
        """All maximal independent subtransversals, canonically ordered."""
        self._check_enum_bounds(order_bound, "bases")
        out = []
        for s in self.carrier.subtransversals():
            fs = frozenset(s)
            if self._rank(fs) < len(fs):
                continue
            touched = {c for c, _ in s}
            maximal = True
            for c in range(self.order):
                if c in touched:
                    continue
                for x in self.carrier.skew_class(c):
                    if self._rank(fs | {x}) == len(fs) + 1:
                        maximal = False
                        break
                if not maximal:
                    break
            if maximal:
                out.append(s)
        if self.is_nondegenerate():
            for b in out:
                if len(b) != self.order or self._rank(frozenset(b)) != len(b):
                    raise InternalInconsistency("non-transversal basis in a "
                                                "nondegenerate multimatroid")
        return sorted(out)

    def basis_transversals(self) -> list[tuple[Element, ...]]:
        """Transversals of nullity zero."""
        return [t for t in self.carrier.transversals()
                if self._rank(frozenset(t)) == len(t)]

    # -- restriction, deletion, minors ---------------------------------------

    def _shrink(self, keep: frozenset) -> tuple[Carrier, dict[Element, Element]]:
        sizes = []
        emap: dict[Element, Element] = {}
        new_c = 0
        for c in range(self.order):
            slots = [s for s in range(self.carrier.class_sizes[c]) if (c, s) in keep]
            if not slots:
                continue
            for new_s, s in enumerate(slots):
                emap[(c, s)] = (new_c, new_s)
            sizes.append(len(slots))
            new_c += 1
        return Carrier(sizes), emap

    def restrict(self, keep_elems: Iterable[Element]) -> "Multimatroid":
        """Restriction to a subset of the ground set; classes shrink and may
        vanish."""
        keep = frozenset(keep_elems)
        for e in keep:
            if not self.carrier.contains(e):
                raise UnknownElement(f"{e!r} is not a carrier element")
        carrier, emap = self._shrink(keep)
        if self._matroid is not None:
            old = sorted(keep)
            if self._matroid.is_represented:
                idx = {e: i for i, e in enumerate(self._matroid.ground)}
                sub = self._matroid.matrix.select_columns([idx[e] for e in old])
                m = Matroid([emap[e] for e in old], matrix=sub)
            else:
                restr = self._matroid.minor(delete=set(self._matroid.ground) - keep)
                m = _relabel_matroid(restr, emap)
            return Multimatroid(carrier, matroid=m)
        circuits = [frozenset(emap[e] for e in c)
                    for c in self._circuits if c <= keep]
        return Multimatroid(carrier, circuits=circuits, validate=False)

    def delete(self, elems: Iterable[Element]) -> "Multimatroid":
        drop = set(elems)
        return self.restrict(set(self.carrier.elements()) - drop)

    def deletion_map(self, elems: Iterable[Element]) -> dict[Element, Element]:
        keep = frozenset(self.carrier.elements()) - set(elems)
        return self._shrink(keep)[1]

    def minor(self, x: Iterable[Element]) -> "Multimatroid":
        """Minor induced by a subtransversal: contract it and drop the
        touched classes entirely."""
        xs = frozenset(as_subtransversal(self.carrier, x))
        touched = {c for c, _ in xs}
        kept_classes = [c for c in range(self.order) if c not in touched]
        sizes = [self.carrier.class_sizes[c] for c in kept_classes]
        cmap = {c: i for i, c in enumerate(kept_classes)}
        carrier = Carrier(sizes)
        emap = {(c, s): (cmap[c], s) for c in kept_classes
                for s in range(self.carrier.class_sizes[c])}
        if self._matroid is not None:
            siblings = {(c, s) for c in touched
                        for s in range(self.carrier.class_sizes[c])} - xs
            contracted = self._matroid.minor(contract=xs, delete=siblings)
            return Multimatroid(carrier, matroid=_relabel_matroid(contracted, emap))
        base = self._rank(xs)
        found: list[frozenset] = []
        for size in range(1, carrier.order + 1):
            for class_set in combinations(kept_classes, size):
                for slots in product(*[range(self.carrier.class_sizes[c])
                                       for c in class_set]):
                    s = frozenset(zip(class_set, slots))
                    img = frozenset(emap[e] for e in s)
                    if any(c <= img for c in found):
                        continue
                    if self._rank(s | xs) - base < size:
                        found.append(img)
        return Multimatroid(carrier, circuits=found, validate=False)

    def minor_class_map(self, x: Iterable[Element]) -> list[int]:
        """Original indices of the classes surviving the minor by x."""
        xs = as_subtransversal(self.carrier, x)
        touched = {c for c, _ in xs}
        return [c for c in range(self.order) if c not in touched]

    def __repr__(self) -> str:
        return f"Multimatroid({self.carrier!r}, {self.kind})"


def _relabel_matroid(m: Matroid, emap: dict) -> Matroid:
    labels = [emap[e] for e in m.ground]
    if m.is_represented:
        return Matroid(labels, matrix=m.matrix)
    return Matroid(labels, circuits=[frozenset(emap[e] for e in c)
                                     for c in m.circuits()], validate=False)


# -- validators ---------------------------------------------------------------


def is_multimatroid(z: Multimatroid, cross_check: bool = True):
    """Check the defining exclusion (at most one element of a missing class
    may change the nullity of a near-transversal).

    Returns (True, None) or (False, (S, x1, x2)).  With cross_check, also
    verifies through order-one minors (at most one circuit) and insists the
    two routes agree.
    """
    check_order(z.order, ORDER_GENERAL, "is_multimatroid")
    verdict, witness = True, None
    for s, miss in z.carrier.near_transversals():
        fs = frozenset(s)
        base = z._rank(fs)
        flat = [x for x in z.carrier.skew_class(miss)
                if z._rank(fs | {x}) == base]
        if len(flat) >= 2:
            verdict, witness = False, (s, flat[0], flat[1])
            break
    if cross_check:
        alt = True
        for s, _miss in z.carrier.near_transversals():
            if len(z.minor(s).circuits()) > 1:
                alt = False
                break
        if alt != verdict:
            raise InternalInconsistency("multimatroid validators disagree")
    return verdict, witness


def is_tight(z: Multimatroid, cross_check: bool = True):
    """Check tightness: every near-transversal has exactly one element of its
    missing class that raises nullity.

    Returns (True, None) or (False, (S, missing_class)).  With cross_check,
    also verifies that every order-one minor has a circuit.  Degenerate
    multimatroids are allowed.
    """
    check_order(z.order, ORDER_GENERAL, "is_tight")
    verdict, witness = True, None
    for s, miss in z.carrier.near_transversals():
        fs = frozenset(s)
        base = z._rank(fs)
        raising = [x for x in z.carrier.skew_class(miss)
                   if z._rank(fs | {x}) == base]
        if len(raising) != 1:
            verdict, witness = False, (s, miss)
            break
    if cross_check:
        alt = True
        for s, _miss in z.carrier.near_transversals():
            if not z.minor(s).circuits():
                alt = False
                break
        if alt != verdict:
            raise InternalInconsistency("tightness validators disagree")
    return verdict, witness


def tight_quick(z: Multimatroid) -> bool:
    """Single-route tightness test for enumeration loops."""
    return is_tight(z, cross_check=False)[0]


# -- free sums and matroid pairs ----------------------------------------------


def free_sum(matroids: Sequence[Matroid], validate: bool = False) -> Multimatroid:
    """The semi-multimatroid sheltered by the direct sum of the relabeled
    matroids; slot i holds copy i of the common ground set."""
    if not matroids:
        raise GroundMismatch("free sum needs at least one matroid")
    common = matroids[0].ground
    for m in matroids[1:]:
        if set(m.ground) != set(common):
            raise GroundMismatch("matroids must share a ground set")
    k = len(matroids)
    order = len(common)
    carrier = Carrier.uniform(order, k)
    class_of = {e: c for c, e in enumerate(common)}
    if all(m.is_represented for m in matroids) and \
            len({m.matrix.field for m in matroids}) == 1:
        field = matroids[0].matrix.field
        total_rows = sum(m.matrix.rows for m in matroids)
        labels = [(c, s) for c in range(order) for s in range(k)]
        col_of = {e: j for j, e in enumerate(labels)}
        lo = [0] * total_rows
        hi = [0] * total_rows
        row0 = 0
        for i, m in enumerate(matroids):
            packed = m.matrix.columns_packed()
            for pos, e in enumerate(m.ground):
                j = col_of[(class_of[e], i)]
                clo, chi = packed[pos]
                for r in range(m.matrix.rows):
                    lo[row0 + r] |= ((clo >> r) & 1) << j
                    hi[row0 + r] |= ((chi >> r) & 1) << j
            row0 += m.matrix.rows
        mat = fields.GFMatrix(field, total_rows, len(labels), lo, hi)
        z = Multimatroid(carrier, matroid=Matroid(labels, matrix=mat))
    else:
        circuits = []
        for i, m in enumerate(matroids):
            for c in m.circuits():
                circuits.append(frozenset((class_of[e], i) for e in c))
        z = Multimatroid(carrier, circuits=circuits, validate=validate)
    return z


def dual_pair(m: Matroid) -> Multimatroid:
    """The tight 2-matroid of a matroid: free sum of its dual (slot 0) and
    itself (slot 1)."""
    if m.is_represented:
        m = m.standard_form()
    return free_sum([m.dual(), m])


def transversal_slot(z: Multimatroid, slot: int) -> tuple[Element, ...]:
    return tuple((c, slot) for c in range(z.order))


# -- cycle space ----------------------------------------------------------------


def _span_within(z: Multimatroid, t: tuple[Element, ...]) -> set[frozenset]:
    """Symmetric-difference span of the circuits inside one transversal."""
    circuits = []
    elems = sorted(t)
    for size in range(1, len(elems) + 1):
        for sub in combinations(elems, size):
            s = frozenset(sub)
            if any(c <= s for c in circuits):
                continue
            if z._rank(s) < size:
                circuits.append(s)
    space = {frozenset()}
    for c in circuits:
        if c not in space:
            space |= {s ^ c for s in space}
    return space


def cycle_space(z: Multimatroid, order_bound: int = 6) -> list[frozenset]:
    """Union over all transversals of the per-transversal cycle spaces."""
    check_order(z.order, order_bound, "cycle_space")
    out: set[frozenset] = set()
    for t in z.carrier.transversals():
        out |= _span_within(z, t)
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def cycle_space_avoiding(z: Multimatroid, avoid: Iterable[Element],
                         order_bound: int = 7) -> list[frozenset]:
    """Cycle space of the deletion of `avoid`, in the original labels."""
    check_order(z.order, order_bound, "cycle_space_avoiding")
    banned = set(avoid)
    out: set[frozenset] = set()
    for t in z.carrier.transversals():
        if banned.isdisjoint(t):
            out |= _span_within(z, t)
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def cycle_space_within(z: Multimatroid, t: Iterable[Element]) -> list[frozenset]:
    """Cycle space of the matroid obtained by restricting to one
    (sub)transversal."""
    tt = as_subtransversal(z.carrier, t)
    return sorted(_span_within(z, tt), key=lambda c: (len(c), sorted(c)))


# -- equality and isomorphism ----------------------------------------------------


def same_rank_oracle(z1: Multimatroid, z2: Multimatroid) -> bool:
    """Structural equality: same carrier and same rank on every
    subtransversal."""
    if z1.carrier != z2.carrier:
        return False
    for s in z1.carrier.subtransversals():
        fs = frozenset(s)
        if z1._rank(fs) != z2._rank(fs):
            return False
    return True


def isomorphic(z1: Multimatroid, z2: Multimatroid,
               order_bound: int = ORDER_ISO):
    """Search for an isomorphism (class permutation plus per-class slot
    bijections) carrying circuits onto circuits; returns the element map or
    None."""
    check_order(max(z1.order, z2.order), order_bound, "isomorphic")
    sizes = z1.carrier.class_sizes + z2.carrier.class_sizes
    if sizes and max(sizes) > 3:
        raise TooLarge("isomorphism search handles class sizes up to 3")
    if z1.order != z2.order:
        return None
    if sorted(z1.carrier.class_sizes) != sorted(z2.carrier.class_sizes):
        return None
    cs1, cs2 = z1.circuits(), z2.circuits()
    if len(cs1) != len(cs2):
        return None
    if sorted(map(len, cs1)) != sorted(map(len, cs2)):
        return None
    set2 = set(cs2)

    def elem_inv(z, circuits, e):
        return tuple(sorted(len(c) for c in circuits if e in c))

    def class_inv(z, circuits, c):
        return (z.carrier.class_sizes[c],
                tuple(sorted(elem_inv(z, circuits, (c, s))
                             for s in range(z.carrier.class_sizes[c]))))

    inv1 = [class_inv(z1, cs1, c) for c in range(z1.order)]
    inv2 = [class_inv(z2, cs2, c) for c in range(z2.order)]
    if sorted(inv1) != sorted(inv2):
        return None
    einv1 = {e: elem_inv(z1, cs1, e) for e in z1.carrier.elements()}
    einv2 = {e: elem_inv(z2, cs2, e) for e in z2.carrier.elements()}

    n = z1.order
    emap: dict[Element, Element] = {}
    used = [False] * n

    def compatible_so_far(done_classes: set) -> bool:
        for c in cs1:
            if all(e[0] in done_classes for e in c):
                img = frozenset(emap[e] for e in c)
                if img not in set2:
                    return False
        return True

    def assign(c1: int, done: set) -> bool:
        if c1 == n:
            return True
        k = z1.carrier.class_sizes[c1]
        for c2 in range(n):
            if used[c2] or inv2[c2] != inv1[c1]:
                continue
            for perm in _permutations(k):
                ok = True
                for s in range(k):
                    if einv1[(c1, s)] != einv2[(c2, perm[s])]:
                        ok = False
                        break
                if not ok:
                    continue
                for s in range(k):
                    emap[(c1, s)] = (c2, perm[s])
                used[c2] = True
                if compatible_so_far(done | {c1}) and assign(c1 + 1, done | {c1}):
                    return True
                used[c2] = False
                for s in range(k):
                    del emap[(c1, s)]
        return False

    if assign(0, set()):
        return dict(emap)
    return None


def _permutations(k: int):
    from itertools import permutations as _p
    return list(_p(range(k)))
