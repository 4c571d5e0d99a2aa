"""Ordinary matroids, by GF(2)/GF(4) representation or by explicit circuits.

Represented matroids answer rank queries through column rank of the backing
matrix; circuit-list matroids use brute-force independence checking, which is
fine because every circuit-list fixture here has at most 9 elements.
"""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Sequence

from . import fields
from .bounds import CYCLE_SPACE_COLS, MATROID_ENUM_BOUND, check_size
from .errors import (GroundMismatch, InternalInconsistency, LabelCollision,
                     MalformedInput, NotBinary, NotStandardForm,
                     OverlappingSets, UnknownElement)
from .fields import GFMatrix

Label = Hashable


class Matroid:
    """A matroid given either by a matrix representation or by its circuits."""

    __slots__ = ("ground", "_matrix", "_circuits", "_rank_cache", "_index")

    def __init__(self, ground: Sequence[Label], matrix: GFMatrix | None = None,
                 circuits: Iterable[frozenset] | None = None, validate: bool = True):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise LabelCollision("duplicate ground labels")
        self._matrix = matrix
        self._circuits = None
        if (matrix is None) == (circuits is None):
            raise MalformedInput("exactly one of matrix/circuits required")
        if matrix is not None:
            if matrix.cols != len(self.ground):
                raise MalformedInput("matrix column count != ground size")
        else:
            fam = tuple(sorted({frozenset(c) for c in circuits},
                               key=lambda c: tuple(sorted(map(self._key, c)))))
            gset = set(self.ground)
            for c in fam:
                if not c:
                    raise MalformedInput("empty circuit")
                if not c <= gset:
                    raise UnknownElement(f"circuit {set(c)} leaves the ground set")
            self._circuits = fam
            if validate and len(self.ground) <= 12:
                self._validate_circuit_axioms()
        self._index = {e: i for i, e in enumerate(self.ground)}
        self._rank_cache: dict[frozenset, int] = {}

    @staticmethod
    def _key(label):
        return (str(type(label)), repr(label))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: GFMatrix, ground: Sequence[Label] | None = None) -> "Matroid":
        if ground is None:
            ground = tuple(range(matrix.cols))
        return cls(ground, matrix=matrix)

    @classmethod
    def from_circuits(cls, ground: Sequence[Label], circuits: Iterable[Iterable[Label]]) -> "Matroid":
        return cls(ground, circuits=[frozenset(c) for c in circuits])

    @classmethod
    def free(cls, ground: Sequence[Label]) -> "Matroid":
        return cls(ground, circuits=[])

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        ground = tuple(range(n))
        circuits = [frozenset(c) for c in combinations(ground, r + 1)] if r < n else []
        return cls(ground, circuits=circuits)

    # -- validation ---------------------------------------------------------

    def _validate_circuit_axioms(self):
        fam = self._circuits
        for c1, c2 in combinations(fam, 2):
            if c1 <= c2 or c2 <= c1:
                raise MalformedInput(f"circuits {set(c1)} and {set(c2)} are nested")
        for c1, c2 in combinations(fam, 2):
            for e in c1 & c2:
                union = (c1 | c2) - {e}
                if not any(c3 <= union for c3 in fam):
                    raise MalformedInput("circuit elimination fails for "
                                         f"{set(c1)}, {set(c2)} at {e!r}")

    # -- basics -------------------------------------------------------------

    @property
    def is_represented(self) -> bool:
        return self._matrix is not None

    @property
    def matrix(self) -> GFMatrix | None:
        return self._matrix

    @property
    def size(self) -> int:
        return len(self.ground)

    def _check_subset(self, x: Iterable[Label]) -> frozenset:
        xs = frozenset(x)
        for e in xs:
            if e not in self._index:
                raise UnknownElement(f"{e!r} is not a ground element")
        return xs

    def rank_of(self, x: Iterable[Label]) -> int:
        xs = self._check_subset(x)
        cached = self._rank_cache.get(xs)
        if cached is not None:
            return cached
        if self._matrix is not None:
            packed = self._matrix.columns_packed()
            r = fields.rank_of_vectors(self._matrix.field,
                                       (packed[self._index[e]] for e in xs))
        else:
            r = self._rank_circuits(xs)
        self._rank_cache[xs] = r
        return r

    def _rank_circuits(self, xs: frozenset) -> int:
        relevant = [c for c in self._circuits if c <= xs]
        if not relevant:
            return len(xs)
        elems = sorted(xs, key=self._key)
        n = len(elems)
        for size in range(n, -1, -1):
            for sub in combinations(elems, size):
                w = frozenset(sub)
                if not any(c <= w for c in relevant):
                    return size
        return 0

    def nullity_of(self, x: Iterable[Label]) -> int:
        xs = self._check_subset(x)
        return len(xs) - self.rank_of(xs)

    def rank(self) -> int:
        return self.rank_of(self.ground)

    def is_independent(self, x: Iterable[Label]) -> bool:
        xs = self._check_subset(x)
        return self.rank_of(xs) == len(xs)

    def circuits(self, bound: int = MATROID_ENUM_BOUND) -> list[frozenset]:
        """All minimal dependent subsets, lexicographically sorted."""
        check_size(self.size, bound, "circuits")
        if self._circuits is not None:
            return list(self._circuits)
        found: list[frozenset] = []
        elems = sorted(self.ground, key=self._key)
        for size in range(1, self.size + 1):
            for sub in combinations(elems, size):
                w = frozenset(sub)
                if any(c <= w for c in found):
                    continue
                if self.rank_of(w) < size:
                    found.append(w)
        return sorted(found, key=lambda c: tuple(sorted(map(self._key, c))))

    def bases(self, bound: int = MATROID_ENUM_BOUND) -> list[frozenset]:
        check_size(self.size, bound, "bases")
        r = self.rank()
        elems = sorted(self.ground, key=self._key)
        return [frozenset(sub) for sub in combinations(elems, r)
                if self.rank_of(frozenset(sub)) == r]

    # -- structure operations ------------------------------------------------

    def standard_form(self) -> "Matroid":
        """Row-reduce a represented matroid so the lexicographically least
        basis becomes an identity block (labels unchanged)."""
        if self._matrix is None:
            return self
        red, pivots = fields.rref(self._matrix)
        lo = red.row_lo[:len(pivots)]
        hi = red.row_hi[:len(pivots)]
        return Matroid(self.ground,
                       matrix=GFMatrix(red.field, len(pivots), red.cols, lo, hi))

    def _identity_columns(self) -> dict[int, Label] | None:
        """Map row index -> label of its unit column, if a full identity
        block exists among the columns; None otherwise."""
        m = self._matrix
        packed = m.columns_packed()
        found: dict[int, Label] = {}
        for e in self.ground:
            lo, hi = packed[self._index[e]]
            if hi == 0 and lo != 0 and lo & (lo - 1) == 0:
                i = lo.bit_length() - 1
                if i not in found:
                    found[i] = e
        if len(found) == m.rows:
            return found
        return None

    def dual(self) -> "Matroid":
        """Dual matroid; bases of the output are complements of bases of
        the input."""
        if self._matrix is not None:
            m = self._matrix
            if fields.rank(m) != m.rows:
                raise NotStandardForm("matrix has dependent rows; pivot first")
            unit = self._identity_columns()
            if unit is None:
                raise NotStandardForm("no identity block; pivot first")
            basis_labels = [unit[i] for i in range(m.rows)]
            cobasis = [e for e in self.ground if e not in set(basis_labels)]
            cob_index = {e: i for i, e in enumerate(cobasis)}
            rows = len(cobasis)
            entries = {e: [0] * rows for e in self.ground}
            for f in cobasis:
                entries[f][cob_index[f]] = 1
            packed = m.columns_packed()
            for i, b in enumerate(basis_labels):
                for f in cobasis:
                    lo, hi = packed[self._index[f]]
                    # -A^T == A^T in characteristic 2
                    entries[b][cob_index[f]] = ((lo >> i) & 1) | (((hi >> i) & 1) << 1)
            cols = [entries[e] for e in self.ground]
            mat = GFMatrix.from_entries(m.field,
                                        [[cols[j][i] for j in range(self.size)]
                                         for i in range(rows)],
                                        cols=self.size)
            return Matroid(self.ground, matrix=mat)
        # circuit list: minimal sets whose complement does not span
        r = self.rank()
        gset = frozenset(self.ground)
        elems = sorted(self.ground, key=self._key)

        def co_independent(xs):
            return self.rank_of(gset - xs) == r

        circuits: list[frozenset] = []
        for size in range(1, self.size + 1):
            for sub in combinations(elems, size):
                w = frozenset(sub)
                if any(c <= w for c in circuits):
                    continue
                if not co_independent(w):
                    circuits.append(w)
        return Matroid(self.ground, circuits=circuits, validate=False)

    def minor(self, contract: Iterable[Label] = (), delete: Iterable[Label] = ()) -> "Matroid":
        con = self._check_subset(contract)
        dele = self._check_subset(delete)
        if con & dele:
            raise OverlappingSets(f"contract and delete share {set(con & dele)}")
        if self._matrix is not None:
            return self._minor_matrix(con, dele)
        keep = [e for e in self.ground if e not in con and e not in dele]
        base = self.rank_of(con)

        def rk(xs):
            return self.rank_of(frozenset(xs) | con) - base

        circuits: list[frozenset] = []
        elems = sorted(keep, key=self._key)
        for size in range(1, len(keep) + 1):
            for sub in combinations(elems, size):
                w = frozenset(sub)
                if any(c <= w for c in circuits):
                    continue
                if rk(w) < size:
                    circuits.append(w)
        return Matroid(keep, circuits=circuits, validate=False)

    def _minor_matrix(self, con: frozenset, dele: frozenset) -> "Matroid":
        m = self._matrix
        lo = list(m.row_lo)
        hi = list(m.row_hi)
        used_rows: list[int] = []
        # pivot a maximal independent part of the contraction set, greedily
        # in ground order for determinism
        for e in (x for x in self.ground if x in con):
            j = self._index[e]
            pivot = None
            for i in range(m.rows):
                if i in used_rows:
                    continue
                if ((lo[i] >> j) & 1) | ((hi[i] >> j) & 1):
                    pivot = i
                    break
            if pivot is None:
                continue  # dependent on already-contracted part: a loop there
            c = ((lo[pivot] >> j) & 1) | (((hi[pivot] >> j) & 1) << 1)
            if c != 1:
                lo[pivot], hi[pivot] = fields._scale_row(fields.scalar_inverse(c),
                                                         lo[pivot], hi[pivot])
            for i in range(m.rows):
                if i == pivot:
                    continue
                c = ((lo[i] >> j) & 1) | (((hi[i] >> j) & 1) << 1)
                if c:
                    slo, shi = fields._scale_row(c, lo[pivot], hi[pivot])
                    lo[i] ^= slo
                    hi[i] ^= shi
            used_rows.append(pivot)
        keep_rows = [i for i in range(m.rows) if i not in used_rows]
        keep = [e for e in self.ground if e not in con and e not in dele]
        keep_cols = [self._index[e] for e in keep]
        entries = [[((lo[i] >> j) & 1) | ((((hi[i] >> j) & 1)) << 1) for j in keep_cols]
                   for i in keep_rows]
        mat = GFMatrix.from_entries(m.field, entries, cols=len(keep))
        return Matroid(keep, matrix=mat)

    def direct_sum(self, other: "Matroid") -> "Matroid":
        overlap = set(self.ground) & set(other.ground)
        if overlap:
            raise LabelCollision(f"shared labels {overlap}")
        ground = self.ground + other.ground
        if (self._matrix is not None and other._matrix is not None
                and self._matrix.field == other._matrix.field):
            a, b = self._matrix, other._matrix
            top = a.hstack(GFMatrix.zero(a.field, a.rows, b.cols))
            bottom = GFMatrix.zero(a.field, b.rows, a.cols).hstack(b)
            mat = GFMatrix(a.field, a.rows + b.rows, a.cols + b.cols,
                           top.row_lo + bottom.row_lo, top.row_hi + bottom.row_hi)
            return Matroid(ground, matrix=mat)
        return Matroid(ground,
                       circuits=list(self.circuits()) + list(other.circuits()),
                       validate=False)

    def orthogonal(self, other: "Matroid") -> bool:
        """True iff every circuit of self meets every circuit of other in a
        number of elements different from one."""
        if set(self.ground) != set(other.ground):
            raise GroundMismatch("orthogonality needs a common ground set")
        cs1 = self.circuits()
        cs2 = other.circuits()
        return all(len(c1 & c2) != 1 for c1 in cs1 for c2 in cs2)

    def cycle_space(self) -> list[frozenset]:
        """All cycles (disjoint unions of circuits) of a binary represented
        matroid, canonically ordered."""
        if self._matrix is None or self._matrix.field != fields.GF2:
            raise NotBinary("cycle space needs a GF(2) representation")
        check_size(self.size, CYCLE_SPACE_COLS, "cycle_space")
        kernel = fields.null_space(self._matrix)
        cycles = set()
        for bits in range(1 << len(kernel)):
            vec = [0] * self.size
            for i in range(len(kernel)):
                if (bits >> i) & 1:
                    vec = [a ^ b for a, b in zip(vec, kernel[i])]
            cycles.add(frozenset(self.ground[j] for j, v in enumerate(vec) if v))
        for cyc in cycles:
            self._verify_disjoint_circuit_union(cyc)
        return sorted(cycles, key=lambda c: (len(c), tuple(sorted(map(self._key, c)))))

    def _verify_disjoint_circuit_union(self, cycle: frozenset) -> None:
        rest = set(cycle)
        while rest:
            if self.rank_of(rest) == len(rest):
                raise InternalInconsistency(f"{set(cycle)} is not a circuit union")
            circ = set(rest)
            shrunk = True
            while shrunk:
                shrunk = False
                for e in sorted(circ, key=self._key):
                    smaller = circ - {e}
                    if smaller and self.rank_of(smaller) < len(smaller):
                        circ = smaller
                        shrunk = True
            rest -= circ

    def tutte(self, x, y, bound: int = MATROID_ENUM_BOUND):
        """Deletion-contraction evaluation of the two-variable rank polynomial
        at (x, y); loops contribute y, coloops x."""
        check_size(self.size, bound, "tutte")
        memo: dict[tuple[frozenset, frozenset], object] = {}

        def rank_minor(con: frozenset, xs: frozenset) -> int:
            return self.rank_of(xs | con) - self.rank_of(con)

        def walk(con: frozenset, dele: frozenset):
            key = (con, dele)
            hit = memo.get(key)
            if hit is not None:
                return hit
            rest = [e for e in self.ground if e not in con and e not in dele]
            if not rest:
                memo[key] = 1
                return 1
            e = rest[0]
            es = frozenset([e])
            if rank_minor(con, es) == 0:  # loop
                val = y * walk(con, dele | es)
            elif rank_minor(con, frozenset(rest)) > rank_minor(con, frozenset(rest[1:])):
                val = x * walk(con | es, dele)  # coloop
            else:
                val = walk(con, dele | es) + walk(con | es, dele)
            memo[key] = val
            return val

        return walk(frozenset(), frozenset())

    def same_matroid(self, other: "Matroid") -> bool:
        """Label-wise equality of rank functions (brute force)."""
        if set(self.ground) != set(other.ground):
            return False
        elems = sorted(self.ground, key=self._key)
        for size in range(len(elems) + 1):
            for sub in combinations(elems, size):
                if self.rank_of(sub) != other.rank_of(sub):
                    return False
        return True

    def __repr__(self) -> str:
        kind = "matrix" if self._matrix is not None else f"{len(self._circuits)} circuits"
        return f"Matroid({list(self.ground)!r}, {kind})"
