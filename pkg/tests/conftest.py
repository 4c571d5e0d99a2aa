"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

import pytest

from mmlab.fields import GF2, GF4, GFMatrix, scalar_add, scalar_mul
from mmlab.isotropic import Graph
from mmlab.matroids import Matroid


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_graph(rng: random.Random, n: int, loops: bool = False,
                 p: float = 0.5) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u if loops else u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges)


def all_graphs(n: int, loops: bool = False):
    """Every labeled graph on n vertices."""
    slots = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    for bits in range(1 << len(slots)):
        yield Graph(n, [slots[i] for i in range(len(slots)) if (bits >> i) & 1])


def random_standard_form(rng: random.Random, field: int, n: int,
                         r: int | None = None) -> Matroid:
    """Random matroid represented as an identity block next to a random
    block."""
    if r is None:
        r = rng.randint(0, n)
    vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
    entries = [[1 if j == i else 0 for j in range(r)]
               + [rng.choice(vals) for _ in range(n - r)] for i in range(r)]
    if r == 0:
        mat = GFMatrix.from_entries(field, [], cols=n)
    else:
        mat = GFMatrix.from_entries(field, entries, cols=n)
    return Matroid.from_matrix(mat)


def random_symmetric(rng: random.Random, field: int, n: int,
                     zero_diag: bool = False) -> GFMatrix:
    vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.choice(vals)
            if i == j:
                v = 0 if zero_diag else rng.choice((0, 1))
            entries[i][j] = entries[j][i] = v
    return GFMatrix.from_entries(field, entries, cols=n)


def random_inv_symmetric(rng: random.Random, n: int) -> GFMatrix:
    """Random GF(4) matrix equal to its conjugate transpose."""
    from mmlab.fields import conjugate
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = rng.choice((0, 1))
        for j in range(i + 1, n):
            v = rng.choice((0, 1, 2, 3))
            entries[i][j] = v
            entries[j][i] = conjugate(v)
    return GFMatrix.from_entries(GF4, entries, cols=n)


# -- independent oracles ---------------------------------------------------------


def naive_rank(entries, field: int) -> int:
    """Textbook row elimination on a list-of-lists matrix; no bit packing."""
    from mmlab.fields import scalar_inverse
    m = [row[:] for row in entries]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = scalar_inverse(m[rank][col])
        m[rank] = [scalar_mul(inv, x) for x in m[rank]]
        for i in range(rows):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [scalar_add(x, scalar_mul(c, y))
                        for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def permutation_determinant(entries) -> int:
    """Determinant by permutation expansion; signs vanish in
    characteristic 2."""
    n = len(entries)
    det = 0
    for perm in permutations(range(n)):
        term = 1
        for i in range(n):
            term = scalar_mul(term, entries[i][perm[i]])
            if term == 0:
                break
        det = scalar_add(det, term)
    return det


def whitney_rank_sum(m: Matroid, x, y):
    """Corank-nullity subset expansion; an independent route to the
    deletion-contraction value."""
    total = 0
    ground = list(m.ground)
    r = m.rank_of(ground)
    for size in range(len(ground) + 1):
        for sub in combinations(ground, size):
            rs = m.rank_of(sub)
            total += (x - 1) ** (r - rs) * (y - 1) ** (size - rs)
    return total


def matroid_bases_set(m: Matroid) -> set[frozenset]:
    return set(m.bases())


def is_binary_matroid_oracle(m: Matroid) -> bool:
    """GF(2) representability through the canonical fundamental-circuit
    assignment: fix a basis, force every element's vector, verify all
    ranks."""
    ground = list(m.ground)
    r = m.rank_of(ground)
    basis = []
    for e in ground:
        if m.rank_of(basis + [e]) > len(basis):
            basis.append(e)
    index = {e: i for i, e in enumerate(basis)}
    vecs = {}
    for e in ground:
        if e in index:
            vecs[e] = 1 << index[e]
            continue
        vec = 0
        for b in basis:
            # b lies in the fundamental circuit of e iff swapping keeps rank
            others = [x for x in basis if x != b] + [e]
            if m.rank_of(others) == r:
                vec |= 1 << index[b]
        vecs[e] = vec
    from mmlab.fields import rank_of_vectors
    for size in range(len(ground) + 1):
        for sub in combinations(ground, size):
            got = rank_of_vectors(GF2, ((vecs[e], 0) for e in sub))
            if got != m.rank_of(sub):
                return False
    return True


def binary_sheltering_exists(z) -> bool:
    """Search for a GF(2) matroid sheltering z: assign each element a vector
    that is either a combination of the previous pivots or the next fresh
    unit vector, pruning on subtransversal rank agreement."""
    from mmlab.fields import rank_of_vectors
    elems = z.carrier.elements()
    subt_cache = {}

    def prefix_subtransversals(k):
        if k not in subt_cache:
            pres = elems[:k]
            by_class = {}
            for e in pres:
                by_class.setdefault(e[0], []).append(e)
            opts = [[None] + v for v in by_class.values()]
            subt_cache[k] = [tuple(e for e in pick if e is not None)
                             for pick in product(*opts)]
        return subt_cache[k]

    vecs = {}

    def ok_prefix(k):
        newest = elems[k - 1]
        for s in prefix_subtransversals(k):
            if newest not in s:
                continue
            got = rank_of_vectors(GF2, ((vecs[e], 0) for e in s))
            if got != z._rank(frozenset(s)):
                return False
        return True

    def assign(k, dim):
        if k == len(elems):
            return True
        for choice in range(1 << (dim + 1)):
            vecs[elems[k]] = choice
            if ok_prefix(k + 1):
                ndim = max(dim, choice.bit_length())
                if assign(k + 1, ndim):
                    return True
        del vecs[elems[k]]
        return False

    return assign(0, 0)


@pytest.fixture
def rng():
    return make_rng(0xC0FFEE)
