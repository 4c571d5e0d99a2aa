import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_rank, permutation_determinant
from mmlab.errors import FieldMismatch, MalformedInput
from mmlab.fields import (GF2, GF4, GFMatrix, Scalar, conjugate, field_arith,
                          format_gfmat, mat_vec, null_space, nullity,
                          parse_gfmat, rank, rank_of_vectors, scalar_add,
                          scalar_inverse, scalar_mul)

gf4 = st.integers(min_value=0, max_value=3)


def test_gf4_multiplication_table():
    a, b = 2, 3
    assert scalar_mul(a, a) == b
    assert scalar_mul(a, b) == 1
    assert scalar_mul(b, b) == a
    assert scalar_add(a, 1) == b
    assert scalar_add(a, b) == 1


def test_conjugation_swaps_generators():
    assert conjugate(0) == 0
    assert conjugate(1) == 1
    assert conjugate(2) == 3
    assert conjugate(3) == 2


def test_field_arith_public_api():
    a = Scalar(GF4, "a")
    b = Scalar(GF4, "b")
    assert field_arith("mul", a, a) == b
    assert field_arith("add", a, b) == Scalar(GF4, "1")
    assert field_arith("inv_automorphism", a) == b
    # identity map on GF(2) is permitted
    one = Scalar(GF2, "1")
    assert field_arith("inv_automorphism", one) == one
    with pytest.raises(FieldMismatch):
        field_arith("add", a, one)
    with pytest.raises(FieldMismatch):
        Scalar(GF2, "a")


@given(gf4, gf4, gf4)
@settings(max_examples=80, deadline=None)
def test_gf4_field_axioms(x, y, z):
    assert scalar_add(x, x) == 0
    assert scalar_mul(x, scalar_mul(y, z)) == scalar_mul(scalar_mul(x, y), z)
    assert scalar_mul(x, scalar_add(y, z)) == \
        scalar_add(scalar_mul(x, y), scalar_mul(x, z))
    if x:
        assert scalar_mul(x, scalar_inverse(x)) == 1


@given(gf4, gf4)
@settings(max_examples=60, deadline=None)
def test_conjugation_is_an_automorphism(x, y):
    assert conjugate(conjugate(x)) == x
    assert conjugate(scalar_add(x, y)) == scalar_add(conjugate(x), conjugate(y))
    assert conjugate(scalar_mul(x, y)) == scalar_mul(conjugate(x), conjugate(y))


def test_rank_identity_and_zero():
    assert rank(GFMatrix.identity(GF2, 3)) == 3
    assert rank(GFMatrix.zero(GF2, 2, 5)) == 0
    assert rank(GFMatrix.zero(GF4, 0, 4)) == 0


H33_ENTRIES = [[0, 1, 2], [1, 0, 1], [3, 1, 0]]


def test_rank_of_gf4_triple_matrix():
    m = GFMatrix.from_entries(GF4, H33_ENTRIES)
    # independent oracles: naive elimination and permutation determinant
    assert naive_rank(H33_ENTRIES, GF4) == 3
    assert permutation_determinant(H33_ENTRIES) == 1  # b + a
    assert rank(m) == 3


def test_rank_matches_naive_oracle_randomly(rng):
    for _ in range(120):
        field = rng.choice((GF2, GF4))
        rows = rng.randint(0, 5)
        cols = rng.randint(0, 6)
        vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
        entries = [[rng.choice(vals) for _ in range(cols)] for _ in range(rows)]
        m = GFMatrix.from_entries(field, entries, cols=cols)
        assert rank(m) == naive_rank(entries, field)


def test_null_space_identity_empty():
    assert null_space(GFMatrix.identity(GF4, 4)) == []


def test_null_space_single_relation():
    m = GFMatrix.from_entries(GF2, [[1, 1]])
    assert null_space(m) == [(1, 1)]


def _brute_kernel_supports(m: GFMatrix) -> set:
    """All kernel vectors found by exhausting every coordinate assignment."""
    from itertools import product
    vals = (0, 1) if m.field == GF2 else (0, 1, 2, 3)
    out = set()
    for vec in product(vals, repeat=m.cols):
        if all(v == 0 for v in mat_vec(m, vec)):
            out.add(vec)
    return out


def test_null_space_of_pair_block_matrix_brute_force():
    # identity next to the adjacency matrix of the two-vertex path
    m = GFMatrix.from_entries(GF2, [[1, 0, 0, 1], [0, 1, 1, 0]])
    basis = null_space(m)
    brute = _brute_kernel_supports(m)
    # every basis vector is in the kernel and the spans agree in size
    span = {(0,) * m.cols}
    for vec in basis:
        assert tuple(mat_vec(m, vec)) == (0, 0)
        span |= {tuple(a ^ b for a, b in zip(s, vec)) for s in span}
    assert span == brute


def test_null_space_spans_kernel_randomly(rng):
    for _ in range(60):
        field = rng.choice((GF2, GF4))
        rows = rng.randint(0, 4)
        cols = rng.randint(1, 5)
        vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
        entries = [[rng.choice(vals) for _ in range(cols)] for _ in range(rows)]
        m = GFMatrix.from_entries(field, entries, cols=cols)
        basis = null_space(m)
        assert rank(m) + len(basis) == cols
        for vec in basis:
            assert all(v == 0 for v in mat_vec(m, vec))
        # canonical shape: the trailing support entry is the free column,
        # entries there are one, and the free columns ascend
        frees = []
        for vec in basis:
            support = [j for j, v in enumerate(vec) if v]
            assert vec[max(support)] == 1
            frees.append(max(support))
        assert frees == sorted(frees)


def test_conjugate_transpose_preserves_rank(rng):
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        entries = [[rng.choice((0, 1, 2, 3)) for _ in range(cols)]
                   for _ in range(rows)]
        m = GFMatrix.from_entries(GF4, entries, cols=cols)
        assert rank(m.transpose().conjugate()) == rank(m)


def test_row_operations_do_not_change_rank(rng):
    from mmlab.fields import _scale_row
    for _ in range(40):
        field = rng.choice((GF2, GF4))
        rows = rng.randint(2, 5)
        cols = rng.randint(1, 6)
        vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
        entries = [[rng.choice(vals) for _ in range(cols)] for _ in range(rows)]
        m = GFMatrix.from_entries(field, entries, cols=cols)
        lo, hi = list(m.row_lo), list(m.row_hi)
        for _ in range(6):
            i, j = rng.randrange(rows), rng.randrange(rows)
            if i == j:
                continue
            c = rng.choice(vals[1:])
            slo, shi = _scale_row(c, lo[j], hi[j])
            lo[i] ^= slo
            hi[i] ^= shi
        assert rank(GFMatrix(field, rows, cols, lo, hi)) == rank(m)


def test_rank_plus_nullity(rng):
    for _ in range(30):
        field = rng.choice((GF2, GF4))
        rows, cols = rng.randint(0, 4), rng.randint(0, 5)
        vals = (0, 1) if field == GF2 else (0, 1, 2, 3)
        entries = [[rng.choice(vals) for _ in range(cols)] for _ in range(rows)]
        m = GFMatrix.from_entries(field, entries, cols=cols)
        assert rank(m) + nullity(m) == cols


def test_gfmat_round_trip():
    text = "field 4\n2 3\n0 1 a\nb 0 1\n"
    m = parse_gfmat(text)
    assert m.rows == 2 and m.cols == 3 and m.field == GF4
    assert m.entry(1, 0) == 3
    assert format_gfmat(m) == text


@pytest.mark.parametrize("bad", [
    "",
    "field 3\n1 1\n0\n",
    "field 2\n1 2\n0 a\n",
    "field 2\n2 2\n0 1\n",
    "field 2\nx y\n",
])
def test_gfmat_rejects_malformed(bad):
    with pytest.raises(MalformedInput):
        parse_gfmat(bad)


def test_rank_of_vectors_gf4_packed():
    # columns (1, a) and (a, b) = a * (1, a): dependent
    v1 = (0b01, 0b10)
    v2 = (0b10, 0b11)
    assert rank_of_vectors(GF4, [v1, v2]) == 1
