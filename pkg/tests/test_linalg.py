"""Exact scalar arithmetic and subspace algebra."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdirac.linalg import (
    ExactMatrix,
    GaussRational,
    IMAG,
    ONE,
    SubspaceBasis,
    coordinate_subspace,
    intersect,
    inverse,
    kernel,
    kernel_rows,
    matrix_rank,
    rank_rows,
    rref,
    solve_rows,
    subspace_sum,
)

GR = GaussRational


def rationals():
    return st.builds(
        Fraction, st.integers(-8, 8), st.integers(1, 8)
    )


def scalars():
    return st.builds(GR, rationals(), rationals())


class TestGaussRational:
    def test_basics(self):
        x = GR(1, 2)
        y = GR(3, -1)
        assert x * y == GR(5, 5)
        assert x + y == GR(4, 1)
        assert x - y == GR(-2, 3)
        assert (x / y) * y == x
        assert -x == GR(-1, -2)
        assert IMAG * IMAG == GR(-1)

    def test_mixed_types(self):
        assert GR(2) == 2
        assert 2 * GR(Fraction(1, 2)) == ONE
        assert GR(1) / 2 == GR(Fraction(1, 2))
        assert 1 - GR(0, 1) == GR(1, -1)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            GR(0.5)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            ONE / GR(0)

    def test_hash_consistent(self):
        assert hash(GR(Fraction(2, 4), 0)) == hash(GR(Fraction(1, 2)))

    @settings(max_examples=50)
    @given(scalars(), scalars(), scalars())
    def test_field_axioms_sample(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        if b:
            assert (a / b) * b == a

    def test_conjugate(self):
        z = GR(2, 3)
        assert z * z.conjugate() == GR(13)


class TestRref:
    def test_identity(self):
        rank, red, piv = rref(ExactMatrix.identity(2))
        assert rank == 2 and piv == [0, 1]
        assert red == ExactMatrix.identity(2)

    def test_zero_matrix(self):
        rank, red, piv = rref(ExactMatrix(3, 4))
        assert rank == 0 and piv == [] and red.is_zero()

    def test_dependent_complex_rows(self):
        # second row is i times the first
        m = ExactMatrix.from_rows([[GR(1), IMAG], [IMAG, GR(-1)]])
        rank, red, piv = rref(m)
        assert rank == 1 and piv == [0]
        assert red.entry(0, 0) == ONE and red.entry(0, 1) == IMAG
        assert red.entry(1, 0) == GR(0) and red.entry(1, 1) == GR(0)

    def test_normalises_pivots(self):
        m = ExactMatrix.from_rows([[GR(0, 2), GR(4)]])
        _, red, piv = rref(m)
        assert piv == [0]
        assert red.entry(0, 0) == ONE
        assert red.entry(0, 1) == GR(0, -2)

    def test_rank_rows_matches(self):
        rng = random.Random(7)
        for _ in range(15):
            rows = [
                {
                    c: GR(rng.randint(-2, 2), rng.randint(-1, 1))
                    for c in rng.sample(range(6), rng.randint(1, 4))
                }
                for _ in range(rng.randint(1, 6))
            ]
            rows = [{c: v for c, v in row.items() if v} for row in rows]
            piv, _ = __import__("kdirac.linalg", fromlist=["rref_rows"]).rref_rows(rows)
            assert len(piv) == rank_rows(rows)


class TestKernel:
    def test_identity_kernel_trivial(self):
        assert kernel(ExactMatrix.identity(3)).dim == 0

    def test_zero_matrix_full_kernel(self):
        basis = kernel(ExactMatrix(2, 5))
        assert basis.dim == 5
        assert basis.vectors == [{c: ONE} for c in range(5)]

    def test_ones_row(self):
        basis = kernel(ExactMatrix.from_rows([[1, 1]]))
        assert basis.dim == 1
        assert basis.vectors == [{0: ONE, 1: GR(-1)}]

    def test_rank_nullity_and_annihilation(self):
        rng = random.Random(3)
        for _ in range(20):
            rows, cols = rng.randint(1, 5), rng.randint(1, 6)
            m = ExactMatrix(
                rows,
                cols,
                {
                    (r, c): GR(rng.randint(-3, 3), rng.randint(-1, 1))
                    for r in range(rows)
                    for c in range(cols)
                    if rng.random() < 0.6
                },
            )
            basis = kernel(m)
            assert matrix_rank(m) + basis.dim == cols
            md = m.row_dicts()
            for vec in basis.vectors:
                for row in md:
                    acc = GR(0)
                    for c, v in row.items():
                        acc = acc + v * vec.get(c, GR(0))
                    assert not acc


def random_subspace(rng, ambient, dim):
    vecs = [
        {c: GR(rng.randint(-3, 3), rng.randint(-1, 1)) for c in range(ambient)}
        for _ in range(dim)
    ]
    return SubspaceBasis.from_vectors(ambient, vecs)


class TestSubspaces:
    def test_intersect_self(self):
        rng = random.Random(11)
        a = random_subspace(rng, 5, 3)
        assert intersect(a, a) == a

    def test_complementary_planes(self):
        a = coordinate_subspace(4, [0, 1])
        b = coordinate_subspace(4, [2, 3])
        assert intersect(a, b).dim == 0

    def test_worked_intersection(self):
        a = SubspaceBasis.from_vectors(3, [[1, 0, 1], [0, 1, 0]])
        b = SubspaceBasis.from_vectors(3, [[1, 1, 1]])
        got = intersect(a, b)
        assert got.dim == 1
        assert got.vectors == [{0: ONE, 1: ONE, 2: ONE}]

    def test_dimension_formula(self):
        rng = random.Random(5)
        for _ in range(10):
            a = random_subspace(rng, 6, rng.randint(1, 4))
            b = random_subspace(rng, 6, rng.randint(1, 4))
            meet = intersect(a, b)
            join = subspace_sum(a, b)
            assert meet.dim + join.dim == a.dim + b.dim
            assert intersect(a, b) == intersect(b, a)
            for vec in meet.vectors:
                assert a.contains(vec) and b.contains(vec)

    def test_ambient_mismatch(self):
        a = coordinate_subspace(3, [0])
        b = coordinate_subspace(4, [0])
        with pytest.raises(ValueError):
            intersect(a, b)

    def test_canonical_bases_bit_identical(self):
        rng = random.Random(17)
        for _ in range(10):
            a = random_subspace(rng, 6, 3)
            # re-mix the basis with a random invertible transformation
            while True:
                mix = [[rng.randint(-3, 3) for _ in range(a.dim)] for _ in range(a.dim)]
                if rank_rows(
                    [{c: GR(v) for c, v in enumerate(row) if v} for row in mix]
                ) == a.dim:
                    break
            mixed = []
            for row in mix:
                acc = {}
                for j, coeff in enumerate(row):
                    if not coeff:
                        continue
                    for c, v in a.vectors[j].items():
                        acc[c] = acc.get(c, GR(0)) + coeff * v
                mixed.append({c: v for c, v in acc.items() if v})
            b = SubspaceBasis.from_vectors(6, mixed)
            assert a == b

    def test_contains_rejects_outside_vector(self):
        a = coordinate_subspace(3, [0, 1])
        assert not a.contains({2: ONE})
        assert a.contains({0: GR(5), 1: GR(0, 7)})


class TestSolve:
    def test_unique_solution(self):
        rows = [{0: GR(1), 1: GR(1)}, {0: GR(1), 1: GR(-1)}]
        sols, rank = solve_rows(rows, 2, [{0: GR(2), 1: GR(0)}])
        assert rank == 2
        assert sols[0] == {0: ONE, 1: ONE}

    def test_inconsistent_detected(self):
        rows = [{0: GR(1)}, {0: GR(1)}]
        sols, _ = solve_rows(rows, 1, [{0: GR(1), 1: GR(2)}, {0: GR(1), 1: GR(1)}])
        assert sols[0] is None
        assert sols[1] == {0: ONE}

    def test_underdetermined_particular(self):
        rows = [{0: GR(1), 1: GR(1)}]
        sols, rank = solve_rows(rows, 2, [{0: GR(3)}])
        assert rank == 1
        x = sols[0]
        total = x.get(0, GR(0)) + x.get(1, GR(0))
        assert total == GR(3)

    def test_inverse_roundtrip(self):
        m = ExactMatrix.from_rows([[1, 1, 0], [0, 1, IMAG], [1, 0, 1]])
        m_inv = inverse(m)
        assert m.matmul(m_inv) == ExactMatrix.identity(3)

    def test_inverse_singular(self):
        with pytest.raises(ValueError):
            inverse(ExactMatrix.from_rows([[1, 1], [2, 2]]))


def test_kernel_rows_support_validation():
    with pytest.raises(ValueError):
        kernel_rows([{5: ONE}], 3)
