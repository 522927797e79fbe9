import itertools

import numpy as np
import pytest

from twistcode.fields import BinaryField, PrimeField
from twistcode.linalg import Matrix, WEDGE_PAIRS, exterior_square, null_space
from twistcode.affine import matrix_A, matrix_B
from twistcode.symplectic import SymplecticSpace, transvection

GF3 = PrimeField(3)
GF5 = PrimeField(5)
GF2 = BinaryField(1)
GF4 = BinaryField(2)


def rand_matrix(rng, field, n):
    return Matrix(field, rng.integers(0, field.order, size=(n, n)))


def rand_invertible(rng, field, n):
    while True:
        m = rand_matrix(rng, field, n)
        if m.rank() == n:
            return m


def test_identity_neutral():
    rng = np.random.default_rng(7)
    for field in (GF3, GF4):
        m = rand_matrix(rng, field, 3)
        assert Matrix.identity(field, 3) * m == m
        assert m * Matrix.identity(field, 3) == m


def test_b2_squared_over_gf5():
    B = matrix_B(2, 5)
    assert (B * B).A.tolist() == [[1, 0], [2, 1]]


def test_a_k_nilpotent():
    for p, k in [(3, 2), (5, 3), (7, 4), (13, 12)]:
        A = matrix_A(k, p)
        assert (A ** k).is_zero()
        assert not (A ** (k - 1)).is_zero()


def test_inverse_of_identity():
    assert Matrix.identity(GF3, 4).inverse().is_identity()


def test_inverse_b2_gf3_against_brute_force():
    # oracle: search all 81 candidate 2x2 matrices for B * X = I
    B = matrix_B(2, 3)
    I = Matrix.identity(GF3, 2)
    found = [
        mat
        for entries in itertools.product(range(3), repeat=4)
        for mat in [Matrix(GF3, np.array(entries).reshape(2, 2))]
        if B * mat == I
    ]
    assert len(found) == 1
    assert found[0].A.tolist() == [[1, 0], [2, 1]]
    assert B.inverse() == found[0]


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        Matrix(GF3, [[1, 2], [2, 1]]).inverse()  # det = 1 - 4 = 0 mod 3
    with pytest.raises(ValueError):
        Matrix(GF3, [[1, 2, 0], [0, 1, 1]]).inverse()


def test_rank_examples():
    assert Matrix.zeros(GF4, 4).rank() == 0
    assert Matrix.identity(GF4, 4).rank() == 4
    space = SymplecticSpace.create(2)
    t = transvection(space, space.e1, 3)
    assert (t - Matrix.identity(space.field, 4)).rank() == 1


def test_rank_nullity():
    rng = np.random.default_rng(11)
    for field in (GF3, GF4):
        for _ in range(25):
            m = rand_matrix(rng, field, 4)
            assert m.rank() + null_space(field, m.A).shape[0] == 4


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        Matrix(GF3, [[1, 2]]) * Matrix(GF3, [[1, 2]])
    with pytest.raises(ValueError):
        Matrix(GF3, [[1]]) * Matrix(GF5, [[1]])


def test_exterior_square_identity():
    assert exterior_square(Matrix.identity(GF4, 4)).is_identity()
    with pytest.raises(ValueError):
        exterior_square(Matrix.identity(GF4, 3))


def test_exterior_square_diagonal():
    for field, diag in [(GF5, (2, 3, 1, 4)), (GF4, (1, 2, 3, 1))]:
        m = Matrix(field, np.diag(np.array(diag, dtype=np.uint8)))
        lam = exterior_square(m)
        expected = [field.mul(diag[i], diag[j]) for i, j in WEDGE_PAIRS]
        assert lam.A.tolist() == np.diag(np.array(expected)).tolist()


def wedge_oracle(field, u, v):
    # brute-force wedge coordinates: w[(i,j)] = u_i v_j - u_j v_i
    return [
        field.sub(field.mul(int(u[i]), int(v[j])), field.mul(int(u[j]), int(v[i])))
        for i, j in WEDGE_PAIRS
    ]


def test_wedge_transform_identity_gf2_all_pairs():
    rng = np.random.default_rng(3)
    vectors = [np.array([(x >> i) & 1 for i in range(4)], dtype=np.uint8) for x in range(1, 16)]
    for _ in range(5):
        g = rand_invertible(rng, GF2, 4)
        lam = exterior_square(g)
        for u, v in itertools.combinations(vectors, 2):
            lhs = (np.array(wedge_oracle(GF2, u, v), dtype=np.uint8).reshape(1, 6) @ lam.A) % 2
            ug = GF2.matmul(u.reshape(1, 4), g.A)[0]
            vg = GF2.matmul(v.reshape(1, 4), g.A)[0]
            assert lhs[0].tolist() == wedge_oracle(GF2, ug, vg)


def test_wedge_transform_identity_gf4_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = rand_invertible(rng, GF4, 4)
        lam = exterior_square(g)
        u = rng.integers(0, 4, size=4).astype(np.uint8)
        v = rng.integers(0, 4, size=4).astype(np.uint8)
        w = np.array(wedge_oracle(GF4, u, v), dtype=np.uint8)
        lhs = GF4.matmul(w.reshape(1, 6), lam.A)[0]
        ug = GF4.matmul(u.reshape(1, 4), g.A)[0]
        vg = GF4.matmul(v.reshape(1, 4), g.A)[0]
        assert lhs.tolist() == wedge_oracle(GF4, ug, vg)


def test_exterior_square_multiplicative():
    rng = np.random.default_rng(9)
    for field in (GF2, GF4):
        pairs = [(rand_invertible(rng, field, 4), rand_invertible(rng, field, 4)) for _ in range(100)]
        for g, h in pairs:
            assert exterior_square(g * h) == exterior_square(g) * exterior_square(h)


def test_pow_and_entry_validation():
    GF7 = PrimeField(7)
    B = matrix_B(3, 7)
    assert B ** 0 == Matrix.identity(GF7, 3)
    assert B ** 7 == Matrix.identity(GF7, 3)
    with pytest.raises(ValueError):
        Matrix(GF3, [[5, 0], [0, 1]])
