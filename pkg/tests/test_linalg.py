import numpy as np
import pytest
from hypothesis import given, strategies as st

from fatpoints import CyclotomicField, DenseMatrix, PrimeField, kernel_basis, rank, symbolic_rank, variables
from fatpoints.field import default_primes
from fatpoints.linalg import identity, integer_matrix, specialize, to_field

Q3 = CyclotomicField(3)
FP = PrimeField(default_primes(3, 1)[0], 3)


def random_matrix(field, rng, shape, bound=3, rank_cap=None):
    """Random integer matrix, optionally a product forcing rank <= rank_cap."""
    r, c = shape
    if rank_cap is None:
        a = rng.integers(-bound, bound + 1, size=shape)
    else:
        a = rng.integers(-bound, bound + 1, size=(r, rank_cap)) @ rng.integers(-bound, bound + 1, size=(rank_cap, c))
    return integer_matrix(a.tolist(), field)


def test_rank_examples():
    assert rank(identity(4, Q3)) == 4
    assert rank(integer_matrix([[1, 2], [2, 4]], Q3)) == 1
    assert rank(integer_matrix([[0, 0], [0, 0]], FP)) == 0
    w = Q3.primitive_root()
    # rows differ by the factor w, so rank 1 over Q(zeta_3)
    assert rank(DenseMatrix([[Q3.one, 1 + w], [w, w + w * w]])) == 1


def test_kernel_example():
    m = integer_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], Q3)
    (v,) = kernel_basis(m)
    assert not any(m.apply(v))
    assert v == [Q3(-1), Q3(-1), Q3(1)]


@pytest.mark.parametrize("field", [Q3, FP], ids=["cyclotomic", "modular"])
def test_rank_transpose_and_kernel(field):
    rng = np.random.default_rng(1)
    for _ in range(40):
        shape = tuple(int(x) for x in rng.integers(1, 7, size=2))
        cap = int(rng.integers(1, 4))
        m = random_matrix(field, rng, shape, rank_cap=cap)
        r = rank(m)
        assert r == rank(m.transpose())
        assert r <= cap
        ker = kernel_basis(m)
        assert len(ker) == m.ncols - r
        for v in ker:
            assert not any(m.apply(v))


def test_kernel_with_cyclotomic_entries():
    rng = np.random.default_rng(2)
    for _ in range(30):
        rows = [[Q3([int(a), int(b)]) for a, b in rng.integers(-4, 5, size=(5, 2))] for _ in range(3)]
        m = DenseMatrix(rows[:2] + [[x + y for x, y in zip(rows[0], rows[1])]], Q3)
        ker = kernel_basis(m)
        assert len(ker) == 5 - rank(m)
        for v in ker:
            assert not any(m.apply(v))


def test_modular_cyclotomic_rank_agreement():
    rng = np.random.default_rng(3)
    for _ in range(100):
        shape = tuple(int(x) for x in rng.integers(1, 8, size=2))
        a = rng.integers(-5, 6, size=(shape[0], 3)) @ rng.integers(-5, 6, size=(3, shape[1]))
        assert rank(integer_matrix(a.tolist(), Q3)) == rank(integer_matrix(a.tolist(), FP))


def test_to_field_sends_zeta_to_zeta():
    w = Q3.primitive_root()
    m = DenseMatrix([[Q3.one, w], [w, w * w]])
    assert rank(m) == 1
    assert rank(to_field(m, FP)) == 1


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_csv_round_trip(rows):
    w = Q3.primitive_root()
    m = DenseMatrix([[Q3(a) * w + Q3(b) for a, b in zip(r, r[1:] + r[:1])] for r in rows], Q3)
    assert DenseMatrix.from_csv(m.to_csv(), Q3) == m


def test_csv_round_trip_polynomial_entries():
    a0, a1 = variables(2, Q3)
    m = DenseMatrix([[a0**2 - a1, a0 * a1 * Q3.primitive_root()], [a1, a0 - 3]], Q3)
    back = DenseMatrix.from_csv(m.to_csv(var="a"), Q3, nvars=2, var="a")
    assert back == m


def test_symbolic_rank_examples():
    x, y = variables(2, Q3)
    assert symbolic_rank(DenseMatrix([[x, y], [y, x]], Q3)) == 2
    assert symbolic_rank(DenseMatrix([[x, y], [x * x, x * y]], Q3)) == 1
    # Vandermonde in x, y, x+y
    z = x + y
    v = DenseMatrix([[1 + 0 * x, t, t * t] for t in (x, y, z)], Q3)
    cert = symbolic_rank(v, certificate=True)
    assert cert.rank == 3
    # the last Bareiss pivot is the determinant
    assert cert.pivots[-1].degree() == 3


def test_symbolic_rank_skips_zero_columns():
    x, y = variables(2, Q3)
    zero = 0 * x
    m = DenseMatrix([[zero, x, y], [zero, y, x], [zero, x + y, x + y]], Q3)
    assert symbolic_rank(m) == 2


def test_specialization_can_only_lose_rank():
    rng = np.random.default_rng(4)
    x, y, z = variables(3, Q3)
    m = DenseMatrix([[x, y, z], [y, z, x], [x - y, y - z, z - x]], Q3)
    generic = symbolic_rank(m)
    assert generic == 2
    for _ in range(20):
        pt = [int(v) for v in rng.integers(-5, 6, size=3)]
        assert rank(specialize(m, pt)) <= generic
    assert rank(specialize(m, [1, 1, 1])) == 1
    assert rank(specialize(m, [1, 2, 5])) == generic


def test_scalar_matrix_needs_symbolic_rank_for_polys():
    x, _ = variables(2, Q3)
    with pytest.raises(TypeError):
        rank(DenseMatrix([[x]], Q3))
