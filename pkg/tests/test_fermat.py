import pytest

from fatpoints import GeneratorKind, PrimeField, build_configuration, generators, verify_vanishing
from fatpoints.fermat import (
    Configuration,
    UnsupportedParameters,
    fermat_pn_labels,
    rewrite_identity_check,
)
from fatpoints.field import NoRootOfUnity, default_primes
from fatpoints.interpolation import product_span_dim
from fatpoints.linalg import DenseMatrix, rank
from fatpoints.poly import monomials_of_degree


@pytest.mark.parametrize("N, n, size", [(2, 3, 12), (3, 3, 31), (5, 3, 249), (2, 4, 19), (3, 2, 12)])
def test_configuration_sizes(N, n, size):
    assert len(build_configuration(N, n)) == size


def test_fermat_points_are_roots_of_unity():
    cfg = build_configuration(3, 4)
    eps = cfg.field.primitive_root()
    powers = {eps**k for k in range(4)}
    assert len(cfg.fermat_points) == 4**3
    assert len(set(cfg.fermat_points)) == 4**3
    for p in cfg.fermat_points:
        assert p[0] == 1
        assert all(c in powers for c in p)
        assert all(c**4 == 1 for c in p)


def test_coordinate_points_come_last():
    cfg = build_configuration(2, 3)
    assert [tuple(int(c == 1) for c in p) for p in cfg.coordinate_points] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_configuration_over_prime_field():
    f = PrimeField(default_primes(3, 1)[0], 3)
    assert len(build_configuration(5, 3, f)) == 249
    with pytest.raises(NoRootOfUnity):
        build_configuration(2, 3, PrimeField(5, 4))


def test_json_round_trip():
    cfg = build_configuration(2, 5)
    back = Configuration.from_json(cfg.to_json())
    assert back.points == cfg.points
    assert (back.N, back.n, back.field) == (2, 5, cfg.field)


def test_listing_order_for_three_dimensions():
    assert fermat_pn_labels(3)[:4] == [(0, 2), (0, 3), (1, 3), (1, 0)]
    assert fermat_pn_labels(3, "sorted")[:4] == [(0, 2), (0, 3), (1, 0), (1, 3)]
    with pytest.raises(ValueError):
        fermat_pn_labels(3, "other")


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_fermat_pn_generators_independent(N):
    gens = generators(GeneratorKind.FERMAT_PN, N, 3)
    assert len(gens) == N * N - 1
    monos = monomials_of_degree(N + 1, 4)
    m = DenseMatrix([g.coeff_vector(monos) for g in gens], gens[0].field)
    assert rank(m) == N * N - 1


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_fermat_pn_vanish_on_configuration(N):
    f = PrimeField(default_primes(3, 1)[0], 3)
    gens = generators("pn", N, 3, f)
    assert verify_vanishing(gens, build_configuration(N, 3, f)).ok


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_p2_generators_vanish(n):
    assert verify_vanishing(generators("p2", 2, n), build_configuration(2, n)).ok


def test_complete_intersection_misses_coordinate_points():
    cfg = build_configuration(3, 3)
    gens = generators(GeneratorKind.CI, 3, 3)
    for g in gens:
        assert all(not g.evaluate(p) for p in cfg.fermat_points)
    check = verify_vanishing(gens, cfg)
    assert not check.ok
    k, pt = check.witness
    assert pt in cfg.coordinate_points


def test_complete_intersection_cuts_out_fermat_points():
    """In high degree the CI ideal has codimension n^N."""
    gens = generators("ci", 2, 3)
    d = 6
    assert len(monomials_of_degree(3, d)) - product_span_dim(gens, d) == 9


def test_unsupported_parameters():
    with pytest.raises(UnsupportedParameters):
        generators("pn", 3, 4)
    with pytest.raises(UnsupportedParameters):
        generators("p2", 3, 3)
    with pytest.raises(ValueError):
        generators("nope", 3, 3)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_rewrite_identities(N):
    assert rewrite_identity_check(N)
