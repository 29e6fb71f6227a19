import json
from math import comb

import numpy as np
import pytest

from fatpoints import CyclotomicField, GeneratorKind, PrimeField, ProjPoint, build_configuration, generators, kernel_basis
from fatpoints.field import default_primes
from fatpoints.interpolation import (
    DegenerateSamplingExhausted,
    DegreeTooLow,
    FatPointScheme,
    ResourceGuard,
    UnexpectednessReport,
    child_seeds,
    conditions_count_sweep,
    conditions_profile,
    derivative_rows,
    empty_configuration,
    evaluation_matrix,
    sample_general_points,
    symbolic_interpolation_matrix,
    system_dimension,
    system_kernel,
    triple_point_dimension,
    unexpectedness_for,
    unexpectedness_report,
    vanishing_space,
    verify_generation,
)
from fatpoints.linalg import specialize
from fatpoints.poly import Poly, monomials_of_degree
from fatpoints.tables import compare_tables, reference_table

Q3 = CyclotomicField(3)


def test_vanishing_space_dimensions():
    assert len(vanishing_space(build_configuration(2, 3), 4)) == 3
    assert len(vanishing_space(build_configuration(3, 3), 4)) == 8
    for f in vanishing_space(build_configuration(2, 3), 4):
        assert f.is_homogeneous() and f.degree() == 4
        assert all(not f.evaluate(p) for p in build_configuration(2, 3).points)


def test_evaluation_matrix_entries():
    pts = [ProjPoint.of(Q3, [1, 2, 3])]
    monos = monomials_of_degree(3, 2)
    row = evaluation_matrix(pts, monos, Q3).rows[0]
    assert [int(c.coeffs[0]) for c in row] == [1, 2, 3, 4, 6, 9]


def test_derivative_rows_shape_and_degree_guard():
    basis = [Poly.monomial(m, Q3) for m in monomials_of_degree(3, 4)]
    pt = ProjPoint.of(Q3, [1, 2, 3])
    assert derivative_rows(basis, pt, 3).shape == (6, 15)
    with pytest.raises(DegreeTooLow):
        derivative_rows(basis, pt, 5)


def test_euler_reduction_soundness():
    """A quartic whose second partials all vanish at p also has vanishing
    first partials and value at p."""
    rng = np.random.default_rng(7)
    monos = monomials_of_degree(3, 4)
    basis = [Poly.monomial(m, Q3) for m in monos]
    for _ in range(200):
        pt = ProjPoint.of(Q3, [int(v) for v in rng.integers(1, 10, size=3) * rng.choice([-1, 1], size=3)])
        ker = kernel_basis(derivative_rows(basis, pt, 3))
        weights = rng.integers(-5, 6, size=len(ker))
        f = Poly.zero(3, Q3)
        for wt, v in zip(weights, ker):
            for c, g in zip(v, basis):
                if c:
                    f = f + g * (c * int(wt))
        assert not f.evaluate(pt)
        assert all(not f.diff(i).evaluate(pt) for i in range(3))


def test_simple_point_conditions_match_enlarged_configuration():
    cfg = build_configuration(2, 3)
    rng = np.random.default_rng(8)
    extra = sample_general_points(cfg, 4, rng)
    for d in (4, 5):
        scheme = FatPointScheme(cfg, [(p, 1) for p in extra])
        enlarged = type(cfg)(cfg.N, cfg.n, cfg.field, cfg.fermat_points + tuple(extra), cfg.coordinate_points)
        assert system_dimension(scheme, d) == len(vanishing_space(enlarged, d))


def test_profile_monotone_and_bounded():
    cfg = build_configuration(3, 3)
    basis = vanishing_space(cfg, 5)
    rng = np.random.default_rng(9)
    mults = [3, 2, 2, 1]
    pts = sample_general_points(cfg, len(mults), rng)
    prof = conditions_profile(basis, list(zip(pts, mults)))
    incs = [b - a for a, b in zip([0] + prof[:-1], prof)]
    assert all(i >= 0 for i in incs)
    assert all(i <= comb(cfg.N + m - 1, cfg.N) for i, m in zip(incs, mults))


def test_rescaling_invariance():
    cfg = build_configuration(3, 3)
    basis = vanishing_space(cfg, 4)
    rng = np.random.default_rng(10)
    (R,) = sample_general_points(cfg, 1, rng)
    w = Q3.primitive_root()
    for c in (Q3(2), Q3(-7), 1 + w):
        assert conditions_profile(basis, [(R, 3)]) == conditions_profile(basis, [(R.scaled(c), 3)])


def test_scheme_rejects_bad_points():
    cfg = build_configuration(2, 3)
    with pytest.raises(ValueError):
        FatPointScheme(cfg, [(cfg.points[0], 2)])
    p = ProjPoint.of(Q3, [1, 2, 3])
    with pytest.raises(ValueError):
        FatPointScheme(cfg, [(p, 2), (p.scaled(Q3(2)), 1)])


def test_sampling_is_seeded_and_nondegenerate():
    cfg = build_configuration(3, 3)
    a = sample_general_points(cfg, 3, np.random.default_rng(1))
    b = sample_general_points(cfg, 3, np.random.default_rng(1))
    assert a == b
    for p in a:
        assert all(p.coords)
        assert len({c**3 for c in p.coords}) == 4
    with pytest.raises(DegenerateSamplingExhausted):
        sample_general_points(cfg, 1, np.random.default_rng(1), bound=1)


def test_child_seeds_are_deterministic():
    assert child_seeds(0, 3) == child_seeds(0, 3)
    assert len(set(child_seeds(0, 5))) == 5


def test_system_kernel_elements_satisfy_conditions():
    cfg = build_configuration(2, 3)
    rng = np.random.default_rng(11)
    (R,) = sample_general_points(cfg, 1, rng)
    (f,) = system_kernel(vanishing_space(cfg, 5), [(R, 4)])
    for e in monomials_of_degree(3, 3):
        assert not f.diff_multi(e).evaluate(R)


def test_unexpected_curve_in_the_plane():
    rep = unexpectedness_report(build_configuration(2, 3), 5, [4], trials=2, seed=1)
    assert (rep.base_dim, rep.conditions_expected, rep.expected_dim, rep.actual_dim) == (9, 10, 0, 1)
    assert rep.verdict


def test_empty_set_is_not_unexpected():
    rep = unexpectedness_for(2, 3, 6, [3], trials=2, seed=0, empty=True)
    assert rep.base_dim == 28
    assert rep.actual_dim == rep.expected_dim == 22
    assert not rep.verdict


def test_report_json():
    rep = unexpectedness_report(build_configuration(2, 3), 5, [4], trials=1, seed=3)
    d = json.loads(rep.to_json())
    for key in ("degree", "base_dim", "conditions_expected", "virtual_dim", "expected_dim",
                "actual_dim", "rank_per_point", "verdict", "trials", "seeds", "artifact_version", "notes"):
        assert key in d
    assert d["backend"]["kind"] == "cyclotomic"
    assert d["seeds"] == sorted(d["seeds"])
    assert isinstance(rep, UnexpectednessReport)


def test_report_is_reproducible():
    a = unexpectedness_report(build_configuration(2, 4), 6, [4], trials=2, seed=5)
    b = unexpectedness_report(build_configuration(2, 4), 6, [4], trials=2, seed=5)
    assert a == b


def test_modular_backend_agrees():
    rep = unexpectedness_for(2, 3, 5, [4], trials=2, backend="modular")
    assert rep.backend["agree"] and rep.actual_dim == 1


@pytest.mark.parametrize("N, n, d", [(2, 3, 8), (2, 5, 8), (3, 3, 6)])
def test_generation(N, n, d):
    res = verify_generation(N, n, d)
    assert res.ok
    assert [r.degree for r in res.rows] == list(range(1, d + 1))


def test_generation_over_cyclotomic_field():
    assert verify_generation(2, 3, 6, Q3).ok


def test_triple_point_dimension():
    assert triple_point_dimension(3, trials=2) == {"Q(zeta_3)": [1, 1]}
    assert triple_point_dimension(5, trials=2) == {"Q(zeta_3)": [6, 6]}


def test_sweep_small_case():
    (row,) = conditions_count_sweep([2], trials=2)
    assert row.ok
    assert row.dims == [6, 1] and row.increments == [5]
    with pytest.raises(ResourceGuard):
        conditions_count_sweep([9])


@pytest.mark.parametrize("N", [3, 5])
def test_tables_match_reference(N):
    assert compare_tables(symbolic_interpolation_matrix(N), reference_table(N)) == []


def test_symbolic_matrix_specializes_to_derivative_rows():
    m, factors = symbolic_interpolation_matrix(3, with_factors=True)
    gens = generators(GeneratorKind.FERMAT_PN, 3, 3, order="sorted")
    rng = np.random.default_rng(12)
    for _ in range(5):
        a = [int(v) for v in rng.integers(-20, 21, size=4)]
        if not all(a):
            continue
        direct = derivative_rows(gens, ProjPoint.of(Q3, a), 3)
        spec = specialize(m, a)
        for row, fac, drow in zip(spec.rows, factors, direct.rows):
            s = fac.evaluate(a)
            assert [x * s for x in row] == list(drow)


def test_dimension_on_prime_field():
    f = PrimeField(default_primes(3, 1)[0], 3)
    cfg = build_configuration(3, 3, f)
    assert len(vanishing_space(cfg, 4)) == 8
    assert len(vanishing_space(empty_configuration(3, f), 2)) == 10
