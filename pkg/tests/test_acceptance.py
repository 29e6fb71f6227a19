"""Acceptance checks, one per criterion, each with a wall-clock limit.

Run with ``pytest tests/test_acceptance.py -v`` (a summary line per
criterion is printed at the end) or directly with
``python tests/test_acceptance.py``.
"""
import time
from math import comb

import numpy as np
import pytest

from fatpoints import (
    CyclotomicField,
    GeneratorKind,
    Poly,
    PrimeField,
    build_configuration,
    generators,
    kernel_basis,
    monomials_of_degree,
    rank,
    symbolic_rank,
    variables,
)
from fatpoints.constructions import curve_QP, qr_derivative_identities, quartic_QR, quartic_QRP
from fatpoints.field import default_primes
from fatpoints.interpolation import (
    conditions_count_sweep,
    derivative_rows,
    sample_general_points,
    symbolic_interpolation_matrix,
    triple_point_dimension,
    unexpectedness_for,
    verify_generation,
)
from fatpoints.linalg import DenseMatrix, integer_matrix
from fatpoints.poly import bracket
from fatpoints.tables import compare_tables, reference_table

Q3 = CyclotomicField(3)
RESULTS: list[str] = []


def _general(N, n, count, seed, field=None):
    cfg = build_configuration(N, n, field)
    return sample_general_points(cfg, count, np.random.default_rng(seed), bound=50)


def criterion_1():
    sizes = {(5, 3): 249, (2, 3): 12, (3, 3): 31}
    got = {k: len(build_configuration(*k)) for k in sizes}
    return got == sizes, f"sizes {got}"


def criterion_2():
    details = []
    ok = True
    for N, count in ((3, 8), (5, 24)):
        gens = generators(GeneratorKind.FERMAT_PN, N, 3)
        monos = monomials_of_degree(N + 1, 4)
        r = rank(DenseMatrix([g.coeff_vector(monos) for g in gens], Q3))
        ok &= len(gens) == count == r
        details.append(f"N={N}: {len(gens)} generators, rank {r}")
    return ok, "; ".join(details)


def criterion_3():
    cases = [(2, n, 8) for n in range(3, 7)] + [(N, 3, 6) for N in range(3, 6)]
    bad = [(N, n) for N, n, d in cases if not verify_generation(N, n, d).ok]
    return not bad, f"{len(cases) - len(bad)}/{len(cases)} cases equal in every degree"


def criterion_4():
    gens = generators(GeneratorKind.FERMAT_PN, 5, 3).gens
    ranks = []
    for s in (1, 2, 3):
        (R,) = _general(5, 3, 1, seed=s)
        m = derivative_rows(gens, R, 3)
        assert m.shape == (21, 24)
        ranks.append(rank(m))
    return ranks == [18, 18, 18], f"ranks {ranks}, dim V = {24 - min(ranks)}"


def criterion_5():
    got = {}
    ok = True
    for N in (3, 5, 7):
        dims = triple_point_dimension(N, trials=3, seed=0)
        values = {d for ds in dims.values() for d in ds}
        if N == 7:
            ok &= len(dims) == 2 and all("GF(" in k for k in dims)
        ok &= values == {comb(N - 1, 2)}
        got[N] = sorted(values)
    return ok, f"dims {got} (expected 1, 6, 15; N=7 over two primes)"


def criterion_6():
    rows = {r.k: r for r in conditions_count_sweep([2, 3], trials=3, seed=0)}
    ok = (
        rows[2].ok
        and rows[2].total_conditions == 5
        and rows[3].ok
        and rows[3].increments == [8, 6]
        and rows[3].total_conditions == 14
    )
    return ok, f"k=2 increments {rows[2].increments}, k=3 increments {rows[3].increments}"


def criterion_7():
    counts = []
    ok = True
    for n in (3, 4, 5):
        for R in _general(2, n, 5, seed=n):
            res = curve_QP(n, R)
            ok &= res.verified and res.measured_multiplicities == [4] and res.base_vanishing[0] == len(res.base_config)
        counts.append(f"Q_P n={n}")
    for R in _general(3, 3, 5, seed=7):
        res = quartic_QR(R)
        ok &= res.verified and res.measured_multiplicities == [3]
    for s in range(5):
        R, P = _general(5, 3, 2, seed=100 + s)
        res = quartic_QRP(R, P)
        ok &= res.verified and res.measured_multiplicities == [3, 2] and res.base_vanishing == (249, 249)
    return ok, "Q_P (n=3,4,5), Q_R and Q_{R,P} at 5 random points each"


def criterion_8():
    m = symbolic_interpolation_matrix(3)
    diff = compare_tables(m, reference_table(3))
    r = symbolic_rank(m)
    ids = qr_derivative_identities()
    return not diff and r == 7 and all(ids.values()), f"table diff {diff or 'none'}, generic rank {r}, identities {ids}"


def criterion_9():
    main = unexpectedness_for(5, 3, 4, [3, 2], trials=3, seed=0)
    ok = main.verdict and main.actual_dim == 1 and main.expected_dim == 0
    curves = [unexpectedness_for(2, n, n + 2, [4], trials=3, seed=0) for n in (3, 4, 5)]
    ok &= all(r.verdict for r in curves)
    control = unexpectedness_for(2, 3, 6, [3], trials=3, seed=0, empty=True)
    ok &= not control.verdict
    return ok, (
        f"W_5,3: actual {main.actual_dim} vs expected {main.expected_dim}; "
        f"curves {[r.verdict for r in curves]}; control verdict {control.verdict}"
    )


def _random_small_poly(rng, nvars=3):
    terms = {}
    for _ in range(int(rng.integers(0, 4))):
        m = tuple(int(e) for e in rng.integers(0, 3, size=nvars))
        terms[m] = Q3([int(c) for c in rng.integers(-9, 10, size=2)])
    return Poly(Q3, nvars, terms)


def criterion_10():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        a, b, c = (_random_small_poly(rng) for _ in range(3))
        if a**3 * bracket(b, c) + b**3 * bracket(c, a) + c**3 * bracket(a, b):
            return False, "Jacobi-type identity failed"
    x = variables(3, Q3)
    for _ in range(500):
        d = int(rng.integers(1, 6))
        monos = monomials_of_degree(3, d)
        picks = rng.choice(len(monos), size=min(5, len(monos)), replace=False)
        f = Poly(Q3, 3, {monos[k]: Q3([int(c) for c in rng.integers(-9, 10, size=2)]) for k in picks})
        euler = sum((x[i] * f.diff(i) for i in range(3)), Poly.zero(3, Q3))
        if euler != f * d:
            return False, "Euler identity failed"
    fp = PrimeField(default_primes(3, 1)[0], 3)
    for field in (Q3, fp):
        for _ in range(1000):
            if field is Q3:
                a, b, c = (Q3([int(v) for v in rng.integers(-30, 31, size=2)]) for _ in range(3))
            else:
                a, b, c = (fp.random_element(rng) for _ in range(3))
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or (a and a * a.inverse() != field.one):
                return False, f"field axioms failed over {field}"
    for _ in range(100):
        shape = tuple(int(s) for s in rng.integers(1, 8, size=2))
        arr = (rng.integers(-5, 6, size=(shape[0], 3)) @ rng.integers(-5, 6, size=(3, shape[1]))).tolist()
        mq, mp = integer_matrix(arr, Q3), integer_matrix(arr, fp)
        if rank(mq) != rank(mp):
            return False, "rank disagreement"
        for m in (mq, mp):
            if any(any(m.apply(v)) for v in kernel_basis(m)):
                return False, "kernel vector does not annihilate"
    return True, "1000 Jacobi triples, 500 Euler forms, 2x1000 axiom triples, 100 matrices"


CRITERIA = [
    (1, criterion_1, 1.0),
    (2, criterion_2, 1.0),
    (3, criterion_3, 60.0),
    (4, criterion_4, 1.0),
    (5, criterion_5, 300.0),
    (6, criterion_6, 300.0),
    (7, criterion_7, 30.0),
    (8, criterion_8, 10.0),
    (9, criterion_9, 60.0),
    (10, criterion_10, 60.0),
]


def run_criterion(num, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed <= limit
    line = f"criterion {num:2d}: {'PASS' if passed else 'FAIL'} ({elapsed:.2f}s, limit {limit:g}s) {detail}"
    print(line)
    RESULTS.append(line)
    return passed, elapsed, detail


@pytest.mark.parametrize("num, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, fn, limit):
    passed, elapsed, detail = run_criterion(num, fn, limit)
    assert passed, f"{detail} ({elapsed:.2f}s, limit {limit}s)"


if __name__ == "__main__":
    import sys

    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
