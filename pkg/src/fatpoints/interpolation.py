"""Fat-point conditions, dimensions of linear systems and unexpectedness.

A fat point mP imposes the vanishing of all partial derivatives of order
m-1 at P.  For homogeneous forms of degree d > m-1 the Euler identity makes
the lower-order derivatives redundant, so only the top order is emitted.

Dimensions at "general" points are estimated from random points: each
trial gives an upper bound for the generic dimension (specialisation can
only lose rank), and the report keeps the minimum over trials.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from functools import lru_cache
from math import comb, gcd

import numpy as np

from . import __version__
from .field import CYCLOTOMIC, MODULAR, FieldSpec, PrimeField, default_primes, make_field
from .fermat import (
    Configuration,
    GeneratorKind,
    UnsupportedParameters,
    build_configuration,
    generators,
)
from .linalg import DenseMatrix, kernel_basis, rank
from .poly import Poly, ProjPoint, monomials_of_degree

SCHEMA_VERSION = 1


class DegreeTooLow(ValueError):
    pass


class DegenerateSamplingExhausted(RuntimeError):
    pass


class ResourceGuard(RuntimeError):
    pass


def empty_configuration(N: int, field) -> Configuration:
    return Configuration(N, 1, field, (), ())


# ---------------------------------------------------------------------------
# evaluation and vanishing spaces
# ---------------------------------------------------------------------------


def evaluation_matrix(points, monos, field) -> DenseMatrix:
    """Rows indexed by points, columns by monomials; entry = monomial(point)."""
    rows = []
    top = max((max(m) for m in monos), default=0)
    for pt in points:
        pw = []
        for c in pt.coords:
            row = [field.one]
            for _ in range(top):
                row.append(row[-1] * c)
            pw.append(row)
        vals = []
        for m in monos:
            v = field.one
            for i, e in enumerate(m):
                if e:
                    v = v * pw[i][e]
            vals.append(v)
        rows.append(vals)
    return DenseMatrix(rows, field, ncols=len(monos))


@lru_cache(maxsize=64)
def _vanishing_space(config: Configuration, d: int) -> tuple:
    nvars = config.N + 1
    monos = monomials_of_degree(nvars, d)
    if not config.points:
        return tuple(Poly.monomial(m, config.field) for m in monos)
    ev = evaluation_matrix(config.points, monos, config.field)
    out = []
    for vec in kernel_basis(ev):
        out.append(Poly(config.field, nvars, {m: c for m, c in zip(monos, vec) if c}))
    return tuple(out)


def vanishing_space(config: Configuration, d: int) -> list[Poly]:
    """Basis of the degree-d forms vanishing at every point of ``config``."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return list(_vanishing_space(config, d))


# ---------------------------------------------------------------------------
# fat point conditions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def _derivative_polys(basis: tuple, m: int) -> tuple:
    nvars = basis[0].nvars
    idx = monomials_of_degree(nvars, m - 1)
    return tuple(tuple(g.diff_multi(e) for g in basis) for e in idx)


def derivative_rows(basis, pt: ProjPoint, m: int) -> DenseMatrix:
    """Order-(m-1) partial derivatives of each basis form, evaluated at ``pt``.

    One row per derivative multi-index (graded lex), one column per basis
    element.
    """
    basis = tuple(basis)
    if not basis:
        return DenseMatrix([], pt.field, ncols=0)
    d = max(g.degree() for g in basis)
    if d <= m - 1:
        raise DegreeTooLow(f"forms of degree {d} cannot carry a point of multiplicity {m}")
    field = basis[0].field
    coords = tuple(field(c) for c in pt.coords)
    rows = [[g.evaluate(coords) for g in row] for row in _derivative_polys(basis, m)]
    return DenseMatrix(rows, field, ncols=len(basis))


def stacked_conditions(basis, points_mults) -> DenseMatrix:
    basis = tuple(basis)
    field = basis[0].field
    rows = []
    for pt, m in points_mults:
        rows.extend(derivative_rows(basis, pt, m).rows)
    return DenseMatrix(rows, field, ncols=len(basis))


def conditions_profile(basis, points_mults) -> list[int]:
    """Cumulative rank of the stacked conditions after each point."""
    basis = tuple(basis)
    out = []
    rows: list = []
    for pt, m in points_mults:
        rows.extend(derivative_rows(basis, pt, m).rows)
        out.append(rank(DenseMatrix(rows, basis[0].field, ncols=len(basis))))
    return out


@dataclass
class FatPointScheme:
    base: Configuration
    general_points: list = dc_field(default_factory=list)  # [(ProjPoint, multiplicity)]

    def __post_init__(self):
        for pt, m in self.general_points:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            for q in self.base.points:
                if pt.same_point(q):
                    raise ValueError(f"{pt} coincides with a base point")
        pts = [p for p, _ in self.general_points]
        for i in range(len(pts)):
            for j in range(i):
                if pts[i].same_point(pts[j]):
                    raise ValueError("general points must be distinct")


def system_dimension(scheme: FatPointScheme, d: int, basis=None) -> int:
    """dim of the degree-d forms through the base that satisfy all fat-point conditions.

    ``basis`` may supply a known basis of the base system (for instance the
    ideal generators); by default it is computed by :func:`vanishing_space`.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    basis = tuple(basis) if basis is not None else tuple(vanishing_space(scheme.base, d))
    if not basis:
        return 0
    if not scheme.general_points:
        return len(basis)
    return len(basis) - rank(stacked_conditions(basis, scheme.general_points))


def system_kernel(basis, points_mults) -> list[Poly]:
    """Basis of the forms in span(basis) satisfying the given fat-point conditions."""
    basis = tuple(basis)
    field = basis[0].field
    mat = stacked_conditions(basis, points_mults)
    out = []
    for vec in kernel_basis(mat):
        f = Poly.zero(basis[0].nvars, field)
        for c, g in zip(vec, basis):
            if c:
                f = f + g * c
        out.append(f)
    return out


def coordinates_in_span(f: Poly, basis) -> list | None:
    """Coefficients c with f = sum c_k basis[k], or None if f is outside the span."""
    basis = list(basis)
    monos = sorted({m for g in basis + [f] for m in g.terms}, reverse=True)
    field = f.field
    cols = [g.coeff_vector(monos) for g in basis] + [(-f).coeff_vector(monos)]
    mat = DenseMatrix([list(r) for r in zip(*cols)], field, ncols=len(cols))
    for vec in kernel_basis(mat):
        if vec[-1]:
            inv = vec[-1].inverse()
            coeffs = [c * inv for c in vec[:-1]]
            return coeffs
    return None


# ---------------------------------------------------------------------------
# random general points
# ---------------------------------------------------------------------------


def is_nondegenerate(pt: ProjPoint, n: int) -> bool:
    """All coordinates nonzero and their n-th powers pairwise distinct."""
    if any(not c for c in pt.coords):
        return False
    powers = [c**n for c in pt.coords]
    return len(set(powers)) == len(powers)


def sample_general_points(
    config: Configuration,
    count: int,
    rng: np.random.Generator,
    bound: int = 100,
    budget: int = 100,
    avoid=(),
) -> list[ProjPoint]:
    field = config.field
    n = max(config.n, 1)
    taken = list(avoid)
    out = []
    for _ in range(count):
        for _attempt in range(budget):
            coords = tuple(field.random_element(rng, bound) for _ in range(config.N + 1))
            if not all(coords):
                continue
            pt = ProjPoint(coords)
            if not is_nondegenerate(pt, n):
                continue
            if any(pt.same_point(q) for q in taken) or any(pt.same_point(q) for q in config.points):
                continue
            break
        else:
            raise DegenerateSamplingExhausted(f"no admissible point after {budget} draws")
        out.append(pt)
        taken.append(pt)
    return out


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent per-trial seeds derived from one master seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


# ---------------------------------------------------------------------------
# unexpectedness
# ---------------------------------------------------------------------------


NOTES = (
    "base_dim is the computed dimension of the degree-d system through the base "
    "configuration; expected counts are applied on top of it. actual_dim is the "
    "minimum over random trials: an upper bound for the generic dimension, and a "
    "rigorous witness of unexpectedness whenever it exceeds expected_dim."
)


@dataclass
class UnexpectednessReport:
    degree: int
    base_dim: int
    conditions_expected: int
    virtual_dim: int
    expected_dim: int
    actual_dim: int
    rank_per_point: list
    verdict: bool
    trials: int
    seeds: list
    N: int = 0
    multiplicities: list = dc_field(default_factory=list)
    backend: dict = dc_field(default_factory=dict)
    trial_dims: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["artifact_version"] = __version__
        d["schema_version"] = SCHEMA_VERSION
        d["notes"] = NOTES
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def expected_conditions(N: int, mults) -> int:
    return sum(comb(N + m - 1, N) for m in mults)


def unexpectedness_report(
    config: Configuration,
    degree: int,
    mults,
    trials: int = 3,
    seed: int = 0,
    basis=None,
    bound: int = 100,
) -> UnexpectednessReport:
    """Decide whether general fat points with multiplicities ``mults`` fail to
    impose independent conditions on degree-``degree`` forms through ``config``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    mults = [int(m) for m in mults]
    basis = tuple(basis) if basis is not None else tuple(vanishing_space(config, degree))
    base_dim = len(basis)
    cond = expected_conditions(config.N, mults)
    virtual = base_dim - cond
    expected = max(virtual, 0)
    seeds = child_seeds(seed, trials)
    best = None
    dims = []
    for s in seeds:
        rng = np.random.default_rng(s)
        pts = sample_general_points(config, len(mults), rng, bound=bound)
        if base_dim:
            prof = conditions_profile(basis, list(zip(pts, mults)))
        else:
            prof = [0] * len(mults)
        dim = base_dim - (prof[-1] if prof else 0)
        per_point = [b - a for a, b in zip([0] + prof[:-1], prof)]
        dims.append(dim)
        if best is None or dim < best[0]:
            best = (dim, per_point)
    actual, per_point = best
    return UnexpectednessReport(
        degree=degree,
        base_dim=base_dim,
        conditions_expected=cond,
        virtual_dim=virtual,
        expected_dim=expected,
        actual_dim=actual,
        rank_per_point=per_point,
        verdict=actual > expected,
        trials=trials,
        seeds=sorted(seeds),
        N=config.N,
        multiplicities=mults,
        backend=config.field.spec.to_dict(),
        trial_dims=dims,
    )


def backend_fields(kind: str, n: int, N: int):
    """Fields to run on: ``auto`` means Q(zeta_n) for N <= 5 and two primes above."""
    if kind == "auto":
        kind = CYCLOTOMIC if N <= 5 else MODULAR
    if kind == CYCLOTOMIC:
        return [make_field(FieldSpec(CYCLOTOMIC, n))]
    if kind == MODULAR:
        return [PrimeField(p, n) for p in default_primes(n, 2)]
    raise ValueError(f"unknown backend {kind!r}")


def unexpectedness_for(
    N: int,
    n: int,
    degree: int,
    mults,
    trials: int = 3,
    seed: int = 0,
    backend: str = "auto",
    empty: bool = False,
) -> UnexpectednessReport:
    """Report for W_{N,n} (or the empty set) on the requested backend.

    On the modular backend the computation is repeated over two primes and
    the smaller actual dimension is kept.
    """
    reports = []
    for f in backend_fields(backend, n, N):
        config = empty_configuration(N, f) if empty else build_configuration(N, n, f)
        reports.append(unexpectedness_report(config, degree, mults, trials, seed))
    rep = min(reports, key=lambda r: r.actual_dim)
    if len(reports) > 1:
        rep.backend = {
            "kind": MODULAR,
            "n": n,
            "primes": [r.backend["p"] for r in reports],
            "actual_dims": [r.actual_dim for r in reports],
            "agree": len({r.actual_dim for r in reports}) == 1,
        }
    return rep


# ---------------------------------------------------------------------------
# ideal generation, degree by degree
# ---------------------------------------------------------------------------


@dataclass
class GenerationRow:
    degree: int
    monomials: int
    kernel_dim: int
    span_dim: int

    @property
    def equal(self) -> bool:
        return self.kernel_dim == self.span_dim


@dataclass
class GenerationResult:
    N: int
    n: int
    rows: list
    backend: dict

    @property
    def ok(self) -> bool:
        return all(r.equal for r in self.rows)

    def table(self) -> list[dict]:
        return [dict(asdict(r), equal=r.equal) for r in self.rows]


def ideal_generators(N: int, n: int, field):
    if N == 2 and n >= 3:
        return generators(GeneratorKind.FERMAT_P2, 2, n, field)
    if N >= 3 and n == 3:
        return generators(GeneratorKind.FERMAT_PN, N, 3, field)
    raise UnsupportedParameters("generation is known for (N=2, n>=3) and (N>=3, n=3)")


def product_span_dim(gens, d: int) -> int:
    """dim of the span of {monomial * g} in degree d."""
    gens = list(gens)
    nvars = gens[0].nvars
    field = gens[0].field
    monos = monomials_of_degree(nvars, d)
    col = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        e = d - g.degree()
        if e < 0:
            continue
        for mult in monomials_of_degree(nvars, e):
            row = [field.zero] * len(monos)
            for m, c in g.terms.items():
                row[col[tuple(a + b for a, b in zip(m, mult))]] = c
            rows.append(row)
    if not rows:
        return 0
    return rank(DenseMatrix(rows, field, ncols=len(monos)))


def verify_generation(N: int, n: int, d_max: int, field=None) -> GenerationResult:
    """Compare, in each degree d <= d_max, the span of monomial multiples of
    the generators with the evaluation kernel of W_{N,n}.

    Over F_p (the default) equality in every degree still certifies the
    statement over Q(zeta_n): reduction mod p can only lower the rank of the
    product matrix and only raise the kernel dimension, while the products
    always lie in the kernel.
    """
    if field is None:
        field = PrimeField(default_primes(n, 1)[0], n)
    gens = ideal_generators(N, n, field)
    deg = max(g.degree() for g in gens)
    if d_max < deg:
        raise UnsupportedParameters(f"d_max must be at least the generator degree {deg}")
    config = build_configuration(N, n, field)
    rows = []
    for d in range(1, d_max + 1):
        monos = monomials_of_degree(N + 1, d)
        ker = len(monos) - rank(evaluation_matrix(config.points, monos, field))
        rows.append(GenerationRow(d, len(monos), ker, product_span_dim(gens, d)))
    return GenerationResult(N, n, rows, field.spec.to_dict())


# ---------------------------------------------------------------------------
# interpolation tables for a triple point
# ---------------------------------------------------------------------------


def _row_normalizer(row) -> Poly | None:
    """Greatest common monomial times positive integer content of a row of polys."""
    nonzero = [x for x in row if x]
    if not nonzero:
        return None
    nvars = nonzero[0].nvars
    field = nonzero[0].field
    mono = [min(m[i] for x in nonzero for m in x.terms) for i in range(nvars)]
    content = 0
    for x in nonzero:
        for c in x.terms.values():
            if not c.is_rational() or c.coeffs[0].denominator != 1:
                return Poly.monomial(mono, field)
            content = gcd(content, c.coeffs[0].numerator)
    return Poly.monomial(mono, field, content)


def raw_symbolic_interpolation_matrix(N: int, field=None) -> DenseMatrix:
    """Second partials of the generators at the symbolic point (a_0 : ... : a_N).

    Entries are polynomials in N+1 variables standing for a_0..a_N.
    Columns follow the sorted generator order used by the printed tables.
    """
    if N not in (3, 5):
        raise UnsupportedParameters("tables exist for N = 3 and N = 5")
    field = field if field is not None else make_field(FieldSpec(CYCLOTOMIC, 3))
    gens = generators(GeneratorKind.FERMAT_PN, N, 3, field, order="sorted")
    # evaluating x_i at a_i leaves the polynomial unchanged, renamed
    rows = [list(r) for r in _derivative_polys(tuple(gens.gens), 3)]
    return DenseMatrix(rows, field, ncols=len(gens))


def symbolic_interpolation_matrix(N: int, field=None, with_factors: bool = False):
    """Interpolation matrix for a triple point with each row divided by the
    greatest common monomial and integer content of its entries."""
    raw = raw_symbolic_interpolation_matrix(N, field)
    rows, factors = [], []
    for row in raw.rows:
        fac = _row_normalizer(row)
        factors.append(fac)
        rows.append([x.exact_div(fac) if fac is not None else x for x in row])
    m = DenseMatrix(rows, raw.field, ncols=raw.ncols)
    return (m, factors) if with_factors else m


# ---------------------------------------------------------------------------
# the triple point + double points sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    k: int
    N: int
    dim_triple: int
    expected_dim_triple: int
    dims: list  # dimension after the triple point and after each double point
    increments: list
    expected_increments: list
    total_conditions: int
    expected_total: int
    primes: list
    agree: bool
    trial_dims: list

    @property
    def ok(self) -> bool:
        return (
            self.agree
            and self.dim_triple == self.expected_dim_triple
            and self.increments == self.expected_increments
            and self.total_conditions == self.expected_total
        )


def triple_point_dimension(N: int, trials: int = 3, seed: int = 0, backend: str = "auto") -> dict:
    """dim of quartics in the Fermat ideal F_{N,3} with a general triple point."""
    out = {}
    for f in backend_fields(backend, 3, N):
        gens = generators(GeneratorKind.FERMAT_PN, N, 3, f).gens
        # nondegenerate samples already avoid every point of W_{N,3}
        config = Configuration(N, 3, f, (), ())
        dims = []
        for s in child_seeds(seed, trials):
            (R,) = sample_general_points(config, 1, np.random.default_rng(s))
            dims.append(len(gens) - rank(derivative_rows(gens, R, 3)))
        out[str(f.spec)] = dims
    return out


def conditions_count_sweep(k_list, trials: int = 3, seed: int = 0, backend: str = "auto", max_k: int = 4) -> list[SweepRow]:
    """Add k-1 general double points to a general triple point in P^{2k+1}
    and record how many conditions each one imposes on quartics of F_{N,3}.
    """
    out = []
    for k in k_list:
        if k < 2:
            raise ValueError("k must be >= 2")
        if k > max_k:
            raise ResourceGuard(f"k={k} exceeds the configured bound {max_k}")
        N = 2 * k + 1
        per_field = []
        for f in backend_fields(backend, 3, N):
            gens = generators(GeneratorKind.FERMAT_PN, N, 3, f).gens
            # nondegenerate samples already avoid every point of W_{N,3}
            config = Configuration(N, 3, f, (), ())
            trial = []
            for s in child_seeds(seed, trials):
                rng = np.random.default_rng(s)
                pts = sample_general_points(config, k, rng)
                prof = conditions_profile(gens, [(pts[0], 3)] + [(p, 2) for p in pts[1:]])
                trial.append([len(gens) - r for r in prof])
            per_field.append((f, trial))
        # generic estimate: entrywise minimum over trials and fields
        all_trials = [t for _, tr in per_field for t in tr]
        dims = [min(col) for col in zip(*all_trials)]
        finals = {str(f.spec): min(t[-1] for t in tr) for f, tr in per_field}
        inc = [a - b for a, b in zip(dims, dims[1:])]
        exp_inc = [2 * k + 2] * (k - 2) + [k + 3]
        out.append(
            SweepRow(
                k=k,
                N=N,
                dim_triple=dims[0],
                expected_dim_triple=comb(N - 1, 2),
                dims=dims,
                increments=inc,
                expected_increments=exp_inc,
                total_conditions=sum(inc),
                expected_total=2 * k * k - k - 1,
                primes=[f.p for f, _ in per_field if f.p is not None],
                agree=len(set(finals.values())) == 1,
                trial_dims=all_trials,
            )
        )
    return out
