"""Reduction numbers of standard graded algebras.

A candidate minimal reduction of A = R/I is parameterized by a d x m matrix
``alpha``; its rows are linear forms y_i.  The degree-n reduction matrix
M_n(alpha) stacks the coefficient vectors of y_i * g (deg g = n-1) and
f_j * h (deg h = n - deg f_j).  Q = (y) is a reduction exactly when some
M_n(alpha) has full column rank, and r_Q(A) + 1 is the first such n.

Ranks are computed by splitting off the constant block: the f_j * h rows
span I_n, so ``rank M_n = dim I_n + rank Y_n`` where Y_n holds the normal
forms of y_i * g over the standard monomials of degree n.  Y_n is a linear
combination of the multiplication maps A_{n-1} -> A_n, computed once per
presentation.  The literal matrix is still available through
:func:`build_reduction_matrix` and is cross-checked in the tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .errors import GuardError, InconsistencyError, SamplingError
from .field import PrimeField
from .graded import Presentation, check_columns, polynomial_ring_hilbert
from .groebner import Ideal, eliminate, intersect_all, krull_dimension, radical_member
from .poly import PolyRing, Polynomial, linear_form, monomials_of_degree

DEFAULT_TRIALS = 5
DEFAULT_MAX_DEGREE = 50
SYMBOLIC_MAX_PARAMS = 6
SYMBOLIC_MAX_GEN_DEGREE = 6
SYMBOLIC_MAX_SIDE = 12


@dataclass(frozen=True)
class ReductionParams:
    """A d x m coefficient matrix; row i is the linear form sum_j alpha[i][j] x_j."""

    alpha: tuple
    field: PrimeField

    def __post_init__(self):
        rows = tuple(tuple(self.field(c) for c in row) for row in self.alpha)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged coefficient matrix")
        object.__setattr__(self, "alpha", rows)

    @classmethod
    def from_rows(cls, rows, field: PrimeField) -> "ReductionParams":
        return cls(tuple(tuple(r) for r in rows), field)

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def m(self) -> int | None:
        return len(self.alpha[0]) if self.alpha else None

    def forms(self, ring: PolyRing) -> list[Polynomial]:
        return [linear_form(ring, row) for row in self.alpha]

    def transform(self, T: Sequence[Sequence[int]]) -> "ReductionParams":
        """Row-space change ``T @ alpha``."""
        f = self.field
        rows = []
        for trow in T:
            rows.append([f(sum(t * a[j] for t, a in zip(trow, self.alpha))) for j in range(self.m)])
        return ReductionParams.from_rows(rows, f)

    def support(self) -> tuple:
        return tuple(tuple(int(bool(c)) for c in row) for row in self.alpha)

    def as_lists(self) -> list:
        return [[int(c) if self.field.p else str(c) for c in row] for row in self.alpha]


def random_linear_forms(field: PrimeField, d: int, m: int, seed) -> ReductionParams:
    """Seeded uniform d x m matrix over the field."""
    if d < 0 or m < 0:
        raise ValueError("negative size")
    if d > m:
        raise ValueError(f"d={d} exceeds the number of variables m={m}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return ReductionParams.from_rows([[field.random_element(rng) for _ in range(m)] for _ in range(d)], field)


@dataclass
class ReductionMatrix:
    degree: int
    rows: np.ndarray
    row_labels: list
    columns: list
    field: PrimeField

    @property
    def target(self) -> int:
        return len(self.columns)

    def rank(self) -> int:
        return linalg.rank(self.rows, self.field) if self.rows.size else 0


@dataclass
class ReductionReport:
    is_reduction: bool
    r_value: int | None
    witness_degree: int | None
    rank_trace: list = field(default_factory=list)
    method: str = "matrix"
    trials: int = 1
    seed: object = None
    per_trial: list = field(default_factory=list)
    disagreement: bool = False
    dimension: int | None = None
    alpha: list | None = None

    def to_json(self) -> dict:
        out = {
            "is_reduction": self.is_reduction,
            "r": self.r_value,
            "witness_degree": self.witness_degree,
            "rank_trace": [{"n": n, "rank": r, "target": t} for n, r, t in self.rank_trace],
            "method": self.method,
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.per_trial:
            out["per_trial"] = self.per_trial
            out["disagreement"] = self.disagreement
        if not self.is_reduction:
            out["residual_dimension"] = self.dimension
        return out


def _check_params(P: Presentation, alpha: ReductionParams):
    if alpha.d != P.dim:
        raise ValueError(f"expected {P.dim} linear forms (the dimension), got {alpha.d}")
    if alpha.d and alpha.m != P.nvars:
        raise ValueError(f"linear forms need {P.nvars} coefficients, got {alpha.m}")
    if alpha.field != P.field:
        raise ValueError("parameters over a different field")


def build_reduction_matrix(P: Presentation, alpha: ReductionParams, n: int) -> ReductionMatrix:
    """The literal coefficient matrix M_n(alpha)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    m = P.nvars
    check_columns(m, n)
    cols = monomials_of_degree(m, n)
    index = {c: k for k, c in enumerate(cols)}
    rows, labels = [], []
    ring = P.ring
    for i, y in enumerate(alpha.forms(ring)):
        for g in monomials_of_degree(m, n - 1):
            rows.append(_coeff_row(y.mul_monomial(g), index))
            labels.append(("y", i, g))
    for j, f in enumerate(P.gens):
        for h in monomials_of_degree(m, n - f.degree()):
            rows.append(_coeff_row(f.mul_monomial(h), index))
            labels.append(("f", j, h))
    mat = linalg.as_matrix(rows, P.field, ncols=len(cols)).reshape(len(rows), len(cols))
    return ReductionMatrix(n, mat, labels, cols, P.field)


def _coeff_row(f: Polynomial, index: dict) -> list:
    row = [0] * len(index)
    for mono, c in f._t.items():
        row[index[mono]] = c
    return row


def reduced_block(P: Presentation, alpha: ReductionParams, n: int) -> np.ndarray:
    """Normal forms of y_i * g on the degree-n standard monomials (rows i, g)."""
    maps = P.multiplication_maps(n)
    blocks = [linalg.combine(maps, row, P.field) for row in alpha.alpha]
    if not blocks:
        return linalg.as_matrix([], P.field, ncols=P.hilbert(n)).reshape(0, P.hilbert(n))
    return np.concatenate(blocks, axis=0)


def matrix_rank(P: Presentation, alpha: ReductionParams, n: int) -> int:
    """rank M_n(alpha) via the split dim I_n + rank Y_n."""
    if n == 0:
        return 0
    total = polynomial_ring_hilbert(P.nvars, n)
    h = P.hilbert(n)
    if h == 0:
        return total
    rank_y = linalg.rank(reduced_block(P, alpha, n), P.field) if alpha.d else 0
    return total - h + rank_y


def rank_profile(P: Presentation, alpha: ReductionParams, up_to: int) -> list[tuple]:
    return [(n, matrix_rank(P, alpha, n), polynomial_ring_hilbert(P.nvars, n)) for n in range(up_to + 1)]


def reduction_number_of(P: Presentation, alpha: ReductionParams, max_degree: int = DEFAULT_MAX_DEGREE) -> ReductionReport:
    """Decide whether alpha parameterizes a minimal reduction and find r_Q(A)."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    _check_params(P, alpha)
    forms = alpha.forms(P.ring)
    if alpha.d:
        residual = krull_dimension(P.ideal + forms)
    else:
        residual = P.dim
    report = ReductionReport(False, None, None, alpha=alpha.as_lists(), dimension=residual)
    if residual != 0:
        return report
    m = P.nvars
    for n in range(max_degree + 1):
        rk = matrix_rank(P, alpha, n)
        target = polynomial_ring_hilbert(m, n)
        report.rank_trace.append((n, rk, target))
        if rk == target:
            report.is_reduction = True
            report.witness_degree = n
            report.r_value = n - 1
            return report
    raise InconsistencyError(
        f"forms give a zero-dimensional quotient but M_n never reached full rank up to degree {max_degree}"
    )


def _trial_seeds(seed, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(2**62) for _ in range(trials)]


def generic_reduction_number(P: Presentation, trials: int = DEFAULT_TRIALS, seed=0,
                             max_degree: int = DEFAULT_MAX_DEGREE) -> ReductionReport:
    """r(A) as the reduction number of random (hence generic) minimal reductions."""
    if trials < 1:
        raise ValueError("need at least one trial")
    best = None
    values = []
    for s in _trial_seeds(seed, trials):
        alpha = random_linear_forms(P.field, P.dim, P.nvars, s)
        rep = reduction_number_of(P, alpha, max_degree)
        values.append(rep.r_value)
        if rep.is_reduction and (best is None or rep.r_value < best.r_value):
            best = rep
    if best is None:
        raise SamplingError(
            f"none of {trials} random parameter choices gave a minimal reduction; over F_{P.field.p} "
            "this happens with probability at most trials*deg/p, so the presentation is suspect"
        )
    best.method = "matrix"
    best.trials = trials
    best.seed = seed
    best.per_trial = values
    best.disagreement = len(set(values)) > 1
    return best


def reduction_number_by_substitution(P: Presentation, seed=0, max_degree: int = DEFAULT_MAX_DEGREE,
                                     retries: int = 3) -> int:
    """r(A) as the top nonzero degree of R'/I' after a random linear substitution.

    The last d variables are replaced by random combinations of the first m-d.
    """
    d, m = P.dim, P.nvars
    if d == m:
        return 0
    if d == 0:
        return P.top_degree(max_degree)
    ring = P.ring
    small = PolyRing(ring.names[: m - d], ring.field)
    rng = random.Random(seed)
    for _ in range(retries + 1):
        images = small.gens()
        for _i in range(d):
            images.append(linear_form(small, [ring.field.random_element(rng) for _ in range(m - d)]))
        gens = [g.compose(images, small) for g in P.gens]
        gens = [g for g in gens if not g.is_zero()]
        Q = Presentation(small, gens)
        if Q.dim == 0:
            return Q.top_degree(max_degree)
    raise SamplingError(f"substitution stayed degenerate after {retries} retries")


# ----------------------------------------------------------------------------
# Spectrum and big reduction number
# ----------------------------------------------------------------------------


@dataclass
class SpectrumResult:
    spectrum: list
    r: int | None
    br: int | None
    mode: str
    exact: bool
    samples: int = 0
    chain: list = field(default_factory=list)
    strata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"spectrum": self.spectrum, "r": self.r, "br": self.br, "mode": self.mode, "exact": self.exact}
        if self.mode == "sampled":
            out["samples"] = self.samples
            out["br_is_lower_bound"] = True
        if self.chain:
            out["chain"] = self.chain
        if self.strata:
            out["strata"] = {str(k): v for k, v in sorted(self.strata.items())}
        return out


def support_patterns(d: int, m: int, budget: int, rng: random.Random) -> list[int]:
    """Zero/nonzero masks over the d*m entries, densest first, no zero rows."""
    n = d * m
    full = (1 << n) - 1
    row_masks = [((1 << m) - 1) << (i * m) for i in range(d)]

    def ok(mask):
        return all(mask & rm for rm in row_masks)

    if n <= 20 and (1 << n) <= budget:
        masks = [k for k in range(1, 1 << n) if ok(k)]
        masks.sort(key=lambda k: (-bin(k).count("1"), -k))
        return masks[:budget]
    masks = {full}
    tries = 0
    while len(masks) < budget and tries < 50 * budget:
        tries += 1
        k = rng.getrandbits(n)
        if ok(k):
            masks.add(k)
    return sorted(masks, key=lambda k: (-bin(k).count("1"), -k))


def params_for_mask(field: PrimeField, d: int, m: int, mask: int, rng: random.Random) -> ReductionParams:
    rows = []
    for i in range(d):
        rows.append([field.random_nonzero(rng) if mask >> (i * m + j) & 1 else 0 for j in range(m)])
    return ReductionParams.from_rows(rows, field)


def sampled_spectrum(P: Presentation, budget: int = 256, seed=0, max_degree: int = DEFAULT_MAX_DEGREE) -> SpectrumResult:
    d, m = P.dim, P.nvars
    if d == 0:
        top = P.top_degree(max_degree)
        return SpectrumResult([top], top, top, "sampled", True, 1)
    rng = random.Random(seed)
    seen: dict = {}
    masks = support_patterns(d, m, budget, rng)
    for mask in masks:
        alpha = params_for_mask(P.field, d, m, mask, rng)
        rep = reduction_number_of(P, alpha, max_degree)
        if rep.is_reduction:
            seen.setdefault(rep.r_value, alpha.support())
    spec = sorted(seen)
    return SpectrumResult(
        spec, spec[0] if spec else None, spec[-1] if spec else None, "sampled", False, len(masks),
        strata={k: [list(r) for r in v] for k, v in seen.items()},
    )


# -- symbolic ---------------------------------------------------------------


def fresh_prefix(names, base: str = "u") -> str:
    """A prefix that no existing variable name starts with."""
    prefix = base
    while any(n.startswith(prefix) for n in names):
        prefix += base
    return prefix


def parameter_ring(field: PrimeField, d: int, m: int, prefix: str = "u") -> PolyRing:
    if d == 1:
        names = tuple(f"{prefix}{j + 1}" for j in range(m))
    else:
        names = tuple(f"{prefix}{i + 1}_{j + 1}" for i in range(d) for j in range(m))
    return PolyRing(names, field)


@dataclass
class SymbolicMinorIdeal:
    degree: int
    ideal: Ideal
    matrix: list
    columns: list

    @property
    def is_zero(self) -> bool:
        return not self.ideal.gens


def _symbolic_guard(P: Presentation):
    d, m = P.dim, P.nvars
    if d * m > SYMBOLIC_MAX_PARAMS:
        raise GuardError(f"symbolic mode needs m*d <= {SYMBOLIC_MAX_PARAMS} (have {m * d}); use sampled mode")
    if any(deg > SYMBOLIC_MAX_GEN_DEGREE for deg in P.degrees):
        raise GuardError(f"symbolic mode needs generator degrees <= {SYMBOLIC_MAX_GEN_DEGREE}; use sampled mode")


def generic_matrix(P: Presentation, n: int, uring: PolyRing, d: int | None = None) -> list:
    """Rows sum_j u_ij * (x_j g mod I) over the standard monomials of degree n."""
    d = P.dim if d is None else d
    m = P.nvars
    maps = P.multiplication_maps(n)
    rows = []
    nsrc = len(P.standard_monomials(n - 1))
    ncol = len(P.standard_monomials(n))
    for i in range(d):
        for g in range(nsrc):
            row = []
            for c in range(ncol):
                terms = {}
                for j in range(m):
                    v = maps[j][g, c]
                    if v:
                        e = [0] * uring.nvars
                        e[i * m + j] = 1
                        terms[tuple(e)] = v
                row.append(uring.from_dict(terms))
            if any(not e.is_zero() for e in row):
                rows.append(row)
    return rows


def determinant(mat: list, ring: PolyRing) -> Polynomial:
    """Permutation expansion accumulated row by row over column subsets."""
    h = len(mat)
    if h == 0:
        return ring.one
    layer = {0: ring.one}
    for r in range(h):
        nxt: dict = {}
        for mask, val in layer.items():
            for c in range(h):
                if mask >> c & 1:
                    continue
                e = mat[r][c]
                if e.is_zero():
                    continue
                term = val * e
                if bin(mask >> (c + 1)).count("1") & 1:
                    term = -term
                key = mask | (1 << c)
                nxt[key] = nxt[key] + term if key in nxt else term
        layer = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not layer:
            return ring.zero
    return layer.get((1 << h) - 1, ring.zero)


def variety_chain_ideal(P: Presentation, n: int, uring: PolyRing | None = None,
                        d: int | None = None) -> SymbolicMinorIdeal:
    """Ideal of maximal minors of the generic reduction matrix in degree n.

    Row operations over k[u] that clear the constant I_n block leave the
    maximal-minor ideal unchanged, so the minors are taken of the reduced
    block alone; rows from non-standard g are k-combinations of the others.
    ``d`` (number of generic forms) defaults to dim A.
    """
    _symbolic_guard(P)
    d = P.dim if d is None else d
    m = P.nvars
    uring = uring or parameter_ring(P.field, d, m, fresh_prefix(P.ring.names))
    cols = P.standard_monomials(n) if n >= 0 else []
    h = len(cols)
    if n == 0:
        return SymbolicMinorIdeal(0, Ideal(uring, []), [], cols)
    if h == 0:
        return SymbolicMinorIdeal(n, Ideal(uring, [uring.one]), [], cols)
    rows = generic_matrix(P, n, uring, d)
    if len(rows) > SYMBOLIC_MAX_SIDE or h > SYMBOLIC_MAX_SIDE:
        raise GuardError(f"degree-{n} generic matrix is {len(rows)} x {h}; sides limited to {SYMBOLIC_MAX_SIDE}")
    if len(rows) < h:
        return SymbolicMinorIdeal(n, Ideal(uring, []), rows, cols)
    minors = set()
    for pick in combinations(range(len(rows)), h):
        det = determinant([rows[k] for k in pick], uring)
        if not det.is_zero():
            minors.add(det.monic())
    ideal = Ideal(uring, sorted(minors, key=str))
    if ideal.gens:
        ideal = Ideal(uring, ideal.groebner())
    return SymbolicMinorIdeal(n, ideal, rows, cols)


def projectively_empty(J: Ideal) -> bool:
    if J.is_unit():
        return True
    return all(radical_member(u, J) for u in J.ring.gens())


def projectively_contained(A: Ideal, B: Ideal) -> bool:
    """Whether the projective zero locus of A lies inside that of B."""
    if not B.gens:
        return True
    if projectively_empty(A):
        return True
    return all(radical_member(g, A) for g in B.gens)


def nonreduction_locus(P: Presentation, uring: PolyRing | None = None) -> Ideal:
    """Ideal in k[u] whose zero locus is the set of non-reductions.

    alpha fails to give a reduction iff the forms y(alpha) share a projective
    zero with I; this is the projection of that incidence variety, computed
    chart by chart (x_j = 1) and intersected.
    """
    d, m = P.dim, P.nvars
    uring = uring or parameter_ring(P.field, d, m, fresh_prefix(P.ring.names))
    pieces = []
    for j in range(m):
        others = [n for k, n in enumerate(P.ring.names) if k != j]
        big = PolyRing(tuple(others) + uring.names, P.field)
        images = []
        for k in range(m):
            images.append(big.one if k == j else big.gen(P.ring.names[k]))
        gens = [g.compose(images, big) for g in P.gens]
        for i in range(d):
            y = big.zero
            for k in range(m):
                y = y + big.gen(uring.names[i * m + k]) * images[k]
            gens.append(y)
        K = eliminate(Ideal(big, gens), uring.names)
        pieces.append(K.to_ring(uring))
    return Ideal(uring, intersect_all(pieces).groebner())


def symbolic_spectrum(P: Presentation, max_degree: int = DEFAULT_MAX_DEGREE) -> SpectrumResult:
    """Exact spectrum from the chain of minor ideals.

    The chain is followed until its zero locus reaches the non-reduction
    locus, after which it is stationary.  n is in the spectrum iff the loci
    in degrees n and n+1 differ, i.e. some generator of J_{n+1} is not in the
    radical of J_n (the reverse containment always holds).
    """
    d = P.dim
    if d == 0:
        top = P.top_degree(max_degree)
        return SpectrumResult([top], top, top, "symbolic", True)
    _symbolic_guard(P)
    uring = parameter_ring(P.field, d, P.nvars, fresh_prefix(P.ring.names))
    K = nonreduction_locus(P, uring)
    chain = []
    stop = None
    for n in range(max_degree + 2):
        Jn = variety_chain_ideal(P, n, uring)
        chain.append(Jn)
        if projectively_contained(Jn.ideal, K):
            stop = n
            break
    if stop is None:
        raise InconsistencyError(f"variety chain did not stabilize by degree {max_degree + 1}")
    spec = [n for n in range(stop) if not projectively_contained(chain[n].ideal, chain[n + 1].ideal)]
    r = max(n for n in range(stop + 1) if chain[n].is_zero)
    summary = [{"n": c.degree, "generators": [str(g) for g in c.ideal.gens]} for c in chain]
    return SpectrumResult(spec, r, spec[-1] if spec else None, "symbolic", True, chain=summary)


def spectrum_analysis(P: Presentation, mode: str = "sampled", budget: int = 256, seed=0,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> SpectrumResult:
    if mode == "sampled":
        return sampled_spectrum(P, budget, seed, max_degree)
    if mode == "symbolic":
        return symbolic_spectrum(P, max_degree)
    raise ValueError(f"unknown mode {mode!r}")


def reduction_spectrum(P: Presentation, mode: str = "sampled", budget: int = 256, seed=0) -> set:
    """Reduction numbers attained by minimal reductions (a subset when sampled)."""
    return set(spectrum_analysis(P, mode, budget, seed).spectrum)


def big_reduction_number(P: Presentation, mode: str = "sampled", budget: int = 256, seed=0) -> int:
    """br(A); in sampled mode a certified lower bound."""
    res = spectrum_analysis(P, mode, budget, seed)
    if res.br is None:
        raise SamplingError("no minimal reduction observed")
    return res.br


def noether_test(P: Presentation, alpha: ReductionParams) -> bool:
    """Whether k[y_1..y_d] -> A is a Noether normalization."""
    return reduction_number_of(P, alpha).is_reduction
