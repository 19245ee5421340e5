"""Minimal reductions and the core of a homogeneous ideal in a graded quotient.

An ideal a of L = R/I_L is handled through graded lifts; ideals of L are
represented by ideals of R that contain I_L.  Local statements refer to L
localized at its irrelevant ideal, which homogeneous computations respect.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import GuardError, InconsistencyError
from .graded import Presentation
from .groebner import Ideal, colon, eliminate, intersect, saturate_ideal
from .poly import PolyRing, Polynomial, monomials_of_degree
from .reduction import (
    DEFAULT_TRIALS,
    ReductionParams,
    SYMBOLIC_MAX_PARAMS,
    SYMBOLIC_MAX_SIDE,
    determinant,
    fresh_prefix,
    params_for_mask,
    parameter_ring,
    random_linear_forms,
    reduction_number_of,
    spectrum_analysis,
    support_patterns,
    generic_reduction_number,
)


class GradedIdealInQuotient:
    """The ideal (a_1, ..., a_s) of L, given by homogeneous lifts to R."""

    def __init__(self, L: Presentation, gens: Sequence[Polynomial]):
        self.L = L
        self.ring = L.ring
        lifted = []
        for k, g in enumerate(gens):
            if g.ring != L.ring:
                raise ValueError(f"generator {k} lives in a different ring")
            if not g.is_homogeneous() or g.is_constant():
                raise ValueError(f"generator {k} ({g}) must be homogeneous of positive degree")
            if L.ideal.normal_form(g).is_zero():
                raise ValueError(f"generator {k} ({g}) is zero in the quotient")
            lifted.append(g)
        if not lifted:
            raise ValueError("need at least one generator")
        self.gens = tuple(lifted)
        self._fiber = None
        self._br = None
        self._testing = None

    @property
    def s(self) -> int:
        return len(self.gens)

    @property
    def field(self):
        return self.ring.field

    def ideal(self) -> Ideal:
        """a + I_L as an ideal of R."""
        return Ideal(self.ring, self.L.gens + self.gens)

    def power(self, n: int) -> Ideal:
        if n == 0:
            return Ideal(self.ring, [self.ring.one])
        gens = []
        for beta in monomials_of_degree(self.s, n):
            gens.append(product(self.gens, beta, self.ring))
        return Ideal(self.ring, list(self.L.gens) + gens)

    def fiber(self) -> "FiberRingPresentation":
        if self._fiber is None:
            self._fiber = fiber_ring(self)
        return self._fiber

    @property
    def analytic_spread(self) -> int:
        return self.fiber().presentation.dim

    def big_reduction_number(self) -> int:
        if self._br is None:
            self._br = local_reduction_number(self, which="br")
        return self._br


def product(gens, beta, ring: PolyRing) -> Polynomial:
    out = ring.one
    for g, e in zip(gens, beta):
        if e:
            out = out * g**e
    return out


@dataclass
class FiberRingPresentation:
    presentation: Presentation
    kernel: Ideal
    names: tuple


def fiber_ring(a: GradedIdealInQuotient) -> FiberRingPresentation:
    """k[y_1..y_s]/J with J the kernel of y_i -> a_i, for equal-degree generators."""
    degs = {g.degree() for g in a.gens}
    if len(degs) > 1:
        raise GuardError(f"fiber ring needs generators of one degree (got degrees {sorted(degs)})")
    base = a.ring
    prefix = fresh_prefix(base.names, "y")
    ynames = tuple(f"{prefix}{i + 1}" for i in range(a.s))
    big = base.extend(ynames)
    gens = [g.to_ring(big) for g in a.L.gens]
    gens += [big.gen(y) - g.to_ring(big) for y, g in zip(ynames, a.gens)]
    K = eliminate(Ideal(big, gens), ynames)
    yring = K.ring
    kernel = Ideal(yring, K.groebner())
    return FiberRingPresentation(Presentation(yring, kernel.gens), kernel, ynames)


def local_reduction_number(a: GradedIdealInQuotient, alpha: ReductionParams | None = None,
                           which: str = "r", seed=0) -> int | None:
    """r(a), r_q(a) for q given by alpha, or br(a), read off the fiber ring."""
    F = a.fiber().presentation
    if which == "br":
        mode = "symbolic" if F.dim * F.nvars <= SYMBOLIC_MAX_PARAMS else "sampled"
        return spectrum_analysis(F, mode, seed=seed).br
    if which == "rq":
        if alpha is None:
            raise ValueError("r_q needs parameters")
        return reduction_number_of(F, alpha).r_value
    if which == "r":
        if F.dim == 0:
            return F.top_degree()
        return generic_reduction_number(F, seed=seed).r_value
    raise ValueError(f"unknown request {which!r}")


def reduction_forms(a: GradedIdealInQuotient, alpha: ReductionParams) -> list[Polynomial]:
    return [sum((c * g for c, g in zip(row, a.gens) if c), a.ring.zero) for row in alpha.alpha]


def direct_reduction_number(a: GradedIdealInQuotient, alpha: ReductionParams, limit: int = 30) -> int | None:
    """Least n with q a^n = a^(n+1) in L, from ideal arithmetic alone; None if not reached."""
    q = Ideal(a.ring, list(a.L.gens) + reduction_forms(a, alpha))
    for n in range(limit + 1):
        lhs = q * a.power(n) + a.L.gens
        if lhs.contains(a.power(n + 1)):
            return n
    return None


@dataclass
class TestingIdeal:
    J: Ideal
    Q: Ideal
    big: PolyRing
    uring: PolyRing
    basis: list
    matrix: list
    degree: int

    def metadata(self) -> dict:
        return {"degree": self.degree, "basis": [str(b) for b in self.basis], "basis_rule": "lex-first"}


def _vector(L: Presentation, f: Polynomial, cols: dict) -> list:
    row = [0] * len(cols)
    for m, c in L.ideal.normal_form(f)._t.items():
        row[cols[m]] = c
    return row


def greedy_basis(a: GradedIdealInQuotient, n: int) -> tuple[list, np.ndarray, dict]:
    """Lex-first y-monomials whose images form a k-basis of (a^n)_{n delta} in L."""
    L, fld = a.L, a.field
    delta = a.gens[0].degree()
    cols = {m: k for k, m in enumerate(L.standard_monomials(n * delta))}
    chosen, vecs = [], []
    current = 0
    for beta in monomials_of_degree(a.s, n):
        v = _vector(L, product(a.gens, beta, a.ring), cols)
        trial = vecs + [v]
        rk = linalg.rank(linalg.as_matrix(trial, fld, ncols=len(cols)).reshape(len(trial), len(cols)), fld)
        if rk > current:
            chosen.append(beta)
            vecs.append(v)
            current = rk
    mat = linalg.as_matrix(vecs, fld, ncols=len(cols)).reshape(len(vecs), len(cols))
    return chosen, mat, cols


def testing_ideal(a: GradedIdealInQuotient) -> TestingIdeal:
    """Maximal minors of the generic coefficient matrix against a basis of a^(br+1)."""
    if a._testing is not None:
        return a._testing
    d = a.analytic_spread
    base = a.ring
    uring = parameter_ring(a.field, d, a.s, fresh_prefix(base.names))
    big = PolyRing(base.names + uring.names, a.field)
    if d == 0:
        out = TestingIdeal(Ideal(uring, [uring.one]), Ideal(big, [g.to_ring(big) for g in a.L.gens]),
                           big, uring, [], [], 0)
        a._testing = out
        return out
    if d * a.s > SYMBOLIC_MAX_PARAMS:
        raise GuardError(f"testing ideal needs s*d <= {SYMBOLIC_MAX_PARAMS} (have {d * a.s})")
    N = a.big_reduction_number() + 1
    basis, bmat, cols = greedy_basis(a, N)
    prev, _, _ = greedy_basis(a, N - 1)
    h = len(basis)
    if h > SYMBOLIC_MAX_SIDE or d * len(prev) > SYMBOLIC_MAX_SIDE:
        raise GuardError(f"testing matrix is {d * len(prev)} x {h}; sides limited to {SYMBOLIC_MAX_SIDE}")
    # coefficients of a_j * g on the chosen basis, constant in the graded case
    coeff = {}
    for g in prev:
        for j in range(a.s):
            e = list(g)
            e[j] += 1
            v = np.array(_vector(a.L, product(a.gens, e, base), cols), dtype=bmat.dtype)
            coeff[g, j] = linalg.solve_left(bmat, v, a.field)
    u = uring.gens()
    rows = []
    for i in range(d):
        for g in prev:
            row = []
            for k in range(h):
                entry = uring.zero
                for j in range(a.s):
                    c = coeff[g, j][k]
                    if c:
                        entry = entry + u[i * a.s + j].scale(c)
                row.append(entry)
            rows.append(row)
    minors = set()
    if len(rows) >= h:
        from itertools import combinations
        for pick in combinations(range(len(rows)), h):
            det = determinant([rows[k] for k in pick], uring)
            if not det.is_zero():
                minors.add(det.monic())
    J = Ideal(uring, sorted(minors, key=str))
    if J.gens:
        J = Ideal(uring, J.groebner())
    bforms = []
    for i in range(d):
        b = big.zero
        for j, g in enumerate(a.gens):
            b = b + big.gen(uring.names[i * a.s + j]) * g.to_ring(big)
        bforms.append(b)
    Q = Ideal(big, bforms + [g.to_ring(big) for g in a.L.gens])
    out = TestingIdeal(J, Q, big, uring, [product(a.gens, b, base) for b in basis], rows, N)
    _check_testing(a, out)
    a._testing = out
    return out


def _check_testing(a: GradedIdealInQuotient, T: TestingIdeal):
    for c in T.J.gens:
        cb = c.to_ring(T.big)
        for e in T.basis:
            if not T.Q.normal_form(cb * e.to_ring(T.big)).is_zero():
                raise InconsistencyError("testing ideal times a^(br+1) is not inside the generic reduction")


def minimal_reduction_test_local(a: GradedIdealInQuotient, alpha: ReductionParams) -> bool:
    """Whether the testing ideal specialized at alpha is the unit ideal."""
    T = testing_ideal(a)
    if alpha.d != a.analytic_spread:
        raise ValueError(f"expected {a.analytic_spread} rows of parameters, got {alpha.d}")
    values = {}
    for i, row in enumerate(alpha.alpha):
        for j, c in enumerate(row):
            values[T.uring.names[i * a.s + j]] = c
    return any(not g.specialize(values).is_zero() for g in T.J.gens)


@dataclass
class CoreReport:
    power: Ideal
    middle: Ideal
    sampled_core: Ideal
    br: int
    analytic_spread: int
    trials: int
    stable: bool
    verdicts: dict = field(default_factory=dict)
    basis: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "br": self.br,
            "analytic_spread": self.analytic_spread,
            "power": self.power.sorted_generators(),
            "middle": self.middle.sorted_generators(),
            "sampled_core": self.sampled_core.sorted_generators(),
            "trials": self.trials,
            "sampled_core_stable": self.stable,
            "verdicts": self.verdicts,
            "testing_basis": self.basis,
        }


def middle_ideal(a: GradedIdealInQuotient) -> Ideal:
    """(Q : J^infinity) contracted to L, as an ideal of R containing I_L."""
    T = testing_ideal(a)
    Jb = Ideal(T.big, [g.to_ring(T.big) for g in T.J.gens])
    sat = saturate_ideal(T.Q, Jb)
    out = eliminate(sat, a.ring.names)
    return Ideal(a.ring, out.to_ring(a.ring).groebner())


def sampled_core(a: GradedIdealInQuotient, trials: int = DEFAULT_TRIALS, seed=0,
                 budget: int = 64) -> tuple[Ideal, int, bool]:
    """Intersection of sampled minimal reductions: support patterns first, then random ones."""
    F = a.fiber().presentation
    d = F.dim
    if d == 0:
        return Ideal(a.ring, list(a.L.gens)), 0, True
    rng = random.Random(seed)
    candidates = [params_for_mask(a.field, d, a.s, mask, rng) for mask in support_patterns(d, a.s, budget, rng)]
    candidates += [random_linear_forms(a.field, d, a.s, rng) for _ in range(trials)]
    current = None
    used = 0
    stable = False
    for alpha in candidates:
        if not reduction_number_of(F, alpha).is_reduction:
            continue
        q = Ideal(a.ring, list(a.L.gens) + reduction_forms(a, alpha))
        nxt = q if current is None else intersect(current, q)
        nxt = Ideal(a.ring, nxt.groebner())
        stable = current is not None and nxt.same_as(current)
        current = nxt
        used += 1
    if current is None:
        raise InconsistencyError("no sampled parameters gave a minimal reduction")
    return current, used, stable


def core_sandwich(a: GradedIdealInQuotient, trials: int = DEFAULT_TRIALS, seed=0) -> CoreReport:
    br = a.big_reduction_number()
    power = Ideal(a.ring, a.power(br + 1).groebner())
    middle = middle_ideal(a)
    core, used, stable = sampled_core(a, trials, seed)
    verdicts = {
        "power_in_middle": middle.contains(power),
        "middle_in_sampled_core": core.contains(middle),
        "middle_equals_sampled_core": middle.same_as(core),
        "power_equals_middle": power.same_as(middle),
    }
    T = testing_ideal(a)
    return CoreReport(power, middle, core, br, a.analytic_spread, used, stable, verdicts, T.metadata())


@dataclass
class ContractionWitness:
    member: bool
    certificate: Polynomial | None
    colon_generators: list

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "certificate": str(self.certificate) if self.certificate is not None else None,
        }


def generic_contraction_witness(a: GradedIdealInQuotient, f: Polynomial) -> ContractionWitness:
    """Decide f in q_u cap L, where q_u is the generic minimal reduction over L(u).

    f is a member iff Q : f contains an element outside the maximal ideal
    (x) of k[x, u], i.e. one whose value at x = 0 is a nonzero polynomial in
    u.  Such an element c satisfies c f in Q and is returned as the certificate.
    """
    T = testing_ideal(a)
    fb = f.to_ring(T.big)
    if T.Q.normal_form(fb).is_zero():
        return ContractionWitness(True, T.big.one, [T.big.one])
    C = colon(T.Q, fb)
    base = {n: 0 for n in a.ring.names}
    best = None
    for c in sorted(C.groebner(), key=lambda g: (g.degree(), str(g))):
        if not c.specialize(base).is_zero():
            best = c
            break
    if best is not None and not T.Q.normal_form(best * fb).is_zero():
        raise InconsistencyError("contraction certificate does not multiply f into Q")
    return ContractionWitness(best is not None, best, list(C.groebner()))
