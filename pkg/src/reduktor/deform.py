"""Weight homogenization, the flat deformation to an initial ideal, and
comparisons of reduction numbers along it."""
from __future__ import annotations

import random

import numpy as np
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import InconsistencyError, ReduktorError
from .graded import Presentation
from .groebner import Budget, Ideal, colon, groebner_basis, saturate
from .poly import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial, linear_form
from .reduction import DEFAULT_TRIALS, generic_reduction_number


class WeightRepresentationError(ReduktorError):
    """No integer weight found that reproduces a term order on a given ideal."""


@dataclass(frozen=True)
class WeightFunction:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __call__(self, mono) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def __len__(self):
        return len(self.weights)


def _as_weights(lam) -> tuple:
    return lam.weights if isinstance(lam, WeightFunction) else tuple(int(w) for w in lam)


def deformation_ring(ring: PolyRing) -> tuple[PolyRing, str]:
    t = ring.fresh_name("t")
    return ring.extend([t]), t


def weight_homogenize(f: Polynomial, lam, target: PolyRing | None = None) -> Polynomial:
    """f* = sum over terms u of t^(b(f) - lam(u)) u, where b(f) is the top term weight."""
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    w = _as_weights(lam)
    if len(w) != f.ring.nvars:
        raise ValueError("weight vector length does not match the ring")
    if target is None:
        target, _ = deformation_ring(f.ring)
    weights = {m: sum(a * b for a, b in zip(w, m)) for m in f._t}
    b = max(weights.values())
    return target.from_dict({m + (b - weights[m],): c for m, c in f._t.items()})


@dataclass
class DeformedIdeal:
    ring: PolyRing
    t: str
    ideal: Ideal
    source: Ideal
    weights: tuple
    homogenized: list = field(default_factory=list)
    t_order: MonomialOrder | None = None

    @property
    def gens(self):
        return self.ideal.gens

    def fiber(self, value) -> Ideal:
        """The ideal of R obtained by setting t to a constant."""
        base = self.source.ring
        gens = [g.specialize({self.t: value}).to_ring(base) for g in self.ideal.gens]
        return Ideal(base, gens)

    def t_regular(self, method: str = "auto") -> bool:
        """Whether Ĩ : t = Ĩ.

        With a t-last reverse-lex order available this holds iff no element of
        the reduced basis is divisible by t; ``method="colon"`` computes the
        quotient ideal directly instead.
        """
        if method == "colon" or self.t_order is None:
            return colon(self.ideal, self.ring.gen(self.t)).same_as(self.ideal)
        fresh = Ideal(self.ring, self.ideal.gens, self.ideal.budget)
        return not any(all(m[-1] for m in g._t) for g in fresh.groebner(self.t_order))

    def check(self) -> dict:
        zero = self.fiber(0).same_as(weight_initial_ideal(self.source, self.weights))
        one = self.fiber(1)
        return {
            "t_regular": self.t_regular(),
            "fiber_0_is_initial": zero,
            "fiber_1_is_source": one.contains(self.source) and self.source.contains(one),
        }


def deformed_ideal(I: Ideal, lam, verify: bool = True) -> DeformedIdeal:
    """The t-saturation of (f_1*, ..., f_v*) in R[t]."""
    if not I.gens:
        raise ValueError("the zero ideal has no deformation data")
    w = _as_weights(lam)
    ring, t = deformation_ring(I.ring)
    star = [weight_homogenize(g, w, ring) for g in I.gens]
    tvar = ring.nvars - 1
    top_t = max(m[tvar] for g in star for m in g._t)
    budget = Budget(I.budget.max_basis, I.budget.max_pair_degree + 4 * top_t)
    order = t_last_order(star, w)
    if top_t == 0:
        # every generator is already weight-homogeneous; t is regular on I R[t]
        J = Ideal(ring, star, budget)
    elif order is not None:
        J = saturate_by_last(star, order, budget)
    else:
        J = saturate(Ideal(ring, star, budget), ring.gen(t))
    out = DeformedIdeal(ring, t, J, I, w, star, order)
    if verify:
        bad = [k for k, ok in out.check().items() if not ok]
        if bad:
            raise InconsistencyError(f"deformation for weights {list(w)} failed: {', '.join(bad)}")
    return out


def t_last_order(star: list, weights: Sequence[int]) -> MonomialOrder | None:
    """A positive-weight order, ties broken by reverse lex, for which every f* is homogeneous.

    Every f* is homogeneous for deg x_i = weights[i], deg t = 1, and also for
    the standard x-degree when the source is homogeneous.  None when no
    positive combination of these gradings exists.
    """
    xhom = all(len({sum(m[:-1]) for m in g._t}) == 1 for g in star)
    low = min(weights) if weights else 0
    if xhom:
        shift = max(0, 1 - low)
        return MonomialOrder.weight([w + shift for w in weights] + [1], "revlex")
    if low > 0:
        return MonomialOrder.weight(list(weights) + [1], "revlex")
    return None


def saturate_by_last(star: list, order: MonomialOrder, budget) -> Ideal:
    """Saturate by the last variable t.

    For a positive grading with every generator homogeneous and ties broken
    by reverse lex with t last, t divides a homogeneous element iff it
    divides its leading term, so dividing a Groebner basis by the largest
    powers of t gives a basis of the saturation.
    """
    ring = star[0].ring
    out = []
    for g in groebner_basis(star, order, budget):
        k = min(m[-1] for m in g._t)
        out.append(ring.from_dict({m[:-1] + (m[-1] - k,): c for m, c in g._t.items()}))
    return Ideal(ring, out, budget)


def initial_ideal(I: Ideal, order: MonomialOrder) -> Ideal:
    """Monomial ideal of leading terms of a Groebner basis."""
    return Ideal(I.ring, [I.ring.monomial(g.lead_monomial(order)) for g in I.groebner(order)], I.budget)


def initial_form(f: Polynomial, weights: Sequence[int]) -> Polynomial:
    wts = {m: sum(a * b for a, b in zip(weights, m)) for m in f._t}
    top = max(wts.values())
    return f.ring.from_dict({m: c for m, c in f._t.items() if wts[m] == top})


def weight_initial_ideal(I: Ideal, lam, tiebreak: str = "grevlex") -> Ideal:
    """in_lam(I), generated by the lam-initial forms of all elements of I.

    Uses a Groebner basis for lam refined by ``tiebreak``.  Negative weights
    are shifted by a multiple of (1, ..., 1), which is harmless for
    homogeneous I and required for the order to be a well-order.
    """
    w = _as_weights(lam)
    low = min(w) if w else 0
    if low < 0:
        if not all(g.is_homogeneous() for g in I.gens):
            raise ValueError("negative weights need a homogeneous ideal")
        w = tuple(x - low for x in w)
    order = MonomialOrder.weight(w, tiebreak)
    return Ideal(I.ring, [initial_form(g, w) for g in I.groebner(order)], I.budget)


def order_rows(order: MonomialOrder, nvars: int) -> list[tuple]:
    """Rows of a weight matrix realizing the order."""
    def unit(i, s=1):
        return tuple(s if k == i else 0 for k in range(nvars))

    if order.kind == "lex":
        return [unit(i) for i in range(nvars)]
    if order.kind == "grevlex":
        return [(1,) * nvars] + [unit(i, -1) for i in range(nvars - 1, 0, -1)]
    return [order.weights] + order_rows(LEX if order.tiebreak == "lex" else GREVLEX, nvars)


def _separates(w, basis, order) -> bool:
    for g in basis:
        lead = g.lead_monomial(order)
        top = sum(a * b for a, b in zip(w, lead))
        if any(m != lead and sum(a * b for a, b in zip(w, m)) >= top for m in g._t):
            return False
    return True


def _small_weight(diffs: list, n: int, cap: int):
    """Least-sum non-negative integer weight with w . v >= 1 for every difference v."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    if not diffs:
        return (0,) * n
    A = np.array(diffs, dtype=float)
    res = milp(
        c=np.ones(n),
        constraints=LinearConstraint(A, lb=np.ones(len(diffs)), ub=np.full(len(diffs), np.inf)),
        integrality=np.ones(n),
        bounds=Bounds(np.zeros(n), np.full(n, float(cap))),
    )
    if res.status != 0 or res.x is None:
        return None
    return tuple(int(round(v)) for v in res.x)


def weight_for_order(I: Ideal, order: MonomialOrder, max_base: int = 2**20) -> tuple:
    """An integer weight whose initial ideal of I agrees with in_order(I).

    The weight must pick out the leading term of every element of the reduced
    Groebner basis.  A smallest non-negative solution is found by integer
    programming; failing that, the order's weight-matrix rows are combined
    with a growing base.
    """
    n = I.ring.nvars
    basis = I.groebner(order)
    diffs = []
    for g in basis:
        lead = g.lead_monomial(order)
        diffs += [tuple(a - b for a, b in zip(lead, m)) for m in g._t if m != lead]
    w = _small_weight(diffs, n, max_base)
    if w is not None and _separates(w, basis, order):
        return w
    rows = order_rows(order, n)
    base = 2
    while base <= max_base:
        k = len(rows)
        w = [sum(base ** (k - 1 - i) * row[j] for i, row in enumerate(rows)) for j in range(n)]
        if _separates(w, basis, order):
            if all(g.is_homogeneous() for g in I.gens):
                low = min(w)
                w = [x - low for x in w]
            return tuple(w)
        base *= 2
    raise WeightRepresentationError(f"no weight up to base {max_base} represents {order} on this ideal")


@dataclass
class VasconcelosReport:
    target: str
    r_source: int
    r_initial: int
    holds: bool
    trials: int
    retried: bool = False

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "r_source": self.r_source,
            "r_initial": self.r_initial,
            "holds": self.holds,
            "trials": self.trials,
            "retried": self.retried,
        }


def degeneration(I: Ideal, spec) -> tuple[Ideal, str]:
    """The initial ideal for an order, or the initial-form ideal for a weight vector."""
    if isinstance(spec, MonomialOrder):
        if spec.kind == "weight":
            return weight_initial_ideal(I, spec.weights, spec.tiebreak), spec.spec()
        return initial_ideal(I, spec), spec.spec()
    w = _as_weights(spec)
    return weight_initial_ideal(I, w), "weight:" + ",".join(map(str, w))


def vasconcelos_check(I: Ideal, spec, trials: int = DEFAULT_TRIALS, seed=0) -> VasconcelosReport:
    """Compare r(R/I) with r(R/in(I)); retries with more trials before reporting a violation."""
    if not all(g.is_homogeneous() for g in I.gens):
        raise ValueError("the ideal must be homogeneous")
    ini, label = degeneration(I, spec)
    src = Presentation(I.ring, I.gens)
    tgt = Presentation(I.ring, ini.gens)
    rs = generic_reduction_number(src, trials, seed).r_value
    ri = generic_reduction_number(tgt, trials, seed).r_value
    if rs <= ri:
        return VasconcelosReport(label, rs, ri, True, trials)
    more = trials * 4
    rng = random.Random(seed)
    rs = generic_reduction_number(src, more, rng.randrange(2**62)).r_value
    ri = min(ri, generic_reduction_number(tgt, more, rng.randrange(2**62)).r_value)
    return VasconcelosReport(label, rs, ri, rs <= ri, more, retried=True)


def random_change_of_coordinates(ring: PolyRing, rng: random.Random) -> list[Polynomial]:
    n = ring.nvars
    while True:
        rows = [[ring.field.random_element(rng) for _ in range(n)] for _ in range(n)]
        if linalg.rank(linalg.as_matrix(rows, ring.field), ring.field) == n:
            return [linear_form(ring, r) for r in rows]


def generic_initial_ideal(I: Ideal, seed=0, order: MonomialOrder = GREVLEX) -> Ideal:
    """in(g.I) for a random invertible linear change of coordinates g."""
    rng = random.Random(seed)
    images = random_change_of_coordinates(I.ring, rng)
    moved = Ideal(I.ring, [g.compose(images, I.ring) for g in I.gens], I.budget)
    return initial_ideal(moved, order)
