"""Buchberger's algorithm and the ideal calculus built on it.

The core loop works on plain ``{monomial: coefficient}`` dicts; the public
surface takes and returns :class:`~reduktor.poly.Polynomial` values.
Pair selection is the normal strategy (smallest lcm degree first, ties broken
by the order and then by insertion index) with the Gebauer-Moeller update,
which implements Buchberger's coprime and chain criteria.
"""
from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from itertools import combinations
from operator import add, le, sub
from typing import Iterable, Sequence

from .errors import ResourceError
from .poly import GREVLEX, MonomialOrder, PolyRing, Polynomial, mono_coprime, mono_lcm


@dataclass(frozen=True)
class Budget:
    max_basis: int = 5000
    max_pair_degree: int = 60


DEFAULT_BUDGET = Budget()


class _Elt:
    __slots__ = ("lead", "tail", "deg")

    def __init__(self, lead, tail):
        self.lead = lead
        self.tail = tail
        self.deg = sum(lead)


def _reduce(f: dict, divisors: list, key, p: int) -> dict:
    """Full normal form of ``f`` against monic ``divisors``.

    The result dict is built in descending order, so its first key is the
    leading monomial.
    """
    acc = dict(f)
    heap = [(key(m), m) for m in acc]
    heapq.heapify(heap)
    rem = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = pop(heap)[1]
        c = acc.pop(m, None)
        if c is None:
            continue
        for g in divisors:
            if all(map(le, g.lead, m)):
                break
        else:
            rem[m] = c
            continue
        q = tuple(map(sub, m, g.lead))
        if p:
            for gm, gc in g.tail:
                mm = tuple(map(add, gm, q))
                old = acc.get(mm)
                if old is None:
                    acc[mm] = (-c * gc) % p
                    push(heap, (key(mm), mm))
                else:
                    v = (old - c * gc) % p
                    if v:
                        acc[mm] = v
                    else:
                        del acc[mm]
        else:
            for gm, gc in g.tail:
                mm = tuple(map(add, gm, q))
                old = acc.get(mm)
                if old is None:
                    acc[mm] = -c * gc
                    push(heap, (key(mm), mm))
                else:
                    v = old - c * gc
                    if v:
                        acc[mm] = v
                    else:
                        del acc[mm]
    return rem


def _make_elt(h: dict, p: int, inv):
    lead = next(iter(h))
    c = h[lead]
    if c != 1:
        ci = inv(c)
        if p:
            h = {m: (v * ci) % p for m, v in h.items()}
        else:
            h = {m: v * ci for m, v in h.items()}
    tail = [(m, v) for m, v in h.items() if m != lead]
    return _Elt(lead, tail)


def _sort_desc(f: dict, key) -> dict:
    return dict(sorted(f.items(), key=lambda t: key(t[0])))


def buchberger(polys: Sequence[dict], order: MonomialOrder, field, budget: Budget = DEFAULT_BUDGET) -> list[dict]:
    """Reduced Groebner basis of dict polynomials; returns monic dicts, descending."""
    key = order.key
    p = field.p
    inv = field.inv
    elts: list[_Elt] = []
    G: list[int] = []
    B: list[tuple] = []

    def update(h: int):
        nonlocal G, B
        lh = elts[h].lead
        lcms = {g: mono_lcm(lh, elts[g].lead) for g in G}
        C = list(G)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcms[g1]
            if mono_coprime(lh, elts[g1].lead):
                D.append(g1)
                continue
            dominated = any(all(map(le, lcms[g2], l1)) for g2 in C) or any(
                all(map(le, lcms[g2], l1)) for g2 in D
            )
            if not dominated:
                D.append(g1)
        E = [g for g in D if not mono_coprime(lh, elts[g].lead)]
        newB = []
        for pair in B:
            _, _, a, b, lab = pair
            if all(map(le, lh, lab)) and mono_lcm(elts[a].lead, lh) != lab and mono_lcm(elts[b].lead, lh) != lab:
                continue
            newB.append(pair)
        for g in E:
            l = lcms[g]
            newB.append((sum(l), key(l), g, h, l))
        B = newB
        G = [g for g in G if not all(map(le, lh, elts[g].lead))] + [h]

    def add_elt(hd: dict):
        elts.append(_make_elt(hd, p, inv))
        if len(elts) > budget.max_basis:
            raise ResourceError("max_basis", budget.max_basis, "Groebner basis grew too large")
        update(len(elts) - 1)

    inputs = [_sort_desc(f, key) for f in polys if f]
    inputs.sort(key=lambda f: (sum(next(iter(f))), key(next(iter(f)))))
    for f in inputs:
        h = _reduce(f, [elts[g] for g in G], key, p)
        if h:
            add_elt(h)

    while B:
        i = min(range(len(B)), key=lambda k: B[k][:4])
        deg, _, a, b, l = B.pop(i)
        if deg > budget.max_pair_degree:
            raise ResourceError("max_pair_degree", budget.max_pair_degree, f"S-pair of degree {deg}")
        ea, eb = elts[a], elts[b]
        qa = tuple(map(sub, l, ea.lead))
        qb = tuple(map(sub, l, eb.lead))
        s: dict = {}
        for m, c in ea.tail:
            mm = tuple(map(add, m, qa))
            s[mm] = c
        for m, c in eb.tail:
            mm = tuple(map(add, m, qb))
            v = s.get(mm, 0) - c
            if p:
                v %= p
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        if not s:
            continue
        h = _reduce(s, [elts[g] for g in G], key, p)
        if h:
            add_elt(h)

    # interreduce the minimal basis G
    active = sorted(G, key=lambda g: key(elts[g].lead))
    result = []
    divisors = [elts[g] for g in active]
    for g in active:
        e = elts[g]
        tail = _reduce(dict(e.tail), divisors, key, p)
        poly = {e.lead: field(1)}
        poly.update(tail)
        result.append(poly)
    return result


def groebner_basis(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX, budget: Budget = DEFAULT_BUDGET) -> list[Polynomial]:
    gens = list(gens)
    if not gens:
        return []
    ring = gens[0].ring
    out = buchberger([g._t for g in gens], order, ring.field, budget)
    return [Polynomial(ring, f, order) for f in out]


def _divisors_from_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> list:
    out = []
    for g in basis:
        lead = g.lead_monomial(order)
        c = g._t[lead]
        if c != 1:
            g = g.scale(g.ring.field.inv(c))
        out.append(_Elt(lead, [(m, v) for m, v in g._t.items() if m != lead]))
    return out


def reduce_against(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Normal form of ``f`` modulo a list assumed to be a Groebner basis."""
    if f.is_zero():
        return f
    divisors = _divisors_from_basis(basis, order)
    return Polynomial(f.ring, _reduce(f._t, divisors, order.key, f.ring.field.p), order)


class Ideal:
    """An ideal with a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = (), budget: Budget = DEFAULT_BUDGET):
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.budget = budget
        self._gb: dict = {}
        self._div: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple:
        got = self._gb.get(order)
        if got is not None:
            return got
        basis = tuple(groebner_basis(self.gens, order, self.budget))
        divisors = _divisors_from_basis(basis, order)
        key, p = order.key, self.ring.field.p
        for g in self.gens:
            if _reduce(g._t, divisors, key, p):
                raise AssertionError("cached Groebner basis does not contain a generator")
        with self._lock:
            self._gb.setdefault(order, basis)
            self._div.setdefault(order, divisors)
        return self._gb[order]

    def _divisors(self, order):
        self.groebner(order)
        return self._div[order]

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        if f.is_zero():
            return f.with_order(order)
        divisors = self._divisors(order)
        return Polynomial(self.ring, _reduce(f._t, divisors, order.key, self.ring.field.p), order)

    def __contains__(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def same_as(self, other: "Ideal") -> bool:
        """Ideal equality, by comparing reduced grevlex bases."""
        if other.ring != self.ring:
            return False
        return self.groebner() == other.groebner()

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def leading_monomials(self, order: MonomialOrder = GREVLEX) -> list:
        return [g.lead_monomial(order) for g in self.groebner(order)]

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.gens
        return Ideal(self.ring, self.gens + tuple(other), self.budget)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens], self.budget)

    def power(self, n: int) -> "Ideal":
        result = Ideal(self.ring, [self.ring.one], self.budget)
        for _ in range(n):
            result = Ideal(self.ring, [f * g for f in result.gens for g in self.gens], self.budget)
            result = Ideal(self.ring, result.groebner(), self.budget)
        return result

    def dimension(self) -> int:
        return krull_dimension(self)

    def to_ring(self, target: PolyRing) -> "Ideal":
        return Ideal(target, [g.to_ring(target) for g in self.gens], self.budget)

    def sorted_generators(self) -> list[str]:
        """Reduced grevlex basis as strings, for stable serialization."""
        return sorted(str(g) for g in self.groebner())


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def elimination_order(ring: PolyRing, eliminate_names: Iterable[str]) -> MonomialOrder:
    drop = set(eliminate_names)
    return MonomialOrder.weight([1 if n in drop else 0 for n in ring.names], "grevlex")


def eliminate(I: Ideal, keep: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring on ``keep``, as an ideal of that subring."""
    keep = set(keep)
    ring = I.ring
    unknown = keep - set(ring.names)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    drop = [i for i, n in enumerate(ring.names) if n not in keep]
    sub = ring.subring(keep)
    if not drop:
        return Ideal(sub, [g.to_ring(sub) for g in I.gens], I.budget)
    order = elimination_order(ring, [ring.names[i] for i in drop])
    out = []
    for g in I.groebner(order):
        if all(not m[i] for m in g._t for i in drop):
            out.append(g.to_ring(sub).with_order(GREVLEX))
    return Ideal(sub, out, I.budget)


def _with_extra(I: Ideal, base: str):
    name = I.ring.fresh_name(base)
    big = I.ring.extend([name])
    return big, big.gen(name), [g.to_ring(big) for g in I.gens]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise ValueError("ideals from different rings")
    if not I.gens or not J.gens:
        return Ideal(I.ring, [], I.budget)
    big, t, gi = _with_extra(I, "t")
    gj = [g.to_ring(big) for g in J.gens]
    one = big.one
    K = Ideal(big, [t * g for g in gi] + [(one - t) * g for g in gj], I.budget)
    return eliminate(K, I.ring.names)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    result = ideals[0]
    for J in ideals[1:]:
        result = intersect(result, J)
    return result


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """The quotient ideal ``I : f``."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    if not I.gens:
        return Ideal(I.ring, [], I.budget)
    inter = intersect(I, Ideal(I.ring, [f], I.budget))
    return Ideal(I.ring, [g.divide_exact(f) for g in inter.gens], I.budget)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    if not J.gens:
        return Ideal(I.ring, [I.ring.one], I.budget)
    return intersect_all([colon(I, g) for g in J.gens])


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f^infinity`` via an auxiliary inverse variable."""
    if f.is_zero():
        raise ValueError("saturation by the zero polynomial")
    big, s, gi = _with_extra(I, "s")
    K = Ideal(big, gi + [big.one - s * f.to_ring(big)], I.budget)
    return eliminate(K, I.ring.names)


def saturate_ideal(I: Ideal, J: Ideal) -> Ideal:
    """``I : J^infinity`` as the intersection of the single-generator saturations."""
    if not J.gens:
        return Ideal(I.ring, [I.ring.one], I.budget)
    return intersect_all([saturate(I, g) for g in J.gens])


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch test: ``f`` is in rad(I) iff 1 is in I + (1 - s f)."""
    if f.is_zero():
        return True
    big, s, gi = _with_extra(I, "s")
    K = Ideal(big, gi + [big.one - s * f.to_ring(big)], I.budget)
    return K.is_unit()


def krull_dimension(I: Ideal) -> int:
    """Dimension of R/I from the grevlex initial ideal; -1 when I is the unit ideal."""
    n = I.ring.nvars
    if not I.gens:
        return n
    if I.is_unit():
        return -1
    supports = set()
    for m in I.leading_monomials():
        supports.add(sum(1 << i for i, e in enumerate(m) if e))
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            mask = sum(1 << i for i in subset)
            if not any(s & ~mask == 0 for s in supports):
                return size
    return 0
