"""Monomials, monomial orders, polynomial rings and sparse polynomials.

Monomials are exponent tuples. A :class:`MonomialOrder` maps a monomial to a
sort key such that *ascending* keys list monomials from largest to smallest,
which lets term lists, heaps and ``min`` all pick leading terms directly.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add, le, sub
from typing import Iterable, Mapping, Sequence

from .field import PrimeField

Monomial = tuple  # tuple[int, ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(sub, a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(map(le, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def monomials_of_degree(nvars: int, n: int) -> list[Monomial]:
    """All exponent vectors of total degree ``n``, lex-descending."""
    if n < 0:
        return []
    if nvars == 0:
        return [()] if n == 0 else []
    out = []
    for e in range(n, -1, -1):
        for rest in monomials_of_degree(nvars - 1, n - e):
            out.append((e,) + rest)
    return out


# ----------------------------------------------------------------------------
# Orders
# ----------------------------------------------------------------------------

_CACHE_LIMIT = 400_000


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a weight order refined by a lex/grevlex tie-break.

    Weight orders compare ``weights . a`` first (larger weight is larger).
    """

    kind: str
    weights: tuple | None = None
    tiebreak: str = "grevlex"
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weight"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weight":
            if self.weights is None:
                raise ValueError("weight order needs a weight vector")
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
            if self.tiebreak not in ("lex", "grevlex", "revlex"):
                raise ValueError(f"unknown tie-break {self.tiebreak!r}")

    @classmethod
    def weight(cls, weights: Sequence[int], tiebreak: str = "grevlex") -> "MonomialOrder":
        return cls("weight", tuple(weights), tiebreak)

    def key(self, a: Monomial) -> tuple:
        cache = self._cache
        k = cache.get(a)
        if k is None:
            if len(cache) > _CACHE_LIMIT:
                cache.clear()
            k = cache[a] = self._key(a)
        return k

    def _key(self, a: Monomial) -> tuple:
        if self.kind == "lex":
            return tuple(-e for e in a)
        if self.kind == "grevlex":
            return (-sum(a),) + a[::-1]
        if len(a) != len(self.weights):
            raise ValueError("weight vector length does not match monomial")
        w = sum(x * y for x, y in zip(self.weights, a))
        if self.tiebreak == "lex":
            tie = tuple(-e for e in a)
        elif self.tiebreak == "revlex":
            # only a well-order under a positive weight
            tie = a[::-1]
        else:
            tie = (-sum(a),) + a[::-1]
        return (-w,) + tie

    def spec(self) -> str:
        if self.kind == "weight":
            text = "weight:" + ",".join(map(str, self.weights))
            return text if self.tiebreak == "grevlex" else text + ";" + self.tiebreak
        return self.kind

    def __str__(self):
        return self.spec()


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def parse_order(text: str) -> MonomialOrder:
    """Inverse of :meth:`MonomialOrder.spec`."""
    text = text.strip()
    if text in ("lex", "grevlex"):
        return MonomialOrder(text)
    if text.startswith("weight:"):
        body, _, tie = text[len("weight:"):].partition(";")
        weights = tuple(int(w) for w in body.split(","))
        return MonomialOrder.weight(weights, tie or "grevlex")
    raise ValueError(f"cannot parse monomial order {text!r}")


def mono_cmp(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to, or larger than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials over different numbers of variables")
    ka, kb = order.key(a), order.key(b)
    if ka == kb:
        return 0
    return 1 if ka < kb else -1


# ----------------------------------------------------------------------------
# Rings
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    field: PrimeField = PrimeField()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, which) -> "Polynomial":
        i = self.index(which) if isinstance(which, str) else which
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        """Build from ``{exponents: coefficient}``, normalizing coefficients."""
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def fresh_name(self, base: str) -> str:
        name, k = base, 0
        while name in self.names:
            k += 1
            name = f"{base}{k}"
        return name

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(names), self.field)

    def subring(self, names: Iterable[str]) -> "PolyRing":
        keep = set(names)
        return PolyRing(tuple(n for n in self.names if n in keep), self.field)

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


# ----------------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial.

    Terms live in a dict; :attr:`terms` lists them sorted by :attr:`order`.
    Re-sorting for another order is explicit through :meth:`with_order`.
    """

    __slots__ = ("ring", "_t", "order", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, order: MonomialOrder = GREVLEX):
        self.ring = ring
        self._t = terms
        self.order = order
        self._sorted = None
        self._hash = None

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> tuple:
        """(monomial, coefficient) pairs, strictly descending in ``order``."""
        if self._sorted is None:
            key = self.order.key
            self._sorted = tuple(sorted(self._t.items(), key=lambda t: key(t[0])))
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._t)

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        return Polynomial(self.ring, self._t, order)

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def coefficient(self, mono: Monomial):
        return self._t.get(tuple(mono), self.ring.field(0))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and not any(next(iter(self._t))))

    def lead_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        key = (order or self.order).key
        return min(self._t, key=key)

    def lead_coeff(self, order: MonomialOrder | None = None):
        return self._t[self.lead_monomial(order)]

    def lead_term(self, order: MonomialOrder | None = None) -> "Polynomial":
        m = self.lead_monomial(order)
        return Polynomial(self.ring, {m: self._t[m]}, self.order)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff(order)))

    def degree(self) -> int:
        return max((sum(m) for m in self._t), default=-1)

    def degrees(self) -> set:
        return {sum(m) for m in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def support_vars(self) -> set:
        out = set()
        for m in self._t:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def weight(self, weights: Sequence[int]) -> int:
        """Largest weight of a term (the shift b(f) of weight homogenization)."""
        return max(sum(w * e for w, e in zip(weights, m)) for m in self._t)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, self.order)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (p - c) % p for m, c in self._t.items()}, self.order)
        return Polynomial(self.ring, {m: -c for m, c in self._t.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        p = f.p
        if p:
            return Polynomial(self.ring, {m: (v * c) % p for m, v in self._t.items()}, self.order)
        return Polynomial(self.ring, {m: v * c for m, v in self._t.items()}, self.order)

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        p = self.ring.field.p
        c = self.ring.field(c)
        out = {}
        for m, v in self._t.items():
            w = v * c
            out[tuple(map(add, m, mono))] = w % p if p else w
        return Polynomial(self.ring, out if c else {}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = tuple(map(add, m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one.with_order(self.order), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self._t.items())))
        return self._hash

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient ``self / divisor``; raises if the division is not exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = GREVLEX
        lm = divisor.lead_monomial(order)
        inv = self.ring.field.inv(divisor._t[lm])
        rem, quot = self, {}
        while rem:
            m = rem.lead_monomial(order)
            if not mono_divides(lm, m):
                raise ArithmeticError("division is not exact")
            q = mono_div(m, lm)
            c = self.ring.field(rem._t[m] * inv)
            quot[q] = c
            rem = rem - divisor.mul_monomial(q, c)
        return Polynomial(self.ring, quot, self.order)

    # -- substitution -----------------------------------------------------
    def compose(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Ring map sending variable i to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        powers: list[dict] = [dict() for _ in images]

        def power(i, e):
            got = powers[i].get(e)
            if got is None:
                got = powers[i][e] = images[i] ** e
            return got

        acc: dict = {}
        p = target.field.p
        for m, c in self._t.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term._t.items():
                acc[mm] = acc.get(mm, 0) + cc
        if p:
            acc = {m: c % p for m, c in acc.items() if c % p}
        else:
            acc = {m: c for m, c in acc.items() if c}
        return Polynomial(target, acc, self.order)

    def specialize(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute field constants for the named variables (same ring)."""
        idx = {self.ring.index(k): self.ring.field(v) for k, v in values.items()}
        p = self.ring.field.p
        out: dict = {}
        for m, c in self._t.items():
            for i, v in idx.items():
                if m[i]:
                    c = c * v ** m[i]
            if p:
                c %= p
            if not c:
                continue
            mm = tuple(0 if i in idx else e for i, e in enumerate(m))
            out[mm] = out.get(mm, 0) + c
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out, self.order)

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Re-express in ``target`` by variable name (embedding or restriction)."""
        if target == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(target.names.index(name) if name in target.names else None)
        n = target.nvars
        out = {}
        for m, c in self._t.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} not in target ring")
                    e[pos[i]] = k
            out[tuple(e)] = target.field(c) if target.field != self.ring.field else c
        return Polynomial(target, {m: c for m, c in out.items() if c}, self.order)

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        f = self.ring.field
        names = self.ring.names
        parts = []
        for m, c in self.terms:
            c = f.symmetric(c)
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
            else:
                body = _fmt_coeff(a)
            parts.append(("- " if neg else "+ ", body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "- " else "") + first
        for sign, body in parts[1:]:
            text += f" {sign}{body}"
        return text

    def __repr__(self):
        return f"Polynomial({self})"


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({c.numerator}/{c.denominator})"
    return str(int(c))


def monomial_str(ring: PolyRing, m: Monomial) -> str:
    text = "*".join(
        ring.names[i] if e == 1 else f"{ring.names[i]}^{e}" for i, e in enumerate(m) if e
    )
    return text or "1"


def linear_form(ring: PolyRing, coeffs: Sequence) -> Polynomial:
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    return ring.from_dict(terms)


def all_monomials_up_to(nvars: int, n: int) -> Iterable[Monomial]:
    return itertools.chain.from_iterable(monomials_of_degree(nvars, k) for k in range(n + 1))
