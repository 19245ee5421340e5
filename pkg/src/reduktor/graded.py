"""Graded presentations A = R/I and their Hilbert functions."""
from __future__ import annotations

import threading
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardError, HomogeneityError
from .groebner import Ideal, krull_dimension
from .linalg import as_matrix
from .poly import PolyRing, Polynomial, monomial_str, monomials_of_degree, mono_divides

MAX_COLUMNS = 10**6


def check_columns(nvars: int, n: int) -> int:
    cols = comb(n + nvars - 1, nvars - 1) if nvars else int(n == 0)
    if cols > MAX_COLUMNS:
        raise GuardError(f"degree {n} in {nvars} variables has {cols} monomials (limit {MAX_COLUMNS})")
    return cols


class Presentation:
    """A standard graded algebra given by a polynomial ring and homogeneous generators.

    Degree-wise data (standard monomials, multiplication maps) is memoized;
    fills are idempotent, so concurrent readers at worst duplicate work.
    """

    def __init__(self, ring: PolyRing, gens: Sequence[Polynomial]):
        self.ring = ring
        self.gens = tuple(gens)
        self.ideal = Ideal(ring, self.gens)
        self._dim = None
        self._std: dict = {}
        self._mult: dict = {}
        self._hilb: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Presentation({self.ring}, [{', '.join(map(str, self.gens))}])"

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = krull_dimension(self.ideal)
        return self._dim

    @property
    def degrees(self) -> list[int]:
        return [g.degree() for g in self.gens]

    def standard_monomials(self, n: int) -> list:
        """Degree-n monomials outside the grevlex initial ideal, lex-descending."""
        got = self._std.get(n)
        if got is None:
            check_columns(self.nvars, n)
            leads = self.ideal.leading_monomials() if self.gens else []
            got = [m for m in monomials_of_degree(self.nvars, n) if not any(mono_divides(l, m) for l in leads)]
            self._std[n] = got
        return got

    def hilbert(self, n: int) -> int:
        return len(self.standard_monomials(n)) if n >= 0 else 0

    def top_degree(self, limit: int = 200) -> int:
        """Largest n with A_n != 0 for an Artinian presentation."""
        if self.dim != 0:
            raise ValueError("top degree needs a zero-dimensional presentation")
        n = 0
        while self.hilbert(n + 1):
            n += 1
            if n > limit:
                raise GuardError(f"no vanishing Hilbert value below degree {limit}")
        return n

    def multiplication_maps(self, n: int) -> list[np.ndarray]:
        """Matrices of multiplication by each variable, A_{n-1} -> A_n.

        Row g of map j holds the normal form of x_j * g on the standard
        monomials of degree n.
        """
        got = self._mult.get(n)
        if got is not None:
            return got
        src = self.standard_monomials(n - 1)
        dst = self.standard_monomials(n)
        col = {m: k for k, m in enumerate(dst)}
        maps = []
        for j in range(self.nvars):
            rows = []
            for g in src:
                e = list(g)
                e[j] += 1
                mono = tuple(e)
                row = [0] * len(dst)
                if mono in col:
                    row[col[mono]] = 1
                else:
                    nf = self.ideal.normal_form(self.ring.monomial(mono))
                    for m, c in nf._t.items():
                        row[col[m]] = c
                rows.append(row)
            maps.append(as_matrix(rows, self.field, ncols=len(dst)).reshape(len(src), len(dst)))
        with self._lock:
            self._mult.setdefault(n, maps)
        return self._mult[n]

    def with_extra(self, extra: Iterable[Polynomial]) -> "Presentation":
        return Presentation(self.ring, self.gens + tuple(extra))

    def describe(self) -> dict:
        return {
            "field": self.field.p,
            "vars": list(self.ring.names),
            "ideal": [str(g) for g in self.gens],
        }


def validate_presentation(ring: PolyRing, gens: Iterable[Polynomial]) -> Presentation:
    """Check homogeneity and build the presentation (caching its dimension)."""
    gens = list(gens)
    for k, g in enumerate(gens):
        if g.ring != ring:
            raise ValueError(f"generator {k} lives in a different ring")
        if g.is_zero():
            raise ValueError(f"generator {k} is zero")
        if g.is_constant():
            raise HomogeneityError(f"generator {k} is a nonzero constant; the ideal is the whole ring")
        if not g.is_homogeneous():
            by_deg = {}
            for m, _ in g.terms:
                by_deg.setdefault(sum(m), m)
            (d1, m1), (d2, m2) = sorted(by_deg.items(), reverse=True)[:2]
            raise HomogeneityError(
                f"generator {k} ({g}) is not homogeneous: term {monomial_str(ring, m1)} has degree {d1}"
                f" but {monomial_str(ring, m2)} has degree {d2}"
            )
    P = Presentation(ring, gens)
    P.dim  # noqa: B018  (cache)
    return P


def hilbert_function(P: Presentation, extra: Sequence[Polynomial], n: int) -> int:
    """dim_k (R / (extra + I))_n."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    extra = tuple(e for e in extra if not e.is_zero())
    if not extra:
        return P.hilbert(n)
    key = frozenset(extra)
    Q = P._hilb.get(key)
    if Q is None:
        Q = P._hilb.setdefault(key, P.with_extra(extra))
    return Q.hilbert(n)


def polynomial_ring_hilbert(nvars: int, n: int) -> int:
    return comb(n + nvars - 1, nvars - 1) if nvars else int(n == 0)
