"""Reproducible random homogeneous ideals for the property suites."""
from __future__ import annotations

import random

from .field import PrimeField
from .graded import Presentation
from .groebner import krull_dimension, Ideal
from .poly import PolyRing, monomials_of_degree

PROFILES = ("monomial", "binomial", "dense", "complete-intersection")
NAMES = ("x", "y", "z", "w")


def _ring(m: int, field: PrimeField) -> PolyRing:
    return PolyRing(NAMES[:m], field)


def _pick_m(rng) -> int:
    return rng.choices((2, 3, 4), weights=(3, 4, 2))[0]


def _pick_degree(rng, m: int) -> int:
    top = 3 if m == 4 else 4
    return rng.choices(range(2, top + 1), weights=(5, 3, 1)[: top - 1])[0]


def _random_form(ring: PolyRing, deg: int, rng, terms: int | None = None):
    monos = monomials_of_degree(ring.nvars, deg)
    if terms is not None:
        monos = rng.sample(monos, min(terms, len(monos)))
    return ring.from_dict({mono: ring.field.random_nonzero(rng) for mono in monos})


def _monomial(ring, rng):
    v = rng.randint(1, 4)
    gens = set()
    while len(gens) < v:
        deg = _pick_degree(rng, ring.nvars)
        gens.add(rng.choice(monomials_of_degree(ring.nvars, deg)))
    return [ring.monomial(g) for g in sorted(gens)]


def _binomial(ring, rng):
    v = rng.randint(1, 4)
    out = []
    while len(out) < v:
        deg = _pick_degree(rng, ring.nvars)
        a, b = rng.sample(monomials_of_degree(ring.nvars, deg), 2)
        out.append(ring.monomial(a) - ring.monomial(b, ring.field.random_nonzero(rng)))
    return out


def _dense(ring, rng):
    v = rng.randint(1, min(4, ring.nvars + 1))
    return [_random_form(ring, _pick_degree(rng, ring.nvars), rng) for _ in range(v)]


def _complete_intersection(ring, rng):
    m = ring.nvars
    v = rng.randint(1, min(3, m - 1))
    while True:
        gens = [_random_form(ring, _pick_degree(rng, m), rng, terms=rng.randint(2, 5)) for _ in range(v)]
        if krull_dimension(Ideal(ring, gens)) == m - v:
            return gens


_BUILDERS = {
    "monomial": _monomial,
    "binomial": _binomial,
    "dense": _dense,
    "complete-intersection": _complete_intersection,
}


def corpus_instance(seed, k: int, profile: str = "mixed", field: PrimeField | None = None) -> Presentation:
    """Instance k of a corpus; depends only on (seed, k, profile)."""
    if profile != "mixed" and profile not in _BUILDERS:
        raise ValueError(f"unknown profile {profile!r}")
    field = field or PrimeField()
    rng = random.Random(f"{seed}:{k}:{profile}")
    prof = PROFILES[k % len(PROFILES)] if profile == "mixed" else profile
    ring = _ring(_pick_m(rng), field)
    gens = _BUILDERS[prof](ring, rng)
    P = Presentation(ring, gens)
    P.meta = {"index": k, "profile": prof, "seed": seed}
    if prof == "complete-intersection":
        P.meta["codim"] = len(gens)
    return P


def generate_corpus(count: int, seed=0, profile: str = "mixed", field: PrimeField | None = None) -> list[Presentation]:
    """``count`` presentations with m <= 4, generator degrees <= 4 and at most 4 generators.

    Prefixes of a corpus agree.  Each presentation carries ``meta`` with its
    profile and index.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    return [corpus_instance(seed, k, profile, field) for k in range(count)]
