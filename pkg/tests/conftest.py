import sys
import itertools
import random

import pytest
import sympy
from hypothesis import HealthCheck, settings

from reduktor.field import PrimeField
from reduktor.graded import validate_presentation
from reduktor.poly import PolyRing

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

SMALL_P = 32003


@pytest.fixture
def F():
    return PrimeField(SMALL_P)


def ring(names, p=SMALL_P):
    return PolyRing(tuple(names), PrimeField(p))


def ex26():
    R = ring(("x1", "x2", "x3"))
    x1, x2, x3 = R.gens()
    return validate_presentation(R, [x1**3, x2**5, x1 * x2, x1 * x3, x2 * x3])


def ex37(p=SMALL_P):
    R = ring("xyz", p)
    x, y, z = R.gens()
    return validate_presentation(R, [x**2, x * z + y**2])


def ex37_initial(p=SMALL_P):
    R = ring("xyz", p)
    x, y, z = R.gens()
    return validate_presentation(R, [x**2, x * z, x * y**2, y**4])


def ex48():
    R = ring("UVW")
    U, V, W = R.gens()
    return validate_presentation(R, [U**2 + V**2, V * W])


# -- sympy bridge (oracle side) ------------------------------------------


def to_sympy(f, symbols):
    fld = f.ring.field
    expr = 0
    for m, c in f.terms:
        term = sympy.Integer(int(fld.symmetric(c)))
        for s, e in zip(symbols, m):
            term *= s**e
        expr += term
    return expr


def sympy_basis(polys, names, order, p=SMALL_P):
    syms = sympy.symbols(names)
    G = sympy.groebner([to_sympy(f, syms) for f in polys], *syms, order=order, modulus=p)
    return {sympy.Poly(g, *syms, modulus=p) for g in G.exprs}, syms


def as_sympy_polys(polys, names, p=SMALL_P):
    syms = sympy.symbols(names)
    return {sympy.Poly(to_sympy(f, syms), *syms, modulus=p).monic() for f in polys}


def brute_hilbert(P, n, extra=()):
    """dim (R/(I + extra))_n by plain linear algebra on all degree-n products."""
    from reduktor.linalg import as_matrix, rank
    from reduktor.poly import monomials_of_degree

    m = P.nvars
    cols = {mono: k for k, mono in enumerate(monomials_of_degree(m, n))}
    rows = []
    for g in list(P.gens) + list(extra):
        for h in monomials_of_degree(m, n - g.degree()):
            prod = g.mul_monomial(h)
            row = [0] * len(cols)
            for mono, c in prod._t.items():
                row[cols[mono]] = c
            rows.append(row)
    if not rows:
        return len(cols)
    return len(cols) - rank(as_matrix(rows, P.field, ncols=len(cols)).reshape(len(rows), len(cols)), P.field)


def all_subsets(n):
    return itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1))


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
