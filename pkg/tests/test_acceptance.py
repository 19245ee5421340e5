"""Acceptance gate: eight criteria, one PASS/FAIL line each.

Lines are printed as each criterion finishes and repeated in the terminal
summary (see conftest.py).  Run with ``pytest tests/test_acceptance.py -s``
to see them inline.
"""
import contextlib
import random
import time
from math import comb

import pytest

from reduktor import reduction, suites
from reduktor.core import (
    GradedIdealInQuotient, core_sandwich, fiber_ring, generic_contraction_witness,
)
from reduktor.corpus import generate_corpus
from reduktor.deform import deformed_ideal, initial_ideal, vasconcelos_check, weight_for_order, weight_initial_ideal
from reduktor.errors import GuardError
from reduktor.field import PrimeField
from reduktor.graded import hilbert_function, validate_presentation
from reduktor.groebner import Ideal
from reduktor.poly import LEX, MonomialOrder, PolyRing
from reduktor.reduction import (
    ReductionParams, random_linear_forms, reduction_number_by_substitution, spectrum_analysis,
)

FIELD = PrimeField()
RESULTS = {}
AUDIT = {"ranks": 0, "duality": [], "traces": 0, "persistence": []}
_CORPUS = []


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def corpus():
    if not _CORPUS:
        _CORPUS.extend(generate_corpus(50, seed=0))
    return _CORPUS


@contextlib.contextmanager
def audited():
    """Check duality and persistence on every rank and trace computed inside the block."""
    plain_rank, plain_trace = reduction.matrix_rank, reduction.reduction_number_of

    def rank(P, alpha, n):
        r = plain_rank(P, alpha, n)
        h = hilbert_function(P, alpha.forms(P.ring), n)
        AUDIT["ranks"] += 1
        if r + h != comb(n + P.nvars - 1, P.nvars - 1):
            AUDIT["duality"].append((repr(P), alpha.as_lists(), n, r, h))
        return r

    def trace(P, alpha, max_degree=reduction.DEFAULT_MAX_DEGREE):
        rep = plain_trace(P, alpha, max_degree)
        AUDIT["traces"] += 1
        if rep.is_reduction:
            w = rep.witness_degree
            for n in (w + 1, w + 2):
                if rank(P, alpha, n) != comb(n + P.nvars - 1, P.nvars - 1):
                    AUDIT["persistence"].append((repr(P), alpha.as_lists(), n))
        return rep

    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(reduction, "matrix_rank", rank)
        mp.setattr(reduction, "reduction_number_of", trace)
        yield


# -- instances -----------------------------------------------------------------


def ex26():
    R = PolyRing(("x1", "x2", "x3"), FIELD)
    x1, x2, x3 = R.gens()
    return validate_presentation(R, [x1**3, x2**5, x1 * x2, x1 * x3, x2 * x3])


def ex37():
    R = PolyRing(("x", "y", "z"), FIELD)
    x, y, z = R.gens()
    return validate_presentation(R, [x**2, x * z + y**2])


def ex48():
    R = PolyRing(("U", "V", "W"), FIELD)
    U, V, W = R.gens()
    L = validate_presentation(R, [U**2 + V**2, V * W])
    return GradedIdealInQuotient(L, [U, V])


def hand_core_instances():
    R2 = PolyRing(("x1", "x2"), FIELD)
    x1, x2 = R2.gens()
    R3 = PolyRing(("x", "y", "z"), FIELD)
    x, y, z = R3.gens()
    Rxy = PolyRing(("x", "y"), FIELD)
    R1 = PolyRing(("x",), FIELD)
    corner = validate_presentation(R2, [x1**3, x1 * x2])
    return {
        "ex48": ex48(),
        "corner-max": GradedIdealInQuotient(corner, R2.gens()),
        "xy,yz:(x,z)": GradedIdealInQuotient(validate_presentation(R3, [x * y, y * z]), [x, z]),
        "x^2-max": GradedIdealInQuotient(validate_presentation(Rxy, [Rxy.gen(0) ** 2]), Rxy.gens()),
        "k[x]-max": GradedIdealInQuotient(validate_presentation(R1, []), R1.gens()),
    }


def rq(P, rows):
    return reduction.reduction_number_of(P, ReductionParams.from_rows(rows, FIELD))


# -- criterion bodies ------------------------------------------------------------
# Each returns (ok, detail) so criterion 7 can replay 1-5 under the audit.


def body_1():
    t0 = time.time()
    P = ex26()
    res = spectrum_analysis(P, "symbolic")
    strata = {(1, 1, 1): rq(P, [[1, 1, 1]]), (0, 1, 1): rq(P, [[0, 1, 1]]),
              (0, 0, 1): rq(P, [[0, 0, 1]]), (1, 1, 0): rq(P, [[1, 1, 0]])}
    got = {k: v.r_value if v.is_reduction else None for k, v in strata.items()}
    want = {(1, 1, 1): 1, (0, 1, 1): 2, (0, 0, 1): 4, (1, 1, 0): None}
    elapsed = time.time() - t0
    ok = (sorted(res.spectrum) == [1, 2, 4] and res.r == 1 and res.br == 4 and res.exact
          and got == want and elapsed < 10)
    return ok, f"spectrum={sorted(res.spectrum)} r={res.r} br={res.br} strata={list(got.values())} ({elapsed:.1f}s)"


def body_2():
    t0 = time.time()
    P = ex37()
    x, y, z = P.ring.gens()
    ini = initial_ideal(P.ideal, LEX)
    ini_ok = ini.same_as(Ideal(P.ring, [x**2, x * z, x * y**2, y**4]))
    Q = validate_presentation(P.ring, ini.gens)
    br_src = spectrum_analysis(P, "symbolic").br
    br_ini = spectrum_analysis(Q, "symbolic").br
    vas = vasconcelos_check(P.ideal, LEX)
    elapsed = time.time() - t0
    parts = {"in(I)": ini_ok, "vasconcelos": vas.holds, "runtime": elapsed < 60}
    return parts, br_src, br_ini, vas, elapsed


def body_3():
    t0 = time.time()
    a = ex48()
    U, V, W = a.ring.gens()
    F = fiber_ring(a)
    y1, y2 = F.presentation.ring.gens()
    kernel_ok = F.kernel.same_as(Ideal(F.presentation.ring, [y1**2 + y2**2]))
    br = a.big_reduction_number()
    rep = core_sandwich(a, trials=5, seed=0)
    square = a.power(2).sorted_generators()
    equal = rep.power.sorted_generators() == rep.middle.sorted_generators() == rep.sampled_core.sorted_generators() == square
    wit = generic_contraction_witness(a, U * W)
    outside = not a.power(2).normal_form(U * W).is_zero()
    elapsed = time.time() - t0
    ok = kernel_ok and br == 1 and equal and wit.member and wit.certificate is not None and outside and elapsed < 30
    return ok, (f"kernel={'ok' if kernel_ok else 'bad'} br={br} sandwich_equal={equal} "
                f"certificate={wit.certificate} UW_outside_a^2={outside} ({elapsed:.1f}s)")


def body_4():
    bad = []
    for P in corpus():
        out = suites.check_agreement(P, seed=0)
        if out["violations"]:
            bad.append((P.meta["index"], out["matrix"], out["substitution"]))
    return not bad, f"{len(corpus())} instances, disagreements={len(bad)} {bad or ''}".rstrip()


def body_5():
    bad, checks = [], 0
    for P in corpus():
        out = suites.check_vasconcelos(P, seed=0)
        checks += len(out["checks"])
        bad += [(P.meta["index"], r["target"]) for r in out["checks"] if not r["holds"]]
    return not bad, f"{checks} degenerations (lex, grevlex, 5 weights each), violations={len(bad)} {bad or ''}".rstrip()


# -- tests ---------------------------------------------------------------------------


def test_criterion_1_example_spectrum():
    with audited():
        ok, detail = body_1()
    assert record(1, ok, detail), detail


def _body_2_summary():
    parts, br_src, br_ini, vas, elapsed = body_2()
    expected = br_src == 3 and br_ini == 4
    ok = all(parts.values()) and expected
    detail = (f"in(I) exact={parts['in(I)']} r(R/I)={vas.r_source} <= r(R/in I)={vas.r_initial}: {vas.holds}; "
              f"br(R/I)={br_src} br(R/in I)={br_ini} (expected 3, 4) ({elapsed:.1f}s)")
    if not expected:
        detail += ("; computed br values differ from the expected ones: R/I is a complete intersection of two "
                   "quadrics (h-vector 1,2,1) so every r_Q is 2, and every minimal reduction of R/in(I) has r_Q = 3")
    return ok, detail, parts, br_src, br_ini


def test_criterion_2_attainable_parts():
    with audited():
        ok, detail, parts, br_src, br_ini = _body_2_summary()
    record(2, ok, detail)
    assert all(parts.values()), detail
    # independent values: Cohen-Macaulay with h-vector (1,2,1), and the hand analysis of in(I)
    assert (br_src, br_ini) == (2, 3)
    assert br_src <= br_ini


@pytest.mark.xfail(strict=True, reason="expected br(R/I)=3, br(R/in I)=4; exact computation gives 2 and 3")
def test_criterion_2_expected_big_reduction_numbers():
    P = ex37()
    Q = validate_presentation(P.ring, initial_ideal(P.ideal, LEX).gens)
    assert spectrum_analysis(P, "symbolic").br == 3
    assert spectrum_analysis(Q, "symbolic").br == 4


def test_criterion_3_core_example():
    ok, detail = body_3()
    assert record(3, ok, detail), detail


def test_criterion_4_method_agreement():
    with audited():
        ok, detail = body_4()
    assert record(4, ok, detail), detail


def test_criterion_5_vasconcelos():
    with audited():
        ok, detail = body_5()
    assert record(5, ok, detail), detail


def test_criterion_6_deformation_fibers():
    bad, checks = [], 0
    for P in corpus():
        I = P.ideal
        for spec in suites.degenerations(P, 0):
            is_order = isinstance(spec, MonomialOrder)
            w = weight_for_order(I, spec) if is_order else spec
            D = deformed_ideal(I, w, verify=False)
            zero = D.fiber(0)
            one = D.fiber(1)
            verdict = {
                "colon": D.t_regular(method="colon"),
                "t=0": zero.same_as(weight_initial_ideal(I, w)),
                "t=1": one.contains(I) and I.contains(one),
            }
            if is_order:
                verdict["t=0 order"] = zero.same_as(initial_ideal(I, spec))
            checks += 1
            if not all(verdict.values()):
                bad.append((P.meta["index"], suites._label(spec), [k for k, v in verdict.items() if not v]))
        assert suites.check_deformation(P)["violations"] == 0
    detail = f"{checks} deformations, failures={len(bad)} {bad or ''}".rstrip()
    assert record(6, not bad, detail), detail


def test_criterion_7_chain_duality():
    if not AUDIT["ranks"]:
        # run on its own: replay the workload of criteria 1-5
        with audited():
            body_1()
            body_2()
            body_4()
            body_5()
    rng = random.Random(7)
    pairs, row_bad = 0, []
    eligible = [P for P in corpus() if P.dim >= 1]
    while pairs < 20:
        P = rng.choice(eligible)
        d, m = P.dim, P.nvars
        alpha = random_linear_forms(FIELD, d, m, rng)
        T = [[FIELD.random_element(rng) for _ in range(d)] for _ in range(d)]
        if _det_mod(T) == 0:
            continue
        beta = alpha.transform(T)
        a, b = reduction.reduction_number_of(P, alpha), reduction.reduction_number_of(P, beta)
        top = (a.witness_degree or 3) + 2
        same = (a.is_reduction, a.r_value) == (b.is_reduction, b.r_value) and all(
            reduction.matrix_rank(P, alpha, n) == reduction.matrix_rank(P, beta, n) for n in range(top + 1))
        if not same:
            row_bad.append(P.meta["index"])
        pairs += 1
    ok = AUDIT["ranks"] > 0 and not AUDIT["duality"] and not AUDIT["persistence"] and not row_bad
    detail = (f"duality on {AUDIT['ranks']} ranks (failures {len(AUDIT['duality'])}), persistence on "
              f"{AUDIT['traces']} traces (failures {len(AUDIT['persistence'])}), row-space {pairs} pairs "
              f"(failures {len(row_bad)})")
    assert record(7, ok, detail), detail


def _det_mod(T):
    """Determinant over the field by elimination."""
    p = FIELD.p
    M = [[int(c) % p for c in row] for row in T]
    n, det = len(M), 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], p - 2, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


def test_criterion_8_stability_and_core():
    # part 1: fresh parameters on corpus instances with d >= 1
    chosen = [P for P in corpus() if P.dim >= 1][:10]
    hits = total = 0
    for P in chosen:
        r = reduction.generic_reduction_number(P, seed=0).r_value
        assert r == reduction_number_by_substitution(P, seed=0)
        for j in range(100):
            alpha = random_linear_forms(FIELD, P.dim, P.nvars, f"fresh:{P.meta['index']}:{j}")
            rep = reduction.reduction_number_of(P, alpha)
            hits += rep.is_reduction and rep.r_value == r
            total += 1
    rate = hits / total

    # part 2: sandwich and Rees-Sally on every supported core instance
    instances = dict(hand_core_instances())
    for P in corpus():
        instances[f"corpus{P.meta['index']}-max"] = GradedIdealInQuotient(P, P.ring.gens())
    checked, skipped, bad = 0, 0, []
    for name, a in instances.items():
        try:
            rep = core_sandwich(a, trials=4, seed=1)
        except GuardError:
            skipped += 1
            continue
        base = Ideal(a.ring, a.L.gens)
        ok = rep.middle.contains(rep.power) and rep.sampled_core.contains(rep.middle) and rep.power.contains(base)
        # every sampled minimal reduction contains a^(br+1)
        F = a.fiber().presentation
        rng = random.Random(name)
        for _ in range(6 if F.dim else 0):
            alpha = random_linear_forms(FIELD, F.dim, F.nvars, rng)
            if reduction.reduction_number_of(F, alpha).is_reduction:
                q = Ideal(a.ring, list(a.L.gens) + [sum((c * g for c, g in zip(row, a.gens)), a.ring.zero)
                                                     for row in alpha.alpha])
                ok = ok and q.contains(rep.power)
        checked += 1
        if not ok:
            bad.append(name)
    ok = rate >= 0.99 and not bad and checked > 0
    detail = (f"{hits}/{total} fresh parameters attain r(A) ({100 * rate:.1f}%); containments on {checked} core "
              f"instances (skipped by guards {skipped}), failures={len(bad)} {bad or ''}").rstrip()
    assert record(8, ok, detail), detail

