"""Per-instance property checks shared by the corpus command and the test suites."""
from __future__ import annotations

import random

from .deform import deformed_ideal, vasconcelos_check, weight_for_order
from .graded import Presentation
from .poly import GREVLEX, LEX
from .reduction import generic_reduction_number, reduction_number_by_substitution

N_WEIGHTS = 5


def random_weights(P: Presentation, seed, count: int = N_WEIGHTS, low: int = -3, high: int = 5) -> list[tuple]:
    rng = random.Random(f"{seed}:{P.meta.get('index', 0) if hasattr(P, 'meta') else 0}:weights")
    return [tuple(rng.randint(low, high) for _ in range(P.nvars)) for _ in range(count)]


def degenerations(P: Presentation, seed) -> list:
    """lex, grevlex, then random weight vectors."""
    return [LEX, GREVLEX] + random_weights(P, seed)


def _label(spec) -> str:
    return spec.spec() if hasattr(spec, "spec") else "weight:" + ",".join(map(str, spec))


def check_agreement(P: Presentation, seed=0, trials: int = 5) -> dict:
    matrix = generic_reduction_number(P, trials, seed).r_value
    subst = reduction_number_by_substitution(P, seed)
    return {"matrix": matrix, "substitution": subst, "violations": int(matrix != subst)}


def check_vasconcelos(P: Presentation, seed=0, trials: int = 5) -> dict:
    rows = []
    for spec in degenerations(P, seed):
        rep = vasconcelos_check(P.ideal, spec, trials, seed)
        rows.append(rep.to_json())
    return {"checks": rows, "violations": sum(not r["holds"] for r in rows)}


def check_deformation(P: Presentation, seed=0) -> dict:
    rows = []
    for spec in degenerations(P, seed):
        w = weight_for_order(P.ideal, spec) if hasattr(spec, "spec") else spec
        D = deformed_ideal(P.ideal, w, verify=False)
        verdict = D.check()
        rows.append({"spec": _label(spec), "weights": list(w), **verdict})
    bad = sum(not all(v for k, v in r.items() if k not in ("spec", "weights")) for r in rows)
    return {"checks": rows, "violations": bad}


CHECKS = {
    "agreement": check_agreement,
    "vasconcelos": check_vasconcelos,
    "deformation": check_deformation,
}
