"""Command line interface: ``reduktor <command> PROBLEM [options]``.

Exit codes: 0 success, 1 property violation, 2 usage or input error,
3 resource budget or size guard, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .core import GradedIdealInQuotient, core_sandwich, generic_contraction_witness, local_reduction_number
from .corpus import PROFILES, corpus_instance
from .deform import degeneration, vasconcelos_check, generic_initial_ideal
from .errors import GuardError, InconsistencyError, ResourceError, SamplingError
from .graded import Presentation
from .parse import ParseError, parse_polynomials, parse_problem
from .poly import LEX, parse_order
from .reduction import (
    ReductionParams,
    generic_reduction_number,
    reduction_number_by_substitution,
    reduction_number_of,
    spectrum_analysis,
)
from .suites import CHECKS

SCHEMA = "reduktor/1"
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_RESOURCE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    seed: int
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    timings: dict | None = None
    exit_code: int = EXIT_OK
    error: str | None = None

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "command": self.command, "inputs": self.inputs, "seed": self.seed,
               "results": self.results, "warnings": self.warnings}
        if self.timings is not None:
            out["timings"] = self.timings
        if self.error is not None:
            out["error"] = self.error
        return out

    def json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def pretty_text(self) -> str:
        lines = [f"{self.command}  (seed {self.seed})"]
        for k, v in self.inputs.items():
            lines.append(f"  input  {k:<14} {_short(v)}")
        for k, v in self.results.items():
            lines.append(f"  result {k:<14} {_short(v)}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        if self.error:
            lines.append(f"  error: {self.error}")
        return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def default_seed() -> int:
    raw = os.environ.get("REDUKTOR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"REDUKTOR_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $REDUKTOR_SEED or 0)")
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    common.add_argument("--figure", metavar="PATH", help="also render a figure to PATH")
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--max-degree", type=int, default=50)

    problem = argparse.ArgumentParser(add_help=False, parents=[common])
    problem.add_argument("problem", help="problem file, or - for stdin")

    ap = argparse.ArgumentParser(prog="reduktor", description="Reduction numbers of standard graded algebras.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rnum", parents=[problem], help="reduction number r(A)")
    p.add_argument("--method", choices=("matrix", "subst", "both"), default="matrix")
    p = sub.add_parser("rq", parents=[problem], help="r_Q(A) for given linear forms")
    p.add_argument("--alpha", required=True, help="row-major coefficient matrix, comma separated")
    for name, text in (("brnum", "big reduction number br(A)"), ("spectrum", "all attained reduction numbers")):
        p = sub.add_parser(name, parents=[problem], help=text)
        p.add_argument("--mode", choices=("sampled", "symbolic"), default="sampled")
        p.add_argument("--budget", type=int, default=256, help="support patterns sampled")
    p = sub.add_parser("noether", parents=[problem], help="Noether normalization test")
    p.add_argument("--alpha", required=True)
    p = sub.add_parser("ini", parents=[problem], help="initial ideal")
    p.add_argument("--order", help="lex, grevlex or weight:w1,...,wm (default: file order, else lex)")
    p.add_argument("--vasconcelos", action="store_true", help="compare r(R/I) and r(R/in(I))")
    sub.add_parser("gin", parents=[problem], help="generic initial ideal (grevlex)")
    p = sub.add_parser("core", parents=[problem], help="core sandwich for a subideal")
    p.add_argument("--subideal", help="comma separated generators (default: the file's subideal)")
    p.add_argument("--witness", action="append", default=[], metavar="EXPR",
                   help="decide membership of EXPR in the generic contraction (repeatable)")
    p = sub.add_parser("corpus", parents=[common], help="property checks on a random corpus")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--check", choices=sorted(CHECKS), default="vasconcelos")
    p.add_argument("--profile", choices=("mixed",) + PROFILES, default="mixed")
    p.add_argument("--jobs", type=int, default=1)
    return ap


def _read_problem(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_problem(text)


def _parse_alpha(text: str, P: Presentation) -> ReductionParams:
    try:
        vals = [int(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--alpha must be comma separated integers, got {text!r}") from None
    d, m = P.dim, P.nvars
    if len(vals) != d * m:
        raise UsageError(f"--alpha needs d*m = {d}*{m} = {d * m} entries, got {len(vals)}")
    return ReductionParams.from_rows([vals[i * m:(i + 1) * m] for i in range(d)], P.field)


def _ideal_list(I) -> list:
    return I.sorted_generators()


def _figure(args, report: RunReport, kind: str, **data):
    if not args.figure:
        return
    from . import plotting

    if kind == "trace":
        plotting.rank_trace_figure(data["trace"], args.figure)
    elif kind == "spectrum":
        plotting.spectrum_figure(data["spectrum"], args.figure, data.get("r"), data.get("br"))
    elif kind == "hilbert":
        plotting.hilbert_figure(data["series"], args.figure)
    elif kind == "pairs":
        plotting.comparison_figure(data["pairs"], args.figure, data["xlabel"], data["ylabel"], data["title"])
    report.results["figure"] = args.figure


def _cmd_rnum(args, pf, report):
    P = pf.presentation()
    if args.method in ("matrix", "both"):
        rep = generic_reduction_number(P, args.trials, report.seed, args.max_degree)
        report.results["r"] = rep.r_value
        report.results["matrix"] = rep.to_json()
        if rep.disagreement:
            report.warnings.append(f"trials disagreed: {rep.per_trial}; the minimum is reported")
        _figure(args, report, "trace", trace=rep.rank_trace)
    if args.method in ("subst", "both"):
        r = reduction_number_by_substitution(P, report.seed, args.max_degree)
        report.results["substitution"] = r
        if args.method == "subst":
            report.results["r"] = r
        elif r != report.results["r"]:
            raise InconsistencyError(f"matrix method gave {report.results['r']}, substitution gave {r}")


def _cmd_rq(args, pf, report):
    P = pf.presentation()
    alpha = _parse_alpha(args.alpha, P)
    rep = reduction_number_of(P, alpha, args.max_degree)
    report.inputs["alpha"] = alpha.as_lists()
    report.results.update(rep.to_json())
    if rep.is_reduction:
        _figure(args, report, "trace", trace=rep.rank_trace)


def _cmd_spectrum(args, pf, report, br_only=False):
    P = pf.presentation()
    res = spectrum_analysis(P, args.mode, args.budget, report.seed, args.max_degree)
    report.inputs["mode"] = args.mode
    if br_only:
        report.results["br"] = res.br
        report.results["exact"] = res.exact
    else:
        report.results.update(res.to_json())
    if args.mode == "sampled" and P.dim > 0:
        report.warnings.append("sampled mode: br is a certified lower bound and the spectrum a subset")
    _figure(args, report, "spectrum", spectrum=res.spectrum, r=res.r, br=res.br)


def _cmd_noether(args, pf, report):
    P = pf.presentation()
    alpha = _parse_alpha(args.alpha, P)
    rep = reduction_number_of(P, alpha, args.max_degree)
    report.inputs["alpha"] = alpha.as_lists()
    report.results["noether_normalization"] = rep.is_reduction
    if not rep.is_reduction:
        report.results["residual_dimension"] = rep.dimension


def _cmd_ini(args, pf, report):
    P = pf.presentation()
    if args.order:
        try:
            order = parse_order(args.order)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        order = pf.order or LEX
    if order.kind == "weight" and len(order.weights) != P.nvars:
        raise UsageError(f"weight vector needs {P.nvars} entries")
    spec = order.weights if order.kind == "weight" else order
    ini, label = degeneration(P.ideal, spec)
    report.inputs["order"] = label
    report.results["initial_ideal"] = _ideal_list(ini)
    if args.vasconcelos:
        v = vasconcelos_check(P.ideal, spec, args.trials, report.seed)
        report.results["vasconcelos"] = v.to_json()
        if not v.holds:
            report.warnings.append("VIOLATION: r(R/I) > r(R/in(I)) after retrial")
            report.exit_code = EXIT_VIOLATION
    if args.figure:
        Q = Presentation(P.ring, ini.gens)
        top = max(6, max(P.degrees) + 4)
        _figure(args, report, "hilbert",
                series={"R/I": [P.hilbert(n) for n in range(top)], f"R/in(I), {label}": [Q.hilbert(n) for n in range(top)]})


def _cmd_gin(args, pf, report):
    P = pf.presentation()
    report.results["gin"] = _ideal_list(generic_initial_ideal(P.ideal, report.seed))


def _cmd_core(args, pf, report):
    P = pf.presentation()
    if args.subideal:
        sub = parse_polynomials(args.subideal, P.ring)
    elif pf.subideal:
        sub = pf.subideal
    else:
        raise UsageError("core needs --subideal or a 'subideal' line in the problem file")
    a = GradedIdealInQuotient(P, sub)
    rep = core_sandwich(a, args.trials, report.seed)
    F = a.fiber()
    report.results["fiber_kernel"] = _ideal_list(F.kernel)
    report.results["r"] = local_reduction_number(a, which="r", seed=report.seed)
    report.results.update(rep.to_json())
    if not rep.stable:
        report.warnings.append("sampled core did not stabilize; it is an upper bound only")
    if not (rep.verdicts["power_in_middle"] and rep.verdicts["middle_in_sampled_core"]):
        report.warnings.append("VIOLATION: sandwich containment failed")
        report.exit_code = EXIT_VIOLATION
    witnesses = []
    for expr in args.witness:
        f = parse_polynomials(expr, P.ring)[0]
        w = generic_contraction_witness(a, f)
        witnesses.append({"element": str(f), **w.to_json()})
    if witnesses:
        report.results["contraction"] = witnesses


def _corpus_task(job):
    check, seed, profile, k, trials = job
    P = corpus_instance(seed, k, profile)
    fn = CHECKS[check]
    out = fn(P, seed, trials) if check != "deformation" else fn(P, seed)
    return {"index": k, "profile": P.meta["profile"], "vars": list(P.ring.names),
            "ideal": [str(g) for g in P.gens], **out}


def _cmd_corpus(args, report):
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    jobs = [(args.check, report.seed, args.profile, k, args.trials) for k in range(args.count)]
    report.inputs.update({"count": args.count, "check": args.check, "profile": args.profile})
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_corpus_task, jobs))
    else:
        rows = [_corpus_task(j) for j in jobs]
    rows.sort(key=lambda r: r["index"])
    violations = sum(r["violations"] for r in rows)
    report.results["violations"] = violations
    report.results["instances"] = rows
    if violations:
        report.exit_code = EXIT_VIOLATION
        report.warnings.append(f"{violations} property violation(s) found")
    if not args.figure:
        return
    if args.check == "agreement":
        pairs = [(r["matrix"], r["substitution"]) for r in rows]
        _figure(args, report, "pairs", pairs=pairs, xlabel="matrix method", ylabel="substitution",
                title="r(A) by two methods")
    elif args.check == "vasconcelos":
        pairs = [(c["r_source"], c["r_initial"]) for r in rows for c in r["checks"]]
        _figure(args, report, "pairs", pairs=pairs, xlabel="r(R/I)", ylabel="r(R/in(I))",
                title="reduction numbers along degenerations")


_COMMANDS = {
    "rnum": _cmd_rnum,
    "rq": _cmd_rq,
    "brnum": lambda a, pf, r: _cmd_spectrum(a, pf, r, br_only=True),
    "spectrum": _cmd_spectrum,
    "noether": _cmd_noether,
    "ini": _cmd_ini,
    "gin": _cmd_gin,
    "core": _cmd_core,
}


def run_command(argv) -> RunReport:
    """Parse argv and run one command; errors are folded into the report's exit code."""
    args = build_parser().parse_args(argv)
    report = RunReport(args.command, {}, 0)
    start = time.perf_counter()
    try:
        report.seed = args.seed if args.seed is not None else default_seed()
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        if args.command == "corpus":
            _cmd_corpus(args, report)
        else:
            pf = _read_problem(args.problem)
            report.inputs.update({"field": pf.field.p, "vars": list(pf.names),
                                  "ideal": [str(g) for g in pf.ideal]})
            if pf.field.is_rational:
                report.warnings.append("rational arithmetic selected (field 0); expect slow runs")
            _COMMANDS[args.command](args, pf, report)
    except (UsageError, ParseError, OSError) as exc:
        report.exit_code, report.error = EXIT_USAGE, str(exc)
    except (ResourceError, GuardError) as exc:
        report.exit_code, report.error = EXIT_RESOURCE, str(exc)
    except (InconsistencyError, SamplingError) as exc:
        report.exit_code, report.error = EXIT_INCONSISTENT, str(exc)
    except ValueError as exc:
        report.exit_code, report.error = EXIT_USAGE, str(exc)
    if args.timings:
        report.timings = {"total_seconds": round(time.perf_counter() - start, 6)}
    return report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = run_command(argv)
    pretty = "--pretty" in argv
    print(report.pretty_text() if pretty else report.json_text())
    if report.error:
        print(f"reduktor: {report.error}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
