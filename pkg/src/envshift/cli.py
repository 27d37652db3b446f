"""Command-line verification harness.

Every suite runs a list of named checks, each either PASS, FAIL (with a
re-parseable residual witness) or ERROR.  Reports are deterministic for a
fixed invocation: the JSON payload excludes wall-clock timings, which are
shown on stdout only.  Exit code 0 = all checks pass, 1 = some check failed,
2 = bad input or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import elements as el
from . import independence as ind
from .algebra import AlgebraError, dimension_and_index, parse_algebra
from .chains import chain_generators, commutativity_failures, load_chain_file
from .classical import (
    PointOnDual,
    charpoly_shift_invariants,
    derive_rng,
    evaluate,
    random_rank2_point,
    shift_expand,
)
from .pbw import NCPolynomial, commutator, format_poly
from .shifts import ShiftMatrix, canonical_shift, shift_from_designator, symbolic_shift


@dataclass
class CheckRecord:
    check_id: str
    outcome: str            # PASS | FAIL | ERROR
    residual: str | None = None
    detail: str | None = None
    wall_ms: float = 0.0


@dataclass
class SuiteReport:
    suite: str
    algebra: str
    parameters: dict
    checks: list = field(default_factory=list)

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.checks:
            out[c.outcome.lower()] += 1
        return out

    @property
    def exit_code(self):
        counts = self.counts
        if counts["error"]:
            return 2
        return 1 if counts["fail"] else 0

    def payload(self) -> dict:
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "parameters": self.parameters,
            "checks": [
                {
                    "id": c.check_id,
                    "outcome": c.outcome,
                    "residual": c.residual,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "summary": self.counts,
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2) + "\n"


def _run_check(report: SuiteReport, check_id: str, fn):
    """Run one check; fn returns (ok, residual_text, detail)."""
    t0 = time.perf_counter()
    try:
        ok, residual, detail = fn()
        outcome = "PASS" if ok else "FAIL"
    except AlgebraError as exc:
        outcome, residual, detail = "ERROR", None, str(exc)
    wall = (time.perf_counter() - t0) * 1000.0
    report.checks.append(CheckRecord(check_id, outcome, residual, detail, wall))
    print(f"check {check_id}: {outcome}", file=sys.stderr)


def _residual_check(poly_fn):
    def run():
        r = poly_fn()
        if r.is_zero:
            return True, None, None
        return False, format_poly(r), None
    return run


# ---------------------------------------------------------------------------
# verify suites


def _suite_shift_commutativity(report, spec, shifts, max_power):
    for name, A in shifts:
        for M in range(1, max_power + 1):
            for N in range(M, max_power + 1):
                _run_check(
                    report,
                    f"[(AX^{M}),(AX^{N})]=0 A={name}",
                    _residual_check(
                        lambda A=A, M=M, N=N: commutator(
                            el.shift_generator(spec, A, M), el.shift_generator(spec, A, N)
                        )
                    ),
                )


def _theorem1_shifts(spec, args):
    if args.A == "symbolic":
        # every numeric matrix at once
        return [("symbolic-full", symbolic_shift(spec))]
    if args.A:
        A = shift_from_designator(spec, args.A)
        return [(args.A, A)]
    names = [f"a{k+1}" for k in range(min(2, spec.matrix_size))]
    desig = "sym-diag:" + ",".join(names + ["0"] * (spec.matrix_size - len(names)))
    return [(desig, shift_from_designator(spec, desig))]


def _theorem2_shifts(spec, args):
    if args.A == "symbolic":
        # every matrix of either symmetry sign at once
        return [
            ("symbolic-sign-minus", symbolic_shift(spec, -1)),
            ("symbolic-sign-plus", symbolic_shift(spec, 1)),
        ]
    if args.A:
        return [(args.A, shift_from_designator(spec, args.A))]
    return [
        ("canonical-sign-minus", canonical_shift(spec, -1)),
        ("canonical-sign-plus", canonical_shift(spec, 1)),
    ]


def _suite_centralizer(report, spec, A, max_power):
    basis = el.stabilizer_basis(spec, A)
    report.parameters["stabilizer_dim"] = len(basis)
    for b, B in enumerate(basis):
        for N in range(1, max_power + 1):
            _run_check(
                report,
                f"[(BX),(AX^{N})]=([A,B]X^{N}) B#{b}",
                _residual_check(lambda B=B, N=N: el.check_centralizer(spec, A, B, N)),
            )


def _suite_tensorial(report, spec, max_power):
    for M in range(1, max_power + 1):
        for i in spec.index_set:
            for j in spec.index_set:
                for k in spec.index_set:
                    for l in spec.index_set:
                        _run_check(
                            report,
                            f"tensorial M={M} ({i},{j},{k},{l})",
                            _residual_check(
                                lambda M=M, i=i, j=j, k=k, l=l: el.tensorial_residual(
                                    spec, M, i, j, k, l
                                )
                            ),
                        )


def _suite_casimir_central(report, spec, max_power):
    for M in range(1, max_power + 1):
        cas = el.casimir(spec, M)
        for pair in spec.canonical_generators:
            _run_check(
                report,
                f"[(X^{M}),X[{pair[0]},{pair[1]}]]=0",
                _residual_check(
                    lambda cas=cas, pair=pair: commutator(
                        cas, NCPolynomial.generator(spec, *pair)
                    )
                ),
            )


def _dense_numeric_shift(spec) -> ShiftMatrix:
    m = spec.matrix_size
    rows = [[Fraction(r * m + c + 1) for c in range(m)] for r in range(m)]
    return shift_from_designator(
        spec, "matrix:" + ";".join(",".join(str(x) for x in row) for row in rows)
    )


def _suite_propositions(report, spec, pid, max_power, args):
    if pid in (1, 4):
        for M in range(1, max_power + 1):
            for N in range(1, max_power + 1):
                chk = el.check_proposition(spec, pid, M, N)
                bad = chk.first_failure()
                _run_check(
                    report,
                    f"expansion M={M} N={N} all index tuples",
                    lambda bad=bad: (bad is None, None if bad is None else format_poly(bad[1]),
                                     None if bad is None else bad[0]),
                )
    elif pid == 2:
        A = shift_from_designator(spec, args.A) if args.A else _dense_numeric_shift(spec)
        for M in range(1, max_power + 1):
            for N in range(1, max_power + 1):
                _run_check(
                    report,
                    f"contracted recursion M={M} N={N}",
                    _residual_check(
                        lambda M=M, N=N: el.shift_bracket_recursion_residual(spec, M, N, A)
                    ),
                )
    elif pid == 3:
        for M in range(0, max_power + 1):
            chk = el.check_proposition(spec, 3, M)
            lead = chk.central_coeffs[-1]
            expected = NCPolynomial.scalar(spec, (-1) ** (M + 1))
            bad = chk.first_failure()
            def run(bad=bad, lead=lead, expected=expected):
                if bad is not None:
                    return False, format_poly(bad[1]), bad[0]
                if lead != expected:
                    return False, format_poly(lead - expected), "leading coefficient"
                return True, None, None
            _run_check(report, f"flip expansion of X^{M + 1}", run)
            coeff_texts = [format_poly(c) for c in chk.central_coeffs]
            report.parameters.setdefault("central_coeffs", {})[f"M+1={M + 1}"] = coeff_texts
            print(f"C_p for X^{M + 1}: [{', '.join(coeff_texts)}]")
    elif pid == 5:
        if args.A:
            A = shift_from_designator(spec, args.A)
            signs = sorted(A.symmetry_signs())
            if not signs:
                raise AlgebraError("identity 5 needs a shift matrix with a symmetry sign")
            shifts = [(args.A, A, s) for s in signs]
        else:
            shifts = [
                ("canonical-sign-minus", canonical_shift(spec, -1), -1),
                ("canonical-sign-plus", canonical_shift(spec, 1), 1),
            ]
        for name, A, s in shifts:
            for M in range(1, max_power + 1):
                for N in range(1, max_power + 1):
                    chk = el.check_proposition(spec, 5, M, N, A=A, sign=s)
                    bad = chk.first_failure()
                    _run_check(
                        report,
                        f"recursions M={M} N={N} A={name}",
                        lambda bad=bad: (
                            bad is None,
                            None if bad is None else format_poly(bad[1]),
                            None if bad is None else bad[0],
                        ),
                    )


VERIFY_SUITES = (
    "theorem1",
    "theorem2",
    "centralizer",
    "tensorial",
    "prop1",
    "prop2",
    "prop3",
    "prop4",
    "prop5",
    "casimir-central",
)


def cmd_verify(args) -> int:
    spec = parse_algebra(args.algebra)
    report = SuiteReport(
        suite=args.suite,
        algebra=spec.designator,
        parameters={
            "A": args.A,
            "max_power": args.max_power,
            "seed": args.seed,
        },
    )
    if args.suite == "theorem1":
        if not spec.is_gl:
            raise AlgebraError("theorem1 is the gl suite; use theorem2 for so/sp")
        shifts = _theorem1_shifts(spec, args)
        report.parameters["A"] = shifts[0][0] if not args.A else args.A
        _suite_shift_commutativity(report, spec, shifts, args.max_power)
    elif args.suite == "theorem2":
        if spec.is_gl:
            raise AlgebraError("theorem2 is the so/sp suite; use theorem1 for gl")
        shifts = _theorem2_shifts(spec, args)
        report.parameters["A"] = args.A or "canonical-both-signs"
        _suite_shift_commutativity(report, spec, shifts, args.max_power)
    elif args.suite == "centralizer":
        A = (
            shift_from_designator(spec, args.A)
            if args.A
            else canonical_shift(spec, -1)
        )
        report.parameters["A"] = args.A or "canonical-sign-minus"
        _suite_centralizer(report, spec, A, args.max_power)
    elif args.suite == "tensorial":
        _suite_tensorial(report, spec, args.max_power)
    elif args.suite == "casimir-central":
        _suite_casimir_central(report, spec, args.max_power)
    elif args.suite.startswith("prop"):
        pid = int(args.suite[4:])
        _suite_propositions(report, spec, pid, args.max_power, args)
    else:
        raise AlgebraError(f"unknown suite {args.suite!r}")
    return _finish(report, args)


# ---------------------------------------------------------------------------
# chain / expand / rank / classical commands


def cmd_chain(args) -> int:
    chain = load_chain_file(args.file)
    spec = chain.algebra
    dim, index = dimension_and_index(spec)
    report = SuiteReport(
        suite="chain",
        algebra=spec.designator,
        parameters={
            "file": args.file,
            "trials": args.trials,
            "seed": args.seed,
            "steps": [s.k for s in chain.steps],
            "target": (dim + index) // 2,
        },
    )
    family = chain_generators(chain)
    report.parameters["generators"] = family.labels

    def commutative():
        fails = commutativity_failures(family)
        if not fails:
            return True, None, None
        a, b, r = fails[0]
        return False, format_poly(r), f"[{a},{b}] != 0 ({len(fails)} failing pairs)"

    _run_check(report, "pairwise-commutativity", commutative)

    def rank_check():
        cert = ind.transcendency_check(chain, trials=args.trials, seed=args.seed)
        report.parameters["certificate"] = cert.serialize()
        return cert.verdict == "PASS", None if cert.verdict == "PASS" else str(cert.rank), (
            f"rank {cert.rank} vs target {cert.target}"
        )

    _run_check(report, "transcendency-rank", rank_check)
    return _finish(report, args)


def cmd_expand(args) -> int:
    spec = parse_algebra(args.algebra)
    A = shift_from_designator(spec, args.A)
    report = SuiteReport(
        suite="expand",
        algebra=spec.designator,
        parameters={"A": args.A, "M": args.M, "seed": args.seed},
    )
    comps = shift_expand(spec, args.M, A.numeric_rows())
    report.parameters["components"] = {
        f"k={k + 1}": str(c) for k, c in enumerate(comps)
    }
    for k, c in enumerate(comps):
        print(f"S_A^({k + 1},{args.M}) = {c}")
    _run_check(report, "expansion-computed", lambda: (True, None, None))
    return _finish(report, args)


def cmd_rank(args) -> int:
    spec = parse_algebra(args.algebra)
    A = (
        shift_from_designator(spec, args.A)
        if args.A
        else canonical_shift(spec, -1)
    )
    report = SuiteReport(
        suite="rank",
        algebra=spec.designator,
        parameters={"A": args.A or "canonical-sign-minus", "seed": args.seed,
                    "trials": args.trials, "max_power": args.max_power},
    )
    fs, labels = ind.shift_family_classical(spec, A.numeric_rows(), max_shift=args.max_power)
    cert = ind.jacobian_rank(fs, spec, trials=args.trials, seed=args.seed, labels=labels)
    report.parameters["certificate"] = cert.serialize()

    def run():
        ok = cert.verdict == "PASS"
        return ok, None if ok else str(cert.rank), f"rank {cert.rank} vs target {cert.target}"

    _run_check(report, "jacobian-rank", run)
    return _finish(report, args)


def cmd_classical(args) -> int:
    spec = parse_algebra(args.algebra)
    report = SuiteReport(
        suite=f"classical-{args.what}",
        algebra=spec.designator,
        parameters={"seed": args.seed},
    )
    if args.what == "lemma2":
        A = (
            shift_from_designator(spec, args.A)
            if args.A
            else canonical_shift(spec, -1)
        )
        report.parameters.update({"A": args.A or "canonical-sign-minus", "points": args.points})
        m = spec.matrix_size
        pairs = [
            (M, k)
            for M in range(1, m + 1)
            for k in range(1, M)
            if M - k >= 3
        ]
        report.parameters["pairs"] = [f"M={M},k={k}" for M, k in pairs]
        for M, k in pairs:
            poly = charpoly_shift_invariants(spec, M, k, A.numeric_rows())
            for p in range(args.points):
                def run(poly=poly, p=p):
                    point = random_rank2_point(spec, seed=f"{args.seed}.{p}")
                    v = evaluate(poly, point)
                    return v == 0, None if v == 0 else str(v), f"point seed ({args.seed},{p})"
                _run_check(report, f"vanish M={M} k={k} point#{p}", run)
    elif args.what == "duality":
        for s in range(args.seeds):
            def run(s=s):
                pX = PointOnDual.random(spec, derive_rng(args.seed, s, "x"))
                pA = PointOnDual.random(spec, derive_rng(args.seed, s, "a"))
                out = ind.brailov_duality_check(spec, args.k, args.M, pX, pA)
                det = f"validated index conventions: {out.validated}"
                return out.validated == ["M-k-1"], None if out.validated else "no convention holds", det
            _run_check(report, f"duality M={args.M} k={args.k} seed#{s}", run)
        report.parameters.update({"M": args.M, "k": args.k, "seeds": args.seeds})
    elif args.what == "tangent":
        if not args.A:
            raise AlgebraError("tangent check needs --A")
        A = shift_from_designator(spec, args.A)
        report.parameters.update({"A": args.A, "trials": args.trials})

        def run():
            lhs, rhs = ind.tangent_intersection_dim(spec, A, trials=args.trials, seed=args.seed)
            return lhs == rhs, None if lhs == rhs else f"{lhs}", f"lhs {lhs} vs rhs {rhs}"

        _run_check(report, "tangent-intersection", run)
    else:
        raise AlgebraError(f"unknown classical check {args.what!r}")
    return _finish(report, args)


# ---------------------------------------------------------------------------
# plumbing


def _finish(report: SuiteReport, args) -> int:
    counts = report.counts
    for c in report.checks:
        line = f"[{c.outcome}] {c.check_id} ({c.wall_ms:.1f} ms)"
        if c.detail:
            line += f" -- {c.detail}"
        if c.residual:
            line += f" residual: {c.residual}"
        print(line)
    print(
        f"suite {report.suite} on {report.algebra}: "
        f"{counts['pass']} pass, {counts['fail']} fail, {counts['error']} error"
    )
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="envshift",
        description="exact verification of commutative families in enveloping algebras",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", required=True, help="gl:N | so:N | sp:N")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", help="write the JSON report here")

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("suite", choices=VERIFY_SUITES)
    common(v)
    v.add_argument("--A", help="diag:...|sym-diag:...|matrix:r;r;...")
    v.add_argument("--max-power", type=int, default=3, dest="max_power")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("chain", help="verify a chain family from a chain file")
    c.add_argument("--file", required=True)
    common(c, algebra=False)
    c.add_argument("--trials", type=int, default=3)
    c.set_defaults(fn=cmd_chain)

    e = sub.add_parser("expand", help="print argument-shift expansion components")
    common(e)
    e.add_argument("--A", required=True)
    e.add_argument("--M", type=int, required=True)
    e.set_defaults(fn=cmd_expand)

    r = sub.add_parser("rank", help="Jacobian rank certificate of the shift family")
    common(r)
    r.add_argument("--A")
    r.add_argument("--max-power", type=int, default=None, dest="max_power")
    r.add_argument("--trials", type=int, default=3)
    r.set_defaults(fn=cmd_rank)

    k = sub.add_parser("classical", help="classical-side checks")
    k.add_argument("what", choices=("lemma2", "duality", "tangent"))
    common(k)
    k.add_argument("--A")
    k.add_argument("--M", type=int)
    k.add_argument("--k", type=int)
    k.add_argument("--points", type=int, default=5)
    k.add_argument("--seeds", type=int, default=5)
    k.add_argument("--trials", type=int, default=8)
    k.set_defaults(fn=cmd_classical)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
