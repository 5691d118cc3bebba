"""Command-line frontend: ``verify``, ``describe`` and ``compute``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on
malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import (
    DIAGONAL,
    AlgebraElement,
    QMatrix,
    QuantumAffineAlgebra,
    RelationViolation,
    TwistedMultiDerivation,
    check_twisted_multiderivation,
    derivation_from_generator_images,
    hom_from_generator_images,
    monomials,
    unit_vector,
)
from .calculus import (
    DifferentialCalculus,
    Form,
    check_d_squared,
    check_extension_conditions,
    check_graded_leibniz,
    d,
)
from .integral import (
    FreenessData,
    HomForm,
    NotFree,
    ShapeUnsupported,
    build_freeness,
    check_chain_map,
    check_diagonal_shortcut,
    check_flatness,
    check_freeness,
    check_hom_connection_law,
    check_poincare_condition,
    check_theta_roundtrip,
    nabla,
    nabla0,
    theta,
    theta_inverse,
)
from .oracle import check_oracle_d, check_oracle_sigma, check_sigma_closed_form, rewrite_system_for
from .parsing import parse_expression
from .presets import (
    BAR_SIGMA,
    HAT_SIGMA,
    MANIN,
    PARTIAL_SIGMA,
    PRESETS,
    SIGMA,
    build_preset,
    describe,
    manin_expected,
)
from .results import FAIL, PASS, CheckResult, skipped, verify_cases
from .scalar import ParamSet

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SAMPLES = 200
FLATNESS_FORMS = 20
DEFAULT_REPORT = "qcalculi-report.json"


class SpecError(ValueError):
    """Malformed calculus specification or element file."""


# -- custom calculus specs -----------------------------------------------------------

def _matrix(raw, n, params, what) -> QMatrix:
    if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n
                                                         for r in raw):
        raise SpecError(f"{what} must be an {n}x{n} list of expression strings")
    rows = [[parse_expression(str(c), params) for c in r] for r in raw]
    return QMatrix(rows, validate=False)


def _inverse_images(A: QuantumAffineAlgebra, images: Sequence[AlgebraElement]):
    """Inverse of a diagonal-type sigma with x_j -> c_j x_j, c_j a unit; None otherwise."""
    out = []
    for j, img in enumerate(images, start=1):
        if len(img.terms) != 1:
            return None
        ((alpha, c),) = img.terms.items()
        if alpha != unit_vector(A.n, j) or not c.is_unit():
            return None
        out.append(A.monomial(alpha, c ** -1))
    return out


def load_spec(data: dict):
    """Validate the shape of a CalculusSpec mapping; returns (n, params, Q, Qext)."""
    if not isinstance(data, dict):
        raise SpecError("a calculus spec must be a JSON object")
    shape = data.get("shape", DIAGONAL)
    if shape != DIAGONAL or "sigma_matrix" in data:
        raise SpecError("custom specs support diagonal sigma only; the upper-triangular "
                        "calculus is available as --preset manin")
    for key in ("n", "Q", "sigma_images", "partial_images"):
        if key not in data:
            raise SpecError(f"spec is missing {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SpecError("n must be a positive integer")
    params = ParamSet(tuple(data.get("params", [])))
    Q = _matrix(data["Q"], n, params, "Q")
    Qext = _matrix(data["Qext"], n, params, "Qext") if "Qext" in data else Q
    return n, params, Q, Qext


def build_custom(n, params, Q: QMatrix, Qext: QMatrix, data: dict,
                 degree_bound: int) -> DifferentialCalculus:
    A = QuantumAffineAlgebra(Q)

    def images(key, i):
        row = data[key][i - 1] if len(data[key]) >= i else None
        if not isinstance(row, list) or len(row) != n:
            raise SpecError(f"{key}[{i - 1}] must list {n} expressions")
        return [parse_expression(str(e), params, n, algebra=A) for e in row]

    if len(data["sigma_images"]) != n or len(data["partial_images"]) != n:
        raise SpecError(f"sigma_images and partial_images need {n} rows each")
    sigmas, partials = [], []
    for i in range(1, n + 1):
        imgs = images("sigma_images", i)
        try:
            s = hom_from_generator_images(A, imgs, name=f"sigma_{i}",
                                          inverse_images=_inverse_images(A, imgs))
        except RelationViolation as exc:
            raise SpecError(f"sigma_{i} does not respect x{exc.i}*x{exc.j} = "
                            f"q{exc.i}{exc.j}*x{exc.j}*x{exc.i}") from exc
        sigmas.append(s)
    for i in range(1, n + 1):
        partials.append(derivation_from_generator_images(A, images("partial_images", i),
                                                         sigmas[i - 1], name=f"partial_{i}"))
    tmd = TwistedMultiDerivation.diagonal(A, sigmas, partials)
    return DifferentialCalculus(A, Qext, tmd, degree_bound, name="custom")


def read_spec_file(path: str):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc
    return data


# -- verification suite ------------------------------------------------------------------

def _antisymmetry(Q: QMatrix, Qext: QMatrix) -> CheckResult:
    start = time.perf_counter()
    for label, M in (("Q", Q), ("Qext", Qext)):
        problem = M.antisymmetry_defect()
        if problem:
            return CheckResult("q-antisymmetry", FAIL, None,
                               {"identity": "q_ii = 1, q_ij q_ji = 1", "matrix": label,
                                "lhs": problem, "rhs": "antisymmetric unit matrix"},
                               elapsed_ms=int((time.perf_counter() - start) * 1000), cases=1)
    return CheckResult("q-antisymmetry", PASS, None, cases=2 * Q.n * Q.n)


def _not_free(exc: Exception, D) -> CheckResult:
    return CheckResult("freeness", FAIL, D, {"identity": "sigma_ii invertible",
                                             "lhs": str(exc), "rhs": "inverse available"})


def closed_form_checks(calc: DifferentialCalculus, fd: Optional[FreenessData], D: int
                       ) -> List[Tuple[str, Callable[[], CheckResult], Sequence[str]]]:
    """Preset-specific agreements; each item is (name, thunk, dependencies)."""
    rs = rewrite_system_for(calc)
    items = [("oracle-sigma", lambda: check_oracle_sigma(calc, rs, D), ()),
             ("oracle-d", lambda: check_oracle_d(calc, rs, D), ())]
    if calc.name == MANIN:
        def op_form(kind, fetch):
            def run():
                def cases():
                    for alpha in monomials(calc.n, D):
                        for idx, op in fetch():
                            yield ({"identity": kind, "indices": list(idx), "alpha": alpha},
                                   op.on_monomial(alpha),
                                   manin_expected(kind, idx, alpha, calc))
                return verify_cases(f"manin-{kind}-closed-form", D, cases())
            return run

        pairs = [(i, j) for i in range(1, calc.n + 1) for j in range(1, calc.n + 1)]
        items.append(("manin-sigma-closed-form",
                      lambda: check_sigma_closed_form(
                          calc, rs, D, lambda i, j, a: manin_expected(SIGMA, (i, j), a, calc),
                          name="manin-sigma-closed-form"), ()))
        items.append((f"manin-{BAR_SIGMA}-closed-form",
                      op_form(BAR_SIGMA, lambda: [((i, j), fd.b(i, j)) for i, j in pairs]),
                      ("freeness",)))
        items.append((f"manin-{HAT_SIGMA}-closed-form",
                      op_form(HAT_SIGMA, lambda: [((i, j), fd.h(i, j)) for i, j in pairs]),
                      ("freeness",)))
        items.append((f"manin-{PARTIAL_SIGMA}-closed-form",
                      op_form(PARTIAL_SIGMA,
                              lambda: [((i,), fd.ds(i)) for i in range(1, calc.n + 1)]),
                      ("freeness",)))
    elif calc.tmd.shape == DIAGONAL:
        items.append(("diagonal-shortcut", lambda: check_diagonal_shortcut(fd, calc, D),
                      ("freeness",)))
    return items


def run_suite(calc: DifferentialCalculus, Q: QMatrix, Qext: QMatrix, D: int,
              seed: int, samples: int) -> List[CheckResult]:
    """Run the checks in their fixed order; a check whose prerequisite did not
    pass is recorded as skipped with that prerequisite named."""
    results: Dict[str, CheckResult] = {}
    ordered: List[CheckResult] = []

    def record(r: CheckResult):
        results[r.name] = r
        ordered.append(r)

    record(_antisymmetry(Q, Qext))
    fd_box: List[Optional[FreenessData]] = [None]

    def freeness() -> CheckResult:
        try:
            fd_box[0] = build_freeness(calc.tmd)
        except (NotFree, ShapeUnsupported) as exc:
            return _not_free(exc, D)
        return check_freeness(fd_box[0], D)

    fd = lambda: fd_box[0]
    plan: List[Tuple[str, Callable[[], CheckResult], Sequence[str]]] = [
        ("twisted-multiderivation", lambda: check_twisted_multiderivation(calc.tmd, D), ()),
        ("freeness", freeness, ()),
        ("extension-conditions", lambda: check_extension_conditions(calc, D), ()),
        ("d-squared", lambda: check_d_squared(calc, D), ("extension-conditions",)),
        ("graded-leibniz", lambda: check_graded_leibniz(calc, D, samples=samples, seed=seed),
         ("extension-conditions",)),
        ("hom-connection-law", lambda: check_hom_connection_law(fd(), calc, D),
         ("freeness",)),
        ("flatness", lambda: check_flatness(fd(), calc, random_forms=FLATNESS_FORMS, seed=seed,
                                            max_degree=D), ("freeness",)),
        ("poincare-condition", lambda: check_poincare_condition(fd(), calc, D), ("freeness",)),
        ("chain-map", lambda: check_chain_map(fd(), calc, D),
         ("extension-conditions", "freeness", "flatness")),
        ("theta-roundtrip", lambda: check_theta_roundtrip(fd(), calc, D), ("freeness",)),
    ]
    base = ("q-antisymmetry", "twisted-multiderivation")
    for name, thunk, deps in plan:
        blocker = _first_blocker(results, (base if name != "twisted-multiderivation"
                                           else base[:1]) + tuple(deps))
        record(skipped(name, blocker, D) if blocker else thunk())
    for name, thunk, deps in closed_form_checks(calc, fd(), D):
        blocker = _first_blocker(results, base + tuple(deps))
        record(skipped(name, blocker, D) if blocker else thunk())
    return ordered


def _first_blocker(results: Dict[str, CheckResult], deps: Sequence[str]) -> Optional[str]:
    for dep in deps:
        r = results.get(dep)
        if r is None or not r.passed:
            return dep
    return None


def build_report(source_key: str, source: str, n: int, D: int, seed: int,
                 checks: List[CheckResult]) -> dict:
    return {
        "tool_version": __version__,
        source_key: source,
        "n": n,
        "max_degree": D,
        "seed": seed,
        "checks": [c.to_json() for c in checks],
        "all_passed": all(c.passed for c in checks),
    }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def timing_path(report: Path) -> Path:
    return report.with_name(report.name + ".timing.json")


def cmd_verify(args) -> int:
    D = args.max_degree
    if D < 0:
        raise SpecError("--max-degree must be non-negative")
    if args.preset:
        if args.n is None:
            raise SpecError("--n is required with --preset")
        calc = build_preset(args.preset, args.n, degree_bound=D)
        Q, Qext = calc.Q, calc.qext
        source_key, source, n = "preset", args.preset, args.n
    else:
        data = read_spec_file(args.spec)
        n, params, Q, Qext = load_spec(data)
        if args.n is not None and args.n != n:
            raise SpecError(f"--n {args.n} disagrees with n = {n} in {args.spec}")
        calc = None
        if Q.antisymmetry_defect() is None and Qext.antisymmetry_defect() is None:
            calc = build_custom(n, params, Q, Qext, data, D)
        source_key, source = "spec", args.spec
    if calc is None:
        checks = [_antisymmetry(Q, Qext)]
    else:
        checks = run_suite(calc, Q, Qext, D, args.seed, args.samples)
    report = build_report(source_key, source, n, D, args.seed, checks)
    out = Path(args.report)
    out.write_text(dump_json(report), encoding="utf-8")
    timing_path(out).write_text(dump_json({c.name: c.elapsed_ms for c in checks}),
                                encoding="utf-8")
    if not args.quiet:
        for c in checks:
            print(c)
        print(f"all_passed={report['all_passed']}  report={out}")
    return EXIT_OK if report["all_passed"] else EXIT_FAIL


def cmd_describe(args) -> int:
    if args.n is None or args.n < 1:
        raise SpecError("--n must be a positive integer")
    print(describe(args.preset, args.n))
    return EXIT_OK


# -- element files -------------------------------------------------------------------

def _index_key(I) -> str:
    return "[" + ",".join(str(i) for i in I) + "]"


def _parse_index(key: str, n: int, deg: int):
    try:
        I = json.loads(key)
    except json.JSONDecodeError as exc:
        raise SpecError(f"bad index tuple {key!r}") from exc
    if (not isinstance(I, list) or len(I) != deg or any(not isinstance(i, int) for i in I)
            or any(not 1 <= i <= n for i in I) or any(I[k] >= I[k + 1] for k in range(len(I) - 1))):
        raise SpecError(f"index {key!r} is not a strictly increasing tuple of length {deg} "
                        f"with entries in 1..{n}")
    return tuple(I)


def read_element(data, calc: DifferentialCalculus):
    """(deg, {I: AlgebraElement}) from {deg, coeffs: {"[i,j]": expr}}."""
    if not isinstance(data, dict) or "deg" not in data or "coeffs" not in data:
        raise SpecError("an element must be an object with 'deg' and 'coeffs'")
    deg = data["deg"]
    if not isinstance(deg, int) or not 0 <= deg <= calc.n:
        raise SpecError(f"deg must be an integer in 0..{calc.n}")
    coeffs = {}
    for key, expr in data["coeffs"].items():
        I = _parse_index(key, calc.n, deg)
        coeffs[I] = parse_expression(str(expr), calc.params, calc.n, algebra=calc.algebra)
    return deg, coeffs


def write_element(deg: int, coeffs: Dict[tuple, AlgebraElement]) -> dict:
    return {"deg": deg, "coeffs": {_index_key(I): str(c) for I, c in sorted(coeffs.items()) if c}}


def compute(op: str, data, calc: DifferentialCalculus) -> dict:
    deg, coeffs = read_element(data, calc)
    n = calc.n
    if op == "d":
        out = d(Form(n, deg, calc.params, coeffs), calc)
        return write_element(out.degree, out.coeffs)
    fd = build_freeness(calc.tmd)
    if op == "theta":
        out = theta(Form(n, deg, calc.params, coeffs), fd, calc)
        return write_element(out.degree, out.values)
    f = HomForm(n, deg, calc.params, coeffs)
    if op == "nabla0":
        return write_element(0, {(): nabla0(f, fd)})
    if op == "nabla":
        out = nabla(f, fd, calc)
        return write_element(out.degree, out.values)
    if op == "theta-inv":
        out = theta_inverse(f, fd, calc)
        return write_element(out.degree, out.coeffs)
    raise SpecError(f"unknown operation {op!r}")


def cmd_compute(args) -> int:
    if args.preset:
        if args.n is None:
            raise SpecError("--n is required with --preset")
        calc = build_preset(args.preset, args.n, degree_bound=args.max_degree)
    else:
        data = read_spec_file(args.spec)
        n, params, Q, Qext = load_spec(data)
        for label, M in (("Q", Q), ("Qext", Qext)):
            problem = M.antisymmetry_defect()
            if problem:
                raise SpecError(f"{label}: {problem}")
        calc = build_custom(n, params, Q, Qext, data, args.max_degree)
    if args.input == "-":
        data = json.load(sys.stdin)
    else:
        try:
            data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read element file {args.input}: {exc}") from exc
    text = dump_json(compute(args.operation, data, calc))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcalculi",
                                     description="Exact verification of twisted differential "
                                                 "calculi on quantum affine spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p, spec_allowed=True):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--preset", choices=PRESETS)
        if spec_allowed:
            g.add_argument("--spec", help="custom diagonal calculus (JSON)")
        p.add_argument("--n", type=int, help="rank (number of generators)")

    v = sub.add_parser("verify", help="run the verification suite and write a JSON report")
    source(v)
    v.add_argument("--max-degree", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="sampled pairs for graded Leibniz")
    v.add_argument("--report", default=DEFAULT_REPORT)
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    ds = sub.add_parser("describe", help="print the relations and data of a preset")
    source(ds, spec_allowed=False)
    ds.set_defaults(func=cmd_describe)

    c = sub.add_parser("compute", help="apply d, nabla0, nabla, theta or theta-inv to an element")
    source(c)
    c.add_argument("operation", choices=("d", "nabla0", "nabla", "theta", "theta-inv"))
    c.add_argument("--input", required=True, help="element JSON, or - for stdin")
    c.add_argument("--output", help="defaults to stdout")
    c.add_argument("--max-degree", type=int, default=4)
    c.set_defaults(func=cmd_compute)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        # SpecError, ParseError, DegreeMismatch, NotFree, ScalarError and friends
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
