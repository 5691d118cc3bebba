"""Acceptance gate: eleven criteria, exact comparisons throughout.

Each test records a one-line verdict; ``conftest.py`` prints the collected
lines at the end of the run, and running this file as a script prints them
directly.
"""
import json
import time

from qcalculi.algebra import QMatrix, monomials
from qcalculi.calculus import (
    check_d_squared,
    check_extension_conditions,
    check_graded_leibniz,
)
from qcalculi.cli import main
from qcalculi.integral import (
    build_freeness,
    check_chain_map,
    check_diagonal_shortcut,
    check_flatness,
    check_freeness,
    check_hom_connection_law,
    check_poincare_condition,
    check_theta_roundtrip,
)
from qcalculi.oracle import check_sigma_closed_form, rewrite_system_for
from qcalculi.presets import SIGMA, manin, manin_expected, quantum_affine

VERDICTS = {}
BOTH = (("quantum-affine", quantum_affine), ("manin", manin))


def verdict(k, title, results):
    """``results`` is a list of (label, CheckResult-or-bool)."""
    failures = []
    for label, r in results:
        ok = r if isinstance(r, bool) else r.passed
        if not ok:
            failures.append(label if isinstance(r, bool) else f"{label}: {r.counterexample}")
    line = f"{'PASS' if not failures else 'FAIL'} criterion {k:2d}: {title}"
    if failures:
        line += "  [" + "; ".join(failures) + "]"
    VERDICTS[k] = line
    print(line)
    assert not failures, line


def test_criterion_01_manin_sigma_closed_form_vs_oracle():
    start = time.perf_counter()
    results = []
    for n in (2, 3):
        calc = manin(n)
        rs = rewrite_system_for(calc)
        expected = lambda i, j, a, calc=calc: manin_expected(SIGMA, (i, j), a, calc)
        results.append((f"n={n}", check_sigma_closed_form(calc, rs, 5, expected)))
    results.append(("runtime < 60 s", time.perf_counter() - start < 60))
    verdict(1, "Manin sigma closed form equals rewriting oracle (n=2,3, |alpha|<=5)", results)


def test_criterion_02_manin_partial_sigma_scaling():
    results = []
    for n in (1, 2, 3):
        calc = manin(n)
        fd = build_freeness(calc.tmd)
        p = calc.manin_constants.p
        ok = all(fd.ds(i).on_monomial(a) == calc.tmd.d(i).on_monomial(a).scale(p ** i)
                 for a in monomials(n, 5) for i in range(1, n + 1))
        results.append((f"n={n}", ok))
    verdict(2, "constructive partial^sigma_i = p^i partial_i (n<=3, |alpha|<=5)", results)


def test_criterion_03_freeness():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            calc = build(n)
            results.append((f"{name} n={n}", check_freeness(build_freeness(calc.tmd), 4)))
    verdict(3, "four freeness identities on |alpha|<=4, both presets, n<=3", results)


def test_criterion_04_extension_conditions_and_negative_control():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            results.append((f"{name} n={n}", check_extension_conditions(build(n), 4)))
    bad = manin(2)
    bad = bad.with_qext(QMatrix.uniform(2, bad.manin_constants.q))
    neg = check_extension_conditions(bad, 2)
    results.append(("negative control fails", not neg.passed))
    results.append(("counterexample within |alpha|<=2",
                    neg.counterexample is not None and sum(neg.counterexample["alpha"]) <= 2))
    verdict(4, "extension conditions pass; all-q twist fails with a counterexample", results)


def test_criterion_05_d_squared_and_graded_leibniz():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            calc = build(n)
            results.append((f"d^2 {name} n={n}", check_d_squared(calc, 4)))
        for n in (2, 3):
            r = check_graded_leibniz(build(n), 4, samples=200, seed=0)
            results.append((f"leibniz {name} n={n}", r))
            results.append((f"leibniz {name} n={n} has 200 samples", r.cases >= 200))
    verdict(5, "d^2 = 0 on |alpha|<=4 and graded Leibniz on 200 pairs per preset", results)


def test_criterion_06_hom_connection_law():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            calc = build(n)
            results.append((f"{name} n={n}",
                            check_hom_connection_law(build_freeness(calc.tmd), calc, 4)))
    verdict(6, "hom-connection law for all dual-basis f and |alpha|<=4", results)


def test_criterion_07_flatness():
    results = []
    for name, build in BOTH:
        for n in (2, 3):
            calc = build(n)
            r = check_flatness(build_freeness(calc.tmd), calc, random_forms=20, seed=0)
            results.append((f"{name} n={n}", r))
    verdict(7, "partial^sigma(1)=0 and nabla0 nabla1 = 0 on beta_st and 20 random forms",
            results)


def test_criterion_08_poincare_condition():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            calc = build(n)
            results.append((f"{name} n={n}",
                            check_poincare_condition(build_freeness(calc.tmd), calc, 4)))
    for n in (1, 2, 3):
        calc = quantum_affine(n)
        results.append((f"diagonal shortcut n={n}",
                        check_diagonal_shortcut(build_freeness(calc.tmd), calc, 4)))
    verdict(8, "Poincare condition on |alpha|<=4; diagonal shortcut on quantum affine space",
            results)


def test_criterion_09_chain_map():
    start = time.perf_counter()
    results = []
    for name, build in BOTH:
        for n in (2, 3):
            calc = build(n)
            results.append((f"{name} n={n}",
                            check_chain_map(build_freeness(calc.tmd), calc, 3)))
    results.append(("runtime < 120 s", time.perf_counter() - start < 120))
    verdict(9, "Theta_{m+1} d = nabla Theta_m for all m, basis pairs, |alpha|<=3", results)


def test_criterion_10_theta_bijective():
    results = []
    for name, build in BOTH:
        for n in (1, 2, 3):
            calc = build(n)
            results.append((f"{name} n={n}",
                            check_theta_roundtrip(build_freeness(calc.tmd), calc, 3)))
    verdict(10, "both Theta round trips are identities on basis elements, |alpha|<=3", results)


def test_criterion_11_cli_determinism_and_exit_codes(tmp_path):
    args = ["verify", "--preset", "manin", "--n", "2", "--max-degree", "4", "--seed", "7",
            "--quiet"]
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    code1 = main(args + ["--report", str(first)])
    code2 = main(args + ["--report", str(second)])
    results = [("exit 0 on pass", code1 == 0 and code2 == 0),
               ("byte-identical reports", first.read_bytes() == second.read_bytes())]

    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({
        "params": ["q"], "n": 2,
        "Q": [["1", "q"], ["q^-1", "1"]],
        "sigma_images": [["x1", "q*x2"], ["q^-1*x1", "x2"]],
        "partial_images": [["1", "0"], ["0", "1"]],
        "Qext": [["1", "q^2"], ["q^-2", "1"]],
    }))
    report = tmp_path / "broken-report.json"
    code = main(["verify", "--spec", str(broken), "--report", str(report), "--quiet"])
    results.append(("exit 1 on failed check", code == 1))
    results.append(("report written on failure", report.exists()))

    malformed = tmp_path / "malformed.json"
    malformed.write_text("{")
    code = main(["verify", "--spec", str(malformed), "--report", str(tmp_path / "x.json")])
    results.append(("exit 2 on malformed input", code == 2))
    verdict(11, "CLI reports are deterministic and exit codes follow 0/1/2", results)


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    status = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion_"):
            continue
        try:
            if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as tmp:
                    fn(Path(tmp))
            else:
                fn()
        except AssertionError:
            status = 1
    sys.exit(status)
