"""Acceptance criteria 1-10, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible even under
output capture) and then asserts.  All arithmetic is exact.
"""

import io
import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import mrba
from mrba.algebra import (
    MRBStructure,
    adjoint_bimodule,
    check_morphism,
    direct_sum,
    endo_bimodule,
    from_rota_baxter,
    graph_subalgebra_check,
    induced_algebra,
    induced_bimodule_ms,
    induced_structure,
    semidirect_product,
    twisted_bimodule,
    validate_algebra,
    validate_bimodule,
    validate_mrb,
)
from mrba.bridge import compare_cohomologies, rba_matrix, theta_matrix
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import (
    cohomology_report,
    hochschild_matrix,
    les_dimension_check,
    mrba_coboundary,
    mrba_matrix,
    psi_matrix,
    twisted_matrix,
)
from mrba.deformation import (
    TruncatedDeformation,
    check_deformation,
    check_infinitesimal_cocycle,
    trivialize_order_one,
)
from mrba.extensions import (
    canonical_section,
    classify_roundtrip,
    cocycle_from_section,
    extension_from_cocycle,
    iso_from_cohomologous,
    shifted_section,
)
from mrba.cli import run
from mrba.instances import (
    d2_structure,
    dual_numbers,
    k1,
    k1_structure,
    n2_structure,
    rb_minus_lambda,
    rb_zero,
)
from mrba.io import parse, serialize
from mrba.linalg import identity, is_zero, rank, rat_array, zeros

CORPUS = Path(mrba.__file__).parent / "corpus"


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def instances():
    out = {
        "K1": k1_structure(),
        "D2": d2_structure(),
        "N2": n2_structure(),
        "minus2": from_rota_baxter(rb_minus_lambda(dual_numbers(), 2)),
    }
    for lam in (1, 2, 3):
        out[f"P0 l={lam} on K1"] = from_rota_baxter(rb_zero(k1(), lam))
        out[f"P0 l={lam} on D2"] = from_rota_baxter(rb_zero(dual_numbers(), lam))
    return out


def modules(s):
    adj = adjoint_bimodule(s)
    return {"adj": adj, "sum": direct_sum(s, [adj, adj]), "end": endo_bimodule(adj)}


def rb_pairs():
    from mrba.algebra import BimoduleRep

    rbs = [rb_zero(k1(), lam) for lam in (1, 2, 3)] + [rb_zero(dual_numbers(), lam) for lam in (1, 2, 3)]
    rbs.append(rb_minus_lambda(dual_numbers(), 2))
    return [(rb, BimoduleRep(rb.mult, rb.mult, rb.p, rb.algebra.labels)) for rb in rbs]


def test_criterion_1_constructions_validate(verdict):
    failures = []
    for name, s in instances().items():
        ar = induced_structure(s)
        if validate_algebra(induced_algebra(s)) or validate_mrb(ar):
            failures.append(f"{name}: induced")
        for label, m in modules(s).items():
            checks = {
                "module": validate_bimodule(s, m),
                "semidirect": validate_mrb(semidirect_product(s, m)),
                "induced M_S": validate_bimodule(ar, induced_bimodule_ms(s, m)),
                "twisted": validate_bimodule(ar, twisted_bimodule(s, m)),
            }
            failures += [f"{name}/{label}: {k}" for k, v in checks.items() if v]
    verdict(1, not failures, "all constructions validate exactly" if not failures else "; ".join(failures))


def test_criterion_2_graph_criterion(verdict):
    disagreements = []
    for name, s in instances().items():
        ok, _ = graph_subalgebra_check(s.algebra, s.r)
        if ok != (validate_mrb(MRBStructure(s.algebra, s.r, -1)) == []):
            disagreements.append(name)
    rng = random.Random(2024)
    alg = dual_numbers()
    passing = 0
    for i in range(20):
        r = rat_array([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)])
        if i % 5 == 0:
            r = rat_array([[1, 0], [0, -1]]) if i % 10 == 0 else rat_array([[-1, 0], [0, 1]])
        ok, _ = graph_subalgebra_check(alg, r)
        passing += ok
        if ok != (validate_mrb(MRBStructure(alg, r, -1)) == []):
            disagreements.append(f"random #{i}")
    verdict(2, not disagreements, f"agreement on {len(instances())} instances and 20 random operators ({passing} valid)" if not disagreements else ", ".join(disagreements))


def test_criterion_3_complexes(verdict):
    bad = []
    for name, s in instances().items():
        for label, m in modules(s).items():
            for k in range(3):
                if not is_zero(hochschild_matrix(s, m, k + 1).dot(hochschild_matrix(s, m, k))):
                    bad.append(f"{name}/{label} Hochschild {k}")
                if not is_zero(twisted_matrix(s, m, k + 1).dot(twisted_matrix(s, m, k))):
                    bad.append(f"{name}/{label} twisted {k}")
            for k in range(2):
                if not is_zero(mrba_matrix(s, m, k + 1).dot(mrba_matrix(s, m, k))):
                    bad.append(f"{name}/{label} combined {k}")
    # printed convention on K1: D(D(c id, 0)) = (0, 2c), i.e. Psi^2 = -2c
    s = k1_structure()
    adj = adjoint_bimodule(s)
    c = Fraction(5, 3)
    start = CochainPair(Cochain(1, 1, rat_array([[c]])), Cochain.zero(0, 1, 1))
    twice = mrba_coboundary(s, adj, mrba_coboundary(s, adj, start, "printed"), "printed")
    witness = twice.chi.is_zero() and twice.phi.coeffs[0, 0] == 2 * c
    printed_square = mrba_matrix(s, adj, 2, "printed").dot(mrba_matrix(s, adj, 1, "printed"))
    regression = witness and not is_zero(printed_square)
    ok = not bad and regression
    detail = "d^2 = 0 everywhere; printed convention gives D^2 != 0 with witness 2c" if ok else f"{bad} witness={witness}"
    verdict(3, ok, detail)


def test_criterion_4_cochain_map(verdict):
    bad = []
    for name, s in instances().items():
        for label, m in modules(s).items():
            for k in range(2):
                lhs = twisted_matrix(s, m, k).dot(psi_matrix(s, m, k))
                rhs = psi_matrix(s, m, k + 1).dot(hochschild_matrix(s, m, k))
                if not is_zero(lhs - rhs):
                    bad.append(f"{name}/{label} k={k}")
    verdict(4, not bad, "dt Psi^k = Psi^(k+1) d for k = 0, 1" if not bad else ", ".join(bad))


def test_criterion_5_cohomology_table(verdict):
    s = k1_structure()
    dims = [cohomology_report(s, adjoint_bimodule(s), k).dim_cohomology for k in range(3)]
    h0 = {name: [cohomology_report(t, m, 0).dim_cohomology for m in modules(t).values()] for name, t in instances().items()}
    nonzero = [n for n, v in h0.items() if any(v)]
    ok = dims == [0, 0, 0] and not nonzero
    verdict(5, ok, f"K1 adjoint H^0..H^2 = {dims}; H^0 = 0 on every instance" if ok else f"{dims} {nonzero}")


def test_criterion_6_long_exact_sequence(verdict):
    results = {}
    for name, s in (("K1", k1_structure()), ("D2", d2_structure())):
        results[name], _ = les_dimension_check(s, adjoint_bimodule(s), 2)
    verdict(6, all(results.values()), f"exact through degree 2: {results}")


def test_criterion_7_comparison(verdict):
    bad = []
    for rb, m in rb_pairs():
        try:
            compare_cohomologies(rb, m, 2)
        except ArithmeticError as exc:
            bad.append(str(exc))
            continue
        s = from_rota_baxter(rb)
        from mrba.algebra import lift_bimodule

        lm = lift_bimodule(rb, m)
        for k in range(3):
            lhs = mrba_matrix(s, lm, k).dot(theta_matrix(rb.dim, m.dim, k))
            rhs = theta_matrix(rb.dim, m.dim, k + 1).dot(rba_matrix(rb, m, k))
            if not is_zero(lhs - rhs):
                bad.append(f"Theta fails lambda={rb.weight} k={k}")
    verdict(7, not bad, f"equal H^0..H^2 and Theta intertwines on {len(rb_pairs())} instances" if not bad else "; ".join(bad))


def test_criterion_8_deformations(verdict):
    s = k1_structure()
    good = TruncatedDeformation((s.mult, rat_array([[[1]]])), (s.r, zeros((1, 1))))
    checks = {"valid": check_deformation(s, good).valid, "cocycle": check_infinitesimal_cocycle(s, good)}
    out = trivialize_order_one(s, good)
    eq, moved = out
    checks["phi1 = id"] = is_zero(eq.phi[1] - identity(1))
    checks["order 1 vanishes"] = is_zero(moved.mu[1]) and is_zero(moved.r[1])
    bad = TruncatedDeformation((s.mult, zeros((1, 1, 1))), (s.r, identity(1)))
    failure = check_deformation(s, bad).failure
    checks["bad rejected at (e,e)"] = failure is not None and failure.order == 1 and failure.indices == (0, 0)
    missing = [k for k, v in checks.items() if not v]
    verdict(8, not missing, "K1 deformation trivialized by id; R_1 = id rejected at order 1, (e,e)" if not missing else str(missing))


def test_criterion_9_extensions(verdict):
    bad = []
    for name, s in (("K1", k1_structure()), ("D2", d2_structure())):
        adj = adjoint_bimodule(s)
        n = s.dim
        basis = cohomology_report(s, adj, 2).cocycle_basis
        for i, c in enumerate(basis):
            if not classify_roundtrip(s, adj, c, seed=i):
                bad.append(f"{name} roundtrip {i}")
            theta = Cochain(1, n, rat_array([[i + j + 1 for j in range(n)] for i in range(n)]))
            shift = mrba_coboundary(s, adj, CochainPair(theta, Cochain.zero(0, n, n)))
            c2 = c - shift
            phi = iso_from_cohomologous(s, adj, c, c2, theta)
            e_from, e_to = extension_from_cocycle(s, adj, c2), extension_from_cocycle(s, adj, c)
            if not (
                check_morphism(e_from.total, e_to.total, phi)
                and is_zero(phi.dot(e_from.inclusion) - e_to.inclusion)
                and is_zero(e_to.projection.dot(phi) - e_from.projection)
            ):
                bad.append(f"{name} iso {i}")
            ext = e_to
            moved = cocycle_from_section(ext, shifted_section(ext, canonical_section(ext), theta))
            diff = (moved - c).to_vector().reshape(-1, 1)
            bmat = mrba_matrix(s, adj, 1)
            if rank(np.concatenate([bmat, diff], axis=1)) != rank(bmat):
                bad.append(f"{name} shift {i}")
    verdict(9, not bad, "round-trips, isomorphisms and section shifts verified on K1 and D2" if not bad else ", ".join(bad))


def test_criterion_10_cli(verdict):
    docs = sorted(CORPUS.glob("*.json"))
    problems = []
    if len(docs) < 6:
        problems.append(f"only {len(docs)} documents")
    for p in docs:
        text = p.read_text()
        doc = parse(text)
        if serialize(doc) != text or parse(serialize(doc)) != doc:
            problems.append(f"roundtrip {p.name}")

    def call(*argv):
        out, err = io.StringIO(), io.StringIO()
        return run([str(a) for a in argv], out, err), out.getvalue()

    expected = [
        (("validate", CORPUS / "k1.json"), 0),
        (("cohomology", CORPUS / "d2.json", "--json"), 0),
        (("deform-check", CORPUS / "k1_bad_deformation.json"), 1),
        (("trivialize", CORPUS / "n2_obstructed.json"), 1),
        (("cohomology", CORPUS / "k1.json", "--max-degree", "7"), 2),
        (("validate", CORPUS / "does_not_exist.json"), 2),
    ]
    for argv, code in expected:
        first, second = call(*argv), call(*argv)
        if first != second:
            problems.append(f"nondeterministic {argv[0]}")
        if first[0] != code:
            problems.append(f"{argv[0]} {Path(argv[1]).name}: exit {first[0]} != {code}")
    verdict(10, not problems, f"{len(docs)} documents round-trip; reports stable; exit codes 0/1/2" if not problems else "; ".join(problems))
