"""Command-line front end.

Exit codes: 0 success, 1 mathematically invalid input or a construction
that does not exist (the report says which), 2 parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

import numpy as np

from mrba.algebra import (
    graph_subalgebra_check,
    validate_algebra,
    validate_bimodule,
    validate_mrb,
    validate_rb,
    validate_rb_bimodule,
)
from mrba.bridge import compare_cohomologies
from mrba.cohomology import CONVENTIONS, cohomology_report, mrba_matrix
from mrba.deformation import (
    Obstructed,
    check_deformation,
    check_infinitesimal_cocycle,
    trivialize_order_one,
    truncate,
)
from mrba.extensions import (
    ExtensionData,
    NotACocycleError,
    Section,
    SectionMismatchError,
    canonical_section,
    cocycle_from_section,
    extension_from_cocycle,
    validate_extension,
)
from mrba.io import DocumentError, InstanceDocument, load
from mrba.io import to_records as records
from mrba.linalg import format_rational, rank
from mrba.psi_table import UnresolvedCoefficientError


# cochain spaces grow like n^(k+1); beyond this the commands are not desk-scale
MAX_DIM = 8


class UsageError(Exception):
    pass


class Report:
    """Ordered lines for text mode plus a dict for ``--json``."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.data: dict[str, Any] = {"command": command}
        self.ok = True

    def line(self, text: str) -> None:
        self.lines.append(text)

    def fail(self, text: str) -> None:
        self.ok = False
        self.lines.append(text)
        self.data.setdefault("errors", []).append(text)

    def render(self, as_json: bool) -> str:
        if as_json:
            self.data["ok"] = self.ok
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + "\n"


def _status(bad: list) -> str:
    return "OK" if not bad else f"FAILED ({len(bad)} violations, first: {bad[0]})"


def _require(doc: InstanceDocument, attr: str) -> Any:
    value = getattr(doc, attr)
    if value is None:
        raise UsageError(f"document has no {attr} section")
    return value


def _require_valid_base(doc: InstanceDocument, rep: Report) -> bool:
    s = doc.structure
    bad = validate_mrb(s)
    if bad:
        rep.fail(f"modified Rota-Baxter identity: {_status(bad)}")
        return False
    bad = validate_bimodule(s, doc.fiber())
    if bad:
        rep.fail(f"bimodule axioms: {_status(bad)}")
        return False
    return True


# -- commands ------------------------------------------------------------------

def cmd_validate(doc: InstanceDocument, args, rep: Report) -> None:
    s = doc.structure
    checks: dict[str, str] = {}
    bad = validate_algebra(s.algebra)
    checks["associativity"] = _status(bad)
    (rep.fail if bad else rep.line)(f"associativity: {_status(bad)}")
    if not bad:
        bad = validate_mrb(s)
        text = f"modified Rota-Baxter identity: {_status(bad)} (weight {format_rational(s.weight)})"
        checks["modified_rota_baxter"] = _status(bad)
        (rep.fail if bad else rep.line)(text)
        if doc.module is not None and not bad:
            mbad = validate_bimodule(s, doc.module)
            checks["bimodule"] = _status(mbad)
            (rep.fail if mbad else rep.line)(f"bimodule axioms: {_status(mbad)}")
    if doc.rb is not None:
        rb, m = doc.rb_structure()
        rbad = validate_rb(rb)
        checks["rota_baxter"] = _status(rbad)
        (rep.fail if rbad else rep.line)(f"Rota-Baxter identity: {_status(rbad)} (weight {format_rational(rb.weight)})")
        if not rbad:
            mbad = validate_rb_bimodule(rb, m)
            checks["rota_baxter_bimodule"] = _status(mbad)
            (rep.fail if mbad else rep.line)(f"Rota-Baxter bimodule axioms: {_status(mbad)}")
    rep.data["checks"] = checks


def cmd_cohomology(doc: InstanceDocument, args, rep: Report) -> None:
    if not _require_valid_base(doc, rep):
        return
    s, m = doc.structure, doc.fiber()
    rep.line(f"convention: {args.convention}")
    rep.line("k  dim Z  dim B  dim H")
    rows = []
    for k in range(args.max_degree + 1):
        try:
            r = cohomology_report(s, m, k, args.convention)
        except ArithmeticError as exc:
            rep.fail(str(exc))
            break
        rows.append({"degree": k, "cocycles": r.dim_cocycles, "coboundaries": r.dim_coboundaries, "cohomology": r.dim_cohomology})
        rep.line(f"{k:<2} {r.dim_cocycles:>5}  {r.dim_coboundaries:>5}  {r.dim_cohomology:>5}")
    rep.data["convention"] = args.convention
    rep.data["table"] = rows


def cmd_rba_compare(doc: InstanceDocument, args, rep: Report) -> None:
    rb, m = doc.rb_structure()
    bad = validate_rb(rb) or validate_rb_bimodule(rb, m)
    if bad:
        rep.fail(f"Rota-Baxter data invalid: {bad[0]}")
        return
    try:
        rows = compare_cohomologies(rb, m, args.max_degree)
    except ArithmeticError as exc:
        rep.fail(str(exc))
        return
    rep.line("k  dim H_RBA  dim H_mRBA")
    for row in rows:
        rep.line(f"{row.degree:<2} {row.dim_rba:>9}  {row.dim_mrba:>10}")
    rep.line("columns agree")
    rep.data["table"] = [{"degree": r.degree, "rba": r.dim_rba, "mrba": r.dim_mrba} for r in rows]


def cmd_deform_check(doc: InstanceDocument, args, rep: Report) -> None:
    d = _require(doc, "deformation")
    # without --order: up to 2, or the document's order if lower
    order = min(2, d.order) if args.order is None else args.order
    if order > d.order:
        raise UsageError(f"--order {order} exceeds the document's order {d.order}")
    if not _require_valid_base(doc, rep):
        return
    report = check_deformation(doc.structure, truncate(d, order))
    rep.data["order"] = order
    if report.failure is not None:
        f = report.failure
        rep.fail(f"fails at order {f.order} ({f.family}) on basis tuple {list(f.indices)}")
        rep.data["failure"] = {"order": f.order, "family": f.family, "indices": list(f.indices)}
        return
    rep.line(f"deformation equations hold through order {order}")
    if order >= 1:
        check_infinitesimal_cocycle(doc.structure, d)
        rep.line("infinitesimal is a 2-cocycle")
        rep.data["infinitesimal_cocycle"] = True


def cmd_trivialize(doc: InstanceDocument, args, rep: Report) -> None:
    d = _require(doc, "deformation")
    if d.order < 1:
        raise UsageError("deformation has order 0")
    if not _require_valid_base(doc, rep):
        return
    report = check_deformation(doc.structure, d)
    if report.failure is not None and report.failure.order == 1:
        rep.fail(f"fails at order 1 ({report.failure.family}); nothing to trivialize")
        return
    result = trivialize_order_one(doc.structure, d)
    if isinstance(result, Obstructed):
        vec = result.representative
        rep.fail("obstructed: the infinitesimal is not a coboundary")
        rep.line(f"class representative chi: {records(vec.chi.coeffs)}")
        rep.line(f"class representative phi: {records(vec.phi.coeffs)}")
        rep.data["obstructed"] = {"chi": records(vec.chi.coeffs), "phi": records(vec.phi.coeffs)}
        return
    eq, d2 = result
    rep.line(f"phi_1: {records(eq.phi[1])}")
    rep.line(f"transported mu_1: {records(d2.mu[1])}")
    rep.line(f"transported R_1: {records(d2.r[1])}")
    rep.data["phi_1"] = records(eq.phi[1])
    rep.data["transported"] = {"mu": [records(x) for x in d2.mu[1:]], "r": [records(x) for x in d2.r[1:]]}


def cmd_extend(doc: InstanceDocument, args, rep: Report) -> None:
    c = _require(doc, "cocycle")
    if not _require_valid_base(doc, rep):
        return
    try:
        ext = extension_from_cocycle(doc.structure, doc.fiber(), c)
    except NotACocycleError as exc:
        rep.fail(str(exc))
        return
    problems = validate_extension(ext)
    if problems:
        rep.fail(f"extension invalid: {problems[0]}")
        return
    total = ext.total
    rep.line(f"extension of dimension {total.dim}: {', '.join(total.algebra.labels)}")
    rep.line(f"product: {records(total.mult)}")
    rep.line(f"operator: {records(total.r)}")
    rep.line("all extension invariants hold")
    rep.data["extension"] = {
        "dim": total.dim,
        "basis": list(total.algebra.labels),
        "mult": records(total.mult),
        "operator": records(total.r),
        "inclusion": records(ext.inclusion),
        "projection": records(ext.projection),
    }


def cmd_extract_cocycle(doc: InstanceDocument, args, rep: Report) -> None:
    e = _require(doc, "extension")
    ext = ExtensionData(doc.structure, doc.fiber(), e.total, e.inclusion, e.projection)
    problems = validate_extension(ext)
    if problems:
        rep.fail(f"extension invalid: {problems[0]}")
        return
    sec = Section(e.section) if e.section is not None else canonical_section(ext)
    try:
        c = cocycle_from_section(ext, sec)
    except (SectionMismatchError, ValueError) as exc:
        rep.fail(str(exc))
        return
    bmat = mrba_matrix(doc.structure, doc.fiber(), 1)
    vec = c.to_vector().reshape(-1, 1)
    trivial = rank(np.concatenate([bmat, vec], axis=1)) == rank(bmat)
    rep.line(f"chi: {records(c.chi.coeffs)}")
    rep.line(f"phi: {records(c.phi.coeffs)}")
    rep.line("class: zero (split extension)" if trivial else "class: nonzero")
    rep.data["cocycle"] = {"chi": records(c.chi.coeffs), "phi": records(c.phi.coeffs)}
    rep.data["class_zero"] = trivial


def cmd_graph_check(doc: InstanceDocument, args, rep: Report) -> None:
    s = doc.structure
    if s.weight != -1:
        rep.fail("graph criterion requires weight -1")
        return
    bad = validate_algebra(s.algebra)
    if bad:
        rep.fail(f"associativity: {_status(bad)}")
        return
    ok, witness = graph_subalgebra_check(s.algebra, s.r)
    direct = not validate_mrb(s)
    rep.data["graph_subalgebra"] = ok
    rep.data["identity_holds"] = direct
    if witness is not None:
        rep.data["witness"] = list(witness)
    text = "graph is a subalgebra" if ok else f"graph is not a subalgebra (witness pair {list(witness)})"
    (rep.line if ok else rep.fail)(text)
    rep.line(f"agrees with the operator identity: {'yes' if ok == direct else 'NO'}")
    if ok != direct:
        rep.fail("graph criterion disagrees with the operator identity")


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "rba-compare": cmd_rba_compare,
    "deform-check": cmd_deform_check,
    "trivialize": cmd_trivialize,
    "extend": cmd_extend,
    "extract-cocycle": cmd_extract_cocycle,
    "graph-check": cmd_graph_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mrba", description="Modified Rota-Baxter algebras: validation and cohomology.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("document", help="path to a JSON instance document")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--convention", choices=CONVENTIONS, default="corrected")
        if name in ("cohomology", "rba-compare"):
            p.add_argument("--max-degree", type=int, default=2)
        if name == "deform-check":
            p.add_argument("--order", type=int, default=None, help="default: 2, capped at the document order")
    return parser


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    for flag in ("max_degree", "order"):
        if (getattr(args, flag, 0) or 0) < 0:
            err.write(f"error: --{flag.replace('_', '-')} must be nonnegative\n")
            return 2
    try:
        doc = load(args.document)
    except OSError as exc:
        err.write(f"error: cannot read {args.document}: {exc.strerror}\n")
        return 2
    except DocumentError as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    rep = Report(args.command)
    if doc.structure.dim > MAX_DIM and args.command not in ("validate", "graph-check"):
        err.write(f"error: algebras of dimension above {MAX_DIM} are only accepted by validate and graph-check\n")
        return 2
    try:
        COMMANDS[args.command](doc, args, rep)
    except (UsageError, DocumentError, UnresolvedCoefficientError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    out.write(rep.render(args.json))
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
