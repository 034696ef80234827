"""Regenerate the shipped example documents in src/mrba/corpus."""

from __future__ import annotations

from pathlib import Path

from mrba.algebra import MRBStructure, adjoint_bimodule, from_rota_baxter
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import cohomology_report
from mrba.deformation import TruncatedDeformation, TruncatedEquivalence, apply_equivalence, trivial_deformation
from mrba.extensions import canonical_section, extension_from_cocycle, shifted_section
from mrba.instances import (
    d2_structure,
    gaussian_structure,
    k1,
    k1_structure,
    n2_structure,
    rb_dual_projection,
    rb_zero,
    t2_structure,
)
from mrba.io import ExtensionSection, InstanceDocument, RBSection, serialize
from mrba.linalg import identity, rat_array, zeros

OUT = Path(__file__).resolve().parent.parent / "src" / "mrba" / "corpus"


def docs() -> dict[str, InstanceDocument]:
    k1s = k1_structure()
    d2 = d2_structure()
    out = {
        "k1": InstanceDocument(k1s, description="ground field, R = id, weight -1"),
        "d2": InstanceDocument(d2, description="dual numbers, R = diag(1, -1), weight -1"),
        "t2": InstanceDocument(t2_structure(), description="upper triangular 2x2 matrices, weight -1"),
        "gaussian": InstanceDocument(gaussian_structure(), description="Q(i) with R = multiplication by i, weight 1"),
        "k1_weight_minus2": InstanceDocument(
            MRBStructure(k1(), identity(1), -2), description="ground field, R = id with the wrong weight -2"
        ),
    }

    mu1 = rat_array([[[1]]])
    out["k1_deformation"] = InstanceDocument(
        k1s,
        deformation=TruncatedDeformation((k1s.mult, mu1), (k1s.r, zeros((1, 1)))),
        description="order-1 deformation mu_1(e, e) = e, R_1 = 0",
    )
    out["k1_bad_deformation"] = InstanceDocument(
        k1s,
        deformation=TruncatedDeformation((k1s.mult, zeros((1, 1, 1))), (k1s.r, identity(1))),
        description="mu_1 = 0, R_1 = id: fails at order 1",
    )
    eq = TruncatedEquivalence((identity(2), rat_array([[1, 2], [0, -1]]), rat_array([[0, 1], [1, 0]])))
    out["d2_deformation"] = InstanceDocument(
        d2,
        deformation=apply_equivalence(d2, trivial_deformation(d2, 2), eq),
        description="order-2 deformation of D2 equivalent to the trivial one",
    )
    n2 = n2_structure(r=zeros((2, 2)), weight=0)
    mu1 = zeros((2, 2, 2))
    mu1[0, 0, 1] = 1
    out["n2_obstructed"] = InstanceDocument(
        n2,
        deformation=TruncatedDeformation((n2.mult, mu1), (n2.r, zeros((2, 2)))),
        description="zero multiplication, R = 0, weight 0: a non-trivial infinitesimal",
    )

    out["k1_cocycle"] = InstanceDocument(
        k1s,
        cocycle=CochainPair(Cochain(2, 1, rat_array([[[1]]])), Cochain.zero(1, 1, 1)),
        description="2-cocycle chi(e, e) = e over the adjoint bimodule",
    )
    adj = adjoint_bimodule(d2)
    c = cohomology_report(d2, adj, 2).cocycle_basis[-1]
    ext = extension_from_cocycle(d2, adj, c)
    theta = Cochain(1, 2, rat_array([[1, 0], [2, -1]]))
    sec = shifted_section(ext, canonical_section(ext), theta)
    out["d2_extension"] = InstanceDocument(
        d2,
        cocycle=c,
        extension=ExtensionSection(ext.total, ext.inclusion, ext.projection, sec.matrix),
        description="abelian extension of D2 by its adjoint bimodule, with a shifted section",
    )

    for name, rb in {"k1_rb": rb_zero(k1(), 1), "d2_rb": rb_dual_projection(1)}.items():
        s = from_rota_baxter(rb)
        out[name] = InstanceDocument(
            s, rb=RBSection(rb.weight, rb.p, rb.p), description=f"Rota-Baxter weight {rb.weight}, lifted to R = lambda + 2P"
        )
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in docs().items():
        (OUT / f"{name}.json").write_text(serialize(doc), encoding="utf-8")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
