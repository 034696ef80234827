"""JSON instance documents.

A document always carries an algebra, an operator and a weight; the other
sections are optional::

    {
      "format_version": "1",
      "description": "...",
      "algebra": {"dim": 2, "basis": ["e", "x"], "mult": [[i, j, k, "p/q"], ...]},
      "operator": {"matrix": [[row, col, "p/q"], ...]},
      "weight": "-1",
      "module": {"dim": m, "basis": [...], "left": [[i, u, v, "p/q"], ...],
                 "right": [[u, i, v, "p/q"], ...], "s_matrix": [[row, col, "p/q"], ...]},
      "rb": {"lambda": "1", "p_matrix": [...], "q_matrix": [...]},
      "deformation": {"order": N, "mu": [[records of mu_1], ...], "r": [[records of R_1], ...]},
      "cocycle": {"chi": [[i, j, v, "p/q"], ...], "phi": [[i, v, "p/q"], ...]},
      "extension": {"dim": d, "mult": [...], "operator": [...], "inclusion": [...],
                    "projection": [...], "section": [...]}
    }

Records list nonzero entries only.  Serialization sorts them, so
``serialize(parse(text)) == text`` for canonical text and
``parse(serialize(doc)) == doc`` always.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from mrba.algebra import AlgebraRep, BimoduleRep, MRBStructure, RBStructure, adjoint_bimodule
from mrba.cochains import Cochain, CochainPair
from mrba.deformation import TruncatedDeformation
from mrba.linalg import format_rational, parse_rational, zeros

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "RangeError",
    "RBSection",
    "ExtensionSection",
    "InstanceDocument",
    "parse",
    "serialize",
    "load",
    "to_dict",
    "to_records",
    "from_dict",
]

FORMAT_VERSION = "1"

_TOP_KEYS = {
    "format_version", "description", "algebra", "operator", "weight",
    "module", "rb", "deformation", "cocycle", "extension",
}


class DocumentError(ValueError):
    """Malformed document; ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class RangeError(DocumentError):
    pass


@dataclass(frozen=True, eq=False)
class RBSection:
    weight: Fraction
    p: np.ndarray
    q: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class ExtensionSection:
    total: MRBStructure
    inclusion: np.ndarray
    projection: np.ndarray
    section: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class InstanceDocument:
    structure: MRBStructure
    module: BimoduleRep | None = None
    rb: RBSection | None = None
    deformation: TruncatedDeformation | None = None
    cocycle: CochainPair | None = None
    extension: ExtensionSection | None = None
    description: str = ""

    def fiber(self) -> BimoduleRep:
        """The declared module, or the adjoint one."""
        return self.module if self.module is not None else adjoint_bimodule(self.structure)

    def rb_structure(self) -> tuple[RBStructure, BimoduleRep]:
        """Rota-Baxter data and its bimodule (operator slot holding Q)."""
        if self.rb is None:
            raise DocumentError("rb", "section required")
        rb = RBStructure(self.structure.algebra, self.rb.p, self.rb.weight)
        if self.module is None:
            q = self.rb.q if self.rb.q is not None else self.rb.p
            return rb, BimoduleRep(rb.mult, rb.mult, q, rb.algebra.labels)
        if self.rb.q is None:
            raise DocumentError("rb.q_matrix", "required when a module is given")
        m = self.module
        return rb, BimoduleRep(m.left, m.right, self.rb.q, m.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, InstanceDocument) and to_dict(self) == to_dict(other)

    __hash__ = None


# -- parsing -------------------------------------------------------------------

def _rational(value: Any, field: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(field, f"expected a rational as a string or integer, got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(field, f"bad rational {value!r} ({exc})") from None


def _count(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise DocumentError(field, f"expected a nonnegative integer, got {value!r}")
    return value


def _mapping(value: Any, field: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(field, "expected an object")
    missing = required - value.keys()
    if missing:
        raise DocumentError(field, f"missing keys {sorted(missing)}")
    extra = value.keys() - required - optional
    if extra:
        raise DocumentError(field, f"unknown keys {sorted(extra)}")
    return value


def _records(value: Any, shape: tuple[int, ...], field: str) -> np.ndarray:
    if not isinstance(value, list):
        raise DocumentError(field, "expected a list of records")
    out = zeros(shape)
    seen = set()
    for pos, rec in enumerate(value):
        where = f"{field}[{pos}]"
        if not isinstance(rec, list) or len(rec) != len(shape) + 1:
            raise DocumentError(where, f"expected {len(shape)} indices and a value")
        idx = []
        for axis, (i, bound) in enumerate(zip(rec[:-1], shape)):
            if isinstance(i, bool) or not isinstance(i, int):
                raise DocumentError(where, f"index {i!r} is not an integer")
            if not 0 <= i < bound:
                raise RangeError(where, f"index {i} out of range 0..{bound - 1} on axis {axis}")
            idx.append(i)
        key = tuple(idx)
        if key in seen:
            raise DocumentError(where, f"duplicate entry {list(key)}")
        seen.add(key)
        out[key] = _rational(rec[-1], where)
    return out


def _labels(value: Any, dim: int, field: str, prefix: str) -> tuple[str, ...]:
    if value is None:
        return tuple(f"{prefix}{i}" for i in range(dim))
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value) or len(value) != dim:
        raise DocumentError(field, f"expected {dim} string labels")
    return tuple(value)


def from_dict(data: Any) -> InstanceDocument:
    data = _mapping(data, "document", {"format_version", "algebra", "operator", "weight"}, _TOP_KEYS)
    if data["format_version"] != FORMAT_VERSION:
        raise DocumentError("format_version", f"unsupported version {data['format_version']!r}")
    alg = _mapping(data["algebra"], "algebra", {"dim", "mult"}, {"basis"})
    n = _count(alg["dim"], "algebra.dim")
    labels = _labels(alg.get("basis"), n, "algebra.basis", "e")
    algebra = AlgebraRep(_records(alg["mult"], (n, n, n), "algebra.mult"), labels)
    op = _mapping(data["operator"], "operator", {"matrix"})
    r = _records(op["matrix"], (n, n), "operator.matrix")
    structure = MRBStructure(algebra, r, _rational(data["weight"], "weight"))

    module = None
    if "module" in data:
        md = _mapping(data["module"], "module", {"dim", "left", "right", "s_matrix"}, {"basis"})
        m = _count(md["dim"], "module.dim")
        module = BimoduleRep(
            _records(md["left"], (n, m, m), "module.left"),
            _records(md["right"], (m, n, m), "module.right"),
            _records(md["s_matrix"], (m, m), "module.s_matrix"),
            _labels(md.get("basis"), m, "module.basis", "f"),
        )
    mdim = module.dim if module is not None else n

    rb = None
    if "rb" in data:
        rd = _mapping(data["rb"], "rb", {"lambda", "p_matrix"}, {"q_matrix"})
        q = _records(rd["q_matrix"], (mdim, mdim), "rb.q_matrix") if "q_matrix" in rd else None
        rb = RBSection(_rational(rd["lambda"], "rb.lambda"), _records(rd["p_matrix"], (n, n), "rb.p_matrix"), q)

    deformation = None
    if "deformation" in data:
        dd = _mapping(data["deformation"], "deformation", {"order", "mu", "r"})
        order = _count(dd["order"], "deformation.order")
        for key in ("mu", "r"):
            if not isinstance(dd[key], list) or len(dd[key]) != order:
                raise DocumentError(f"deformation.{key}", f"expected {order} coefficient lists (orders 1..{order})")
        mu = [structure.mult] + [_records(x, (n, n, n), f"deformation.mu[{q}]") for q, x in enumerate(dd["mu"])]
        rs = [structure.r] + [_records(x, (n, n), f"deformation.r[{q}]") for q, x in enumerate(dd["r"])]
        deformation = TruncatedDeformation(tuple(mu), tuple(rs))

    cocycle = None
    if "cocycle" in data:
        cd = _mapping(data["cocycle"], "cocycle", {"chi", "phi"})
        cocycle = CochainPair(
            Cochain(2, n, _records(cd["chi"], (n, n, mdim), "cocycle.chi")),
            Cochain(1, n, _records(cd["phi"], (n, mdim), "cocycle.phi")),
        )

    extension = None
    if "extension" in data:
        ed = _mapping(data["extension"], "extension", {"dim", "mult", "operator", "inclusion", "projection"}, {"section", "basis"})
        big = _count(ed["dim"], "extension.dim")
        total = MRBStructure(
            AlgebraRep(_records(ed["mult"], (big, big, big), "extension.mult"), _labels(ed.get("basis"), big, "extension.basis", "E")),
            _records(ed["operator"], (big, big), "extension.operator"),
            structure.weight,
        )
        extension = ExtensionSection(
            total,
            _records(ed["inclusion"], (big, mdim), "extension.inclusion"),
            _records(ed["projection"], (n, big), "extension.projection"),
            _records(ed["section"], (big, n), "extension.section") if "section" in ed else None,
        )

    description = data.get("description", "")
    if not isinstance(description, str):
        raise DocumentError("description", "expected a string")
    return InstanceDocument(structure, module, rb, deformation, cocycle, extension, description)


def parse(text: str) -> InstanceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_dict(data)


def load(path) -> InstanceDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- serialization -------------------------------------------------------------

def to_records(arr: np.ndarray) -> list[list]:
    return [list(idx) + [format_rational(arr[idx])] for idx in np.ndindex(arr.shape) if arr[idx] != 0]


def to_dict(doc: InstanceDocument) -> dict:
    s = doc.structure
    out: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if doc.description:
        out["description"] = doc.description
    out["algebra"] = {"dim": s.dim, "basis": list(s.algebra.labels), "mult": to_records(s.mult)}
    out["operator"] = {"matrix": to_records(s.r)}
    out["weight"] = format_rational(s.weight)
    if doc.module is not None:
        m = doc.module
        out["module"] = {
            "dim": m.dim,
            "basis": list(m.labels),
            "left": to_records(m.left),
            "right": to_records(m.right),
            "s_matrix": to_records(m.s),
        }
    if doc.rb is not None:
        rb: dict[str, Any] = {"lambda": format_rational(doc.rb.weight), "p_matrix": to_records(doc.rb.p)}
        if doc.rb.q is not None:
            rb["q_matrix"] = to_records(doc.rb.q)
        out["rb"] = rb
    if doc.deformation is not None:
        d = doc.deformation
        out["deformation"] = {
            "order": d.order,
            "mu": [to_records(x) for x in d.mu[1:]],
            "r": [to_records(x) for x in d.r[1:]],
        }
    if doc.cocycle is not None:
        out["cocycle"] = {"chi": to_records(doc.cocycle.chi.coeffs), "phi": to_records(doc.cocycle.phi.coeffs)}
    if doc.extension is not None:
        e = doc.extension
        ext: dict[str, Any] = {
            "dim": e.total.dim,
            "basis": list(e.total.algebra.labels),
            "mult": to_records(e.total.mult),
            "operator": to_records(e.total.r),
            "inclusion": to_records(e.inclusion),
            "projection": to_records(e.projection),
        }
        if e.section is not None:
            ext["section"] = to_records(e.section)
        out["extension"] = ext
    return out


def serialize(doc: InstanceDocument) -> str:
    return _dump(to_dict(doc)) + "\n"


def _dump(value: Any, indent: int = 0) -> str:
    """JSON with one record per line, so corpus files stay diff-friendly."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and all(isinstance(x, list) for x in value):
        items = [pad + "  " + _dump(x, indent + 1) for x in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)
