"""JSON algebra-spec files.

A file holds either explicit tensors (lists of ``[i, j, k, "p/q"]``) or a
``model`` reference, an identity vector, and optionally a ``local_monoid``
section. Scalars are strings ``"p/q"`` so rational files round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import linalg
from .linalg import RATIONAL
from .local_monoid import Curve, DeltaOp, LocalMonoidSpec, named_membership
from .trialgebra import (
    SevenTuple, StructureTensor, build_collapse_model, build_phi_model, build_split_model,
    full_matrix_algebra, upper_triangular_positions,
)


class SpecFileError(ValueError):
    """Malformed spec file; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def load_document(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    if not isinstance(doc, dict):
        raise SpecFileError("$", "top level must be an object")
    return doc


def _scalar(value, where: str, mode: str):
    try:
        return linalg.parse_scalar(value, mode)
    except ValueError as exc:
        raise SpecFileError(where, str(exc)) from exc


def _vector(values, n: int, where: str, mode: str):
    if not isinstance(values, list) or len(values) != n:
        raise SpecFileError(where, f"expected a list of {n} scalars")
    return tuple(_scalar(v, f"{where}[{i}]", mode) for i, v in enumerate(values))


def _tensor(quads, n: int, where: str, mode: str) -> StructureTensor:
    if not isinstance(quads, list):
        raise SpecFileError(where, "expected a list of [i, j, k, value] entries")
    entries: dict = {}
    for pos, q in enumerate(quads):
        here = f"{where}[{pos}]"
        if not isinstance(q, list) or len(q) != 4:
            raise SpecFileError(here, "entry must be [i, j, k, value]")
        idx = q[:3]
        if not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < n for i in idx):
            raise SpecFileError(here, f"indices must be integers in [0, {n})")
        key = tuple(idx)
        entries[key] = entries.get(key, 0) + _scalar(q[3], here, mode)
    return StructureTensor(n, entries)


def _model(spec: dict) -> SevenTuple:
    if not isinstance(spec, dict):
        raise SpecFileError("model", "expected an object")
    family, n = spec.get("family"), spec.get("n")
    if family == "split":
        return build_split_model()
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecFileError("model.n", "expected a positive integer")
    if family == "phi_upper_triangular":
        return build_phi_model(n)
    if family == "collapse":
        t, unit, labels = full_matrix_algebra(n)
        return build_collapse_model(t, unit, labels)
    raise SpecFileError("model.family", f"unknown family {family!r}")


def parse_algebra(doc: dict, mode: str | None = None) -> SevenTuple:
    scalars = doc.get("scalars", RATIONAL)
    if scalars not in linalg.MODES:
        raise SpecFileError("scalars", f"expected one of {linalg.MODES}")
    mode = mode or scalars
    explicit = [k for k in ("sharp", "left", "right") if k in doc]
    if "model" in doc:
        if explicit:
            raise SpecFileError("model", "model and explicit tensors are mutually exclusive")
        A = _model(doc["model"])
        if "dimension" in doc and doc["dimension"] != A.dim:
            raise SpecFileError("dimension", f"model has dimension {A.dim}")
        if "identity" in doc:
            A = A.with_products(identity=_vector(doc["identity"], A.dim, "identity", RATIONAL))
        return A.to_mode(mode) if mode != RATIONAL else A
    n = doc.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecFileError("dimension", "expected a positive integer")
    missing = [k for k in ("sharp", "left", "right", "identity") if k not in doc]
    if missing:
        raise SpecFileError("$", f"missing field(s): {', '.join(missing)}")
    tensors = [_tensor(doc[k], n, k, mode) for k in ("sharp", "left", "right")]
    identity = _vector(doc["identity"], n, "identity", mode)
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise SpecFileError("labels", f"expected {n} labels")
    model = doc.get("model_info")
    return SevenTuple(n, *tensors, identity, mode, tuple(labels) if labels else None, model)


def algebra_document(A: SevenTuple) -> dict:
    doc = {
        "dimension": A.dim,
        "scalars": A.mode,
        "sharp": A.sharp.as_quadruples(),
        "left": A.left.as_quadruples(),
        "right": A.right.as_quadruples(),
        "identity": [linalg.format_scalar(c) for c in A.identity],
    }
    if A.labels:
        doc["labels"] = list(A.labels)
    if A.model:
        doc["model_info"] = dict(A.model)
    return doc


def store(A: SevenTuple, path, local_monoid: dict | None = None) -> None:
    doc = algebra_document(A)
    if local_monoid is not None:
        doc["local_monoid"] = local_monoid
    Path(path).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


def load(path, mode: str | None = None) -> SevenTuple:
    return parse_algebra(load_document(path), mode)


# --- local monoid section ---------------------------------------------------------


def _delta_op(item, n: int, where: str) -> DeltaOp:
    if item == "sharp":
        return DeltaOp.sharp()
    if isinstance(item, dict) and set(item) == {"huliu"}:
        return DeltaOp.huliu(_vector(item["huliu"], n, f"{where}.huliu", RATIONAL))
    raise SpecFileError(where, 'expected "sharp" or {"huliu": [...]}')


def _predicate(A, item, where: str, tol):
    if isinstance(item, str):
        item = {"id": item}
    if not isinstance(item, dict) or "id" not in item:
        raise SpecFileError(where, "expected a predicate id or {id, params}")
    try:
        return named_membership(A, item["id"], item.get("params"), tol)
    except ValueError as exc:
        raise SpecFileError(where, str(exc)) from exc


def _poly(coeffs, n: int, where: str) -> tuple:
    if not isinstance(coeffs, list) or not coeffs:
        raise SpecFileError(where, "expected a nonempty list of coefficient vectors")
    return tuple(_vector(c, n, f"{where}[{i}]", RATIONAL) for i, c in enumerate(coeffs))


def parse_local_monoid(doc: dict, A: SevenTuple, *, seed=None, samples=None, tol=None) -> LocalMonoidSpec:
    sec = doc.get("local_monoid")
    if not isinstance(sec, dict):
        raise SpecFileError("local_monoid", "section missing")
    n = A.dim
    ptol = tol if tol is not None else (0 if A.mode == RATIONAL else 1e-9)
    delta = tuple(_delta_op(d, n, f"local_monoid.delta[{i}]") for i, d in enumerate(sec.get("delta", ["sharp"])))
    g_member, g_sampler = _predicate(A, sec.get("g_membership", "halo"), "local_monoid.g_membership", ptol)
    o_member, o_sampler = _predicate(A, sec.get("omega_membership", "identity"), "local_monoid.omega_membership", ptol)
    curves = []
    for i, coeffs in enumerate(sec.get("omega_curves", [])):
        curves.append(Curve("omega", _poly(coeffs, n, f"local_monoid.omega_curves[{i}]")))
    for i, item in enumerate(sec.get("curves", [])):
        where = f"local_monoid.curves[{i}]"
        if not isinstance(item, dict) or "target" not in item or "coefficients" not in item:
            raise SpecFileError(where, "expected {target, coefficients}")
        domain = _scalar(item.get("domain", "1/2"), f"{where}.domain", RATIONAL)
        curves.append(Curve(_delta_op(item["target"], n, f"{where}.target"),
                            _poly(item["coefficients"], n, f"{where}.coefficients"), domain=domain))
    seed = seed if seed is not None else sec.get("seed", 0)
    samples = samples if samples is not None else sec.get("samples", 20)
    if not isinstance(samples, int) or samples < 1:
        raise SpecFileError("local_monoid.samples", "expected a positive integer")
    return LocalMonoidSpec(A, g_member, delta, o_member, tuple(curves), g_sampler, o_sampler, samples, seed, tol)


def upper_triangular_passage_document(n: int, delta=("sharp",), samples: int = 20, seed: int = 0) -> dict:
    """Spec file for U_n with G the positive-diagonal matrices, Omega the
    unipotent ones, and straight-line curves through the identity."""
    A = build_phi_model(n)
    pos = upper_triangular_positions(n)
    ident = [linalg.format_scalar(c) for c in A.identity]

    def unit(i):
        return ["1" if k == i else "0" for k in range(A.dim)]

    curves = []
    ops = []
    for d in delta:
        if d == "sharp":
            ops.append("sharp")
            target = "sharp"
        else:
            ops.append({"huliu": ident})
            target = {"huliu": ident}
        curves += [{"target": target, "coefficients": [ident, unit(i)]} for i in range(A.dim)]
    omega = [[ident, unit(i)] for i, (r, c) in enumerate(pos) if r != c]
    return {
        "model": {"family": "phi_upper_triangular", "n": n},
        "local_monoid": {
            "delta": ops,
            "g_membership": {"id": "positive_diagonal"},
            "omega_membership": {"id": "unipotent"},
            "omega_curves": omega,
            "curves": curves,
            "seed": seed,
            "samples": samples,
        },
    }
