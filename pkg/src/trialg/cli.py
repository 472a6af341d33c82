"""Command-line entry point.

Exit codes: 0 when every required check passes, 1 when a check fails,
2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg
from .axioms import CheckReport, check_quasitrisemigroup, check_triunit, check_trisemigroup
from .leibniz import brackets_from, check_eq18, check_huliu_identity, verify_local_leibniz
from .linalg import Subspace
from .local_monoid import verify_local_monoid
from .search import MAX_SEARCH_DIM, search
from .specfile import (
    SpecFileError, algebra_document, load_document, parse_algebra, parse_local_monoid,
    upper_triangular_passage_document,
)
from .tangent import CurveBaseError, tangent_spaces, verify_passage
from .trialgebra import build_phi_model, build_split_model, full_matrix_algebra, build_collapse_model
from .units import (
    ConsistencyError, Diconjugator, NoInverse, NotOneSidedInvertible, compute_additive_halo, compute_halo,
    find_local_identity, one_sided_inverse, sharp_inverse,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# Keys a report may use besides eq1..eq28.
NAMED_KEYS = {
    "assoc_sharp", "assoc_left", "assoc_right",
    "def2.2(i)", "def2.2(ii)", "def2.2(iii)", "def2.2(iv)", "def2.2(v)",
    "local_part_inside", "angle_closure", "leibniz", "eq20_annihilation", "eq20_containment",
    "square_closure", "jacobi", "prop3.1_halo", "halo_difference",
}
REPORT_KEYS = {f"eq{i}" for i in range(1, 29)} | NAMED_KEYS


class InputError(Exception):
    pass


def _fmt(v):
    return [linalg.format_scalar(c) for c in v]


def _reports(rs: list[CheckReport]) -> list[dict]:
    return [r.to_json() for r in rs]


def _verdict(rs: list[CheckReport]) -> bool:
    return all(r.passed for r in rs if r.required)


def _load(args):
    try:
        doc = load_document(args.path)
        A = parse_algebra(doc, args.mode)
    except FileNotFoundError as exc:
        raise InputError(f"{args.path}: file not found") from exc
    except SpecFileError as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    return doc, A


def _local_monoid(doc, A, args):
    if "local_monoid" not in doc:
        raise InputError(f"{args.path}: no local_monoid section")
    try:
        return parse_local_monoid(doc, A, seed=args.seed, samples=args.samples, tol=args.tol)
    except SpecFileError as exc:
        raise InputError(f"{args.path}: {exc}") from exc


def _tol(A, args):
    if args.tol is not None:
        return args.tol
    return 0 if A.mode == linalg.RATIONAL else linalg.DEFAULT_FLOAT_TOL


def cmd_check(args):
    doc, A = _load(args)
    tol = args.tol if A.mode != linalg.RATIONAL else None
    tri = check_trisemigroup(A, tol)
    quasi = check_quasitrisemigroup(A, tol)
    unit = check_triunit(A, A.identity, tol)
    ok = _verdict(tri + unit)
    if _verdict(tri) and not _verdict(quasi):
        raise ConsistencyError("quasitrisemigroup check failed on a trisemigroup")
    lines = [f"{r.law:12s} {'pass' if r.passed else 'FAIL'}  ({r.checked} evaluations)" for r in tri + unit]
    for r in tri + unit:
        if r.witness is not None:
            lines.append(f"witness {r.law}: args={r.witness.args} residual={linalg.format_scalar(r.witness.residual)}")
    body = {"trisemigroup": _reports(tri), "quasitrisemigroup": _reports(quasi), "triunit": _reports(unit)}
    return ok, body, lines


def cmd_halo(args):
    doc, A = _load(args)
    tol = _tol(A, args)
    halo = compute_halo(A)
    body = {"halo": {"empty": halo.empty, "dim": halo.dim}}
    lines = []
    if halo.empty:
        lines.append("halo: empty")
        return True, body, lines
    body["halo"].update(basepoint=_fmt(halo.basepoint), directions=[_fmt(d) for d in halo.directions])
    lines.append(f"halo: affine dimension {halo.dim}, basepoint {A.describe(halo.basepoint)}")
    import random

    rng = random.Random(args.seed)
    units = [halo.basepoint] + [halo.sample(rng) for _ in range(4 if halo.dim else 0)]
    plus = [compute_additive_halo(A, e, tol).kernel for e in units]
    body["additive_halo"] = [
        {"bar_unit": _fmt(e), "dim": k.dim, "basis": [_fmt(b) for b in k.basis]} for e, k in zip(units, plus)
    ]
    same = all(k.same_span(plus[0], tol) for k in plus)
    body["additive_halo_independent_of_bar_unit"] = same
    lines.append(f"additive halo: dimension {plus[0].dim}, {_span_text(A, plus[0])}"
                 f" ({'same' if same else 'DIFFERENT'} for {len(units)} bar-units)")
    local = find_local_identity(A)
    body["local_identity"] = None if local is None else _fmt(local)
    lines.append(f"local identity: {'none' if local is None else A.describe(local)}")
    # differences of bar-units lie in the additive halo
    diffs = [linalg.vsub(a, b) for a in units for b in units] + list(halo.directions)
    bad = [d for d in diffs if not plus[0].contains(d, tol)]
    diff_report = CheckReport("halo_difference", not bad, None if not bad else _witness_vec(bad[0]), len(diffs))
    body["checks"] = _reports([diff_report])
    lines.append(f"halo - halo inside additive halo: {'pass' if not bad else 'FAIL'}")
    return diff_report.passed, body, lines


def _witness_vec(v):
    from .axioms import Witness

    return Witness((tuple(v),), tuple(v), tuple(v), linalg.max_abs(v))


def _parse_element(text: str, A):
    try:
        return linalg.vector([linalg.parse_scalar(t.strip(), A.mode) for t in text.split(",")], A.mode)
    except ValueError as exc:
        raise InputError(f"bad element {text!r}: {exc}") from exc


def cmd_units(args):
    doc, A = _load(args)
    elements = [_parse_element(t, A) for t in (args.elements or [])]
    for x in elements:
        if len(x) != A.dim:
            raise InputError(f"element {x} has {len(x)} coordinates, expected {A.dim}")
    rows, lines = [], []
    for x in elements:
        row = {"element": _fmt(x)}
        try:
            inv = one_sided_inverse(A, x)
            row["one_sided_inverse"] = {"left": _fmt(inv.left), "right": _fmt(inv.right), "unique": inv.unique}
            D = Diconjugator(A, x)
            row["diconjugation"] = [_fmt(D(b)) for b in A.basis_vectors()]
            lines.append(f"{A.describe(x)}: left inverse {A.describe(inv.left)}, right inverse {A.describe(inv.right)}")
            for i, b in enumerate(A.basis_vectors()):
                lines.append(f"  Psi({A.label(i)}) = {A.describe(D(b))}")
        except NotOneSidedInvertible as exc:
            row["one_sided_inverse"] = None
            lines.append(f"{A.describe(x)}: {exc}")
        try:
            inv = sharp_inverse(A, x)
            row["sharp_inverse"] = _fmt(inv)
            lines.append(f"  sharp inverse {A.describe(inv)}")
        except NoInverse as exc:
            row["sharp_inverse"] = None
            row["sharp_inverse_error"] = exc.code
            lines.append(f"  no sharp inverse ({exc.code})")
        rows.append(row)
    return True, {"elements": rows}, lines


def cmd_brackets(args):
    doc, A = _load(args)
    pair = brackets_from(A)
    tol = _tol(A, args)
    plus = compute_additive_halo(A, A.identity, tol).kernel if not compute_halo(A).empty else Subspace.zero(A.dim)
    eq18 = check_eq18(pair)
    eq19 = check_huliu_identity(pair, plus)
    ll = verify_local_leibniz(pair, plus)
    table = {
        "angle": [[_fmt(pair.ang(x, y)) for y in A.basis_vectors()] for x in A.basis_vectors()],
        "square": [[_fmt(pair.sq(x, y)) for y in A.basis_vectors()] for x in A.basis_vectors()],
    }
    lines = []
    for name, f in (("<,>", pair.ang), ("[,]", pair.sq)):
        lines.append(f"{name} table:")
        for i, x in enumerate(A.basis_vectors()):
            cells = [A.describe(f(x, y)) for y in A.basis_vectors()]
            lines.append(f"  {A.label(i)}: " + " | ".join(cells))
    lines.append(f"eq18 {'pass' if eq18.passed else 'FAIL'}; eq19 {'pass' if eq19.passed else 'FAIL'}; "
                 f"local Leibniz (local part = additive halo, dim {plus.dim}) {'pass' if ll.passed else 'FAIL'}")
    body = {"tables": table, "checks": _reports([eq18, eq19]), "local_leibniz": ll.to_json()}
    return eq18.passed and eq19.passed and ll.passed, body, lines


def cmd_monoid(args):
    doc, A = _load(args)
    spec = _local_monoid(doc, A, args)
    rs = verify_local_monoid(spec)
    trivial = verify_local_monoid(spec.with_trivial_omega())
    lines = [f"{r.law:12s} {'pass' if r.passed else 'FAIL'} (sampled, {r.checked} evaluations) {r.note}" for r in rs]
    lines.append(f"with Omega = {{1}}: {'pass' if _verdict(trivial) else 'FAIL'}")
    return _verdict(rs) and _verdict(trivial), {"checks": _reports(rs), "trivial_omega": _reports(trivial)}, lines


def _span_text(A, s: Subspace) -> str:
    return "span{" + ", ".join(A.describe(b) for b in s.basis) + "}" if s.dim else "0"


def _tangent_lines(A, rep):
    def span(s):
        return _span_text(A, s)

    lines = [f"T_omega = {span(rep.t_omega)}"]
    lines += [f"T_{k} = {span(s)}" for k, s in rep.t_star.items()]
    lines.append(f"T_total = {span(rep.t_total)} (dim {rep.t_total.dim}; generated by the supplied curves)")
    return lines


def cmd_tangent(args):
    doc, A = _load(args)
    spec = _local_monoid(doc, A, args)
    try:
        rep = tangent_spaces(spec)
    except CurveBaseError as exc:
        raise InputError(str(exc)) from exc
    return True, {"tangent": rep.to_json(A.describe)}, _tangent_lines(A, rep)


def cmd_passage(args):
    doc, A = _load(args)
    spec = _local_monoid(doc, A, args)
    monoid = verify_local_monoid(spec)
    try:
        rep = verify_passage(spec)
    except CurveBaseError as exc:
        raise InputError(str(exc)) from exc
    rep.local_monoid = monoid
    trivial_spec = spec.with_trivial_omega()
    trivial = verify_passage(trivial_spec)
    trivial.local_monoid = verify_local_monoid(trivial_spec)
    lines = [f"{r.law:12s} {'pass' if r.passed else 'FAIL'} {r.note}" for r in monoid]
    lines += _tangent_lines(A, rep)
    lines += [f"{r.law:12s} {'pass' if r.passed else 'FAIL'}" for r in rep.checks]
    ll = rep.local_leibniz
    lines.append(f"{ll.kind} with local part of dim {ll.local_part.dim}: {'pass' if ll.passed else 'FAIL'}")
    if rep.t_omega.dim == 0:
        lines.append("local part is zero: the tangent-like space is a plain Leibniz algebra")
    lines.append(f"Omega = {{1}} rerun: {trivial.kind} {'pass' if trivial.passed else 'FAIL'}")
    body = {
        "local_monoid": _reports(monoid),
        "tangent": rep.to_json(A.describe),
        "trivial_omega": {
            "local_monoid": _reports(trivial.local_monoid),
            "tangent": trivial.to_json(A.describe),
        },
    }
    return rep.passed and trivial.passed, body, lines


def cmd_model(args):
    if args.family == "phi":
        A = build_phi_model(args.n)
    elif args.family == "collapse":
        t, unit, labels = full_matrix_algebra(args.n)
        A = build_collapse_model(t, unit, labels)
    else:
        A = build_split_model()
    doc = algebra_document(A)
    if args.passage:
        if args.family != "phi":
            raise InputError("--passage is only available for the phi family")
        doc["local_monoid"] = upper_triangular_passage_document(args.n, tuple(args.delta))["local_monoid"]
    text = json.dumps(doc, indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        return True, {"written": args.out}, [f"wrote {args.out}"]
    print(text)
    return True, None, []


def cmd_search(args):
    if not 1 <= args.dim <= MAX_SEARCH_DIM:
        raise InputError(f"--dim must be between 1 and {MAX_SEARCH_DIM}")
    found = search(args.dim, args.seed if args.seed is not None else 0, args.budget)
    lines = [f"{len(found)} survivor(s) in dimension {args.dim}"]
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(found):
            p = out / f"search_d{args.dim}_{i:03d}.json"
            p.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
            lines.append(f"wrote {p}")
    return True, {"dimension": args.dim, "survivors": found}, lines


COMMANDS = {
    "check": cmd_check,
    "halo": cmd_halo,
    "units": cmd_units,
    "brackets": cmd_brackets,
    "monoid": cmd_monoid,
    "tangent": cmd_tangent,
    "passage": cmd_passage,
    "search": cmd_search,
    "model": cmd_model,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="float64 tolerance")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--json", dest="json_out", default=None, help="write the report to this file")
    common.add_argument("--mode", choices=linalg.MODES, default=None)

    p = argparse.ArgumentParser(prog="trialg", description="Check 7-tuples, bar-units, brackets and tangent-like spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check", "halo", "brackets", "monoid", "tangent", "passage"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("path")
    sp = sub.add_parser("units", parents=[common])
    sp.add_argument("path")
    sp.add_argument("elements", nargs="*", help='comma-separated coordinates, e.g. "1,0,2"')
    sp = sub.add_parser("search", parents=[common])
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--out-dir", default=None)
    sp = sub.add_parser("model", parents=[common], help="emit a built-in model as a spec file")
    sp.add_argument("family", choices=("phi", "collapse", "split"))
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--passage", action="store_true", help="add a local_monoid section (phi only)")
    sp.add_argument("--delta", nargs="+", default=["sharp"], choices=("sharp", "huliu"))
    sp.add_argument("--out", default=None)
    return p


def _law_keys(node):
    if isinstance(node, dict):
        if "law" in node and "passed" in node:
            yield node["law"]
        for v in node.values():
            yield from _law_keys(v)
    elif isinstance(node, list):
        for v in node:
            yield from _law_keys(v)


def report_document(command: str, ok: bool, body: dict | None) -> dict:
    doc = {"command": command, "verdict": ok, **(body or {})}
    unknown = sorted(set(_law_keys(doc)) - REPORT_KEYS)
    if unknown:
        raise ConsistencyError(f"report uses unknown law keys {unknown}")
    return doc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ok, body, lines = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for line in lines:
        print(line)
    if body is not None and args.json_out:
        doc = report_document(args.command, ok, body)
        Path(args.json_out).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    if args.command != "model":
        print("verdict:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
