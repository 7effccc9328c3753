"""Command-line interface.

Subcommands: validate, classify, curvature, atlas, equiv, constcurv.
Input is a JSON document (file path or ``-`` for stdin):

    {
      "family": "GI" | {"Gc": <real c>},
      "basis": "natural" | "Q_adapted" | "P_adapted",
      "metric": [[..], [..], [..]],
      "tolerance": {"abs_tol": .., "rel_tol": .., "classification_tol": ..}
    }

Exit codes: 0 success, 1 domain rejection (invalid metric / wrong
signature / inconsistent basis), 2 parse or I/O error, 3 "not
equivalent" (equiv only).  The environment variable LORCURV_TOL, when
set, overrides the default abs_tol; an explicit "tolerance" field in the
document wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import BasisLabel, FamilyTag
from .atlas import emit_tables, paper_frame
from .canonical import (
    DegenerateMetricError,
    canonical_form,
    classification_basis,
    constant_curvature_class,
    equivalent,
    to_adapted_basis,
)
from .curvature import curvature_report
from .metric import MetricTensor, validate_metric
from .tolerance import DEFAULT_TOL, ToleranceConfig

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_NOT_EQUIVALENT = 3


class InputError(Exception):
    """Structured parse error carrying the JSON path of the bad field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DomainError(Exception):
    pass


def _default_tolerance() -> ToleranceConfig:
    env = os.environ.get("LORCURV_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        abs_tol = float(env)
    except ValueError as exc:
        raise InputError("$LORCURV_TOL", f"not a number: {env!r}") from exc
    return ToleranceConfig(abs_tol=abs_tol,
                           rel_tol=DEFAULT_TOL.rel_tol,
                           classification_tol=DEFAULT_TOL.classification_tol)


def _parse_family(node) -> FamilyTag:
    if node == "GI":
        return FamilyTag("GI")
    if isinstance(node, dict) and set(node) == {"Gc"}:
        c = node["Gc"]
        if not isinstance(c, (int, float)):
            raise InputError("family.Gc", "c must be a real number")
        return FamilyTag("Gc", float(c))
    raise InputError("family", 'expected "GI" or {"Gc": c}')


def _parse_basis(node, tag: FamilyTag) -> BasisLabel:
    try:
        basis = BasisLabel(node)
    except ValueError as exc:
        raise InputError(
            "basis", 'expected "natural", "Q_adapted" or "P_adapted"') from exc
    if basis == BasisLabel.Q_ADAPTED and not (tag.kind == "Gc" and tag.c == 1):
        raise DomainError("Q_adapted basis is only defined for the c = 1 family")
    if basis == BasisLabel.P_ADAPTED and not (tag.kind == "Gc" and tag.c < 1):
        raise DomainError("P_adapted basis is only defined for c < 1 families")
    return basis


def _parse_tolerance(node) -> ToleranceConfig:
    base = _default_tolerance()
    if node is None:
        return base
    if not isinstance(node, dict):
        raise InputError("tolerance", "expected an object")
    known = {"abs_tol", "rel_tol", "classification_tol"}
    extra = set(node) - known
    if extra:
        raise InputError(f"tolerance.{sorted(extra)[0]}", "unknown field")
    values = {}
    for key in known:
        value = node.get(key, getattr(base, key))
        if not isinstance(value, (int, float)) or value <= 0:
            raise InputError(f"tolerance.{key}", "must be a positive number")
        values[key] = float(value)
    return ToleranceConfig(**values)


def _parse_metric(node, basis: BasisLabel, tol: ToleranceConfig) -> MetricTensor:
    arr = np.asarray(node, dtype=float) if isinstance(node, list) else None
    if arr is None or arr.shape != (3, 3):
        raise InputError("metric", "expected a 3x3 array of reals")
    try:
        return MetricTensor(arr, basis_label=basis, tolerance=tol)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(path, str(exc)) from exc


def _load_document(path: str, family_required: bool = True):
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    tag = None
    if "family" in doc:
        tag = _parse_family(doc["family"])
    elif family_required:
        raise InputError("family", "missing required field")
    tol = _parse_tolerance(doc.get("tolerance"))
    basis = _parse_basis(doc.get("basis", "natural"),
                         tag if tag is not None else FamilyTag("GI"))
    if "metric" not in doc:
        raise InputError("metric", "missing required field")
    h = _parse_metric(doc["metric"], basis, tol)
    return tag, h, tol


def _emit(payload, out=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _fail(code: int, message: str) -> int:
    sys.stderr.write(message + "\n")
    return code


# --------------------------------------------------------------------------
# subcommands

def cmd_validate(args) -> int:
    tag, h, tol = _load_document(args.file, family_required=False)
    diag = validate_metric(h, tol)
    payload = {
        "accepted": diag.accepted,
        "signature": list(diag.signature),
        "eigenvalues": list(diag.eigenvalues),
        "det": diag.det,
        "reason": diag.reason,
        "family": None if tag is None else tag.family_key(),
        "basis": h.basis_label.value,
    }
    _emit(payload)
    return EXIT_OK if diag.accepted else EXIT_DOMAIN


def _canonicalize(tag, h, tol):
    try:
        return canonical_form(tag, h, tol)
    except DegenerateMetricError as exc:
        raise DomainError(str(exc)) from exc


def _form_payload(cf) -> dict:
    payload = {
        "form_id": cf.form_id,
        "params": cf.params,
        "canonical_matrix": cf.canonical_matrix.tolist(),
        "witness": cf.witness.tolist(),
        "basis": cf.basis_label.value,
    }
    payload.update(cf.params)
    return payload


def cmd_classify(args) -> int:
    tag, h, tol = _load_document(args.file)
    cf = _canonicalize(tag, h, tol)
    _emit(_form_payload(cf))
    return EXIT_OK


def cmd_curvature(args) -> int:
    tag, h, tol = _load_document(args.file)
    from .algebra import make_family_algebra
    if args.frame == "paper":
        cf = _canonicalize(tag, h, tol)
        target = h if h.basis_label == cf.basis_label else to_adapted_basis(tag, h)
        res = float(np.max(np.abs(target.entries - cf.canonical_matrix)))
        band = tol.classification_tol * (1.0 + float(np.max(np.abs(cf.canonical_matrix))))
        if res > band:
            raise DomainError(
                "metric is not in canonical form; canonicalize first "
                f"(form {cf.form_id}, residual {res:g})")
        frame = paper_frame(tag, cf.form_id, cf.params)
        alg = make_family_algebra(tag, cf.basis_label)
        report = curvature_report(alg, target, frame=frame, tol=tol)
    else:
        alg = make_family_algebra(tag, h.basis_label)
        try:
            report = curvature_report(alg, h, tol=tol)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    _emit(report.to_dict())
    return EXIT_OK


def _parse_grid(spec: str) -> dict[str, list[float]]:
    grid: dict[str, list[float]] = {}
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise InputError("--grid", f"bad grid entry {chunk!r}")
        name, _, values = chunk.partition("=")
        name = name.strip()
        if not name:
            raise InputError("--grid", f"bad grid entry {chunk!r}")
        try:
            grid[name] = [float(v) for v in values.split(",") if v.strip()]
        except ValueError as exc:
            raise InputError("--grid", f"bad number in {chunk!r}") from exc
        if not grid[name]:
            raise InputError("--grid", f"no values for {name!r}")
    if not grid:
        raise InputError("--grid", "empty grid")
    return grid


def cmd_atlas(args) -> int:
    if args.family == "GI":
        tag = FamilyTag("GI")
    else:
        if args.c is None:
            raise InputError("--c", "required for --family Gc")
        tag = FamilyTag("Gc", args.c)
    grid = _parse_grid(args.grid)
    tol = _default_tolerance()
    text = emit_tables(tag, grid, fmt=args.format, tol=tol)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(args.out, str(exc)) from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_equiv(args) -> int:
    tag1, h1, tol = _load_document(args.file1)
    tag2, h2, _ = _load_document(args.file2)
    if tag1.kind != tag2.kind or tag1.c != tag2.c:
        raise InputError("family", "the two documents describe different families")
    if h1.basis_label != h2.basis_label:
        raise InputError("basis", "the two metrics use different bases")
    try:
        flag, witness = equivalent(tag1, h1, h2, tol)
    except DegenerateMetricError as exc:
        raise DomainError(str(exc)) from exc
    if not flag:
        _emit({"equivalent": False, "witness": None})
        return EXIT_NOT_EQUIVALENT
    _emit({"equivalent": True, "witness": witness.tolist()})
    return EXIT_OK


def cmd_constcurv(args) -> int:
    tag, h, tol = _load_document(args.file)
    try:
        cls, cf = constant_curvature_class(tag, h, tol)
    except DegenerateMetricError as exc:
        raise DomainError(str(exc)) from exc
    _emit({"class": cls.value, "form_id": cf.form_id, "params": cf.params})
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorcurv",
        description="Curvature and canonical forms of left-invariant "
                    "Lorentzian metrics on 3D non-unimodular Lie groups.")
    parser.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a metric document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="reduce a metric to canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("curvature", help="full curvature report")
    p.add_argument("file")
    p.add_argument("--frame", choices=("auto", "paper"), default="auto")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("atlas", help="closed-form tables over a parameter grid")
    p.add_argument("--family", choices=("GI", "Gc"), required=True)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--grid", required=True,
                   help='e.g. "mu=1,2;tau=0,0.5"')
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("equiv", help="decide equivalence of two metrics")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("constcurv", help="constant-curvature classification")
    p.add_argument("file")
    p.set_defaults(func=cmd_constcurv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")
    except DomainError as exc:
        return _fail(EXIT_DOMAIN, f"rejected: {exc}")
    except OSError as exc:
        return _fail(EXIT_PARSE, f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
