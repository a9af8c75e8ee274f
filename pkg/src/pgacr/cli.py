"""Command-line interface: ``pgacr compute | classify | verify | table``.

Exit codes: 0 success, 1 input/parse error, 2 classification error,
3 indeterminate value.  For ``verify`` a failing suite also exits 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .crossratio import (
    OPERATORS,
    TABLE_ROWS,
    DUAL_PAIRS,
    CrossRatioError,
    Indeterminate,
    Variant,
    affine_ratio,
    classify,
    cross_ratio,
)
from .ga_core import Multivector, Signature, blade_name, parse_blade_name
from .objects import (
    DEFAULT_TOL,
    DegenerateConstruction,
    GeometricObject,
    InvalidObject,
    Role,
    as_object,
    hyperplane,
    ideal_point,
    point,
)
from .verify import run_suites

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CLASSIFY = 2
EXIT_INDETERMINATE = 3

REPORT_FIELDS = (
    "value",
    "configuration",
    "operator",
    "dualize_operands",
    "product",
    "common_blade",
    "max_residual",
    "permutation",
)


class InputError(ValueError):
    """Malformed input document; the message carries the location."""


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    return format(x, ".17g")


def parse_float(s: str) -> float:
    if s == "+inf":
        return math.inf
    if s == "-inf":
        return -math.inf
    return float(s)


@dataclass
class ReportDocument:
    value: float
    configuration: str
    operator: str
    dualize_operands: bool
    product: str
    common_blade: dict[str, float]
    max_residual: float
    permutation: tuple[int, ...] = (0, 1, 2, 3)

    @classmethod
    def from_result(cls, res) -> "ReportDocument":
        op = res.configuration.operator
        return cls(
            value=res.value,
            configuration=res.configuration.name,
            operator=op.describe(),
            dualize_operands=op.dualize_operands,
            product=op.product.name.lower(),
            common_blade={blade_name(m): c for m, c in res.common_blade},
            max_residual=res.max_residual,
            permutation=tuple(res.permutation),
        )

    def to_text(self) -> str:
        blades = ",".join(f"{k}={fmt_float(v)}" for k, v in self.common_blade.items())
        lines = [
            f"value: {fmt_float(self.value)}",
            f"configuration: {self.configuration}",
            f"operator: {self.operator}",
            f"dualize_operands: {str(self.dualize_operands).lower()}",
            f"product: {self.product}",
            f"common_blade: {blades}",
            f"max_residual: {fmt_float(self.max_residual)}",
            f"permutation: {','.join(str(i) for i in self.permutation)}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ReportDocument":
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            key, sep, val = line.partition(": ")
            if not sep:
                key, sep, val = line.partition(":")
            if not sep or key not in REPORT_FIELDS:
                raise InputError(f"line {lineno}: unexpected report line {line!r}")
            raw[key] = val.strip()
        missing = [k for k in REPORT_FIELDS if k not in raw]
        if missing:
            raise InputError(f"report is missing fields {missing}")
        blades = {}
        if raw["common_blade"]:
            for item in raw["common_blade"].split(","):
                k, _, v = item.partition("=")
                blades[k] = parse_float(v)
        return cls(
            value=parse_float(raw["value"]),
            configuration=raw["configuration"],
            operator=raw["operator"],
            dualize_operands=raw["dualize_operands"] == "true",
            product=raw["product"],
            common_blade=blades,
            max_residual=parse_float(raw["max_residual"]),
            permutation=tuple(int(i) for i in raw["permutation"].split(",")),
        )

    def to_json(self) -> str:
        d = asdict(self)
        d["value"] = fmt_float(self.value) if math.isinf(self.value) else self.value
        d["permutation"] = list(self.permutation)
        return json.dumps(d, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        value = d["value"]
        return cls(
            value=parse_float(value) if isinstance(value, str) else float(value),
            configuration=d["configuration"],
            operator=d["operator"],
            dualize_operands=bool(d["dualize_operands"]),
            product=d["product"],
            common_blade={k: float(v) for k, v in d["common_blade"].items()},
            max_residual=float(d["max_residual"]),
            permutation=tuple(d["permutation"]),
        )


@dataclass
class InputDocument:
    dimension: int
    objects: list[GeometricObject]
    tolerance: float = DEFAULT_TOL
    affine: bool = False
    descriptors: list[dict[str, Any]] = field(default_factory=list)


def _numbers(value: Any, where: str, length: int | None = None) -> list[float]:
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise InputError(f"{where}: expected a list of numbers")
    if length is not None and len(value) != length:
        raise InputError(f"{where}: expected {length} numbers, got {len(value)}")
    return [float(x) for x in value]


def _number(value: Any, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InputError(f"{where}: expected a number")
    return float(value)


def _blades(value: Any, sig: Signature, where: str) -> Multivector:
    if not isinstance(value, dict) or not value:
        raise InputError(f"{where}: expected a non-empty mapping blade-name -> coefficient")
    terms: dict[int, float] = {}
    for name, coeff in value.items():
        try:
            mask = parse_blade_name(name, sig)
        except ValueError as exc:
            raise InputError(f"{where}.{name}: {exc}") from None
        terms[mask] = terms.get(mask, 0.0) + _number(coeff, f"{where}.{name}")
    return Multivector(sig, terms)


def _build_object(desc: Any, sig: Signature, tol: float, where: str) -> GeometricObject:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputError(f"{where}: expected an object with a 'kind' field")
    kind = desc["kind"]
    n = sig.n
    try:
        if kind == "point":
            return point(_numbers(desc.get("coords"), f"{where}.coords", n),
                         _number(desc.get("weight", 1.0), f"{where}.weight"))
        if kind == "ideal_point":
            return ideal_point(_numbers(desc.get("direction"), f"{where}.direction", n))
        if kind == "hyperplane":
            return hyperplane(_numbers(desc.get("normal"), f"{where}.normal", n),
                              _number(desc.get("offset", 0.0), f"{where}.offset"))
        if kind in ("flat", "raw"):
            obj = as_object(_blades(desc.get("blades"), sig, f"{where}.blades"), tol)
            if kind == "flat" and obj.role is not Role.FLAT:
                raise InputError(f"{where}: grade {obj.grade} is not an intermediate flat in n={n}")
            return obj
    except (InvalidObject, DegenerateConstruction) as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}.kind: unknown kind {kind!r}")


def parse_input(text: str) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("root: document must be a JSON object")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        raise InputError("dimension: expected an integer >= 2")
    tol = _number(doc.get("tolerance", DEFAULT_TOL), "tolerance")
    if not tol > 0:
        raise InputError("tolerance: must be positive")
    descs = doc.get("objects")
    if not isinstance(descs, list) or len(descs) != 4:
        raise InputError("objects: expected exactly four object descriptors")
    sig = Signature(dim)
    objs = [_build_object(d, sig, tol, f"objects[{i}]") for i, d in enumerate(descs)]
    return InputDocument(dim, objs, tol, bool(doc.get("affine", False)), descs)


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _error(kind: str, message: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": kind, "message": message}))
    else:
        print(f"error: {kind}: {message}", file=sys.stderr)


def _load(args) -> InputDocument | int:
    try:
        doc = parse_input(_read_input(args.input))
    except (InputError, OSError) as exc:
        _error("InputError", str(exc), args.json)
        return EXIT_PARSE
    if args.tol is not None:
        doc.tolerance = args.tol
    return doc


def _exit_for(exc: CrossRatioError) -> int:
    return EXIT_INDETERMINATE if isinstance(exc, Indeterminate) else EXIT_CLASSIFY


def cmd_compute(args) -> int:
    doc = _load(args)
    if isinstance(doc, int):
        return doc
    try:
        if doc.affine:
            res = affine_ratio(doc.objects, doc.tolerance)
        else:
            res = cross_ratio(doc.objects, doc.tolerance)
    except CrossRatioError as exc:
        _error(exc.code, str(exc), args.json)
        return _exit_for(exc)
    report = ReportDocument.from_result(res)
    print(report.to_json() if args.json else report.to_text(), end="" if not args.json else "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    doc = _load(args)
    if isinstance(doc, int):
        return doc
    try:
        cfg = classify(doc.objects, doc.tolerance)
    except CrossRatioError as exc:
        _error(exc.code, str(exc), args.json)
        return _exit_for(exc)
    out = {
        "configuration": cfg.name,
        "operator": cfg.operator.describe(),
        "dualize_operands": cfg.operator.dualize_operands,
        "product": cfg.operator.product.name.lower(),
        "roles": [o.label() for o in doc.objects],
        "dual_partner": cfg.dual_partner.value,
    }
    if args.json:
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        for k, v in out.items():
            print(f"{k}: {','.join(v) if isinstance(v, list) else str(v).lower() if isinstance(v, bool) else v}")
    return EXIT_OK


def _variants(name: str) -> list[Variant]:
    if name == "all":
        return list(Variant)
    try:
        return [Variant(name)]
    except ValueError:
        raise SystemExit(f"unknown --config {name!r}; choose 'all' or one of {[v.value for v in Variant]}")


def cmd_verify(args) -> int:
    if args.dim < 2:
        _error("InputError", "--dim must be >= 2", args.json)
        return EXIT_PARSE
    results = run_suites(args.dim, args.trials, args.seed, _variants(args.config), args.tol)
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({
            "dim": args.dim, "trials": args.trials, "seed": args.seed, "tol": args.tol,
            "config": args.config, "ok": ok,
            "suites": [
                {"suite": r.suite, "variant": r.variant, "passed": r.passed, "failed": r.failed,
                 "worst": fmt_float(r.worst), "tol": r.tol, "errors": r.errors}
                for r in results
            ],
        }, indent=2))
    else:
        print(f"# verify dim={args.dim} trials={args.trials} seed={args.seed} tol={args.tol:g} config={args.config}")
        print("suite\tvariant\tpassed\tfailed\tworst\ttol")
        for r in results:
            print(f"{r.suite}\t{r.variant}\t{r.passed}\t{r.failed}\t{r.worst:.3e}\t{r.tol:g}")
            for e in r.errors:
                print(f"#   {e}")
        print(f"# result: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CLASSIFY


def table_rows(dim: int | None = None) -> list[dict[str, str]]:
    """Operator rows (wedge form and commutator form), generated from the dispatch mapping."""
    rows = []
    pair_of = {}
    for idx, (a, b) in enumerate(DUAL_PAIRS):
        pair_of[a] = pair_of[b] = f"C{idx}"
    for v in Variant:
        obj, grade, support = TABLE_ROWS[v]
        if dim is not None:
            grade = {"n": str(dim), "1": "1", "k": f"2..{dim - 1}" if dim > 2 else "-"}[grade]
        op = OPERATORS[v]
        rows.append({
            "variant": v.value, "object": obj, "grade": grade, "support": support,
            "wedge_form": _wedge_form_text(v), "operator": op.describe(), "dual_pair": pair_of[v],
        })
    return rows


def _wedge_form_text(v: Variant) -> str:
    return {
        Variant.FinitePointsCollinear: "P_i ∨ P_j",
        Variant.IdealPointsOnIdealLine: "V_i⋆ ∧ V_j⋆",
        Variant.HyperplanesMeetOffOrigin: "Π_i⋆ ∨ Π_j⋆",
        Variant.HyperplanesMeetThroughOrigin: "Π_i ∧ Π_j",
    }.get(v, _commutator_form_text(v))


def _commutator_form_text(v: Variant) -> str:
    op = OPERATORS[v]
    sym = "F" if "Flat" in v.value else {"FinitePointsCollinear": "P", "IdealPointsOnIdealLine": "V"}.get(v.value, "Π")
    star = "⋆" if op.dualize_operands else ""
    return f"{sym}_i{star} {op.product.value} {sym}_j{star}"


def cmd_table(args) -> int:
    rows = table_rows(args.dim)
    if args.json:
        print(json.dumps(rows, indent=2, ensure_ascii=False))
        return EXIT_OK
    print("variant\tobject\tgrade\tsupport\twedge_form\tcommutator_form\tdual_pair")
    for r in rows:
        print("\t".join([r["variant"], r["object"], r["grade"], r["support"], r["wedge_form"],
                         f"{_commutator_form_text(Variant(r['variant']))} [{r['operator']}]", r["dual_pair"]]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pgacr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--input", metavar="PATH", help="input JSON document ('-' or omitted: stdin)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("compute", help="cross-ratio of four objects")
    common(p)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("classify", help="configuration and operator only")
    common(p)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="randomized oracle/duality/invariance suites")
    common(p, with_input=False)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default="all")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="print the operator tables used by dispatch")
    common(p, with_input=False)
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
