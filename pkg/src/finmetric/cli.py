"""Command-line interface.

Matrices are read from CSV (n rows of n comma-separated values) or JSON
(``{"n": ..., "labels": [...], "matrix": [[...], ...]}``), chosen by file
extension. Point indices on the command line are 1-based.

Exit codes: 0 success, 1 usage error, 2 negative validation verdict,
3 unreadable or malformed input, 4 input rejected by an operation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from finmetric.chart import (
    CanonicalCoords,
    NaturalCoords,
    decode_natural,
    encode_natural,
    from_canonical,
    sample_pseudometric,
    to_canonical,
)
from finmetric.core import DistanceMatrix, sup_distance, validate
from finmetric.densify import densify
from finmetric.errors import DomainError, StructureError
from finmetric.extend import extend_metric, perturb
from finmetric.family import family_member, family_separation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_FORMAT = 3
EXIT_DOMAIN = 4


class UsageError(Exception):
    pass


class FormatError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def format_float(x: float) -> str:
    # shortest string that reads back to the same binary64
    return repr(float(x))


def matrix_to_csv(m: DistanceMatrix) -> str:
    return "".join(",".join(format_float(x) for x in row) + "\n" for row in m.tolist())


def matrix_to_json(m: DistanceMatrix, labels=None) -> str:
    doc = {"n": m.n}
    if labels is not None:
        doc["labels"] = list(labels)
    doc["matrix"] = m.tolist()
    return json.dumps(doc)


def parse_matrix_csv(text: str) -> DistanceMatrix:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(cell.strip() for cell in row)]
    try:
        values = [[float(cell) for cell in row] for row in rows]
    except ValueError as exc:
        raise FormatError(f"bad number in CSV: {exc}") from exc
    if any(len(row) != len(values) for row in values):
        raise FormatError("CSV matrix is not square")
    try:
        return DistanceMatrix(values)
    except StructureError as exc:
        raise FormatError(str(exc)) from exc


def parse_matrix_json(text: str) -> tuple[DistanceMatrix, list[str] | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise FormatError('matrix JSON needs a "matrix" field')
    rows = doc["matrix"]
    if not isinstance(rows, list) or any(not isinstance(r, list) or len(r) != len(rows) for r in rows):
        raise FormatError("matrix is not square")
    try:
        m = DistanceMatrix(rows) if rows else DistanceMatrix(np.zeros((0, 0)))
    except StructureError as exc:
        raise FormatError(str(exc)) from exc
    if "n" in doc and doc["n"] != m.n:
        raise FormatError(f'"n" is {doc["n"]} but the matrix has {m.n} rows')
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != m.n):
        raise FormatError("labels must be a list with one entry per point")
    return m, labels


def read_matrix(path: str) -> tuple[DistanceMatrix, list[str] | None]:
    text = _read_text(path)
    if path.lower().endswith(".json"):
        return parse_matrix_json(text)
    return parse_matrix_csv(text), None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def coords_to_json(c) -> str:
    if isinstance(c, CanonicalCoords):
        return json.dumps({"n": c.n, "closed": list(c.closed), "half_open": c.half_open})
    return json.dumps({"n": c.n, "levels": [{"s": lv.s, "u": list(lv.u)} for lv in c.levels]})


def parse_coords(text: str):
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        if "levels" in doc:
            return NaturalCoords(n, tuple((lv["s"], tuple(lv["u"])) for lv in doc["levels"]))
        return CanonicalCoords(n, tuple(doc["closed"]), doc["half_open"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise FormatError(f"bad coordinates file: {exc}") from exc


def _indices(text: str) -> list[int]:
    try:
        out = [int(tok) - 1 for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad index list {text!r}") from exc
    if any(i < 0 for i in out):
        raise UsageError("indices are 1-based")
    return out


def _emit_matrix(m: DistanceMatrix, fmt: str, labels=None) -> None:
    sys.stdout.write(matrix_to_json(m, labels) + "\n" if fmt == "json" else matrix_to_csv(m))


def _report_json(report) -> dict:
    return {
        "is_pseudometric": report.is_pseudometric,
        "is_metric": report.is_metric,
        "violations": [
            {"kind": v.kind, "indices": [i + 1 for i in v.indices], "magnitude": v.magnitude}
            for v in report.violations
        ],
    }


def cmd_validate(args) -> int:
    m, _ = read_matrix(args.matrix)
    report = validate(m, args.tolerance)
    ok = report.is_metric if args.metric else report.is_pseudometric
    if args.pretty:
        kind = "metric" if args.metric else "pseudometric"
        print(f"{args.matrix}: {'is' if ok else 'is not'} a {kind} ({len(report.violations)} violation(s))")
        for v in report.violations:
            print(f"  {v.kind} at {tuple(i + 1 for i in v.indices)}: {v.magnitude:g}")
    else:
        print(json.dumps(_report_json(report)))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_encode(args) -> int:
    m, _ = read_matrix(args.matrix)
    c = encode_natural(m)
    print(coords_to_json(c if args.natural else to_canonical(c)))
    return EXIT_OK


def cmd_decode(args) -> int:
    c = parse_coords(_read_text(args.coords))
    if isinstance(c, CanonicalCoords):
        c = from_canonical(c)
    _emit_matrix(decode_natural(c), args.format)
    return EXIT_OK


def cmd_densify(args) -> int:
    m, labels = read_matrix(args.matrix)
    base = read_matrix(args.base)[0] if args.base else None
    _emit_matrix(densify(m, args.epsilon, base), args.format, labels)
    return EXIT_OK


def cmd_extend(args) -> int:
    e, _ = read_matrix(args.subset)
    target, labels = read_matrix(args.target)
    out = extend_metric(e, args.n, _indices(args.indices), target, args.cap, args.floor)
    _emit_matrix(out, args.format, labels)
    return EXIT_OK


def cmd_perturb(args) -> int:
    m, labels = read_matrix(args.matrix)
    pair = _indices(args.pair)
    if len(pair) != 2:
        raise UsageError("--pair takes exactly two indices")
    _emit_matrix(perturb(m, pair[0], pair[1], args.epsilon), args.format, labels)
    return EXIT_OK


def cmd_family(args) -> int:
    if args.separation:
        selectors = [line.strip() for line in _read_text(args.separation).splitlines() if line.strip()]
        sep = family_separation(selectors)
        print(json.dumps({"count": len(selectors), "separation": None if math.isinf(sep) else sep,
                          "singleton": math.isinf(sep)}))
        return EXIT_OK
    if args.bits is None:
        raise UsageError("family needs --bits or --separation")
    _emit_matrix(family_member(args.bits), args.format)
    return EXIT_OK


def cmd_sample(args) -> int:
    _emit_matrix(sample_pseudometric(args.n, args.seed, metric_only=args.metric), args.format)
    return EXIT_OK


def cmd_distance(args) -> int:
    a, _ = read_matrix(args.a)
    b, _ = read_matrix(args.b)
    print(json.dumps({"sup_distance": sup_distance(a, b)}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finmetric", description="Finite pseudometric and metric spaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def matrix_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def with_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = matrix_cmd("validate", cmd_validate, "check the pseudometric/metric axioms")
    p.add_argument("matrix")
    p.add_argument("--metric", action="store_true", help="require a metric, not just a pseudometric")
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--pretty", action="store_true")

    p = matrix_cmd("encode", cmd_encode, "chart coordinates of a pseudometric")
    p.add_argument("matrix")
    p.add_argument("--natural", action="store_true", help="emit per-level coordinates")

    p = with_format(matrix_cmd("decode", cmd_decode, "pseudometric from chart coordinates"))
    p.add_argument("coords")

    p = with_format(matrix_cmd("densify", cmd_densify, "nearby metric via entrywise max"))
    p.add_argument("matrix")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--base")

    p = with_format(matrix_cmd("extend", cmd_extend, "extend a metric from a subset"))
    p.add_argument("--subset", required=True)
    p.add_argument("--indices", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--cap", type=float, required=True)
    p.add_argument("--floor", type=float)

    p = with_format(matrix_cmd("perturb", cmd_perturb, "epsilon-close metric with a jump at a pair"))
    p.add_argument("matrix")
    p.add_argument("--pair", required=True)
    p.add_argument("--epsilon", type=float, required=True)

    p = with_format(matrix_cmd("family", cmd_family, "binary family members and their separation"))
    p.add_argument("--bits")
    p.add_argument("--separation", metavar="FILE", help="file with one bit string per line")

    p = with_format(matrix_cmd("sample", cmd_sample, "random pseudometric"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--metric", action="store_true")

    p = matrix_cmd("distance", cmd_distance, "sup-distance between two matrices")
    p.add_argument("a")
    p.add_argument("b")
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, StructureError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
