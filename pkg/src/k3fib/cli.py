"""
Command-line front end.

Every subcommand prints a text report by default and a JSON document with
``--format json``; both are built from the same ``to_dict``/``report_lines``
data. Exit status is 0 on success, 1 when a check fails or the package raises,
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .algebra.parse import parse_rational
from .corpus import DIVISOR_DIR, load_corpus, load_divisor, show_record, verify_all
from .errors import K3FibException
from .lattice import (
    a2_complement,
    a2sq_complement,
    contains_a2,
    contains_a2sq,
    contribution,
    enumerate_fibration_lattices,
    gram_det,
    niemeier_roots,
    shioda_tate_mw_rank,
)
from .model.points import SurfacePoint, is_on_curve
from .model.weierstrass import WeierstrassModel, validate_k3
from .mordell import HeightContext, find_two_torsion, height, height_pairing, mwl_gram, ns_disc_check, torsion_order
from .neighbor import DivisorSpec, neighbor_step
from .options import VerifyOptions
from .tate import classify_all

logger = logging.getLogger(__name__)

TEXT = "text"
JSON = "json"

#: labels shown by ``lattice a2comp`` without arguments
A2_TABLE_LABELS = ("A2", "A3", "A5", "A6", "A11", "D4", "D5", "D6", "D7", "D8", "D9", "D16", "E6", "E7", "E8")


class _Result:
    """Output of a subcommand: structured data, its text rendering and a verdict."""

    def __init__(self, data: Any, lines: Sequence[str], ok: bool = True):
        self.data = data
        self.lines = list(lines)
        self.ok = ok


def _options(args: argparse.Namespace) -> VerifyOptions:
    preset = getattr(args, "preset", None)
    base = VerifyOptions.fast() if preset == "fast" else VerifyOptions.strict() if preset == "strict" else VerifyOptions()
    flags = {"field": args.field, "jobs": getattr(args, "jobs", None), "torsion_bound": getattr(args, "bound", None)}
    return VerifyOptions.from_mapping({**base.to_dict(), **{k: v for k, v in flags.items() if v is not None}})


def _model(args: argparse.Namespace) -> WeierstrassModel:
    if getattr(args, "id", None) is not None:
        return load_corpus()[args.id].effective_model
    if not args.model:
        raise K3FibException("give a model file or --id N")
    model = WeierstrassModel.from_file(args.model)
    fld = _options(args).base_field
    if args.field is not None and model.field != fld:
        model = WeierstrassModel(*model.coefficients, field=fld)
    return model


def _point(text: str, args: argparse.Namespace) -> SurfacePoint:
    return SurfacePoint.parse(text, _options(args).base_field)


def _context(model: WeierstrassModel) -> HeightContext:
    return HeightContext.from_model(model, classify_all(model))


# --- model commands -------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> _Result:
    model = _model(args)
    verdict = validate_k3(model)
    if not verdict.ok:
        return _Result({"model": model.to_text(), "verdict": str(verdict)}, [f"{model}: {verdict}"], ok=False)
    config = classify_all(model)
    rank = shioda_tate_mw_rank(config)
    data = {"model": model.to_text(), "verdict": verdict.kind, "mw_rank": rank, **config.to_dict()}
    lines = config.report_lines() + [f"mw_rank={rank}"]
    return _Result(data, lines)


def cmd_height(args: argparse.Namespace) -> _Result:
    model = _model(args)
    ctx = _context(model)
    p = _point(args.point, args)
    if args.other is None:
        value = height(ctx, p)
        return _Result({"point": str(p), "height": str(value)}, [f"h({p}) = {value}"])
    q = _point(args.other, args)
    value = height_pairing(ctx, p, q)
    return _Result({"points": [str(p), str(q)], "pairing": str(value)}, [f"<{p}, {q}> = {value}"])


def cmd_torsion(args: argparse.Namespace) -> _Result:
    model = _model(args)
    options = _options(args)
    if args.point is None:
        points = find_two_torsion(model, options.two_torsion_degree)
        return _Result({"two_torsion": [str(p) for p in points]}, [f"2-torsion: {p}" for p in points] or ["2-torsion: none"])
    p = _point(args.point, args)
    if not is_on_curve(model, p):
        return _Result({"point": str(p), "on_curve": False, "order": None}, [f"{p} is not on the curve"], ok=False)
    order = torsion_order(model, p, options.torsion_bound)
    text = f"order({p}) = {order}" if order is not None else f"{p} has no torsion up to {options.torsion_bound}"
    return _Result({"point": str(p), "on_curve": True, "order": order}, [text])


def cmd_disc(args: argparse.Namespace) -> _Result:
    model = _model(args)
    ctx = _context(model)
    points = [_point(text, args) for text in args.points]
    gram = mwl_gram(ctx, points) if points else None
    check = ns_disc_check(ctx, args.torsion, gram)
    return _Result({"value": str(check.value), "target": check.target, "ok": check.ok}, [str(check)], ok=check.ok)


def _divisor(name: str) -> DivisorSpec:
    path = Path(name)
    if path.is_file():
        return DivisorSpec.from_file(path)
    if (DIVISOR_DIR / name).is_file():
        return load_divisor(name)
    raise K3FibException(f"no divisor file {name!r}")


def cmd_neighbor(args: argparse.Namespace) -> _Result:
    model = _model(args)
    F = _divisor(args.divisor)
    target = None
    if args.target is not None:
        target = WeierstrassModel.from_file(args.target)
    elif args.target_id is not None or F.target is not None:
        target = load_corpus()[args.target_id if args.target_id is not None else F.target].effective_model
    result = neighbor_step(model, F, target, allow_base_change=not args.no_base_change)
    ok = result.ok and (target is None or result.identification is not None)
    return _Result(result.to_dict(), result.report_lines(), ok=ok)


def cmd_parse(args: argparse.Namespace) -> _Result:
    value = parse_rational(args.expression, _options(args).base_field)
    return _Result({"input": args.expression, "canonical": str(value)}, [str(value)])


# --- lattice commands -----------------------------------------------------


def cmd_lattice_det(args: argparse.Namespace) -> _Result:
    value = gram_det(args.label)
    return _Result({"label": args.label, "det": value}, [str(value)])


def cmd_lattice_a2comp(args: argparse.Namespace) -> _Result:
    rows: List[Dict[str, Optional[str]]] = []
    lines = []
    for label in args.labels or A2_TABLE_LABELS:
        single = str(a2_complement(label)) if contains_a2(label) else None
        double = str(a2sq_complement(label)) if contains_a2sq(label) else None
        rows.append({"label": label, "a2": single, "a2sq": double})
        lines.append(f"{label} | {single or '-'} | {double or '-'}")
    return _Result(rows, lines)


def cmd_lattice_niemeier(args: argparse.Namespace) -> _Result:
    systems = niemeier_roots()
    return _Result([{"roots": str(s), "rank": s.rank} for s in systems], [f"{s} (rank {s.rank})" for s in systems])


def cmd_lattice_enumerate(args: argparse.Namespace) -> _Result:
    rows = enumerate_fibration_lattices()
    data = [{"source": str(r.source), "code": r.code, "roots": str(r.roots), "mw_rank": r.mw_rank} for r in rows]
    return _Result(data, [r.format() for r in rows] + [f"{len(rows)} rows"])


def cmd_lattice_contr(args: argparse.Namespace) -> _Result:
    value = contribution(args.label, args.i, args.j)
    return _Result({"label": args.label, "i": args.i, "j": args.j, "contr": str(value)}, [str(value)])


# --- corpus commands ------------------------------------------------------


def cmd_corpus_verify(args: argparse.Namespace) -> _Result:
    catalog = load_corpus(args.corpus) if args.corpus else load_corpus()
    summary = verify_all(catalog, _options(args), ids=args.id or None)
    return _Result(summary.to_dict(), summary.report_lines(), ok=summary.ok)


def cmd_corpus_errata(args: argparse.Namespace) -> _Result:
    catalog = load_corpus(args.corpus) if args.corpus else load_corpus()
    entries = verify_all(catalog, _options(args)).errata()
    if args.unresolved:
        entries = [e for e in entries if not e.resolved]
    return _Result([e.to_dict() for e in entries], [str(e) for e in entries] + [f"{len(entries)} errata"])


def cmd_corpus_show(args: argparse.Namespace) -> _Result:
    catalog = load_corpus(args.corpus) if args.corpus else load_corpus()
    record = catalog[args.id]
    lines = show_record(record, catalog)
    return _Result({"id": record.id, "lines": lines}, lines)


# --- parser ---------------------------------------------------------------


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=(TEXT, JSON), default=TEXT, help="output format (default: text)")
    parser.add_argument("--field", choices=("F3", "F9"), default=None, help="working field (default: F9)")


def _model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("model", nargs="?", help="model file with a2, a4, a6 lines")
    parser.add_argument("--id", type=int, default=None, help="use the model of catalog fibration N instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3fib",
        description="Elliptic and quasi-elliptic fibrations of the supersingular K3 surface in characteristic 3.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("classify", help="singular fibers of a model")
    _model_args(p)
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("height", help="height of a section, or the pairing of two")
    _model_args(p)
    p.add_argument("--point", required=True, help="section as '(x ; y)'")
    p.add_argument("--other", default=None, help="second section for the pairing")
    _common(p)
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("torsion", help="torsion order of a section, or the polynomial 2-torsion")
    _model_args(p)
    p.add_argument("--point", default=None, help="section as '(x ; y)'")
    p.add_argument("--bound", type=int, default=None, help="largest order tried (default: 12)")
    _common(p)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("disc", help="discriminant identity for NS")
    _model_args(p)
    p.add_argument("--torsion", type=int, required=True, help="order of the torsion subgroup")
    p.add_argument("--point", dest="points", action="append", default=[], help="free section; repeat for a basis")
    _common(p)
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("neighbor", help="2-neighbor step along a divisor")
    _model_args(p)
    p.add_argument("--divisor", required=True, help="divisor file, or the name of a packaged one")
    p.add_argument("--target", default=None, help="model file the result should be isomorphic to")
    p.add_argument("--target-id", type=int, default=None, help="catalog fibration the result should match")
    p.add_argument("--no-base-change", action="store_true", help="identify the target without w -> aw + b")
    _common(p)
    p.set_defaults(func=cmd_neighbor)

    p = sub.add_parser("parse", help="echo a polynomial or rational function in canonical form")
    p.add_argument("expression")
    _common(p)
    p.set_defaults(func=cmd_parse)

    lattice = sub.add_parser("lattice", help="root lattice tables").add_subparsers(dest="action", required=True, metavar="action")
    p = lattice.add_parser("det", help="determinant of a root lattice")
    p.add_argument("label")
    _common(p)
    p.set_defaults(func=cmd_lattice_det)
    p = lattice.add_parser("a2comp", help="complements of A2 and A2^2")
    p.add_argument("labels", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_lattice_a2comp)
    p = lattice.add_parser("niemeier", help="the 23 Niemeier root systems")
    _common(p)
    p.set_defaults(func=cmd_lattice_niemeier)
    p = lattice.add_parser("enumerate", help="all A2^2 extractions")
    _common(p)
    p.set_defaults(func=cmd_lattice_enumerate)
    p = lattice.add_parser("contr", help="height correction contr(i, j)")
    p.add_argument("label")
    p.add_argument("i")
    p.add_argument("j")
    _common(p)
    p.set_defaults(func=cmd_lattice_contr)

    corpus = sub.add_parser("corpus", help="the fibration catalog").add_subparsers(dest="action", required=True, metavar="action")
    p = corpus.add_parser("verify", help="verify catalog records")
    p.add_argument("--id", type=int, action="append", default=[], help="record to verify; repeat for several")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: 1)")
    p.add_argument("--preset", choices=("fast", "strict"), default=None)
    p.add_argument("--corpus", default=None, help="catalog file (default: the packaged one)")
    _common(p)
    p.set_defaults(func=cmd_corpus_verify)
    p = corpus.add_parser("errata", help="the errata ledger")
    p.add_argument("--unresolved", action="store_true", help="only entries without a catalog correction")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--corpus", default=None)
    _common(p)
    p.set_defaults(func=cmd_corpus_errata)
    p = corpus.add_parser("show", help="a record as transcribed")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--corpus", default=None)
    _common(p)
    p.set_defaults(func=cmd_corpus_show)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", level=level, stream=sys.stderr)


def _emit(result: _Result, fmt: str) -> None:
    if fmt == JSON:
        print(json.dumps(result.data, indent=2, sort_keys=True))
    else:
        for line in result.lines:
            print(line)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        result = args.func(args)
    except K3FibException as exc:
        print(f"k3fib: error: {exc}", file=sys.stderr)
        return 1
    _emit(result, args.format)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
