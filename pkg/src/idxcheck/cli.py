"""Command-line driver: ``idxcheck [options] file.idx ...``.

Exit status is 0 when every file typechecks, 1 on a type or coverage error
(or an oracle disagreement under ``--oracle-check``), and 2 on a syntax or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, TextIO

from .checker import Checker
from .context import CHyp, Ctx, apply_complete, apply_ctx, canonical_completion
from .errors import CannotSynthesize, ParseError, TypeCheckError
from .oracle import Fuel, decl_synthesizes, decl_typecheck, verdict
from .parser import parse_program
from .printer import print_ctx, print_type
from .syntax import BANG, Anno, Expr, Ident, Principality, Session, Span, Type
from .trace import NULL_TRACER, Tracer

EXIT_OK, EXIT_TYPE, EXIT_USAGE = 0, 1, 2


@dataclass
class Options:
    dump_context: bool = False
    trace: bool = False
    oracle_check: bool = False
    json: bool = False
    fuel: Fuel = field(default_factory=Fuel)


@dataclass
class Item:
    name: str
    type: Optional[str]
    principality: Optional[str]
    status: str
    span: Optional[Span]
    message: Optional[str] = None

    def line(self) -> str:
        return f"{self.name} : {self.type} {self.principality}"

    def as_json(self) -> dict:
        sp = self.span
        return {
            "name": self.name,
            "type": self.type,
            "principality": self.principality,
            "status": self.status,
            "span": None if sp is None else [sp.line, sp.col, sp.end_line, sp.end_col],
            **({"message": self.message} if self.message else {}),
        }


@dataclass
class Report:
    path: str
    items: list[Item] = field(default_factory=list)
    context: Optional[Ctx] = None
    trace: Optional[Tracer] = None
    diagnostics: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    error: Optional[Exception] = None
    exit_code: int = EXIT_OK


def _where(path: str, span: Optional[Span]) -> str:
    return f"{path}:{span.line}:{span.col}" if span else path


def _oracle(
    report: Report, label: str, ctx_in: Ctx, ctx_out: Ctx, e: Expr, ty: Type, p: Principality, session: Session, fuel: Fuel
) -> bool:
    """Re-derive one accepted judgment declaratively; False on disagreement."""
    omega = canonical_completion(ctx_out)
    psi = apply_complete(omega, ctx_in)
    if isinstance(e, Anno):
        v = verdict(lambda: decl_typecheck(psi, BANG, e.body, apply_ctx(omega, e.ty), fuel, session))
    else:
        v = verdict(lambda: decl_synthesizes(psi, e, apply_ctx(omega, ty), p, fuel, session))
    if v is None:
        report.warnings.append(f"{report.path}: warning: oracle could not decide {label} within its fuel")
        return True
    return v


def typecheck_source(text: str, path: str, opts: Options = Options()) -> Report:
    report = Report(path)
    session = Session()
    try:
        sf = parse_program(text, path, session)
    except ParseError as err:
        report.error = err
        report.diagnostics.append(f"{path}:{err}")
        report.exit_code = EXIT_USAGE
        return report
    tracer = Tracer() if opts.trace else NULL_TRACER
    checker = Checker(session, tracer)
    ctx = Ctx()
    jobs: list[tuple[str, Optional[Ident], Expr, Optional[Span]]] = [
        (d.name.name, d.name, Anno(d.expr, d.ty, span=d.span) if d.ty is not None else d.expr, d.span) for d in sf.defs
    ]
    if sf.final_expr is not None:
        jobs.append(("it", None, sf.final_expr, sf.final_expr.span))
    for name, var, e, span in jobs:
        if opts.trace:
            tracer.rule(f"-- {name}")
        try:
            r = checker.synth(ctx, e)
        except TypeCheckError as err:
            msg = err.message
            if isinstance(err, CannotSynthesize) and err.span == e.span:
                msg = "annotate this definition"
            where = _where(path, err.span or span)
            site = f" [{err.rule}]" if err.rule else ""
            report.diagnostics.append(f"{where}: {err.kind}: {msg}{site}")
            report.items.append(Item(name, None, None, "error", err.span or span, f"{err.kind}: {msg}"))
            report.error = err
            report.exit_code = EXIT_TYPE
            break
        ty = apply_ctx(r.out, r.ty)
        item = Item(name, print_type(ty), str(r.princ), "ok", span)
        if opts.oracle_check and not _oracle(report, name, ctx, r.out, e, ty, r.princ, session, opts.fuel):
            item.status = "oracle-disagreement"
            report.diagnostics.append(f"{_where(path, span)}: the declarative oracle rejects {name}")
            report.exit_code = EXIT_TYPE
        report.items.append(item)
        ctx = r.out if var is None else r.out.extend(CHyp(var, ty, r.princ))
        if report.exit_code:
            break
    report.context = ctx
    report.trace = tracer if opts.trace else None
    return report


def typecheck_path(path: str, opts: Options = Options()) -> Report:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        report = Report(path, exit_code=EXIT_USAGE)
        report.diagnostics.append(f"{path}: cannot read file: {err.strerror}")
        return report
    return typecheck_source(text, path, opts)


def _emit(report: Report, opts: Options, out: TextIO, err: TextIO) -> None:
    if not opts.json:
        for item in report.items:
            if item.status == "ok":
                print(item.line(), file=out)
        if report.trace is not None:
            print(report.trace.render(), file=out)
        if opts.dump_context and report.context is not None:
            print(print_ctx(report.context), file=out)
    for line in report.warnings + report.diagnostics:
        print(line, file=err)


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="idxcheck", description="Typecheck .idx programs.")
    ap.add_argument("files", nargs="+", metavar="file.idx")
    ap.add_argument("--dump-context", action="store_true", help="print the final algorithmic context")
    ap.add_argument("--trace", action="store_true", help="print one line per applied rule")
    ap.add_argument("--oracle-check", action="store_true", help="re-validate accepted definitions declaratively")
    ap.add_argument("--guess-size", type=_positive, default=Fuel.guess_size, help="oracle guess size bound")
    ap.add_argument("--depth", type=_positive, default=Fuel.depth, help="oracle derivation depth bound")
    ap.add_argument("--json", action="store_true", help="print a JSON report")
    return ap


def main(argv: Optional[list[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    opts = Options(
        dump_context=args.dump_context,
        trace=args.trace,
        oracle_check=args.oracle_check,
        json=args.json,
        fuel=Fuel(guess_size=args.guess_size, depth=args.depth),
    )
    code = EXIT_OK
    reports = []
    for path in args.files:
        report = typecheck_path(path, opts)
        _emit(report, opts, out, err)
        reports.append(report)
        code = max(code, report.exit_code)
    if opts.json:
        doc = [
            {
                "file": r.path,
                "exit_code": r.exit_code,
                "definitions": [i.as_json() for i in r.items],
                "diagnostics": r.diagnostics,
                **({"context": print_ctx(r.context)} if opts.dump_context and r.context is not None else {}),
                **({"trace": [str(l) for l in r.trace.lines]} if r.trace is not None else {}),
            }
            for r in reports
        ]
        json.dump(doc if len(doc) > 1 else doc[0], out, indent=2)
        out.write("\n")
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
