"""Command-line front end.

Exit codes: 0 success, 1 computation error (JSON on stderr), 2 usage error,
3 negative verdict (unstable, not detecting, not log-concave, failed check).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .analysis import IntPolynomial, check_log_concavity, parse_poly, q_sequence, qt_poly, qt_poly_eval, stability_report
from .chord import format_bqt, is_quasi_tree, parse_bqt
from .corpus import catalog, fixture_names, fixture_text, make_cn
from .delta import format_dsys, lift, parse_dsys
from .duality import AnchoredRibbon, parse_rgs, partial_dual, rotation_to_anchored
from .errors import InvalidCertificate, NotPseudoOrientable, RibbonError
from .exact import format_matrix, parse_matrix, smith_normal_form
from .interlace import Certificate, adjusted_matrix, detection_report, m2, mpm
from .labels import sort_labels
from .pseudo import adjust_anchored, find_certificate, is_pseudo_orientable

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_VERDICT = 0, 1, 2, 3


class Context:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def emit(self, record: dict) -> None:
        if self.fmt == "tsv":
            self.out.write("\t".join(f"{k}={_tsv(v)}" for k, v in record.items()) + "\n")
        else:
            self.out.write(json.dumps(record, sort_keys=False) + "\n")

    def text(self, payload: str) -> None:
        self.out.write(payload if payload.endswith("\n") else payload + "\n")


def _tsv(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_tsv(x) for x in v)
    return str(v)


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _has_key(text: str, key: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            head = line.split(":", 1)[0].split()
            if head and head[0] == key:
                return True
    return False


def load_graph(text: str):
    """A ``.bqt`` bouquet (with optional anchor) or a ``.rgs`` rotation system."""
    if _has_key(text, "vertex"):
        return rotation_to_anchored(parse_rgs(text)), {}
    doc = parse_bqt(text)
    return AnchoredRibbon(doc.diagram, doc.anchor or frozenset()), doc.certificates


def _certificate(g: AnchoredRibbon, certs: dict, tokens: Sequence[str] | None) -> Certificate:
    if not tokens:
        c = find_certificate(g.base)
        if c is None:
            raise NotPseudoOrientable("no certificate exists")
        return c
    if len(tokens) == 1:
        if tokens[0] not in certs:
            raise InvalidCertificate(f"no certificate named {tokens[0]!r} in the input")
        return Certificate(*certs[tokens[0]])
    if len(tokens) == 2 and all(t.lstrip("-").isdigit() for t in tokens):
        return Certificate(int(tokens[0]), int(tokens[1]))
    raise InvalidCertificate("--cert takes a name or two gap indices")


def _sets(xs) -> list[list[str]]:
    return sorted((sort_labels(X) for X in xs), key=lambda s: (len(s), [(len(t), t) for t in s]))


# -- verbs ----------------------------------------------------------------


def cmd_quasitrees(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    qts = g.quasi_trees()
    record = {"count": len(qts)}
    if not args.count:
        record["quasi_trees"] = _sets(qts)
    ctx.emit(record)
    return EXIT_OK


def cmd_check_pseudo(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    report = is_pseudo_orientable(g, args.hat, with_adjusted=True)
    ctx.emit(report.to_dict())
    return EXIT_OK if report.pseudo else EXIT_VERDICT


def cmd_adjust(args, ctx: Context) -> int:
    g, certs = load_graph(read_input(args.file))
    c = _certificate(g, certs, args.cert)
    a = adjust_anchored(g, c, args.hat)
    ctx.text(format_bqt(a.base, anchor=a.anchor or None, canonical=False))
    return EXIT_OK


def cmd_matrix(args, ctx: Context) -> int:
    g, certs = load_graph(read_input(args.file))
    d = g.base
    if args.kind == "m2":
        m = m2(d)
    elif args.kind == "mpm":
        m = mpm(d)
    else:
        m = adjusted_matrix(d, _certificate(g, certs, args.cert))
    ctx.text(format_matrix(m))
    return EXIT_OK


def cmd_verify_detect(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    m = parse_matrix(read_input(args.matrix))
    rep = detection_report(g.base, m)
    record = {"detects": rep.detects, "det_identity_plus": str(rep.det_identity_plus), "quasi_trees": rep.quasi_tree_count}
    if rep.witness is not None:
        record["witness"] = sort_labels(rep.witness)
        record["witness_det"] = str(rep.witness_det)
    ctx.emit(record)
    return EXIT_OK if rep.detects else EXIT_VERDICT


def _parse_point(tokens: Sequence[str]) -> dict[str, Fraction]:
    point = {}
    for tok in tokens:
        if "=" not in tok:
            raise argparse.ArgumentTypeError(f"expected EDGE=VALUE, got {tok!r}")
        k, v = tok.split("=", 1)
        point[k] = Fraction(v)
    return point


def cmd_poly(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    if args.eval is not None:
        value = qt_poly_eval(g, _parse_point(args.eval))
        ctx.emit({"value": str(value)})
        return EXIT_OK
    p = qt_poly(g)
    if args.text:
        ctx.text(p.to_text())
    else:
        ctx.emit({"poly": str(p), "coefficients": [str(c) for c in p.coefficients]})
    return EXIT_OK


def load_poly(text: str) -> IntPolynomial:
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped.splitlines()[0])
        return IntPolynomial(tuple(int(c) for c in data["coefficients"]))
    if _has_key(text, "poly"):
        return parse_poly(text)
    g, _ = load_graph(text)
    return qt_poly(g)


def cmd_stability(args, ctx: Context) -> int:
    rep = stability_report(load_poly(read_input(args.file)))
    ctx.emit(rep.to_dict())
    return EXIT_OK if rep.stable else EXIT_VERDICT


def cmd_logconcavity(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    seq = q_sequence(g, args.anchor or ())
    verdict = check_log_concavity(seq, args.mode.upper())
    record = {"sequence": [str(v) for v in seq.values], "offset": seq.offset}
    record.update(verdict.to_dict())
    ctx.emit(record)
    return EXIT_OK if verdict.passes else EXIT_VERDICT


def cmd_lift(args, ctx: Context) -> int:
    s = parse_dsys(read_input(args.file))
    ctx.text(format_dsys(lift(s, args.hat).inner))
    return EXIT_OK


def cmd_snf(args, ctx: Context) -> int:
    m = parse_matrix(read_input(args.file))
    if not args.plain:
        m = m.plus_identity()
    diag = smith_normal_form(m).diagonal
    if ctx.fmt == "json" and args.json:
        ctx.emit({"diagonal": [str(x) for x in diag], "plus_identity": not args.plain})
    else:
        ctx.text(" ".join(str(x) for x in diag))
    return EXIT_OK


def cmd_dual(args, ctx: Context) -> int:
    g, _ = load_graph(read_input(args.file))
    step = g.anchor.symmetric_difference(g.base.subset(args.at))
    if is_quasi_tree(g.base, step):
        ctx.text(format_bqt(partial_dual(g.base, step), canonical=False))
    else:
        ctx.text(format_bqt(g.base, anchor=step, canonical=False))
    return EXIT_OK


def cmd_family(args, ctx: Context) -> int:
    ctx.text(format_bqt(make_cn(args.n), name=f"C{args.n}", canonical=False))
    return EXIT_OK


def cmd_fixture(args, ctx: Context) -> int:
    if args.name == "list":
        for name in fixture_names():
            ctx.emit({"name": name, "citation": catalog()[name].citation})
        return EXIT_OK
    ctx.text(fixture_text(args.name))
    return EXIT_OK


def cmd_verify_paper(args, ctx: Context) -> int:
    from .checks import run_all

    results = run_all(args.filter)
    for r in results:
        if ctx.fmt == "json" and args.json:
            ctx.emit(r.to_dict())
        else:
            ctx.text(r.line())
    passed = sum(r.passed for r in results)
    if ctx.fmt == "json" and args.json:
        ctx.emit({"passed": passed, "total": len(results)})
    else:
        ctx.text(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_VERDICT


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonkit", description="Ribbon graphs, bouquets and their delta-matroids.")
    p.add_argument("--format", choices=("json", "tsv"), default="json", help="report format (default JSON lines)")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("quasitrees", cmd_quasitrees, "list and count quasi-trees")
    sp.add_argument("file")
    sp.add_argument("--count", action="store_true", help="report only the count")

    sp = add("check-pseudo", cmd_check_pseudo, "certificate search and adjustment")
    sp.add_argument("file")
    sp.add_argument("--hat", default=None)

    sp = add("adjust", cmd_adjust, "adjust a certificated bouquet")
    sp.add_argument("file")
    sp.add_argument("--hat", default=None)
    sp.add_argument("--cert", nargs="+", default=None, metavar="CERT")

    sp = add("matrix", cmd_matrix, "interlacing matrices")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=("m2", "mpm", "adjusted"), required=True)
    sp.add_argument("--cert", nargs="+", default=None, metavar="CERT", help="a certificate name from the file or two gap indices")

    sp = add("verify-detect", cmd_verify_detect, "check that a matrix detects the quasi-trees")
    sp.add_argument("file")
    sp.add_argument("matrix")

    sp = add("poly", cmd_poly, "quasi-tree generating polynomial")
    sp.add_argument("file")
    sp.add_argument("--eval", nargs="*", default=None, metavar="EDGE=VALUE")
    sp.add_argument("--text", action="store_true", help="emit the 'poly:' text format")

    sp = add("stability", cmd_stability, "exact Hurwitz stability of a univariate polynomial")
    sp.add_argument("file")

    sp = add("logconcavity", cmd_logconcavity, "log-concavity of quasi-tree counts around Q")
    sp.add_argument("file")
    sp.add_argument("--anchor", nargs="*", default=None, metavar="EDGE")
    sp.add_argument("--mode", choices=("ulc", "lc", "ULC", "LC"), default="ulc")

    sp = add("lift", cmd_lift, "lift of a set system")
    sp.add_argument("file")
    sp.add_argument("--hat", required=True)

    sp = add("snf", cmd_snf, "Smith normal form of I + M (or of M with --plain)")
    sp.add_argument("file")
    sp.add_argument("--plain", action="store_true", help="use the matrix itself instead of I + M")
    sp.add_argument("--json", action="store_true", help="emit a JSON record instead of the diagonal")

    sp = add("dual", cmd_dual, "partial dual")
    sp.add_argument("file")
    sp.add_argument("--at", nargs="*", default=[], metavar="EDGE")

    sp = add("family", cmd_family, "named families")
    sp.add_argument("family", choices=("cn",))
    sp.add_argument("--n", type=int, required=True)

    sp = add("fixture", cmd_fixture, "print a fixture, or 'list'")
    sp.add_argument("name")

    sp = add("verify-paper", cmd_verify_paper, "run the reproduction checks")
    sp.add_argument("--filter", nargs="*", default=None)
    sp.add_argument("--json", action="store_true", help="one JSON record per check")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    ctx = Context(args.format, out)
    try:
        return args.fn(args, ctx)
    except RibbonError as exc:
        err.write(json.dumps(exc.to_dict()) + "\n")
        return EXIT_ERROR
    except (OSError, argparse.ArgumentTypeError, json.JSONDecodeError, KeyError, ValueError) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
