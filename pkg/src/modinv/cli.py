"""Command-line front end: ``modinv <verb> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Sequence, TextIO

from .acceptance import run_all
from .catalog import Catalog, default_catalog, load_catalog
from .certificate import Certificate
from .family import analyse_family, load_family
from .fibergraph import delta_components, load_fiber, validate_graph
from .invariants import (
    DELTA_MIN,
    KAPPA_MIN,
    LAMBDA_MIN,
    ChernLocalData,
    chern_from_local,
    general_genus_bounds,
    moriwaki_check,
)
from .rampoly import PointSpec, certify_complete, global_ram_index, load_poly_file, resolve
from .rational import fmt, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    """Collects report lines and renders them as text or ``key=value``."""

    def __init__(self, fmt_: str, stream: TextIO) -> None:
        self.kv_mode = fmt_ == "kv"
        self.stream = stream

    def text(self, line: str = "") -> None:
        if not self.kv_mode:
            print(line, file=self.stream)

    def kv(self, pairs: Sequence[tuple[str, str]]) -> None:
        if self.kv_mode:
            for k, v in pairs:
                print(f"{k}={v}", file=self.stream)

    def table(self, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
        if self.kv_mode:
            return
        widths = [max(len(str(r[k])) for r in [header, *rows]) for k in range(len(header))]
        for r in [header, *rows]:
            print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip(), file=self.stream)

    def certificate(self, cert: Certificate, prefix: str = "") -> None:
        self.text(cert.render())
        self.kv(cert.kv(prefix))


def _catalog(args: argparse.Namespace) -> Catalog:
    return load_catalog(args.catalog) if args.catalog else default_catalog()


def cmd_delta(args: argparse.Namespace, out: Output) -> int:
    g = load_fiber(args.fiber)
    report = validate_graph(g)
    for v in report.violations:
        print(f"warning: {v.message}", file=sys.stderr)
    d = delta_components(g)
    out.text(str(d))
    out.kv([(f"delta{i}", fmt(v)) for i, v in enumerate(d)])
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace, out: Output) -> int:
    rep = analyse_family(load_family(args.family, catalog=_catalog(args)))
    pairs = rep.lines()
    out.table(["quantity", "value"], pairs)
    out.kv([(k.replace("^", ""), v) for k, v in pairs if k != "fiber"])
    if rep.certificate is None:
        out.text("bounds: not applicable (delta = 0: isotrivial or smooth family)")
        out.kv([("bounds", "not-applicable")])
        return EXIT_OK
    out.text()
    out.certificate(rep.certificate, "bounds.")
    return EXIT_OK if rep.certificate.passed else EXIT_FAIL


_LOCAL_KEYS = {
    "N": "N", "Fred2": "Fred2", "mu": "mu", "alpha": "alpha",
    "bminus": "beta_minus", "beta_minus": "beta_minus",
    "bplus": "beta_plus", "beta_plus": "beta_plus", "beta": "beta",
}


def cmd_chern(args: argparse.Namespace, out: Output) -> int:
    vals: dict[str, Fraction] = {}
    for item in args.local:
        key, sep, raw = item.partition("=")
        if not sep or key not in _LOCAL_KEYS:
            raise ValueError(f"bad local datum {item!r}; keys: N Fred2 mu alpha bminus bplus beta")
        vals[_LOCAL_KEYS[key]] = parse_rational(raw)
    missing = sorted(set(_LOCAL_KEYS.values()) - set(vals))
    if missing:
        raise ValueError(f"missing local data: {', '.join(missing)}")
    for k in ("N", "Fred2", "mu", "alpha"):
        if vals[k].denominator != 1:
            raise ValueError(f"{k} must be an integer")
        vals[k] = int(vals[k])
    c = chern_from_local(ChernLocalData(**vals))
    out.text(str(c))
    out.kv([("c1sq", fmt(c.c1sq)), ("c2", fmt(c.c2)), ("chi", fmt(c.chi))])
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, out: Output) -> int:
    cat = _catalog(args)
    if args.action == "list":
        rows = []
        for e in cat:
            ch = e.chern
            rows.append([e.name, fmt(ch.c1sq) if ch else "-", fmt(ch.c2) if ch else "-",
                         fmt(ch.chi) if ch else "-", "yes" if e.smooth_reduction else "no",
                         str(e.deltas) if e.deltas is not None else "-"])
        out.table(["name", "c1sq", "c2", "chi", "smooth", "deltas"], rows)
        out.kv([(f"entry.{k}", r[0]) for k, r in enumerate(rows)])
        return EXIT_OK
    if args.action == "show":
        if not args.names:
            raise ValueError("catalog show needs a fiber name")
        for name in args.names:
            e = cat.lookup(name)
            pairs = [("name", e.name)]
            if e.aliases:
                pairs.append(("aka", ",".join(e.aliases)))
            if e.chern is not None:
                pairs += [("c1sq", fmt(e.chern.c1sq)), ("c2", fmt(e.chern.c2)), ("chi", fmt(e.chern.chi))]
            pairs.append(("smooth_reduction", "true" if e.smooth_reduction else "false"))
            if e.deltas is not None:
                pairs += [(f"delta{i}", fmt(v)) for i, v in enumerate(e.deltas)]
            if e.local is not None:
                loc = e.local
                pairs += [("N", str(loc.N)), ("Fred2", str(loc.Fred2)), ("mu", str(loc.mu)),
                          ("alpha", str(loc.alpha)), ("bminus", fmt(loc.beta_minus)),
                          ("bplus", fmt(loc.beta_plus)), ("beta", fmt(loc.beta))]
            if e.graph is not None:
                pairs.append(("graph", f"{len(e.graph.components)} components"))
            out.table(["field", "value"], pairs)
            out.text()
            out.kv(pairs)
        return EXIT_OK
    # min
    if args.delta_type is not None:
        low, names = cat.extremal_delta_search(args.delta_type)
        out.text(f"min nonzero delta{args.delta_type} = {fmt(low)} at {', '.join(names)} "
                 f"(over shipped catalog entries)")
        out.kv([("min", fmt(low)), ("argmin", ",".join(names))])
        return EXIT_OK
    rep = cat.chi_floor_check(args.names or None)
    out.text(f"min chi = {fmt(rep.minimum)} at {', '.join(rep.argmin)}"
             + (f"; next {fmt(rep.second)}" if rep.second is not None else ""))
    out.kv([("min", fmt(rep.minimum)), ("argmin", ",".join(rep.argmin)),
            ("second", fmt(rep.second) if rep.second is not None else "none")])
    out.certificate(rep.certificate, "check.")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bounds(args: argparse.Namespace, out: Output) -> int:
    g = args.genus
    if g == 2:
        lam, dl, ka = LAMBDA_MIN, DELTA_MIN, KAPPA_MIN
    else:
        lam, dl, ka = general_genus_bounds(g)
    out.text(f"lambda>={fmt(lam)} delta>={fmt(dl)} kappa>={fmt(ka)}")
    out.kv([("genus", str(g)), ("lambda", fmt(lam)), ("delta", fmt(dl)), ("kappa", fmt(ka))])
    return EXIT_OK


def cmd_moriwaki(args: argparse.Namespace, out: Output) -> int:
    chk = moriwaki_check(args.genus, parse_rational(args.lambda_), [parse_rational(d) for d in args.deltas])
    out.text(str(chk))
    out.kv([("lhs", fmt(chk.lhs)), ("rhs", fmt(chk.rhs)), ("slack", fmt(chk.slack)),
            ("passed", str(chk.passed).lower())])
    return EXIT_OK if chk.passed else EXIT_FAIL


def cmd_rigidity(args: argparse.Namespace, out: Output) -> int:
    cat = _catalog(args)
    sols = cat.rigidity_enumerate(args.fixed, parse_rational(args.target),
                                  min_others=args.min_others, claimed_max_others=args.claimed_max)
    for s in sols:
        out.text(s.render())
    if not sols:
        out.text("no solutions")
    kv = [("count", str(len(sols)))]
    for k, s in enumerate(sols):
        kv += [(f"solution.{k}", ",".join(s.names)), (f"solution.{k}.K2", fmt(s.Kf2)),
               (f"solution.{k}.e", fmt(s.ef)), (f"solution.{k}.flagged", str(s.flagged).lower())]
    out.kv(kv)
    return EXIT_OK


def _points(args: argparse.Namespace, pf) -> list[PointSpec]:
    pts = [PointSpec.parse(p) for p in args.point] if args.point else list(pf.points)
    if not pts:
        raise ValueError("no points given (add 'point x0,t0' lines or --point)")
    return pts


def cmd_ram(args: argparse.Namespace, out: Output) -> int:
    pf = load_poly_file(args.poly)
    rows, kv = [], []
    for pt in _points(args, pf):
        r = resolve(pf.poly, pt)
        seq = ",".join(map(str, r.mult_sequence)) or "-"
        br = ",".join(map(str, r.branch_orders))
        rows.append([str(pt), str(r.contact), str(r.multiplicity), seq, br, str(r.local_index)])
        key = f"point.{pt}"
        kv += [(f"{key}.contact", str(r.contact)), (f"{key}.mult", str(r.multiplicity)),
               (f"{key}.sequence", seq), (f"{key}.branches", br), (f"{key}.index", str(r.local_index))]
    a, b = pf.poly.bidegree
    glob = global_ram_index(pf.poly)
    out.text(f"curve: {pf.poly}  bidegree ({a},{b})")
    out.table(["point", "contact", "mult", "sequence", "branches", "index"], rows)
    out.text(f"global index: {glob}")
    out.kv([("bidegree", f"{a},{b}")] + kv + [("global", str(glob))])
    return EXIT_OK


def cmd_certify(args: argparse.Namespace, out: Output) -> int:
    pf = load_poly_file(args.poly)
    cert = certify_complete(pf.poly, _points(args, pf))
    out.text(cert.summary())
    for pt, v in cert.unlisted:
        out.text(f"  unlisted candidate {pt}: index {v}")
    for r in cert.residual:
        out.text(f"  unresolved {r}")
    out.kv([("global", str(cert.global_index)), ("local", ",".join(str(v) for _, v in cert.local)),
            ("deficit", str(cert.deficit)), ("residual", str(len(cert.residual))),
            ("passed", str(cert.passed).lower())])
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    results = run_all(_catalog(args))
    for r in results:
        out.text(r.line())
    n_ok = sum(r.passed for r in results)
    out.text(f"{n_ok}/{len(results)} criteria passed")
    out.kv([(f"criterion.{r.number}", "pass" if r.passed else "fail") for r in results]
           + [("passed", str(n_ok == len(results)).lower())])
    return EXIT_OK if n_ok == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "kv"), default=argparse.SUPPRESS,
                        help="output style (default: text)")
    common.add_argument("--catalog", default=argparse.SUPPRESS, metavar="PATH",
                        help="catalog data file (default: built-in)")

    p = argparse.ArgumentParser(prog="modinv", parents=[common],
                                description="Exact invariants of genus-2 fibrations.")
    sub = p.add_subparsers(dest="verb", metavar="VERB", required=True)

    def verb(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=fn)
        return sp

    verb("delta", cmd_delta, "delta vector of a fiber dual graph").add_argument("fiber")
    verb("invariants", cmd_invariants, "modular invariants and bound certificate of a family").add_argument("family")
    sp = verb("chern", cmd_chern, "fiber Chern numbers from local data")
    sp.add_argument("--local", nargs="+", required=True, metavar="KEY=VALUE",
                    help="N Fred2 mu alpha bminus bplus beta")
    sp = verb("catalog", cmd_catalog, "query the fiber catalog")
    sp.add_argument("action", choices=("list", "show", "min"))
    sp.add_argument("names", nargs="*", help="entry names (show) or a chi-floor subset (min)")
    sp.add_argument("--delta-type", type=int, choices=(0, 1), default=None,
                    help="with min: smallest nonzero delta_i instead of the chi floor")
    sp = verb("bounds", cmd_bounds, "lower bounds for lambda, delta, kappa")
    sp.add_argument("--genus", type=int, required=True)
    sp = verb("moriwaki", cmd_moriwaki, "exact Moriwaki inequality check")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--lambda", dest="lambda_", required=True, metavar="P/Q")
    sp.add_argument("--deltas", nargs="+", required=True, metavar="P/Q")
    sp = verb("rigidity", cmd_rigidity, "enumerate smooth-reduction fibers completing chi_f")
    sp.add_argument("--fixed", required=True, metavar="NAME")
    sp.add_argument("--target", required=True, metavar="P/Q")
    sp.add_argument("--min-others", type=int, default=2)
    sp.add_argument("--claimed-max", type=int, default=None, metavar="N",
                    help="flag solutions with more than N other fibers")
    for name, fn, h in (("ram", cmd_ram, "per-point ramification reports"),
                        ("certify", cmd_certify, "certify that the listed points are all singular fibers")):
        sp = verb(name, fn, h)
        sp.add_argument("poly")
        sp.add_argument("--point", action="append", metavar="X0,T0",
                        help="analyse this point instead of the file's points (repeatable)")
    verb("verify-paper", cmd_verify, "run the full acceptance suite")
    return p


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT
    args.format = getattr(args, "format", "text")
    args.catalog = getattr(args, "catalog", None)
    out = Output(args.format, stdout or sys.stdout)
    try:
        return args.func(args, out)
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"modinv {args.verb}: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
