"""Command line interface: ``sing <command> [options]``.

Exit codes: 0 success, 1 validation violations (or cross-method
disagreement), 2 input or parse errors, 3 precondition failures
(non-isolated, non-convenient, degenerate, timeout).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import signal
import sys
from fractions import Fraction
from typing import Callable

from . import __version__
from .constraints import (
    FrontierComparison,
    HodgeDeligneTable,
    frontier_check,
    load_document,
    validate_nilpotence,
    validate_table,
    validate_weight_symmetry,
)
from .errors import HypersingError, ParseError, PreconditionError
from .goldens import run_goldens
from .localgb import milnor_number, truncated_quotient
from .monodromy import euler_smoothing, nilpotence_index
from .newton import (
    degenerate_faces,
    diagonal_minimal_exponent,
    is_convenient,
    kouchnirenko_mu,
    newton_polyhedron,
)
from .poly import Poly, join, parse_poly, parse_vars, polys_from_lines
from .schemas import FLAGS, SCHEMA_VERSION
from .spectra import (
    INF,
    Divisor,
    Method,
    Spectrum,
    classify,
    discrepancy_classify,
    fmt_rat,
    lct_from_exponent,
    minimal_exponent,
    quasi_homogeneous_weights,
    resolution_invariants,
    spectrum_newton,
    spectrum_qh,
    thom_sebastiani,
    ts_minimal_exponent,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class Violations(Exception):
    """Raised by a pipeline whose results contain violations (exit 1)."""

    def __init__(self, outcome):
        super().__init__("violations found")
        self.outcome = outcome


class InputError(HypersingError):
    pass


# ---------------------------------------------------------------------------
# per-germ pipelines: each returns (results, methods, flags)
# ---------------------------------------------------------------------------


def _methods(args, allowed: tuple[str, ...]) -> tuple[list[str], bool]:
    """Requested methods and whether they were forced by ``--method``."""
    if not args.method:
        return list(allowed), False
    chosen = [m.strip() for m in args.method.split(",") if m.strip()]
    bad = [m for m in chosen if m not in allowed]
    if bad:
        raise InputError(f"unknown method(s) {', '.join(bad)}; choose from {', '.join(allowed)}")
    return chosen, True


def _spectrum_dict(sp: Spectrum) -> dict:
    return sp.to_dict()


def run_milnor(f: Poly, args):
    chosen, forced = _methods(args, ("groebner", "kouchnirenko"))
    results, methods, flags = {}, {}, []
    if "groebner" in chosen:
        results["mu_groebner"] = milnor_number(f)
    if "kouchnirenko" in chosen:
        try:
            results["mu_kouchnirenko"] = kouchnirenko_mu(f)
        except PreconditionError:
            if forced:
                raise
            flags.append("kouchnirenko-not-applicable")
    values = [results[k] for k in ("mu_groebner", "mu_kouchnirenko") if k in results]
    results["mu"] = values[0]
    methods["mu"] = "groebner" if "mu_groebner" in results else "kouchnirenko"
    if len(values) == 2:
        results["agree"] = values[0] == values[1]
        if not results["agree"]:
            flags.append("method-disagreement")
    return results, methods, flags


def _spectra(f: Poly, chosen: list[str], forced: bool):
    out: dict[str, Spectrum] = {}
    flags: list[str] = []
    if "qh" in chosen:
        w = quasi_homogeneous_weights(f)
        if w is None:
            if forced:
                raise PreconditionError("f is not quasi-homogeneous")
            flags.append("not-quasi-homogeneous")
        else:
            out["qh"] = spectrum_qh(f, w)
    if "newton" in chosen:
        try:
            ns = spectrum_newton(f)
            out["newton"] = ns.spectrum
            flags.extend(ns.spectrum.flags)
        except PreconditionError:
            if forced or not out:
                raise
            flags.append("newton-not-applicable")
    return out, flags


def run_spectrum(f: Poly, args):
    chosen, forced = _methods(args, ("qh", "newton"))
    spectra, flags = _spectra(f, chosen, forced)
    results: dict = {}
    methods: dict = {}
    primary = "qh" if "qh" in spectra else "newton"
    results["spectrum"] = _spectrum_dict(spectra[primary])
    methods["spectrum"] = primary
    for name, sp in spectra.items():
        results[f"spectrum_{name}"] = _spectrum_dict(sp)
    if len(spectra) == 2:
        results["agree"] = spectra["qh"].same_values(spectra["newton"])
        if not results["agree"]:
            flags.append("method-disagreement")
    return results, methods, flags


def _exponent(f: Poly):
    alpha, method = minimal_exponent(f)
    flags = ["lower-confidence"] if method is Method.NEWTON_FILTRATION else []
    return alpha, method, flags


def run_exponent(f: Poly, args):
    alpha, method, flags = _exponent(f)
    return {"minimal_exponent": fmt_rat(alpha)}, {"minimal_exponent": method.value}, flags


def run_lct(f: Poly, args):
    alpha, method, flags = _exponent(f)
    results = {"lct": fmt_rat(lct_from_exponent(alpha)), "minimal_exponent": fmt_rat(alpha)}
    return results, {"minimal_exponent": method.value}, flags


def run_classify(f: Poly, args):
    c = classify(f)
    flags = ["lower-confidence"] if c.method is Method.NEWTON_FILTRATION else []
    d = c.to_dict()
    results = {
        "verdict": d["verdict"],
        "minimal_exponent": d["minimal_exponent"],
        "lct": d["lct"],
        "mu": 0 if c.minimal_exponent is INF else milnor_number(f),
    }
    return results, {"minimal_exponent": d["method"]}, flags


def run_nilpotence(f: Poly, args):
    ma = truncated_quotient(f)
    rep = nilpotence_index(f, ma)
    results = {"mu": ma.mu, **rep.to_dict()}
    results["basis"] = [Poly.monomial(f.vars, b).format() for b in ma.basis]
    return results, {"s": "mora-membership"}, []


def run_newton(f: Poly, args):
    npoly = newton_polyhedron(f)
    conv = is_convenient(f)
    results: dict = {
        "vertices": [list(v) for v in npoly.vertices],
        "compact_facets": [
            {"normal": list(F.normal), "level": F.level} for F in npoly.compact_facets
        ],
        "convenient": conv,
        "nondegenerate": not degenerate_faces(f, npoly) if not f.constant_term() else None,
        "simplicial": npoly.all_faces_simplicial(),
        "simplicial_facets": npoly.facets_simplicial(),
    }
    flags = [] if results["simplicial"] else ["non-simplicial-diagram"]
    if conv and npoly.compact_facets:
        results["diagonal_minimal_exponent"] = fmt_rat(diagonal_minimal_exponent(npoly))
        if results["nondegenerate"]:
            results["mu_kouchnirenko"] = kouchnirenko_mu(f)
    return results, {}, flags


def _best_spectrum(f: Poly) -> tuple[Spectrum, str]:
    w = quasi_homogeneous_weights(f)
    if w is not None:
        return spectrum_qh(f, w), "qh"
    return spectrum_newton(f).spectrum, "newton"


def run_ts(f: Poly, g: Poly, args):
    h = join(f, g)
    sf, mf = _best_spectrum(f)
    sg, mg = _best_spectrum(g)
    sh, mh = _best_spectrum(h)
    conv = thom_sebastiani(sf, sg)
    af, _ = minimal_exponent(f)
    ag, _ = minimal_exponent(g)
    ah, _ = minimal_exponent(h)
    results = {
        "join": h.format(),
        "spectrum_join": _spectrum_dict(sh),
        "spectrum_convolution": _spectrum_dict(conv),
        "agree": sh.same_values(conv),
        "minimal_exponent_f": fmt_rat(af),
        "minimal_exponent_g": fmt_rat(ag),
        "minimal_exponent_sum": fmt_rat(ts_minimal_exponent(af, ag)),
        "minimal_exponent_join": fmt_rat(ah),
    }
    flags = [] if results["agree"] else ["method-disagreement"]
    return results, {"spectrum_f": mf, "spectrum_g": mg, "spectrum_join": mh}, flags


GERM_COMMANDS: dict[str, Callable] = {
    "milnor": run_milnor,
    "spectrum": run_spectrum,
    "exponent": run_exponent,
    "lct": run_lct,
    "classify": run_classify,
    "nilpotence": run_nilpotence,
    "newton": run_newton,
}


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


class _Timeout(Exception):
    pass


@contextlib.contextmanager
def _time_limit(seconds: float | None):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def handler(signum, frame):
        raise _Timeout(f"exceeded {seconds:g} s")

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _parse_germ(poly_text: str | None, vars_text: str | None) -> Poly:
    if not poly_text:
        raise InputError("missing polynomial (-f/--poly)")
    variables = parse_vars(vars_text) if vars_text else None
    return parse_poly(poly_text, variables)


def _germ_input(f: Poly) -> dict:
    return {"vars": list(f.vars), "poly": f.format()}


def _report(command: str, inp: dict, results: dict, methods: dict, flags: list[str]) -> dict:
    for fl in flags:
        assert fl in FLAGS, fl
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": inp,
        "results": results,
        "methods": methods,
        "flags": sorted(set(flags)),
    }


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    return str(v)


def render_text(doc: dict) -> str:
    lines: list[str] = []

    def walk(prefix: str, v) -> None:
        if isinstance(v, dict):
            if not v:
                lines.append(f"{prefix}: {{}}")
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else str(k), x)
        elif isinstance(v, list):
            if all(not isinstance(x, (dict, list)) for x in v):
                lines.append(f"{prefix}: [{', '.join(_scalar(x) for x in v)}]")
            else:
                for i, x in enumerate(v):
                    walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {_scalar(v)}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=True) + "\n")
    else:
        sys.stdout.write(render_text(doc))


def _error_kind(exc: BaseException) -> tuple[str, int]:
    if isinstance(exc, _Timeout):
        return "timeout", EXIT_PRECONDITION
    if isinstance(exc, PreconditionError):
        return "precondition", EXIT_PRECONDITION
    return "input", EXIT_INPUT


_INPUT_ERRORS = (ParseError, InputError, ValueError)


def _run_germ_command(args) -> int:
    fn = GERM_COMMANDS[args.command]
    if args.batch:
        return _run_batch(args, fn)
    f = _parse_germ(args.poly, args.vars)
    with _time_limit(args.timeout):
        results, methods, flags = fn(f, args)
    _emit(_report(args.command, _germ_input(f), results, methods, flags), args.format)
    return EXIT_VIOLATION if "method-disagreement" in flags else EXIT_OK


def _run_batch(args, fn) -> int:
    try:
        with open(args.batch, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read batch file: {exc}") from exc
    records = []
    worst = EXIT_OK
    for lineno, vtext, ptext in polys_from_lines(lines):
        raw_vars = [v.strip() for v in (vtext or "").split(",") if v.strip()]
        rec: dict = {"line": lineno, "status": "ok", "input": {"vars": raw_vars, "poly": ptext}}
        try:
            if not vtext:
                raise InputError("expected 'vars | polynomial'")
            f = _parse_germ(ptext, vtext)
            rec["input"] = _germ_input(f)
            with _time_limit(args.timeout):
                results, methods, flags = fn(f, args)
            rec.update(results=results, methods=methods, flags=sorted(set(flags)))
            if "method-disagreement" in flags:
                worst = max(worst, EXIT_VIOLATION)
        except (_Timeout, HypersingError, ValueError) as exc:
            kind, code = _error_kind(exc)
            rec["status"] = "error"
            rec["error"] = {"kind": kind, "message": str(exc)}
            worst = max(worst, code)
        records.append(rec)
    ok = sum(r["status"] == "ok" for r in records)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "records": records,
        "summary": {"ok": ok, "error": len(records) - ok},
    }
    _emit(doc, args.format)
    return worst


def _run_ts(args) -> int:
    f = _parse_germ(args.poly, args.vars)
    g = _parse_germ(args.poly2, args.vars2)
    with _time_limit(args.timeout):
        results, methods, flags = run_ts(f, g, args)
    inp = {"f": _germ_input(f), "g": _germ_input(g)}
    _emit(_report("ts", inp, results, methods, flags), args.format)
    return EXIT_OK if results["agree"] else EXIT_VIOLATION


def _parse_divisors(text: str) -> list[Divisor]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) not in (2, 3):
            raise InputError(f"divisor {item!r} is not 'm:nu' or 'm:nu:meets'")
        try:
            m, nu = int(parts[0]), int(parts[1])
            meets = True if len(parts) == 2 else parts[2].strip().lower() in ("1", "true", "yes")
        except ValueError as exc:
            raise InputError(f"bad divisor {item!r}") from exc
        out.append(Divisor(m, nu, meets))
    return out


def _run_resolution(args) -> int:
    if args.divisors is None and args.discrepancies is None:
        raise InputError("give --divisors and/or --discrepancies")
    inp, results, methods = {}, {}, {}
    if args.divisors is not None:
        divs = _parse_divisors(args.divisors)
        inp["divisors"] = [
            {"m": d.m, "nu": d.nu, "meets_proper_transform": d.meets_proper_transform} for d in divs
        ]
        results.update(resolution_invariants(divs).to_dict())
        methods["alpha"] = Method.RESOLUTION.value
    if args.discrepancies is not None:
        try:
            mus = [int(x) for x in args.discrepancies.split(",") if x.strip()]
        except ValueError as exc:
            raise InputError("discrepancies must be integers") from exc
        inp["discrepancies"] = mus
        cls = discrepancy_classify(mus)
        results["discrepancy_class"] = cls.value
        results["rational_by_discrepancy"] = cls.value in ("Canonical", "LogTerminalNotCanonical")
    _emit(_report("resolution", inp, results, methods, []), args.format)
    return EXIT_OK


def _run_validate(args) -> int:
    if not args.table:
        raise InputError("missing --table FILE")
    try:
        with open(args.table, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read table: {exc}") from exc
    try:
        doc = load_document(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid table document: {exc}") from exc
    except Exception as exc:  # jsonschema.ValidationError
        raise InputError(f"invalid table document: {getattr(exc, 'message', exc)}") from exc
    if isinstance(doc, HodgeDeligneTable):
        checks = {
            "region": validate_table(doc),
            "nilpotence": validate_nilpotence(doc),
            "weight_symmetry": validate_weight_symmetry(doc),
        }
        inp = {"kind": "hodge-deligne-table", "n": doc.n, "entries": len(doc.entries)}
    else:
        assert isinstance(doc, FrontierComparison)
        checks = {"frontier": frontier_check(doc)}
        inp = {"kind": "frontier-comparison", "n": doc.n}
    results: dict = {}
    total = 0
    for name, viol in checks.items():
        results[name] = [v.to_dict() for v in viol]
        total += len(viol)
    results["violation_count"] = total
    _emit(_report("validate", inp, results, {}, []), args.format)
    return EXIT_VIOLATION if total else EXIT_OK


def _run_euler(args) -> int:
    chi = euler_smoothing(args.chi0, args.mu, args.dim)
    inp = {"chi0": args.chi0, "mu": args.mu, "dim": args.dim}
    _emit(_report("euler", inp, {"chi_smooth": chi}, {}, []), args.format)
    return EXIT_OK


def _run_goldens(args) -> int:
    checks = []
    for g, actual, ok in run_goldens():
        checks.append({"name": g.name, "expected": g.expected, "actual": actual, "pass": ok})
    failed = sum(not c["pass"] for c in checks)
    results = {"checks": checks, "passed": len(checks) - failed, "failed": failed}
    _emit(_report("paper-examples", {}, results, {}, []), args.format)
    return EXIT_OK if not failed else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timeout", type=float, default=None, metavar="SECONDS",
                        help="wall-clock limit per germ")

    germ = argparse.ArgumentParser(add_help=False)
    germ.add_argument("-f", "--poly", help="polynomial, e.g. 'x^4+y^4+z^4+x*y*z'")
    germ.add_argument("-v", "--vars", help="comma separated variable names")
    germ.add_argument("--batch", metavar="FILE", help="file of 'vars | polynomial' lines")
    germ.add_argument("--method", metavar="LIST", help="comma separated methods to force")

    parser = argparse.ArgumentParser(prog="sing", description="Hypersurface singularity invariants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "milnor": "Milnor number (groebner, kouchnirenko)",
        "spectrum": "spectrum (qh, newton)",
        "exponent": "minimal exponent and route",
        "lct": "log canonical threshold",
        "classify": "rational / Du Bois / neither",
        "nilpotence": "least power of f in the Jacobian ideal",
        "newton": "Newton polyhedron facts",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common, germ], help=text)

    ts = sub.add_parser("ts", parents=[common], help="Thom-Sebastiani join of two germs")
    ts.add_argument("-f", "--poly")
    ts.add_argument("-v", "--vars")
    ts.add_argument("-g", "--poly2")
    ts.add_argument("-w", "--vars2")

    res = sub.add_parser("resolution", parents=[common], help="invariants from resolution data")
    res.add_argument("--divisors", help="'m:nu[:meets],...' for exceptional divisors")
    res.add_argument("--discrepancies", help="comma separated integer discrepancies")

    val = sub.add_parser("validate", parents=[common], help="check a Hodge-Deligne table")
    val.add_argument("--table", metavar="FILE")

    eul = sub.add_parser("euler", parents=[common], help="Euler number of the smoothing")
    eul.add_argument("--chi0", type=int, required=True)
    eul.add_argument("--mu", type=int, required=True)
    eul.add_argument("--dim", type=int, required=True)

    sub.add_parser("paper-examples", parents=[common], help="run the golden corpus")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command in GERM_COMMANDS:
            return _run_germ_command(args)
        if args.command == "ts":
            return _run_ts(args)
        if args.command == "resolution":
            return _run_resolution(args)
        if args.command == "validate":
            return _run_validate(args)
        if args.command == "euler":
            return _run_euler(args)
        return _run_goldens(args)
    except _Timeout as exc:
        print(f"error: timeout: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PreconditionError as exc:
        print(f"error: precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypersingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
