"""Command-line surface: every module behind stable, diffable text output.

Conventions: data on stdout, errors on stderr; floating values printed with
17 significant digits; identical invocations produce identical bytes.  Exit
codes: 0 ok, 2 usage, 3 domain/parse error, 4 precision error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cohomology as cohomology_mod
from . import coboundary as coboundary_mod
from . import diophantine as diophantine_mod
from . import fourier as fourier_mod
from . import heisenberg as heis
from . import representations as reps
from .coefficients import read_coefficients, write_coefficients
from .errors import DomainError, HeisencohError, ParseError, PrecisionError
from .precision import PrecisionReal


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_k(k) -> str:
    return ",".join(str(c) for c in k)


def _parse_vector(text: str, prec: int):
    return [PrecisionReal.parse(tok, prec) for tok in text.split(",") if tok.strip()]


def _emit_json(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=2))
    out.write("\n")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_group(args, out, err):
    lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
    binary = args.op in ("mul", "comm", "conj")
    if binary and len(lines) % 2:
        raise ParseError("binary group ops need an even number of element lines")
    idx = 0
    while idx < len(lines):
        a = heis.parse_element(lines[idx], idx + 1)
        if binary:
            b = heis.parse_element(lines[idx + 1], idx + 2)
            idx += 2
            a_n = isinstance(a, heis.HeisElementN)
            b_n = isinstance(b, heis.HeisElementN)
            if a_n != b_n:
                raise DomainError("cannot mix rank-1 and rank-n element lines")
            if args.op == "mul":
                res = a * b
            elif args.op == "comm":
                if a_n:
                    res = a * b * a.inverse() * b.inverse()
                else:
                    res = heis.commutator(a, b)
            else:
                if a_n:
                    res = a * b * a.inverse()
                else:
                    res = heis.conjugate(a, b)
            out.write(heis.format_element(res) + "\n")
        else:
            idx += 1
            if args.op == "inv":
                out.write(heis.format_element(a.inverse()) + "\n")
            else:  # nf
                if isinstance(a, heis.HeisElementN):
                    raise DomainError("normal form is defined for rank-1 elements")
                nf = heis.normal_form(a)
                out.write(f"{nf.a} {nf.b} {nf.c}\n")
    return 0


def _irrep_params(args):
    try:
        eta = Fraction(args.eta.strip())  # "1/2", "0.25", "0", ...
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse eta {args.eta!r}") from None
    return reps.IrrepParams(p=args.p, xi=args.xi, eta=eta, alpha=args.alpha)


def _cmd_rep_character(args, out, err):
    P = _irrep_params(args)
    rows = reps.character_table(P, args.range)
    if args.format == "json":
        _emit_json(
            {
                "p": P.p,
                "xi": P.xi,
                "eta": str(P.eta),
                "alpha": P.alpha,
                "range": args.range,
                "rows": [
                    {"m": m, "k": k, "s": s, "re": chi.real, "im": chi.imag}
                    for m, k, s, chi in rows
                ],
            },
            out,
        )
        return 0
    for m, k, s, chi in rows:
        out.write(f"{m} {k} {s} {_fmt(chi.real)} {_fmt(chi.imag)}\n")
    return 0


def _cmd_rep_matrix(args, out, err):
    P = _irrep_params(args)
    toks = args.element.split()
    if len(toks) != 3:
        raise ParseError("--element expects 'm k s'")
    a = reps.SemidirectElement(int(toks[0]), int(toks[1]), int(toks[2]))
    U = reps.irrep_matrix(P, a)
    if args.format == "json":
        _emit_json(
            {
                "p": P.p,
                "element": {"m": a.m, "k": a.k, "s": a.s},
                "entries": [
                    {"row": i, "col": j, "re": U[i, j].real, "im": U[i, j].imag}
                    for i in range(P.p)
                    for j in range(P.p)
                ],
            },
            out,
        )
        return 0
    for i in range(P.p):
        for j in range(P.p):
            out.write(f"{i} {j} {_fmt(U[i, j].real)} {_fmt(U[i, j].imag)}\n")
    return 0


def _cmd_classify(args, out, err):
    tvec = _parse_vector(args.vector, args.prec)
    if not tvec:
        raise DomainError("--vector is empty")
    s_grid = [float(s) for s in args.s_grid.split(",") if s.strip()]
    report = diophantine_mod.classify(tvec, args.kmax, s_grid)
    if args.format == "json":
        _emit_json(report.to_dict(), out)
        return 0
    prec_txt = "exact" if report.precision_bits is None else str(report.precision_bits)
    out.write(f"verdict={report.verdict}\n")
    out.write(f"dim={report.dim}\n")
    out.write(f"kmax={report.kmax}\n")
    out.write(f"precision_bits={prec_txt}\n")
    out.write(f"points_scanned={report.points_scanned}\n")
    out.write(f"lane={report.lane}\n")
    if report.diophantine_s is not None:
        out.write(f"diophantine_s={_fmt(report.diophantine_s)}\n")
        out.write(f"diophantine_c={_fmt(report.diophantine_c)}\n")
    if report.rational_k is not None:
        out.write(f"rational_k={_fmt_k(report.rational_k)}\n")
    if report.records:
        out.write(f"min_divisor={_fmt(report.min_divisor)}\n")
        out.write(f"argmin_k={_fmt_k(report.argmin_k)}\n")
    for row in report.s_table:
        if not row.argmin_k:
            continue  # nothing scanned at this level (fully resonant input)
        out.write(
            f"s={_fmt(row.s)} C={_fmt(row.c)} argmin_k={_fmt_k(row.argmin_k)} "
            f"shell_min={_fmt(row.shell_min)} shell_max={_fmt(row.shell_max)} "
            f"evidence={'true' if row.evidence else 'false'}\n"
        )
    for w in report.witnesses:
        levels = ",".join(_fmt(s) for s in w.levels)
        sig = ",".join(_fmt(s) for s in w.significant) or "-"
        out.write(
            f"witness k={_fmt_k(w.k)} dist={_fmt(w.dist)} divisor={_fmt(w.divisor)} "
            f"exponent={_fmt(w.exponent)} levels={levels} significant={sig}\n"
        )
    for r in report.records:
        out.write(
            f"record k={_fmt_k(r.k)} divisor={_fmt(r.divisor)} normk={r.normk}\n"
        )
    out.write("note=verdicts other than Rational are finite-scan evidence, not proof\n")
    return 0


def _cmd_solve(args, out, err):
    with open(args.g, encoding="utf-8") as fh:
        g = read_coefficients(fh)
    u = _parse_vector(args.u, args.prec)
    problem = coboundary_mod.CoboundaryProblem(
        g=g,
        u=u,
        resonance_tol=args.resonance_tol,
        truncation_radius=args.truncation_radius,
    )
    sol = coboundary_mod.solve(problem)
    if args.grid_size:
        sol.residual_sup = coboundary_mod.residual(
            sol.f, g, problem.u, args.grid_size
        )
    alphas = (
        [float(a) for a in args.alpha_list.split(",") if a.strip()]
        if args.alpha_list
        else []
    )
    if alphas:
        rows, _ = coboundary_mod.sobolev_loss(sol, g, alphas)
        sol.norms = rows

    verify_residual = None
    if args.verify:
        import io

        buf = io.StringIO()
        write_coefficients(sol.f, buf)
        buf.seek(0)
        f_back = read_coefficients(buf)
        grid = max(2 * max(f_back.support_radius(), g.support_radius()) + 1, 3)
        verify_residual = coboundary_mod.residual(f_back, g, problem.u, grid)

    diag_lines = []
    d = sol.diagnostics_dict()
    diag_lines.append(f"min_divisor={_fmt(d['min_divisor']) if d['min_divisor'] is not None else '-'}")
    diag_lines.append(f"argmin_k={_fmt_k(sol.argmin_k) if sol.argmin_k else '-'}")
    diag_lines.append(f"residual_sup={_fmt(d['residual_sup'])}")
    for row in sol.norms:
        diag_lines.append(
            f"norm alpha={_fmt(row['alpha'])} f={_fmt(row['f_norm'])} "
            f"g={_fmt(row['g_norm_shifted'])} ratio={_fmt(row['ratio'])}"
        )
    if sol.formal:
        diag_lines.append("formal=true")
    for radius, val in sol.truncation_norms:
        diag_lines.append(f"truncation radius={radius} f_l2={_fmt(val)}")
    if verify_residual is not None:
        diag_lines.append(f"verify_residual={_fmt(verify_residual)}")

    if args.format == "json":
        doc = sol.diagnostics_dict()
        doc["f"] = [
            {"k": list(k), "re": v.real, "im": v.imag} for k, v in sol.f.items()
        ]
        if verify_residual is not None:
            doc["verify_residual"] = verify_residual
        _emit_json(doc, out)
        return 0

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_coefficients(sol.f, fh)
        for line in diag_lines:
            out.write(line + "\n")
    else:
        write_coefficients(sol.f, out)
        for line in diag_lines:
            err.write(line + "\n")
    return 0


def _cmd_fan(args, out, err):
    member = diophantine_mod.fan_member(args.lam, args.xi, args.n)
    if args.format == "json":
        _emit_json(
            {"lambda": args.lam, "xi": args.xi, "n": args.n, "member": member}, out
        )
        return 0
    out.write(f"member={'true' if member else 'false'}\n")
    return 0


def _cmd_sobolev(args, out, err):
    with open(args.f, encoding="utf-8") as fh:
        field = read_coefficients(fh)
    if field.dim != 1:
        raise DomainError("the multiplier Sobolev norm is one-dimensional")
    value = fourier_mod.sobolev_norm(field, args.alpha)
    if args.format == "json":
        _emit_json({"alpha": args.alpha, "norm": value}, out)
        return 0
    out.write(f"norm={_fmt(value)}\n")
    return 0


def _cmd_cohomology(args, out, err):
    table = cohomology_mod.cohomology_table(args.n)
    if args.k is not None:
        ks = [args.k]
    else:
        ks = range(len(table.groups))
    if args.format == "json":
        doc = table.to_dict()
        if args.k is not None:
            doc["rows"] = [r for r in doc["rows"] if r["k"] == args.k]
        _emit_json(doc, out)
        return 0
    for k in ks:
        g = table.groups[k] if k < len(table.groups) else cohomology_mod.cohomology(args.n, k)
        out.write(f"{k} {g.free_rank} {g.torsion_text()}\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heisencoh",
        description="Discrete Heisenberg group toolkit: exact group arithmetic, "
        "characters, small divisors, and the difference equation f - f(.+u) = g.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="exact group arithmetic on element lines from stdin")
    g.add_argument("op", choices=["mul", "inv", "comm", "conj", "nf"])
    g.set_defaults(func=_cmd_group)

    rep = sub.add_parser("rep", help="finite-dimensional representations and characters")
    repsub = rep.add_subparsers(dest="rep_command", required=True)
    rc = repsub.add_parser("character", help="character table over |m|,|k|,|s| <= range")
    rc.add_argument("--p", type=int, required=True)
    rc.add_argument("--xi", type=float, default=0.0)
    rc.add_argument("--eta", type=str, default="0")
    rc.add_argument("--alpha", type=float, default=0.0)
    rc.add_argument("--range", type=int, required=True)
    rc.add_argument("--format", choices=["text", "json"], default="text")
    rc.set_defaults(func=_cmd_rep_character)
    rm = repsub.add_parser("matrix", help="matrix of one representation element")
    rm.add_argument("--p", type=int, required=True)
    rm.add_argument("--xi", type=float, default=0.0)
    rm.add_argument("--eta", type=str, default="0")
    rm.add_argument("--alpha", type=float, default=0.0)
    rm.add_argument("--element", type=str, required=True, help="'m k s'")
    rm.add_argument("--format", choices=["text", "json"], default="text")
    rm.set_defaults(func=_cmd_rep_matrix)

    cl = sub.add_parser("classify", help="Diophantine/Liouville small-divisor scan")
    cl.add_argument("--vector", type=str, required=True, help="t1,..,tn")
    cl.add_argument("--kmax", type=int, required=True)
    cl.add_argument("--prec", type=int, default=128, help="working precision in bits")
    cl.add_argument("--s-grid", type=str, default="1,2,3")
    cl.add_argument("--format", choices=["text", "json"], default="text")
    cl.set_defaults(func=_cmd_classify)

    so = sub.add_parser("solve", help="solve f - f(. + u) = g from a coefficient file")
    so.add_argument("--g", type=str, required=True, help="coefficient file for g")
    so.add_argument("--u", type=str, required=True, help="u1,..,un")
    so.add_argument("--prec", type=int, default=128)
    so.add_argument("--alpha-list", type=str, default="")
    so.add_argument("--resonance-tol", type=float, default=1e-12)
    so.add_argument("--truncation-radius", type=int, default=None)
    so.add_argument("--grid-size", type=int, default=None, help="residual grid override")
    so.add_argument("--verify", action="store_true",
                    help="re-read the emitted coefficients and recheck the residual")
    so.add_argument("--out", type=str, default=None)
    so.add_argument("--format", choices=["text", "json"], default="text")
    so.set_defaults(func=_cmd_solve)

    fa = sub.add_parser("fan", help="joint-spectrum fan membership")
    fa.add_argument("--lambda", dest="lam", type=int, required=True)
    fa.add_argument("--xi", type=int, required=True)
    fa.add_argument("--n", type=int, required=True)
    fa.add_argument("--format", choices=["text", "json"], default="text")
    fa.set_defaults(func=_cmd_fan)

    sb = sub.add_parser("sobolev", help="discrete Sobolev norm of a coefficient file")
    sb.add_argument("--f", type=str, required=True)
    sb.add_argument("--alpha", type=float, required=True)
    sb.add_argument("--format", choices=["text", "json"], default="text")
    sb.set_defaults(func=_cmd_sobolev)

    co = sub.add_parser("cohomology", help="integral cohomology table")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--k", type=int, default=None)
    co.add_argument("--format", choices=["text", "json"], default="text")
    co.set_defaults(func=_cmd_cohomology)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, sys.stdout, sys.stderr)
    except PrecisionError as exc:
        sys.stderr.write(f"error[precision]: {exc}\n")
        return 4
    except ParseError as exc:
        sys.stderr.write(f"error[parse]: {exc}\n")
        return 3
    except (DomainError, HeisencohError, OSError) as exc:
        sys.stderr.write(f"error[domain]: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
