"""Command-line front end.

Machine-readable JSON goes to stdout, human-readable summaries to stderr.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or data errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import checks, dataset, density, kn, lseries, matgrp, modsym, report
from .characters import (DirichletCharacter, NoSuchCharacter, QuadraticCharacter,
                         characters, parse as parse_character)
from .curves import CurveData, ValidationError, count_points
from .cyclotomic import CycNumber, RecognitionFailed
from .dataset import ParseError


def _load(args) -> dict[str, CurveData]:
    curves = dataset.ingest_dataset(args.dataset) if args.dataset \
        else dataset.bundled_dataset()
    root = dataset.cache_dir()
    if root is not None and root.is_dir():
        for curve in curves.values():
            try:
                lseries.preload_coefficients(curve, dataset.read_cache(root, curve.label))
            except (FileNotFoundError, dataset.CorruptCache):
                continue
    return curves


def _curve(curves: dict, label: str) -> CurveData:
    if label not in curves:
        raise SystemExit2(f"label {label} not in dataset")
    return curves[label]


class SystemExit2(Exception):
    """Usage/data error (exit code 2)."""


def _emit(payload, ok: bool, summary: str) -> int:
    print(report.to_json(payload, indent=1))
    print(summary, file=sys.stderr)
    return 0 if ok else 1


def cmd_lvalue(args, curves) -> int:
    curve = _curve(curves, args.curve)
    if args.char and args.char != "1":
        chi = parse_character(args.char)
        rep = lseries.algebraic_twisted_lvalue(curve, chi, tol=args.prec * 1000)
        ok = rep.tail_bound < args.prec * max(1.0, abs(rep.analytic))
        return _emit(rep, ok, f"{curve.label} x {chi.label}: {rep.algebraic.as_text()}")
    val, terms, tail = lseries.lvalue_untwisted(curve)
    ratio = lseries.lratio(curve)
    rep = lseries.LValueReport(curve.label, "1", complex(val), lseries.real_period(curve),
                               CycNumber.rational(2, ratio), terms, tail)
    return _emit(rep, tail < args.prec * max(1.0, val),
                 f"{curve.label}: L = {val:.10g}, L/Omega = {ratio}")


def cmd_modsym(args, curves) -> int:
    curve = _curve(curves, args.curve)
    a_s, _, m_s = args.frac.partition("/")
    sym = modsym.symbol(curve, int(a_s), int(m_s or "1"))
    return _emit(sym, sym.residual < 1e-4,
                 f"mu+({args.frac}) = {sym.plus} (residual {sym.residual:.2g})")


def cmd_congruence(args, curves) -> int:
    curve = _curve(curves, args.curve)
    chi = parse_character(args.char)
    rep = modsym.congruence_check(curve, chi)
    payload = {
        "curve": rep.curve, "character": rep.character,
        "lhs_residue": rep.lhs_residue, "rhs_residue": rep.rhs_residue,
        "match": rep.match, "lvalue": rep.lvalue, "rhs_exact": rep.rhs_exact,
        "mod9_residues": _mod9_data(curve, chi, rep),
    }
    return _emit(payload, rep.match,
                 f"{rep.curve} x {rep.character}: {rep.lhs_residue} = {rep.rhs_residue}"
                 f" mod {chi.order}: {'ok' if rep.match else 'MISMATCH'}")


def _mod9_data(curve, chi, rep):
    # recorded as data only: the congruence is not asserted mod q^2
    if chi.order != 3:
        return None
    try:
        lhs9 = sum((rep.lvalue * curve.manin_c0).coeffs) % 9
        rhs9 = (rep.rhs_exact.numerator *
                pow(rep.rhs_exact.denominator, -1, 9)) % 9
        return {"lhs": int(lhs9), "rhs": int(rhs9)}
    except (ValueError, ZeroDivisionError):
        return None


def cmd_verify_tables(args, curves) -> int:
    reports = matgrp.verify_table(args.which)
    ok = all(r["ok"] for r in reports)
    return _emit(reports, ok,
                 f"table {args.which}: {sum(r['ok'] for r in reports)}/{len(reports)} rows ok")


def cmd_density(args, curves) -> int:
    curve = _curve(curves, args.curve)
    label = None
    if args.predict:
        label = args.predict.split(":", 1)[1] if ":" in args.predict else args.predict
    result = density.sweep(curve, args.q, args.limit, image_label=label)
    if args.csv:
        _write_residue_csv(args.csv, curve, args.q, args.limit)
    ok = result.max_abs_deviation is None or result.max_abs_deviation < 0.02
    return _emit(result, ok,
                 f"{curve.label} q={args.q} X={args.limit}: max deviation "
                 f"{result.max_abs_deviation}")


def _write_residue_csv(path, curve, q, limit):
    from .curves import sieve_primes
    lr = lseries.lratio(curve)
    with open(path, "w") as fh:
        fh.write("p,count,residue\n")
        for p in sieve_primes(limit - 1):
            if p % q != 1 or not curve.is_good(p):
                continue
            n = count_points(curve, p)
            fh.write(f"{p},{n},{density.residue_for_count(n, lr, q)}\n")


def cmd_kn(args, curves) -> int:
    curve = _curve(curves, args.curve)
    if not curve.kn_supported:
        return _emit({"curve": curve.label, "supported": False},
                     False, f"{curve.label}: normalized-residue method not applicable "
                            "(3 divides the norm gcd)")
    gcd = kn.estimate_gcd(curve)
    profile = kn.delta_prime(curve, args.limit)
    target = kn.DELTA_PRIME_TARGET
    dev = max(abs(float(a - b)) for a, b in zip(profile.triple(), target))
    histogram = {}
    for p in kn.eligible_conductors(curve, args.residues_upto):
        chi = DirichletCharacter(p, 3, 1)
        r = kn.l_tilde_residue(curve, chi, gcd)
        histogram[r] = histogram.get(r, 0) + 1
    payload = {"curve": curve.label, "gcd": gcd, "residue_histogram": histogram,
               "delta_prime": profile, "target": [str(t) for t in target],
               "max_abs_deviation": dev}
    return _emit(payload, dev < 0.02,
                 f"{curve.label}: gcd={gcd}, delta' deviation {dev:.4f}")


def cmd_kn_gcd(args, curves) -> int:
    curve = _curve(curves, args.curve)
    gcd = kn.estimate_gcd(curve, sample=args.sample)
    return _emit({"curve": curve.label, "gcd": gcd, "sample": args.sample,
                  "empirical": True}, True, f"{curve.label}: gcd = {gcd}")


def cmd_cache_warm(args, curves) -> int:
    root = dataset.cache_dir() or Path(".lcongr-cache")
    done = {}
    for label in (args.curve.split(",") if args.curve else sorted(curves)):
        curve = _curve(curves, label)
        values = dataset.warm(root, curve, args.nmax)
        done[label] = len(values)
    return _emit({"cache_dir": str(root), "entries": done}, True,
                 f"warmed {len(done)} curve(s) to n = {args.nmax}")


def cmd_check(args, curves) -> int:
    if args.suite == "section5":
        results = checks_section5(curves)
    elif args.suite == "section3":
        results = checks_section3(curves, pmax=args.pmax)
    elif args.suite == "valuation":
        results = checks_valuation(curves)
    else:
        raise SystemExit2(f"unknown suite {args.suite}")
    ok = all(r["ok"] for r in results)
    summary = f"{args.suite}: {sum(r['ok'] for r in results)}/{len(results)} checks pass"
    return _emit(results, ok, summary)


def checks_section5(curves) -> list[dict]:
    data = checks_load_section5()
    out = []
    chi_cubic = parse_character(data["cubic"]["character"])
    for row in data["cubic"]["rows"]:
        curve = curves[row["curve"]]
        rep = checks.sign_determination(curve, chi_cubic)
        expected = CycNumber.from_text(3, row["value"])
        npts = count_points(curve, row["count_p"])
        out.append({"check": "cubic-table", "curve": curve.label,
                    "expected": expected, "computed": rep.lvalue,
                    "count_expected": row["count"], "count": npts,
                    "sign_match": rep.match,
                    "ok": rep.lvalue == expected and npts == row["count"]
                    and bool(rep.match)})
    chi5 = parse_character(data["quintic"]["character"])
    for row in data["quintic"]["rows"]:
        curve = curves[row["curve"]]
        rep = checks.unit_congruence_check(curve, chi5)
        expected = CycNumber.from_text(5, row["value"])
        npts = count_points(curve, row["count_p"])
        out.append({"check": "quintic-table", "curve": curve.label,
                    "expected": expected, "computed": rep.lvalue,
                    "count_expected": row["count"], "count": npts,
                    "residue_match": rep.match,
                    "ok": rep.lvalue == expected and npts == row["count"]
                    and bool(rep.match)})
    chi_pair = parse_character(data["same_invariants_pair"]["character"])
    for row in data["same_invariants_pair"]["rows"]:
        curve = curves[row["curve"]]
        rep = checks.unit_congruence_check(curve, chi_pair)
        expected = CycNumber.from_text(5, row["value"])
        out.append({"check": "same-invariants-pair", "curve": curve.label,
                    "expected": expected, "computed": rep.lvalue,
                    "ok": rep.lvalue == expected and bool(rep.match)})
    chi31 = parse_character(data["norm_121"]["character"])
    for row in data["norm_121"]["rows"]:
        curve = curves[row["curve"]]
        rep = checks.norm_identity_check(curve, chi31,
                                         expected_quotient=Fraction(row["norm"]))
        npts = count_points(curve, row["count_p"])
        out.append({"check": "norm-identity", "curve": curve.label,
                    "norm": rep.norm, "expected_norm": row["norm"],
                    "residue": rep.observed_residue, "expected_residue": row["residue"],
                    "real_check": rep.real_part_check,
                    "count_expected": row["count"], "count": npts,
                    "ok": bool(rep.match) and rep.observed_residue == row["residue"]
                    and rep.real_part_check and npts == row["count"]})
    return out


def checks_load_section5() -> dict:
    import json
    from importlib import resources
    with resources.files("lcongr.data").joinpath("section5.json").open() as fh:
        return json.load(fh)


def checks_section3(curves, pmax: int = 31) -> list[dict]:
    out = []
    e11 = curves["11a1"]
    for n in (3, 7, 13):
        rep = modsym.hecke_identity(e11, n)
        out.append({"check": "hecke-identity", "curve": "11a1", "n": n,
                    "lhs": rep.lhs, "rhs": rep.rhs, "ok": bool(rep.holds)})
    neg = modsym.hecke_identity(e11, 11)
    out.append({"check": "hecke-integrality-fails", "curve": "11a1", "n": 11,
                "lhs": neg.lhs, "ok": not neg.lhs_integral})
    for spec in ("7:3:chi(3)=z2", "13:3:chi(2)=z1"):
        chi = parse_character(spec)
        bs = modsym.birch_sum(e11, chi)
        lv = lseries.algebraic_twisted_lvalue(e11, chi).algebraic
        out.append({"check": "birch-dual-path", "curve": "11a1", "character": spec,
                    "symbol_sum": bs, "lseries": lv,
                    "ok": bs == lv * e11.manin_c0})
    if "50b1" in curves:
        e50 = curves["50b1"]
        chi5 = DirichletCharacter(5, 2, 1)
        try:
            modsym.birch_sum(e50, chi5)
            refused = False
        except modsym.ConductorClash:
            refused = True
        value = lseries.algebraic_twisted_lvalue(e50, chi5).algebraic
        out.append({"check": "integrality-fails-overlap", "curve": "50b1",
                    "value": value, "refused_symbol_path": refused,
                    "ok": refused and value.as_rational() == Fraction(1, 3)})
    par = modsym.quadratic_parity_check(e11, "p1p2", 3, 7)
    out.append({"check": "parity-two-primes", "curve": "11a1", "conductor": 21,
                "ok": par.match and par.epsilon_even})
    par8 = modsym.quadratic_parity_check(e11, "eight")
    out.append({"check": "parity-eight", "curve": "11a1",
                "ok": par8.match and par8.epsilon_even})
    for label, curve in sorted(curves.items()):
        for q in (3, 5):
            if curve.manin_c0 % q == 0 or curve.root_number != 1:
                continue
            for p in range(3, pmax + 1, 2):
                if p % q != 1 or curve.conductor % p == 0 or not _is_prime(p):
                    continue
                chi = DirichletCharacter(p, q, 1)
                rep = modsym.congruence_check(curve, chi)
                out.append({"check": "congruence", "curve": label, "p": p, "q": q,
                            "lhs": rep.lhs_residue, "rhs": rep.rhs_residue,
                            "ok": rep.match})
    return out


def checks_valuation(curves) -> list[dict]:
    out = []
    for label, curve in sorted(curves.items()):
        if curve.root_number != 1:
            continue
        for q in (3, 5, 7):
            rep = checks.valuation_check(curve, q)
            out.append({"check": "valuation", "curve": label, "q": q,
                        "ord": rep.ord, "floor": 0 if rep.no_isogeny else -1,
                        "ok": rep.bound_satisfied})
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcongr",
                                 description="Twisted L-value congruences for elliptic curves")
    ap.add_argument("--dataset", help="JSON-lines curve file (default: bundled)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lvalue", help="(twisted) algebraic L-value")
    p.add_argument("--curve", required=True)
    p.add_argument("--char", default="1", help="character spec like 7:3:chi(3)=z2")
    p.add_argument("--prec", type=float, default=1e-9)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("twist", help="alias of lvalue with a required character")
    p.add_argument("--curve", required=True)
    p.add_argument("--char", required=True)
    p.add_argument("--prec", type=float, default=1e-9)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("modsym", help="modular symbol mu+(a/m)")
    p.add_argument("--curve", required=True)
    p.add_argument("--frac", required=True, help="cusp a/m")
    p.set_defaults(func=cmd_modsym)

    p = sub.add_parser("congruence", help="twisted vs untwisted residue mod <1-zeta>")
    p.add_argument("--curve", required=True)
    p.add_argument("--char", required=True)
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("check", help="verification suites")
    p.add_argument("--suite", required=True,
                   choices=["section3", "section5", "valuation"])
    p.add_argument("--pmax", type=int, default=31)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-tables", help="regenerate the bundled image tables")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("density", help="residue sweep over prime conductors")
    p.add_argument("--curve", required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--limit", type=int, default=50000)
    p.add_argument("--predict", help="image spec like table1:GL3 or table2:3.8.0.1")
    p.add_argument("--csv", help="write per-prime residues to this path")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("kn", help="normalized residues and their density")
    p.add_argument("--curve", required=True)
    p.add_argument("--limit", type=int, default=50000)
    p.add_argument("--residues-upto", type=int, default=200)
    p.set_defaults(func=cmd_kn)

    p = sub.add_parser("kn-gcd", help="empirical gcd of normalized norms")
    p.add_argument("--curve", required=True)
    p.add_argument("--sample", type=int, default=20)
    p.set_defaults(func=cmd_kn_gcd)

    p = sub.add_parser("cache-warm", help="build coefficient caches")
    p.add_argument("--curve", help="comma-separated labels (default: all)")
    p.add_argument("--nmax", type=int, default=10000)
    p.set_defaults(func=cmd_cache_warm)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        curves = _load(args)
        # constraints from the run configuration contract
        if getattr(args, "prec", None) is not None and not 1e-12 <= args.prec <= 1e-4:
            raise SystemExit2(f"precision {args.prec} outside [1e-12, 1e-4]")
        if getattr(args, "limit", None) is not None and args.limit > 10 ** 7:
            raise SystemExit2(f"sweep limit {args.limit} beyond 1e7")
        return args.func(args, curves)
    except SystemExit2 as exc:
        print(report.to_json({"error": str(exc)}), file=sys.stderr)
        return 2
    except (ParseError, ValidationError, NoSuchCharacter, RecognitionFailed) as exc:
        print(report.to_json({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
