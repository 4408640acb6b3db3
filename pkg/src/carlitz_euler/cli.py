"""Command-line front end: `carlitz-euler <command> ...` (or `python3 -m carlitz_euler`).

Every command prints one JSON document.  Exit status: 0 when every check
passes, 1 when some check fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time

from .base_arith.ideals import MonicIdeal
from .base_arith.parse import parse_poly
from .report import Check, build_report, dumps, jsonable

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _q(text) -> int:
    from .base_arith.intmath import factorint

    try:
        q = int(text)
    except ValueError:
        raise InputError(f"q = {text!r} is not an integer")
    if q < 2 or len(factorint(q)) != 1:
        raise InputError(f"q = {q} is not a prime power")
    return q


def _ideal(text: str, q: int, proper: bool = False) -> MonicIdeal:
    try:
        a = parse_poly(text, q)
    except Exception as exc:  # malformed polynomial text
        raise InputError(f"cannot parse polynomial {text!r}: {exc}")
    if a.is_zero():
        raise InputError("the zero ideal is not allowed")
    I = MonicIdeal(a)
    if proper and I.deg < 1:
        raise InputError(f"{text!r} must have positive degree")
    return I


def _prime(text: str, q: int) -> MonicIdeal:
    I = _ideal(text, q, proper=True)
    if not I.is_prime():
        raise InputError(f"{I} is not prime")
    return I


def _subgroup(m: MonicIdeal, spec: str):
    from .suites import parse_subgroup

    try:
        return parse_subgroup(m, spec)
    except Exception as exc:
        raise InputError(f"bad subgroup {spec!r}: {exc}")


def _emit(args, command: str, config: dict, checks: list[Check], extra: dict | None = None) -> int:
    rep = build_report(command, config, checks, getattr(args, "deterministic", False), extra)
    text = dumps(rep)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _tsv(rows: list[dict], keys: list[str]) -> str:
    lines = ["\t".join(keys)]
    for r in rows:
        vals = []
        for k in keys:
            v = r.get(k, "")
            if isinstance(v, list):
                v = ";".join(str(x) for x in v)
            vals.append(str(v))
        lines.append("\t".join(vals))
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------------------------

def cmd_carlitz_phi(args) -> int:
    from .carlitz import phi_elem

    q = _q(args.q)
    try:
        a = parse_poly(args.a, q)
    except Exception as exc:
        raise InputError(f"cannot parse polynomial {args.a!r}: {exc}")
    if a.is_zero():
        raise InputError("Phi_0 is excluded")
    P = phi_elem(a)
    ok = P.D() == P.dom.lift(a) and P.deg == a.deg
    c = Check("phi", str(P), f"D = {a}, deg_F = {a.deg}", ok)
    return _emit(args, "carlitz phi", {"q": q, "a": str(a)}, [c],
                 {"phi": str(P), "coefficients": [str(x) for x in P.coeffs]})


def cmd_cyclo_distribution(args) -> int:
    from .cyclo_relations import verify_distribution

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    p = _prime(args.qprime, q)
    r = verify_distribution(m, p)
    return _emit(args, "cyclo verify-distribution", {"q": q, "m": str(m), "qprime": str(p)},
                 [Check("distribution", r.lhs, r.rhs, r.equal)], {"equal": r.equal})


def cmd_cyclo_congruence(args) -> int:
    from .cyclo_relations import verify_congruence

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    p = _prime(args.qprime, q)
    if p.divides(m):
        raise InputError("the congruence needs q' prime to m")
    r = verify_congruence(m, p)
    return _emit(args, "cyclo verify-congruence", {"q": q, "m": str(m), "qprime": str(p)},
                 [Check("congruence", r.lhs, r.rhs, r.equal)], {"equal": r.equal})


def cmd_cyclo_stark_unit(args) -> int:
    from .cyclo_relations import stark_unit, verify_stark_norm

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    r = verify_stark_norm(m)
    return _emit(args, "cyclo stark-unit", {"q": q, "m": str(m)},
                 [Check("stark-norm", r.lhs, r.rhs, r.equal)],
                 {"stark_unit": str(stark_unit(m)), "equal": r.equal})


def cmd_infinity_valuations(args) -> int:
    from .infinity_embed import closed_form_valuation, v_inf_per_sigma

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    vals = v_inf_per_sigma(m)
    rows, checks = [], []
    for u in sorted(vals, key=lambda u: u.sort_key()):
        v = vals[u]
        cf = (q - 1) * closed_form_valuation(m, u)
        rows.append({"sigma": str(u), "valuation": v})
        checks.append(Check(f"v_inf[sigma={u}]", f"{v.numerator}/{v.denominator}",
                            f"{cf.numerator}/{cf.denominator}", v == cf))
    return _emit(args, "infinity valuations", {"q": q, "m": str(m)}, checks, {"valuations": rows})


def _character(args, q, m):
    from .lfunction import characters

    S = _subgroup(m, args.subgroup)
    try:
        chars = characters(m, S)
    except Exception as exc:
        raise InputError(str(exc))
    return S, chars


def cmd_lvalue(args) -> int:
    from .lfunction import l_value_at_zero

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    S, chars = _character(args, q, m)
    if not 0 <= args.char_index < len(chars):
        raise InputError(f"character index must be in 0..{len(chars) - 1}")
    chi = chars[args.char_index]
    val = l_value_at_zero(chi)
    return _emit(args, "lvalue", {"q": q, "m": str(m), "subgroup": args.subgroup, "char_index": args.char_index},
                 [Check("lvalue", str(val), "computed", True)],
                 {"character": chi.describe(), "value": val.to_json()})


def cmd_stark(args) -> int:
    from .lfunction import stark_check

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    S = _subgroup(m, args.subgroup)
    rows = stark_check(m, S)
    checks = [Check(f"stark[chi={r.character.index}]", str(r.l_value), str(r.unit_side), r.equal) for r in rows]
    table = [r.as_dict() for r in rows]
    if args.tsv:
        sys.stdout.write(_tsv(table, ["character", "exponents", "zeta_order", "lhs", "rhs", "pass"]))
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
    return _emit(args, "stark", {"q": q, "m": str(m), "subgroup": args.subgroup}, checks, {"rows": table})


def cmd_classnumber(args) -> int:
    from .lfunction import functional_equation_holds, l_polynomial

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    S = _subgroup(m, args.subgroup)
    try:
        rep = l_polynomial(m, S)
        checks = [Check("integrality", f"h = {rep.h}", "positive integer", True),
                  Check("functional-equation", "a_(2g-i)", "q^(g-i) a_i", functional_equation_holds(rep, q))]
    except ArithmeticError as exc:
        return _emit(args, "classnumber", {"q": q, "m": str(m), "subgroup": args.subgroup},
                     [Check("integrality", str(exc), "positive integer", False)])
    body = {"h": rep.h, "genus": rep.genus, "degree": rep.degree,
            "l_polynomial": rep.l_polynomial, "conductors": rep.conductors}
    if args.tsv:
        sys.stdout.write(_tsv([jsonable(body)], ["h", "genus", "degree", "l_polynomial", "conductors"]))
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
    return _emit(args, "classnumber", {"q": q, "m": str(m), "subgroup": args.subgroup}, checks, body)


def _euler_config(args):
    from .euler_system import ConfigError, EulerConfig, in_curly_L
    from .base_arith.intmath import factorint

    q = _q(args.q)
    m = _ideal(args.m, q, proper=True)
    g = _ideal(args.g, q)
    S = _subgroup(m, args.subgroup)
    M = args.M
    if M < 1:
        raise InputError("M must be positive")
    fM = factorint(M) if M > 1 else {}
    p = args.p
    if p is None:
        if len(fM) != 1:
            raise InputError(f"M = {M} is not a prime power; give --p for M = 1")
        p = next(iter(fM))
    try:
        cfg = EulerConfig(m, S, M, p, g).validate()
    except ConfigError as exc:
        raise InputError(str(exc))
    ells = [_prime(t, q) for t in (args.ell or "").split(",") if t.strip()]
    for ell in ells:
        try:
            ok = in_curly_L(ell, cfg)
        except ValueError as exc:
            raise InputError(str(exc))
        if not ok:
            raise InputError(f"{ell} does not split completely in K_M")
    return cfg, ells


def cmd_euler_run(args) -> int:
    from .suites import euler_suite

    cfg, ells = _euler_config(args)
    if not ells:
        raise InputError("give at least one auxiliary prime with --ell")
    wanted = tuple(CHECK_ALIASES.get(c, c) for c in (c.strip().lower() for c in args.check.split(",")) if c)
    known = {"e1", "e2", "e3", "e4", "kappa", "kappa-residue", "norm-residue", "chebotarev"}
    if not set(wanted) <= known:
        raise InputError(f"unknown checks {sorted(set(wanted) - known)}")
    checks = euler_suite(cfg, ells, args.seed, args.samples, args.max_deg, wanted)
    config = {**cfg.describe(), "ells": [str(e) for e in ells], "checks": list(wanted),
              "seed": args.seed, "samples": args.samples}
    return _emit(args, "euler run", config, checks)


# short names for the ideal-vector check on kappa and the norm/residue identity
CHECK_ALIASES = {"marrakech": "kappa-residue", "baleine": "norm-residue"}


def cmd_euler_search(args) -> int:
    from .euler_system import EulerSystem, chebotarev_candidates

    cfg, _ = _euler_config(args)
    E0 = EulerSystem(cfg, [])
    one = MonicIdeal(parse_poly("1", cfg.q))
    beta = E0.alpha(one)
    res = chebotarev_candidates(cfg, beta, args.max_deg)
    checks = [Check(f"candidate[{r.ell}]", f"phi = {list(r.phi)}", r.reason, True) for r in res]
    status = "found" if any(r.passed for r in res) else "inconclusive"
    return _emit(args, "euler search-ell", {**cfg.describe(), "max_deg": args.max_deg, "beta": "kappa(1)"},
                 checks, {"candidates": [r.as_dict() for r in res], "status": status})


def cmd_run(args) -> int:
    from . import suites

    names = suites.SUITES if args.suite == "all" else (args.suite,)
    qs = [_q(args.q)] if args.q is not None else [2, 3]
    M = args.M if args.M is not None else suites.DEFAULT_EULER["M"]
    checks: list[Check] = []
    tables: dict = {}
    for name in names:
        deg = args.max_conductor_deg if args.max_conductor_deg is not None else suites.DEFAULT_DEG.get(name)
        if name == "carlitz":
            checks += suites.carlitz_suite(qs, deg, args.seed)
        elif name in ("distribution", "congruence"):
            checks += suites.relation_grid(name, qs, deg)
        elif name == "stark":
            rows: list = []
            checks += suites.stark_norm_grid(qs, deg)
            checks += suites.stark_grid(qs, deg, rows)
            tables["stark"] = rows
        elif name == "classnumber":
            rows = []
            checks += suites.classnumber_grid(qs, deg, rows)
            tables["classnumber"] = rows
        elif name == "euler":
            d = suites.DEFAULT_EULER
            q = 2
            m = _ideal(d["m"], q, proper=True)
            from .euler_system import ConfigError, in_curly_L, make_config

            try:
                cfg = make_config(m, M, _ideal(d["g"], q))
            except ConfigError as exc:
                raise InputError(str(exc))
            ell = _prime(d["ell"], q)
            if not in_curly_L(ell, cfg):
                raise InputError(f"{ell} does not split completely in K_M for M = {M}")
            checks += suites.euler_suite(cfg, [ell], args.seed)
    if args.tsv and tables:
        for name, rows in tables.items():
            keys = sorted({k for r in rows for k in r}) if rows else []
            sys.stdout.write(f"# {name}\n")
            sys.stdout.write(_tsv(jsonable(rows), keys))
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
    config = {"suite": args.suite, "q": qs, "seed": args.seed, "max_conductor_deg": args.max_conductor_deg,
              "deterministic": args.deterministic}
    if "euler" in names:
        config["euler"] = {**suites.DEFAULT_EULER, "M": M}
    return _emit(args, f"run {args.suite}", config, checks)


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="carlitz-euler", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the JSON report to this file")
    common.add_argument("--deterministic", action="store_true", help="replace timings by a placeholder")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("carlitz", help="Carlitz module")
    s = p.add_subparsers(dest="sub", required=True)
    x = s.add_parser("phi", parents=[common])
    x.add_argument("--q", required=True)
    x.add_argument("--a", required=True)
    x.set_defaults(func=cmd_carlitz_phi)

    p = sub.add_parser("cyclo", help="cyclotomic function fields")
    s = p.add_subparsers(dest="sub", required=True)
    for name, fn in (("verify-distribution", cmd_cyclo_distribution), ("verify-congruence", cmd_cyclo_congruence)):
        x = s.add_parser(name, parents=[common])
        x.add_argument("--q", required=True)
        x.add_argument("--m", required=True)
        x.add_argument("--qprime", required=True)
        x.set_defaults(func=fn)
    x = s.add_parser("stark-unit", parents=[common])
    x.add_argument("--q", required=True)
    x.add_argument("--m", required=True)
    x.set_defaults(func=cmd_cyclo_stark_unit)

    p = sub.add_parser("infinity", help="valuations at infinity")
    s = p.add_subparsers(dest="sub", required=True)
    x = s.add_parser("valuations", parents=[common])
    x.add_argument("--q", required=True)
    x.add_argument("--m", required=True)
    x.set_defaults(func=cmd_infinity_valuations)

    for name, fn in (("lvalue", cmd_lvalue), ("stark", cmd_stark), ("classnumber", cmd_classnumber)):
        x = sub.add_parser(name, parents=[common])
        x.add_argument("--q", required=True)
        x.add_argument("--m", required=True)
        x.add_argument("--subgroup", default="F*")
        if name == "lvalue":
            x.add_argument("--char-index", type=int, default=0)
        else:
            x.add_argument("--tsv", action="store_true")
        x.set_defaults(func=fn)

    p = sub.add_parser("euler", help="Euler system checks")
    s = p.add_subparsers(dest="sub", required=True)
    for name, fn in (("run", cmd_euler_run), ("search-ell", cmd_euler_search)):
        x = s.add_parser(name, parents=[common])
        x.add_argument("--q", default="2")
        x.add_argument("--m", default="T^2")
        x.add_argument("--subgroup", default="F*")
        x.add_argument("--M", type=int, default=3)
        x.add_argument("--p", type=int, default=None)
        x.add_argument("--g", default="T+1")
        x.add_argument("--max-deg", type=int, default=6)
        if name == "run":
            x.add_argument("--ell", default="T^4+T^3+1", help="comma-separated auxiliary primes")
            x.add_argument("--check", default="e1,e2,e3,e4,kappa,kappa-residue,norm-residue")
            x.add_argument("--seed", type=int, default=0)
            x.add_argument("--samples", type=int, default=20)
        else:
            x.set_defaults(ell="")
        x.set_defaults(func=fn)

    x = sub.add_parser("run", parents=[common], help="run a verification suite")
    x.add_argument("suite", choices=("carlitz", "distribution", "congruence", "stark", "classnumber", "euler", "all"))
    x.add_argument("--q", default=None)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--tsv", action="store_true")
    x.add_argument("--max-conductor-deg", type=int, default=None)
    x.add_argument("--M", type=int, default=None, help="Kolyvagin modulus for the euler suite")
    x.set_defaults(func=cmd_run)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Exception as exc:  # a computation broke: report as a failed verification
        sys.stderr.write(f"failure: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
