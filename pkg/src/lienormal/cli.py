"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage error, 3 I/O error.
"""
import argparse
import json
import sys
from fractions import Fraction

from .algebra import parse
from .chevalley import chevalley_basis, decompose
from .errors import LieNormalError, ParseError
from .gauge import reduce_to_normal_form
from .normal_forms import (
    build_parameter_matrix, expand_parameter_equation, mitschi_singer_reduction,
    sl_genericity_chain, verify_annihilator,
)
from .roots import GROUP_TYPES, build_root_system, G2_GAMMA_CANDIDATES

SCHEMA = "1"


class UsageError(Exception):
    pass


def _matrix_json(m):
    return [[str(x) for x in row] for row in m]


def _json(obj):
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def _parse_expr(text):
    try:
        return parse(text)
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"cannot parse {text!r}: {e}") from e


def _split(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_roots(args):
    rs = build_root_system(args.type, args.rank)
    return _json(rs.to_json())


def cmd_basis(args):
    return _json(chevalley_basis(args.type, args.rank).to_json())


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise IOError(f"{path}: {e.strerror or e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from e


def _load_reduce_input(data):
    try:
        group_type, rank, entries = data["type"], data["rank"], data["entries"]
    except (KeyError, TypeError) as e:
        raise ParseError(f"reduce input is missing field {e}") from e
    fld = data.get("field", "Ct")
    if fld not in ("Cz", "Ct"):
        raise ParseError(f"field must be 'Cz' or 'Ct', got {fld!r}")
    basis = chevalley_basis(group_type, rank)
    m = [[_parse_expr(str(e)) for e in row] for row in entries]
    for row in m:
        for e in row:
            kinds = {v[0] for p in (e.num, e.den) for v in p.variables()}
            if fld == "Cz" and 1 in kinds:
                raise ParseError("t-variables are not allowed over Cz")
            if fld == "Ct" and 0 in kinds:
                raise ParseError("z is not allowed over Ct")
    return decompose(m, basis)


def _nf_json(res):
    bad = res.failures()
    return {
        "type": res.normal.basis.rs.group_type,
        "rank": res.normal.basis.rank,
        "normal": _matrix_json(res.normal.matrix),
        "specialization": [str(f) for f in res.specialization],
        "gauge": res.gauge.to_json(),
        "certificate_valid": not bad,
        "certificate_failures": bad,
    }


def cmd_reduce(args):
    a = _load_reduce_input(_read_json(args.input))
    return _json(_nf_json(reduce_to_normal_form(a, args.method)))


def cmd_parameter_equation(args):
    if args.g2_candidate and args.type != "G2":
        raise UsageError("--g2-candidate applies to type G2 only")
    out = {"type": args.type, "rank": args.rank}
    ode = None
    if args.emit in ("scalar", "both") or args.verify:
        ode = expand_parameter_equation(args.type, args.rank)
        out["ode"] = str(ode)
    a = build_parameter_matrix(args.type, args.rank, args.g2_candidate)
    if args.emit in ("matrix", "both"):
        out["matrix"] = _matrix_json(a.matrix)
    if args.verify:
        sign_search = args.type != "A"
        cert = verify_annihilator(a, ode, sign_search=sign_search)
        out["certificate"] = cert.summary()
    if args.emit == "scalar" and not args.verify:
        return out["ode"] + "\n"
    return _json(out)


def cmd_genericity(args):
    a = [_parse_expr(s) for s in _split(args.a)]
    if len(a) != args.rank + 1:
        raise UsageError(f"--a needs {args.rank + 1} comma-separated entries")
    ch = sl_genericity_chain(a, _parse_expr(args.f), _parse_expr(args.g))
    bad = ch.failures()
    return _json({
        "rank": args.rank,
        "A1": _matrix_json(ch.a1),
        "A2": _matrix_json(ch.a2),
        "final": _matrix_json(ch.final.matrix),
        "specialization": [str(f) for f in ch.normal_form.specialization],
        "gauge": ch.gauge.to_json(),
        "certificate_valid": not bad,
        "certificate_failures": bad,
    })


def cmd_mitschi_singer(args):
    try:
        h = [Fraction(s) for s in _split(args.h)]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"--h expects rationals: {e}") from e
    if len(h) != args.rank:
        raise UsageError(f"--h needs {args.rank} entries")
    res = mitschi_singer_reduction(args.type, args.rank, h)
    out = _nf_json(res)
    out["h"] = [str(x) for x in h]
    out["input"] = _matrix_json(res.source.matrix)
    return _json(out)


def cmd_selftest(args):
    from .selftest import run_all
    results = run_all()
    lines = [f"{'PASS' if not bad else 'FAIL'} {name}" + (f" ({len(bad)} failures)" if bad else "")
             for name, bad in results.items()]
    for name, bad in results.items():
        lines += [f"  {name}: {m}" for m in bad[:10]]
    text = "\n".join(lines) + "\n"
    if any(results.values()):
        raise SelftestFailed(text)
    return text


class SelftestFailed(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(prog="lienormal", description=__doc__.splitlines()[0])
    p.add_argument("--output", "-o", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command")

    def typed(sp, types=GROUP_TYPES):
        sp.add_argument("--type", required=True, choices=types)
        sp.add_argument("--rank", required=True, type=int)

    sp = sub.add_parser("roots", help="positive roots, Cartan matrix and Gamma chain")
    typed(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("basis", help="Chevalley basis matrices")
    typed(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("reduce", help="gauge a matrix to normal form with a certificate")
    sp.add_argument("--input", required=True)
    sp.add_argument("--method", choices=["strata", "height"])
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("theorem1", help="scalar parameter equation and parameter matrix")
    typed(sp)
    sp.add_argument("--emit", choices=["scalar", "matrix", "both"], default="scalar")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--g2-candidate", choices=sorted(G2_GAMMA_CANDIDATES))
    sp.set_defaults(func=cmd_parameter_equation)

    sp = sub.add_parser("genericity-demo", help="companion -> SL normal form chain")
    sp.add_argument("--rank", required=True, type=int)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--a", required=True, help="comma-separated a_1, ..., a_{l+1}")
    sp.set_defaults(func=cmd_genericity)

    sp = sub.add_parser("mitschi-singer", help="reduce A_0 + z^2 A_1 to normal form")
    typed(sp)
    sp.add_argument("--h", required=True, help="comma-separated rationals")
    sp.set_defaults(func=cmd_mitschi_singer)

    sp = sub.add_parser("selftest", help="run the invariant suites")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        text = args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"lienormal: error: {e}", file=sys.stderr)
        return 2
    except SelftestFailed as e:
        sys.stdout.write(str(e))
        return 1
    except IOError as e:
        print(f"lienormal: I/O error: {e}", file=sys.stderr)
        return 3
    except LieNormalError as e:
        print(f"lienormal: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            print(f"lienormal: I/O error: {args.output}: {e.strerror or e}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
