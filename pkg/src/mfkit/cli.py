"""Command-line interface.

Subcommands: validate | tensor | unit | unitor | homotopy | demo | print.
Exit codes: 0 when every check passes, 1 when a mathematical check fails
(residual diagnostics on stderr), 2 on usage, parse, or IO errors.  Results
go to stdout, diagnostics to stderr.  Factorizations travel as the JSON
documents of `matfac.serialize_factorization`; polynomials on flags use the
expression grammar of `poly.parse_poly`.
"""

from __future__ import annotations

import argparse
import sys

from . import matrices as mx
from .exterior import ExtElement, contract
from .homotopy import (
    HomotopyWitness,
    NotFoundWithinDegree,
    check_witness,
    find_witness,
)
from .matfac import (
    NotAFactorization,
    NotAMorphism,
    compose_morphisms,
    identity_morphism,
    make_factorization,
    parse_factorization,
    scalar_morphism,
    serialize_factorization,
    validate_morphism,
    zero_morphism,
)
from .poly import Polynomial, Variable, parse_poly, poly_to_str
from .tensor import Variant, yoshino
from .unit import koszul_unit, unitor_left, unitor_right


class _MathFailure(Exception):
    """A check that ran and came out false (exit code 1)."""


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e}") from e
    return parse_factorization(text)


def _emit(x, output, summary: str) -> None:
    text = serialize_factorization(x)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {output} ({summary})")
    else:
        sys.stdout.write(text)


def _matrix_lines(label: str, m) -> list:
    cells = [[poly_to_str(e) for e in row] for row in m]
    lines = [f"{label}:"]
    if not cells:
        return lines + ["  []"]
    widths = [
        max(len(cells[i][j]) for i in range(len(cells)))
        for j in range(len(cells[0]))
    ]
    for row in cells:
        lines.append(
            "  [ " + "   ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]"
        )
    return lines


# -- subcommands -----------------------------------------------------------

def _cmd_validate(args) -> int:
    failures = 0
    for path in args.files:
        try:
            x = _load(path)
        except NotAFactorization as e:
            print(f"{path}: FAIL - {e}", file=sys.stderr)
            failures += 1
            continue
        print(f"{path}: ok (size {x.size}, potential {x.potential})")
    return 1 if failures else 0


def _cmd_tensor(args) -> int:
    a = _load(args.a)
    b = _load(args.b)
    z = yoshino(a, b, Variant.from_str(args.variant))
    _emit(z, args.output, f"size {z.size}, potential {z.potential}")
    return 0


def _split_names(raw: str) -> list:
    return [s.strip() for s in raw.split(",") if s.strip()]


def _cmd_unit(args) -> int:
    names = _split_names(args.vars)
    if not names:
        raise ValueError("--vars must list at least one variable")
    f = parse_poly(args.potential, names)
    u = koszul_unit(f, tuple(Variable(n) for n in names))
    _emit(
        u.mf,
        args.output,
        f"block rank {u.rank}, potential {u.mf.potential}",
    )
    return 0


def _parse_var_split(raw: str):
    parts = raw.split(":")
    if len(parts) != 2:
        raise ValueError("--var-split must look like 'x,y:z' (f-side : g-side)")
    return _split_names(parts[0]), _split_names(parts[1])


def _cmd_unitor(args) -> int:
    x = _load(args.file)
    fside, gside = _parse_var_split(args.var_split)
    names = fside if args.side == "right" else gside
    if not names:
        raise ValueError(f"--var-split gives no variables for side {args.side!r}")
    pot = parse_poly(args.potential, names)
    pvars = tuple(Variable(n) for n in names)
    if args.side == "right":
        bundle = unitor_right(x, pot, pvars)
    else:
        bundle = unitor_left(x, pot, pvars)
    # rho . psi = id was asserted during construction; probe psi . rho.
    pr = compose_morphisms(bundle.psi, bundle.rho)
    ident = identity_morphism(bundle.z)
    if mx.eq(pr.alpha, ident.alpha) and mx.eq(pr.beta, ident.beta):
        print("rho∘psi = id: PASS; psi∘rho = id: PASS (unexpected)")
        raise _MathFailure("psi∘rho unexpectedly equals the identity")
    print("rho∘psi = id: PASS; psi∘rho = id: FAIL (expected)")
    print(
        f"collapsed product: size {bundle.z.size}, potential {bundle.z.potential}"
    )
    return 0


def _morphism_from_spec(spec: str, x, y):
    if spec == "zero":
        m = zero_morphism(x, y)
    elif spec == "id":
        if x != y:
            raise ValueError("'id' needs identical source and target")
        m = identity_morphism(x)
    elif spec.startswith("scalar:"):
        if x != y:
            raise ValueError("'scalar:' needs identical source and target")
        names = sorted({v.name for v in x.vars} | {v.name for v in y.vars})
        c = parse_poly(spec[len("scalar:"):], names)
        m = scalar_morphism(c, x)
    else:
        raise ValueError(
            f"bad morphism spec {spec!r}; use zero | id | scalar:<poly>"
        )
    report = validate_morphism(m)
    if not report.ok:
        raise _MathFailure(f"morphism {spec!r} is not valid: {report.describe()}")
    return m


def _cmd_homotopy(args) -> int:
    x = _load(args.file)
    y = _load(args.second) if args.second else x
    phi = _morphism_from_spec(args.phi, x, y)
    psi = _morphism_from_spec(args.psi, x, y)
    try:
        w = find_witness(x, y, phi, psi, args.max_degree)
    except NotFoundWithinDegree as e:
        raise _MathFailure(str(e)) from e
    print(f"witness found (entry degree <= {w.max_degree}); re-check: ok")
    for line in _matrix_lines("lambda0", w.lambda0):
        print(line)
    for line in _matrix_lines("lambda1", w.lambda1):
        print(line)
    return 0


def _cmd_print(args) -> int:
    x = _load(args.file)
    print(f"size: {x.size}")
    print("vars: " + ", ".join(str(v) for v in x.vars))
    print(f"potential: {x.potential}")
    for line in _matrix_lines("P", x.p):
        print(line)
    for line in _matrix_lines("Q", x.q):
        print(line)
    return 0


# -- demo ------------------------------------------------------------------

def _demo_checks() -> list:
    xv, yv, zv = Variable("x"), Variable("y"), Variable("z")
    px, py, pz = (Polynomial.var(v) for v in (xv, yv, zv))

    def m_square():
        m = [[0, px], [px ** 2, 0]]
        make_factorization(m, m, px ** 3)
        return True

    def rank_one_cube():
        make_factorization([[1]], [[px ** 3]], px ** 3)
        return True

    def m_q():
        for n, q in ((3, 1), (5, 2), (7, 3)):
            m = [[0, px ** q], [px ** (n - q), 0]]
            make_factorization(m, m, px ** n)
        return True

    f_xy = px - py

    def dq_first():
        from .poly import diff_quotient
        return diff_quotient(f_xy, 1, (xv, yv)) == 1

    def dq_second():
        from .poly import diff_quotient
        return diff_quotient(f_xy, 2, (xv, yv)) == -1

    def theta_contraction():
        got = contract(4, ExtElement.word(7, (2, 4, 7)))
        return got == ExtElement(7, {(2, 7): -1})

    def delta_x():
        u = koszul_unit(px)
        xp = Polynomial.var(xv.primed())
        return u.mf.p == mx.from_rows([[1]]) and u.mf.q == mx.from_rows(
            [[px - xp]]
        )

    def delta_x_minus_y():
        u = koszul_unit(f_xy)
        dx = px - Polynomial.var(xv.primed())
        dy = py - Polynomial.var(yv.primed())
        want_p = mx.from_rows([[1, -dy], [-1, dx]])
        want_q = mx.from_rows([[dx, dy], [1, 1]])
        return u.mf.p == want_p and u.mf.q == want_q and u.rank == 2

    def four_variants():
        a = make_factorization([[1]], [[px]], px)
        b = make_factorization([[1]], [[py]], py)
        results = [yoshino(a, b, v) for v in Variant]
        for i in range(len(results)):
            for j in range(i + 1, len(results)):
                if results[i].p == results[j].p and results[i].q == results[j].q:
                    return False
        return all(r.size == 2 for r in results)

    def unitor_assertions():
        x = make_factorization([[1]], [[pz - px]], pz - px)
        bundle = unitor_right(x, px, (xv,))
        pr = compose_morphisms(bundle.psi, bundle.rho)
        ident = identity_morphism(bundle.z)
        return not (
            mx.eq(pr.alpha, ident.alpha) and mx.eq(pr.beta, ident.beta)
        )

    def zero_witness():
        x = make_factorization([[1]], [[pz - px]], pz - px)
        bundle = unitor_right(x, px, (xv,))
        round_trip = compose_morphisms(bundle.rho, bundle.psi)
        w = HomotopyWitness(
            lambda0=mx.zeros(1, 1), lambda1=mx.zeros(1, 1), max_degree=0
        )
        report = check_witness(x, x, round_trip, identity_morphism(x), w)
        return report.ok

    return [
        ("matrix pair [[0,x],[x^2,0]] with itself factors x^3", m_square),
        ("rank-one pair ([1],[x^3]) factors x^3", rank_one_cube),
        ("anti-diagonal pairs factor x^n at (3,1), (5,2), (7,3)", m_q),
        ("first difference quotient of x - y is 1", dq_first),
        ("second difference quotient of x - y is -1", dq_second),
        ("contraction t4* of t2^t4^t7 is -t2^t7", theta_contraction),
        ("unit factorization of x is ([1], [x - x'])", delta_x),
        ("unit factorization of x - y has the expected 2x2 blocks", delta_x_minus_y),
        ("four tensor layouts of ([1],[x]), ([1],[y]) are valid and distinct", four_variants),
        ("unitor: rho∘psi = id while psi∘rho != id", unitor_assertions),
        ("zero witness certifies rho∘psi ~ id", zero_witness),
    ]


def _cmd_demo(args) -> int:
    failures = 0
    for name, fn in _demo_checks():
        try:
            ok = fn()
            detail = ""
        except Exception as e:  # a demo check must never crash the runner
            ok = False
            detail = f" ({type(e).__name__}: {e})"
        if ok:
            print(f"ok   {name}")
        else:
            failures += 1
            print(f"FAIL {name}", file=sys.stderr)
            if detail:
                print(f"     {detail.strip()}", file=sys.stderr)
    total = len(_demo_checks())
    print(f"{total - failures}/{total} checks passed")
    return 1 if failures else 0


# -- wiring ----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mfkit",
        description="exact matrix factorizations: build, combine, verify",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("validate", help="validate factorization files")
    v.add_argument("files", nargs="+")
    v.set_defaults(func=_cmd_validate)

    t = sub.add_parser("tensor", help="tensor product of two factorizations")
    t.add_argument("--variant", choices=[x.value for x in Variant],
                   default="standard")
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("-o", "--output")
    t.set_defaults(func=_cmd_tensor)

    u = sub.add_parser("unit", help="unit factorization of a potential")
    u.add_argument("--potential", required=True)
    u.add_argument("--vars", required=True,
                   help="comma-separated generator variables, in order")
    u.add_argument("-o", "--output")
    u.set_defaults(func=_cmd_unit)

    un = sub.add_parser("unitor", help="unitor bundle and its assertions")
    un.add_argument("file")
    un.add_argument("--side", choices=["right", "left"], default="right")
    un.add_argument("--potential", required=True,
                    help="f for --side right, g for --side left")
    un.add_argument("--var-split", required=True, dest="var_split",
                    help="f-side:g-side variable names, e.g. x,y:z")
    un.set_defaults(func=_cmd_unitor)

    h = sub.add_parser("homotopy", help="search for a homotopy witness")
    h.add_argument("file")
    h.add_argument("second", nargs="?",
                   help="target factorization (defaults to the first file)")
    h.add_argument("--phi", required=True,
                   help="morphism spec: zero | id | scalar:<poly>")
    h.add_argument("--psi", required=True)
    h.add_argument("--max-degree", required=True, type=int, dest="max_degree")
    h.set_defaults(func=_cmd_homotopy)

    d = sub.add_parser("demo", help="replay the worked examples")
    d.add_argument("topic", choices=["paper"])
    d.set_defaults(func=_cmd_demo)

    pr = sub.add_parser("print", help="human-readable rendering of a file")
    pr.add_argument("file")
    pr.set_defaults(func=_cmd_print)

    return p


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return 0 if code == 0 else 2
    try:
        return args.func(args)
    except _MathFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except (NotAFactorization, NotAMorphism) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except NotFoundWithinDegree as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except RuntimeError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
