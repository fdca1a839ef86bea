"""Matrix factorizations of a polynomial potential, and their morphisms.

A factorization of f is a pair (p, q) of n x n polynomial matrices with

    p * q == q * p == f * I_n

where p is read as the even-to-odd map and q as the odd-to-even map of the
Z2-graded differential.  Construction is eager: `make_factorization` refuses
anything whose products do not come out exactly, reporting the first
offending entry and its residual.

A morphism (alpha, beta): X -> Y consists of an even block alpha and an odd
block beta satisfying the two squares

    beta * p_X == p_Y * alpha        (even sources)
    alpha * q_X == q_Y * beta        (odd sources)

`Morphism(...)` itself only checks shapes and potentials, so invalid pairs
can be built and inspected; `make_morphism` additionally requires both
squares and is what the library uses internally.  Over a nonzero potential
either square implies the other; `morphism_equivalence_check` evaluates both
independently on raw matrix pairs so that property can be tested.

The JSON file format lives here too: canonical, byte-stable output --
`serialize(parse(serialize(x)))` is the identity on bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import matrices as mx
from .poly import Polynomial, Variable, as_poly, parse_poly, poly_to_str


class NotAFactorization(ValueError):
    """A matrix pair whose product misses potential * I."""

    def __init__(self, which: str, row: int, col: int, residual: Polynomial):
        self.which = which
        self.row = row
        self.col = col
        self.residual = residual
        super().__init__(
            f"({which})[{row}][{col}] deviates from the potential by {residual}"
        )


class PotentialMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NotAMorphism(ValueError):
    """Raised by make_morphism when a commuting square fails."""

    def __init__(self, report: "MorphismReport"):
        self.report = report
        super().__init__(report.describe())


@dataclass(frozen=True)
class MatrixFactorization:
    p: tuple  # even -> odd
    q: tuple  # odd -> even
    potential: Polynomial
    size: int
    vars: tuple  # declared registry, sorted Variables

    def __repr__(self) -> str:
        return (
            f"<MatrixFactorization size={self.size} potential={self.potential}>"
        )


def _collect_vars(mats, potential, extra):
    vs = set(extra or ())
    vs.update(potential.vars)
    for m in mats:
        for row in m:
            for e in row:
                vs.update(e.vars)
    return tuple(sorted(vs))


def _check_product(name: str, prod, potential: Polynomial, n: int) -> None:
    for i in range(n):
        for j in range(n):
            expected = potential if i == j else Polynomial.zero()
            residual = prod[i][j] - expected
            if residual:
                raise NotAFactorization(name, i, j, residual)


def make_factorization(p, q, potential, extra_vars=None) -> MatrixFactorization:
    """Validate and build: p*q == q*p == potential*I, exactly.

    ``extra_vars`` may declare registry variables that do not occur in any
    entry (a zero block keeps its variables declared this way).
    """
    p = mx.from_rows(p)
    q = mx.from_rows(q)
    potential = as_poly(potential)
    n = len(p)
    if n == 0:
        raise ShapeMismatch("empty matrix")
    if mx.shape(p) != (n, n) or mx.shape(q) != (n, n):
        raise ShapeMismatch(
            f"expected square matrices of equal size, got {mx.shape(p)} and {mx.shape(q)}"
        )
    _check_product("P*Q", mx.mul(p, q), potential, n)
    _check_product("Q*P", mx.mul(q, p), potential, n)
    vars_all = _collect_vars((p, q), potential, extra_vars)
    return MatrixFactorization(p=p, q=q, potential=potential, size=n, vars=vars_all)


def direct_sum(x: MatrixFactorization, y: MatrixFactorization) -> MatrixFactorization:
    if x.potential != y.potential:
        raise PotentialMismatch(
            f"potentials differ: {x.potential} vs {y.potential}"
        )
    zl = mx.zeros(x.size, y.size)
    zr = mx.zeros(y.size, x.size)
    p = mx.block([[x.p, zl], [zr, y.p]])
    q = mx.block([[x.q, zl], [zr, y.q]])
    return make_factorization(p, q, x.potential, extra_vars=x.vars + y.vars)


@dataclass(frozen=True)
class Morphism:
    """A pair of blocks between factorizations; shapes checked at creation.

    The commuting squares are *not* enforced here -- see make_morphism and
    validate_morphism -- so that failing candidates can be examined.
    """

    alpha: tuple  # even block, target.size x source.size
    beta: tuple   # odd block, same shape
    source: MatrixFactorization
    target: MatrixFactorization

    def __post_init__(self):
        object.__setattr__(self, "alpha", mx.from_rows(self.alpha))
        object.__setattr__(self, "beta", mx.from_rows(self.beta))
        want = (self.target.size, self.source.size)
        if mx.shape(self.alpha) != want or mx.shape(self.beta) != want:
            raise ShapeMismatch(
                f"morphism blocks must be {want}, got "
                f"{mx.shape(self.alpha)} and {mx.shape(self.beta)}"
            )
        if self.source.potential != self.target.potential:
            raise PotentialMismatch(
                f"potentials differ: {self.source.potential} vs {self.target.potential}"
            )


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    eq1_residual: tuple  # beta*p_X - p_Y*alpha
    eq2_residual: tuple  # alpha*q_X - q_Y*beta

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        bits = []
        for name, res in (("even square", self.eq1_residual),
                          ("odd square", self.eq2_residual)):
            hit = mx.first_nonzero(res)
            if hit:
                i, j, e = hit
                bits.append(f"{name} residual at [{i}][{j}]: {e}")
        return "; ".join(bits) or "ok"


def validate_morphism(m: Morphism) -> MorphismReport:
    """Check both commuting squares exactly; residual matrices on failure."""
    x, y = m.source, m.target
    eq1 = mx.sub(mx.mul(m.beta, x.p), mx.mul(y.p, m.alpha))
    eq2 = mx.sub(mx.mul(m.alpha, x.q), mx.mul(y.q, m.beta))
    return MorphismReport(
        ok=mx.is_zero(eq1) and mx.is_zero(eq2),
        eq1_residual=eq1,
        eq2_residual=eq2,
    )


def make_morphism(alpha, beta, source, target) -> Morphism:
    """Construct a morphism and insist both squares hold."""
    m = Morphism(alpha=alpha, beta=beta, source=source, target=target)
    report = validate_morphism(m)
    if not report.ok:
        raise NotAMorphism(report)
    return m


def identity_morphism(x: MatrixFactorization) -> Morphism:
    i = mx.identity(x.size)
    return Morphism(alpha=i, beta=i, source=x, target=x)


def zero_morphism(x: MatrixFactorization, y: MatrixFactorization = None) -> Morphism:
    y = x if y is None else y
    z = mx.zeros(y.size, x.size)
    return Morphism(alpha=z, beta=z, source=x, target=y)


def scalar_morphism(c, x: MatrixFactorization) -> Morphism:
    """c * id as a morphism X -> X (polynomial scalars are central)."""
    m = mx.scalar_matrix(x.size, c)
    return Morphism(alpha=m, beta=m, source=x, target=x)


def compose_morphisms(g: Morphism, f: Morphism) -> Morphism:
    """g after f: blocks multiply; the result is validated."""
    if f.target != g.source:
        raise ShapeMismatch("inner factorizations do not match")
    return make_morphism(
        alpha=mx.mul(g.alpha, f.alpha),
        beta=mx.mul(g.beta, f.beta),
        source=f.source,
        target=g.target,
    )


def morphism_equivalence_check(x, y, g0, g1) -> tuple:
    """Evaluate the two defining squares independently for a raw block pair.

    Returns (eq1, eq2) where eq1: g1*p_X == p_Y*g0 and eq2: g0*q_X == q_Y*g1.
    """
    g0 = mx.from_rows(g0)
    g1 = mx.from_rows(g1)
    want = (y.size, x.size)
    if mx.shape(g0) != want or mx.shape(g1) != want:
        raise ShapeMismatch(f"blocks must be {want}")
    eq1 = mx.eq(mx.mul(g1, x.p), mx.mul(y.p, g0))
    eq2 = mx.eq(mx.mul(g0, x.q), mx.mul(y.q, g1))
    return (eq1, eq2)


# -- file format -----------------------------------------------------------

def _base_names(vars_t) -> list:
    return sorted({v.name for v in vars_t})


def serialize_factorization(x: MatrixFactorization) -> str:
    """Canonical JSON text; stable down to the byte."""
    doc = {
        "vars": _base_names(x.vars),
        "potential": poly_to_str(x.potential),
        "P": [[poly_to_str(e) for e in row] for row in x.p],
        "Q": [[poly_to_str(e) for e in row] for row in x.q],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_factorization(text: str) -> MatrixFactorization:
    """Parse the JSON document and validate the factorization it describes."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ValueError("top-level JSON value must be an object")
    missing = {"vars", "potential", "P", "Q"} - doc.keys()
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    extra = doc.keys() - {"vars", "potential", "P", "Q"}
    if extra:
        raise ValueError(f"unknown keys: {sorted(extra)}")
    names = doc["vars"]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise ValueError("'vars' must be a list of variable names")
    registry = list(names)

    def parse_matrix(rows, label):
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError(f"'{label}' must be a list of rows")
        return [
            [parse_poly(e, registry) for e in row] for row in rows
        ]

    potential = parse_poly(doc["potential"], registry)
    p = parse_matrix(doc["P"], "P")
    q = parse_matrix(doc["Q"], "Q")
    declared = tuple(Variable(n) for n in names)
    return make_factorization(p, q, potential, extra_vars=declared)
