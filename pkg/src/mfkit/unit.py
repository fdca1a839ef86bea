"""Koszul unit factorizations and the unitor morphisms rho / psi.

The unit factorization of f in variables x_1..x_n doubles the variables and
acts on the exterior algebra over n generators: the differential is

    d = sum_i [(x_i - x_i') t_i^* + d_i(f) t_i wedge]

(see `exterior.koszul_diff`); reading off matrices in the subset bases
ordered by (length, lex) -- empty word first -- gives a factorization of
f(x) - f(x') with block rank 2^(n-1).

The right unitor for X (a factorization of g(z) - f(x)) is built by gluing
that unit onto X:

1.  rename the unit's unprimed variables to fresh middles, take the standard
    tensor product with X, then identify middle -> x and x' -> x (the
    "collapse"); the potential returns to g - f;
2.  swap the two matrices of the collapsed pair (a grading shift), so that
    the X tensor empty-word slice sits in the even half.  The even part is
    then [X^1*D^1 | X^0*D^0] and the odd part [X^0*D^1 | X^1*D^0], where
    D^0/D^1 are the unit's parities;
3.  rho projects the second chunks onto the empty-word coordinate -- a chain
    map because the collapsed unit differential has no output along the
    empty word (contraction coefficients die on the diagonal, wedge raises
    word length);
4.  psi embeds X on the empty-word coordinate and corrects with components
    against the nonempty words.  The component C_W at word W for input
    X-parity eps is built recursively from C_empty = identity:

        C_W = (1/|W|) * sum_{i in W}
              s * (-1)^(eps+|W|-1) * sgn(i, W-i) * d_i(D) * C_{W-i}

    where s = -1 (right side) or +1 (left side), d_i(D) is the entrywise
    partial derivative of p_X or q_X (whichever maps the intermediate
    parity), and sgn is the wedge insertion sign.  This is the terminating
    exponential series of the operator sum_i d_i(d_X) t_i wedge; it reduces
    to the bare embedding exactly when the glued potential-side derivatives
    all vanish (constant f).

Even words contribute to the X-parity-preserving chunks, odd words to the
parity-swapping ones.  Both rho and psi are validated eagerly, and
rho . psi = id is asserted before a bundle is returned.  The left unitor
mirrors the construction with the unit taken in the z-variables and glued
along z' -> z, then middle -> z; the correction sign flips because the
z-derivative of the potential has the opposite sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matrices as mx
from .exterior import ExtElement, even_words, koszul_diff, odd_words, theta_words
from .matfac import (
    MatrixFactorization,
    Morphism,
    compose_morphisms,
    identity_morphism,
    make_factorization,
    make_morphism,
)
from .poly import Polynomial, Variable, derivative, substitute, unprimed_vars
from .tensor import Variant, identify_vars, rename_vars, yoshino


@dataclass(frozen=True)
class UnitFactorization:
    """The unit factorization of f together with its basis bookkeeping."""

    mf: MatrixFactorization
    n: int
    basis_even: tuple  # even-length words, (length, lex) order, () first
    basis_odd: tuple
    f: Polynomial
    xvars: tuple

    @property
    def rank(self) -> int:
        return len(self.basis_even)


def koszul_unit(f: Polynomial, xvars=None) -> UnitFactorization:
    """Matrices of the unit differential of f over doubled variables."""
    xs = tuple(xvars) if xvars is not None else unprimed_vars(f)
    n = len(xs)
    if n < 1:
        raise ValueError("need at least one variable (pass xvars for constants)")
    if len(set(xs)) != n:
        raise ValueError("duplicate variables")
    if any(v.prime_level != 0 for v in xs):
        raise ValueError("unit variables must be unprimed")
    if not set(f.vars) <= set(xs):
        raise ValueError("potential uses variables outside the given list")
    ev = tuple(even_words(n))
    od = tuple(odd_words(n))

    def column(word, out_words):
        image = koszul_diff(f, ExtElement.word(n, word), xs)
        return [image.coeff(w) for w in out_words]

    # p: even -> odd (columns = images of even basis words)
    p_cols = [column(w, od) for w in ev]
    q_cols = [column(w, ev) for w in od]
    p = [[p_cols[j][i] for j in range(len(ev))] for i in range(len(od))]
    q = [[q_cols[j][i] for j in range(len(od))] for i in range(len(ev))]
    primed = tuple(v.primed() for v in xs)
    potential = f - substitute(f, {v: Polynomial.var(v.primed()) for v in xs})
    mf = make_factorization(p, q, potential, extra_vars=xs + primed)
    return UnitFactorization(
        mf=mf, n=n, basis_even=ev, basis_odd=od, f=f, xvars=xs
    )


def pi_row(u: UnitFactorization) -> tuple:
    """The 1 x 2^(n-1) row picking the empty-word coordinate."""
    return mx.from_rows([[1] + [0] * (u.rank - 1)])


@dataclass(frozen=True)
class UnitorBundle:
    """Collapsed product Z with the projection rho and its right inverse psi.

    Invariants (asserted at construction): rho and psi are valid morphisms
    and rho . psi is the identity on X.  psi . rho is *not* the identity --
    it kills every coordinate outside the image slice -- which is the
    homotopy module's business.
    """

    z: MatrixFactorization
    rho: Morphism
    psi: Morphism
    side: str
    unit: UnitFactorization


def _fresh_middles(taken_names, fvars):
    mids = []
    taken = set(taken_names)
    for v in fvars:
        name = v.name + "_mid"
        while name in taken:
            name += "_"
        taken.add(name)
        mids.append(Variable(name))
    return tuple(mids)


def _correction_components(x: MatrixFactorization, gen_vars, sign: int):
    """C[(word, eps)] per the recursion in the module docstring."""
    n = len(gen_vars)
    r = x.size
    dp = [mx.map_entries(lambda e, v=v: derivative(e, v), x.p) for v in gen_vars]
    dq = [mx.map_entries(lambda e, v=v: derivative(e, v), x.q) for v in gen_vars]
    comp = {((), 0): mx.identity(r), ((), 1): mx.identity(r)}
    for word in theta_words(n):
        k = len(word)
        if k == 0:
            continue
        for eps in (0, 1):
            acc = mx.zeros(r, r)
            for i in word:
                rest = tuple(j for j in word if j != i)
                below = sum(1 for j in rest if j < i)
                insert_sign = -1 if below % 2 else 1
                mid_parity = (eps + k - 1) % 2
                d_block = dp[i - 1] if mid_parity == 0 else dq[i - 1]
                factor = sign * (1 if mid_parity == 0 else -1) * insert_sign
                term = mx.scale(mx.mul(d_block, comp[(rest, eps)]), Fraction(factor, k))
                acc = mx.add(acc, term)
            comp[(word, eps)] = acc
    return comp


def _psi_chunk(comp, words, eps: int, r: int, m: int):
    """Stack components against the given word basis into an rm x r block."""
    acc = mx.zeros(r * m, r)
    for wi, w in enumerate(words):
        c = comp[(w, eps)]
        if mx.is_zero(c):
            continue
        e_col = tuple((Polynomial.const(1),) if i == wi else (Polynomial.zero(),)
                      for i in range(m))
        acc = mx.add(acc, mx.kron(c, e_col))
    return acc


def _build_bundle(x: MatrixFactorization, f: Polynomial, fvars, side: str):
    fvars = tuple(fvars) if fvars is not None else unprimed_vars(f)
    unit = koszul_unit(f, fvars)
    n, m, r = unit.n, unit.rank, x.size

    taken = {v.name for v in x.vars} | {v.name for v in unit.mf.vars}
    mids = _fresh_middles(taken, fvars)
    delta_mid = rename_vars(unit.mf, dict(zip(fvars, mids)))

    z0 = yoshino(x, delta_mid, Variant.STANDARD)
    mid_to_x = dict(zip(mids, fvars))
    primed_to_x = {v.primed(): v for v in fvars}
    if side == "right":
        z1 = identify_vars(z0, mid_to_x)      # glue the unit's target slot
        z2 = identify_vars(z1, primed_to_x)   # collapse the leftover copy
    else:
        z1 = identify_vars(z0, primed_to_x)   # glue the unit's source slot
        z2 = identify_vars(z1, mid_to_x)
    # Grading shift: swap the two matrices so the empty-word slice is even.
    z = make_factorization(z2.q, z2.p, z2.potential, extra_vars=z2.vars)

    e_row = mx.from_rows([[1] + [0] * (m - 1)])
    proj = mx.block([[mx.zeros(r, r * m), mx.kron(mx.identity(r), e_row)]])
    rho = make_morphism(alpha=proj, beta=proj, source=z, target=x)

    comp = _correction_components(x, fvars, -1 if side == "right" else 1)
    alpha_psi = mx.block([
        [_psi_chunk(comp, unit.basis_odd, 0, r, m)],
        [_psi_chunk(comp, unit.basis_even, 0, r, m)],
    ])
    beta_psi = mx.block([
        [_psi_chunk(comp, unit.basis_odd, 1, r, m)],
        [_psi_chunk(comp, unit.basis_even, 1, r, m)],
    ])
    psi = make_morphism(alpha=alpha_psi, beta=beta_psi, source=x, target=z)

    round_trip = compose_morphisms(rho, psi)
    ident = identity_morphism(x)
    if not (mx.eq(round_trip.alpha, ident.alpha) and mx.eq(round_trip.beta, ident.beta)):
        raise RuntimeError("unitor invariant failed: rho . psi is not the identity")
    return UnitorBundle(z=z, rho=rho, psi=psi, side=side, unit=unit)


def unitor_right(x: MatrixFactorization, f: Polynomial, fvars=None) -> UnitorBundle:
    """Unit glued on the f side of X (a factorization of g - f)."""
    return _build_bundle(x, f, fvars, "right")


def unitor_left(x: MatrixFactorization, g: Polynomial, gvars=None) -> UnitorBundle:
    """Unit glued on the g side of X (a factorization of g - f)."""
    return _build_bundle(x, g, gvars, "left")


@dataclass(frozen=True)
class NaturalityReport:
    ok: bool
    alpha_residual: tuple
    beta_residual: tuple

    def __bool__(self) -> bool:
        return self.ok


def naturality_check(p: Morphism, f: Polynomial, fvars=None) -> NaturalityReport:
    """Does rho commute with p: rho_Y . (p tensor id) == p . rho_X ?

    Builds the right-unitor bundles of p's source and target, forms the
    tensored morphism on the collapsed products (block-diagonal Kronecker
    blocks, swapped to the shifted layout), and compares both composites.
    """
    bx = unitor_right(p.source, f, fvars)
    by = unitor_right(p.target, f, fvars)
    m = bx.unit.rank
    i_m = mx.identity(m)
    z_off = mx.zeros(p.target.size * m, p.source.size * m)
    p_tensor_id = make_morphism(
        alpha=mx.block([
            [mx.kron(p.beta, i_m), z_off],
            [z_off, mx.kron(p.alpha, i_m)],
        ]),
        beta=mx.block([
            [mx.kron(p.alpha, i_m), z_off],
            [z_off, mx.kron(p.beta, i_m)],
        ]),
        source=bx.z,
        target=by.z,
    )
    left = compose_morphisms(by.rho, p_tensor_id)
    right = compose_morphisms(p, bx.rho)
    return NaturalityReport(
        ok=mx.eq(left.alpha, right.alpha) and mx.eq(left.beta, right.beta),
        alpha_residual=mx.sub(left.alpha, right.alpha),
        beta_residual=mx.sub(left.beta, right.beta),
    )
