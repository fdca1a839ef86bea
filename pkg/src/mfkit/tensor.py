"""Tensor products of matrix factorizations over disjoint variable sets.

For X = (p, q) of f (size n) and Y = (p', q') of g (size m) the product is a
size-2nm factorization of f + g assembled from Kronecker blocks.  Writing
a = p⊗I, b = I⊗p', c = q⊗I, d = I⊗q', the four layouts are

    standard:  P = [[ a,  b], [-d,  c]]     Q = [[ c, -b], [ d,  a]]
    v1:        P = [[ b,  c], [ a, -d]]     Q = [[ d,  c], [ a, -b]]
    v2:        P = [[ c, -d], [ b,  a]]     Q = [[ a,  d], [-b,  c]]
    v3:        P = [[-d,  a], [ c,  b]]     Q = [[-b,  a], [ c,  d]]

All four are valid and pairwise distinct; v1/v2/v3 also arise from the
standard pair by rotating P's blocks anticlockwise and Q's clockwise once,
twice, three times (a property test pins that down).

Variables of the two factors must be disjoint; ``rename_vars`` makes them so
(injectively), while ``identify_vars`` substitutes non-injectively and is
the gluing step used by the unitor construction.
"""

from __future__ import annotations

import enum

from . import matrices as mx
from .matfac import (
    MatrixFactorization,
    Morphism,
    make_factorization,
    make_morphism,
)
from .poly import Polynomial, Variable


class VariableOverlap(ValueError):
    pass


class NonInjectiveRename(ValueError):
    pass


class Variant(enum.Enum):
    STANDARD = "standard"
    V1 = "v1"
    V2 = "v2"
    V3 = "v3"

    @classmethod
    def from_str(cls, s: str) -> "Variant":
        for v in cls:
            if v.value == s:
                return v
        raise ValueError(f"unknown variant {s!r}; expected one of "
                         f"{[v.value for v in cls]}")


VariantTag = Variant


def _require_disjoint(x: MatrixFactorization, y: MatrixFactorization) -> None:
    shared = set(x.vars) & set(y.vars)
    if shared:
        raise VariableOverlap(
            "variable sets overlap: " + ", ".join(str(v) for v in sorted(shared))
        )


def _kron_blocks(x: MatrixFactorization, y: MatrixFactorization):
    i_n = mx.identity(x.size)
    i_m = mx.identity(y.size)
    a = mx.kron(x.p, i_m)
    b = mx.kron(i_n, y.p)
    c = mx.kron(x.q, i_m)
    d = mx.kron(i_n, y.q)
    return a, b, c, d


def _layout(variant: Variant, a, b, c, d):
    n = mx.neg
    if variant is Variant.STANDARD:
        return [[a, b], [n(d), c]], [[c, n(b)], [d, a]]
    if variant is Variant.V1:
        return [[b, c], [a, n(d)]], [[d, c], [a, n(b)]]
    if variant is Variant.V2:
        return [[c, n(d)], [b, a]], [[a, d], [n(b), c]]
    if variant is Variant.V3:
        return [[n(d), a], [c, b]], [[n(b), a], [c, d]]
    raise ValueError(f"unknown variant {variant!r}")


def yoshino(
    x: MatrixFactorization,
    y: MatrixFactorization,
    variant: Variant = Variant.STANDARD,
) -> MatrixFactorization:
    """The tensor product factorization of f + g in the chosen layout."""
    _require_disjoint(x, y)
    p_blocks, q_blocks = _layout(variant, *_kron_blocks(x, y))
    return make_factorization(
        mx.block(p_blocks),
        mx.block(q_blocks),
        x.potential + y.potential,
        extra_vars=x.vars + y.vars,
    )


def graded_tensor_differential(
    x: MatrixFactorization,
    y: MatrixFactorization,
    variant: Variant = Variant.STANDARD,
) -> tuple:
    """(D0, D1) blocks of the product differential; D1*D0 = D0*D1 = (f+g)*I."""
    z = yoshino(x, y, variant)
    return (z.p, z.q)


def tensor_morphisms(b: Morphism, a: Morphism) -> Morphism:
    """Tensor of morphisms on standard products: yoshino(a.*, b.*).

    Note the argument order: ``a`` lives over the first factor's potential f,
    ``b`` over the second's g.  Both morphisms are even, so the blocks
    Kronecker together without auxiliary signs:

        alpha = diag(alpha_a ⊗ beta_b,  beta_a ⊗ alpha_b)
        beta  = diag(beta_a  ⊗ beta_b,  alpha_a ⊗ alpha_b)
    """
    for xa in (a.source, a.target):
        for xb in (b.source, b.target):
            _require_disjoint(xa, xb)
    src = yoshino(a.source, b.source)
    tgt = yoshino(a.target, b.target)
    z_r = mx.zeros(a.target.size * b.target.size, a.source.size * b.source.size)
    alpha = mx.block([
        [mx.kron(a.alpha, b.beta), z_r],
        [z_r, mx.kron(a.beta, b.alpha)],
    ])
    beta = mx.block([
        [mx.kron(a.beta, b.beta), z_r],
        [z_r, mx.kron(a.alpha, b.alpha)],
    ])
    return make_morphism(alpha, beta, src, tgt)


def _substituted(x: MatrixFactorization, var_map, declared) -> MatrixFactorization:
    poly_map = {v: Polynomial.var(w) for v, w in var_map.items()}
    return make_factorization(
        mx.subs_matrix(x.p, poly_map),
        mx.subs_matrix(x.q, poly_map),
        x.potential.substitute(poly_map),
        extra_vars=declared,
    )


def rename_vars(x: MatrixFactorization, var_map) -> MatrixFactorization:
    """Injective variable renaming; potential renames along."""
    for v, w in var_map.items():
        if not isinstance(v, Variable) or not isinstance(w, Variable):
            raise TypeError("rename map must send Variable to Variable")
    total = {v: var_map.get(v, v) for v in x.vars}
    image = list(total.values())
    if len(set(image)) != len(image):
        raise NonInjectiveRename("rename map collides on the registry")
    return _substituted(x, var_map, tuple(sorted(set(image))))


def identify_vars(x: MatrixFactorization, var_map) -> MatrixFactorization:
    """Non-injective identification (gluing); always validates, because
    substitution is a ring map applied to both products."""
    for v, w in var_map.items():
        if not isinstance(v, Variable) or not isinstance(w, Variable):
            raise TypeError("identification map must send Variable to Variable")
    total = {v: var_map.get(v, v) for v in x.vars}
    return _substituted(x, var_map, tuple(sorted(set(total.values()))))
