import random
from fractions import Fraction

import pytest

from mfkit import matrices as mx
from mfkit.homotopy import (
    HomotopyWitness,
    NotFoundWithinDegree,
    check_witness,
    find_witness,
    is_null_homotopic,
)
from mfkit.matfac import (
    ShapeMismatch,
    compose_morphisms,
    identity_morphism,
    make_factorization,
    scalar_morphism,
    validate_morphism,
    zero_morphism,
    Morphism,
)
from mfkit.poly import Polynomial
from mfkit.unit import unitor_right

from conftest import PX, PZ, X, Z, rand_poly

R = make_factorization([[1]], [[PX]], PX)
M = make_factorization([[0, PX], [PX ** 2, 0]], [[0, PX], [PX ** 2, 0]],
                       PX ** 3)


def zero_witness(x, y):
    return HomotopyWitness(
        lambda0=mx.zeros(y.size, x.size),
        lambda1=mx.zeros(y.size, x.size),
        max_degree=0,
    )


def half_d_witness(x):
    """lambda = d/2 -- certifies 0 ~ h*id over the rationals."""
    half = Fraction(1, 2)
    return HomotopyWitness(
        lambda0=mx.scale(x.p, half),
        lambda1=mx.scale(x.q, half),
        max_degree=max(0, x.potential.degree()),
    )


# ---------------------------------------------------------------------------
# check_witness


@pytest.mark.parametrize("x", [R, M], ids=["rank1", "antidiag"])
def test_zero_witness_for_equal_morphisms(x):
    phi = scalar_morphism(PX + 1, x)
    report = check_witness(x, x, phi, phi, zero_witness(x, x))
    assert report.ok
    assert mx.is_zero(report.even_residual)


@pytest.mark.parametrize("x", [R, M], ids=["rank1", "antidiag"])
def test_half_d_certifies_potential_times_identity(x):
    h_id = scalar_morphism(x.potential, x)
    report = check_witness(
        x, x, zero_morphism(x), h_id, half_d_witness(x)
    )
    assert report.ok


def test_zero_witness_certifies_unitor_round_trip():
    b = unitor_right(make_factorization([[1]], [[PZ - PX]], PZ - PX), PX, (X,))
    x = b.rho.target
    round_trip = compose_morphisms(b.rho, b.psi)
    report = check_witness(
        x, x, round_trip, identity_morphism(x), zero_witness(x, x)
    )
    assert report.ok


def test_wrong_witness_reports_residuals():
    phi = scalar_morphism(PX, R)
    report = check_witness(R, R, phi, zero_morphism(R), zero_witness(R, R))
    assert not report.ok
    assert report.even_residual[0][0] == PX


def test_check_witness_shape_guards():
    phi = scalar_morphism(PX, R)
    with pytest.raises(ShapeMismatch):
        check_witness(M, M, phi, phi, zero_witness(M, M))
    with pytest.raises(ShapeMismatch):
        check_witness(R, R, phi, phi, zero_witness(M, M))


# ---------------------------------------------------------------------------
# find_witness


def test_equal_morphisms_found_at_degree_zero():
    phi = scalar_morphism(PX, M)
    w = find_witness(M, M, phi, phi, 0)
    assert mx.is_zero(mx.from_rows(w.lambda0))
    assert mx.is_zero(mx.from_rows(w.lambda1))
    assert w.max_degree == 0


def test_potential_times_identity_is_null_homotopic():
    phi = scalar_morphism(PX, R)
    found, w = is_null_homotopic(R, R, phi, 1)
    assert found
    assert check_witness(R, R, phi, zero_morphism(R), w).ok


def test_trivial_factorization_identity_is_null_homotopic():
    # ([1],[x]) is contractible: lambda0 = 0, lambda1 = -1 already works
    found, w = is_null_homotopic(R, R, identity_morphism(R), 0)
    assert found
    assert check_witness(
        R, R, identity_morphism(R), zero_morphism(R), w
    ).ok


def test_identity_on_nontrivial_pair_not_found():
    with pytest.raises(NotFoundWithinDegree) as err:
        find_witness(M, M, zero_morphism(M), identity_morphism(M), 3)
    assert err.value.max_degree == 3
    assert "no claim" in str(err.value)


def test_is_null_homotopic_returns_flag_and_witness():
    found, w = is_null_homotopic(M, M, identity_morphism(M), 2)
    assert not found
    assert w is None


def test_unitor_psi_rho_vs_identity_recorded():
    # the reverse composite: a witness exists already at entry degree 0
    b = unitor_right(make_factorization([[1]], [[PZ - PX]], PZ - PX), PX, (X,))
    zf = b.z
    reverse = compose_morphisms(b.psi, b.rho)
    w = find_witness(zf, zf, reverse, identity_morphism(zf), 0)
    assert check_witness(zf, zf, reverse, identity_morphism(zf), w).ok


def test_find_witness_is_deterministic():
    phi = scalar_morphism(PX ** 2, M)
    w1 = find_witness(M, M, zero_morphism(M), phi, 2)
    w2 = find_witness(M, M, zero_morphism(M), phi, 2)
    assert w1 == w2


def test_find_witness_rejects_negative_degree():
    with pytest.raises(ValueError):
        find_witness(R, R, identity_morphism(R), identity_morphism(R), -1)


# ---------------------------------------------------------------------------
# the equivalence relation, at the witness level


def witness_neg(w):
    return HomotopyWitness(
        lambda0=mx.neg(mx.from_rows(w.lambda0)),
        lambda1=mx.neg(mx.from_rows(w.lambda1)),
        max_degree=w.max_degree,
    )


def witness_add(a, b):
    return HomotopyWitness(
        lambda0=mx.add(mx.from_rows(a.lambda0), mx.from_rows(b.lambda0)),
        lambda1=mx.add(mx.from_rows(a.lambda1), mx.from_rows(b.lambda1)),
        max_degree=max(a.max_degree, b.max_degree),
    )


def test_homotopy_is_an_equivalence_relation():
    phi = zero_morphism(M)
    psi = scalar_morphism(M.potential, M)
    chi = scalar_morphism(2 * M.potential, M)
    # reflexive
    assert check_witness(M, M, phi, phi, zero_witness(M, M)).ok
    # symmetric: negate the witness
    w = half_d_witness(M)
    assert check_witness(M, M, phi, psi, w).ok
    assert check_witness(M, M, psi, phi, witness_neg(w)).ok
    # transitive: add witnesses
    w2 = find_witness(M, M, psi, chi, 2)
    assert check_witness(M, M, phi, chi, witness_add(w, w2)).ok


def test_witness_stable_under_null_homotopic_shift():
    """Adding d_Y*mu + mu*d_X to psi keeps phi ~ psi, witness shifted by mu."""
    rng = random.Random(51)
    phi = zero_morphism(M)
    psi = scalar_morphism(M.potential, M)
    w = half_d_witness(M)
    for _ in range(10):
        mu0 = mx.from_rows(
            [[rand_poly(rng, (X,)) for _ in range(2)] for _ in range(2)]
        )
        mu1 = mx.from_rows(
            [[rand_poly(rng, (X,)) for _ in range(2)] for _ in range(2)]
        )
        shift_alpha = mx.add(mx.mul(M.q, mu0), mx.mul(mu1, M.p))
        shift_beta = mx.add(mx.mul(M.p, mu1), mx.mul(mu0, M.q))
        shifted = Morphism(
            alpha=mx.add(psi.alpha, shift_alpha),
            beta=mx.add(psi.beta, shift_beta),
            source=M,
            target=M,
        )
        assert validate_morphism(shifted).ok
        w_shift = witness_add(
            w, HomotopyWitness(lambda0=mu0, lambda1=mu1, max_degree=0)
        )
        assert check_witness(M, M, phi, shifted, w_shift).ok
