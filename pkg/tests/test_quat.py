"""Quaternion orders mod p^k: the matrix-ring isomorphism, failure
witnesses pulled back from companion matrices, and the null-ideal degree
bound computed in quaternion arithmetic."""

import random

import pytest

from ivmat import (HURWITZ, LIPSCHITZ, KPoly, QuatR, UnexpectedVanishing,
                   construct_F, find_iso, minimal_monic_degree,
                   order_min_monic_degree, phi, quat_membership_failure)
from ivmat.dvr import make_context
from ivmat.matrix import identity, mat_add, mat_mul
from ivmat.quat import quat_eval, quat_scalar


def _det2(A):
    e = A.entries
    return (e[0][0] * e[1][1] - e[0][1] * e[1][0]) % A.ring.m


def test_find_iso_base_case():
    iso = find_iso(3, 1)
    assert (iso.a, iso.b) == (1, 1)


def test_find_iso_lifted():
    iso = find_iso(3, 3)
    assert (iso.a, iso.b) == (1, 5)
    assert (iso.a**2 + iso.b**2 + 1) % 27 == 0


def test_find_iso_rejects_bad_p():
    with pytest.raises(ValueError):
        find_iso(2, 1)
    with pytest.raises(ValueError):
        find_iso(9, 2)
    with pytest.raises(ValueError):
        find_iso(5, 0)


def test_iso_images_satisfy_relations():
    for p, M in ((3, 2), (5, 3), (7, 1)):
        iso = find_iso(p, M)
        ring = iso.ring
        neg_id = identity(ring, 2).entries
        neg_id = tuple(tuple(ring.neg(e) for e in row) for row in neg_id)
        assert mat_mul(iso.Ei, iso.Ei).entries == neg_id
        assert mat_mul(iso.Ej, iso.Ej).entries == neg_id
        assert mat_mul(iso.Ei, iso.Ej) == iso.Ek
        ji = mat_mul(iso.Ej, iso.Ei)
        assert ji.entries == tuple(tuple(ring.neg(e) for e in row)
                                   for row in iso.Ek.entries)


def test_basis_multiplication_table():
    ring = make_context("zp", 5).residue_ring(2)
    one = QuatR(ring, (1, 0, 0, 0))
    i = QuatR(ring, (0, 1, 0, 0))
    j = QuatR(ring, (0, 0, 1, 0))
    k = QuatR(ring, (0, 0, 0, 1))
    assert i * j == k
    assert j * i == -k
    assert (i * i).coords == (-one).coords == (24, 0, 0, 0)
    assert (j * j) == (k * k) == -one
    assert (one * i) == i


def test_iso_is_algebra_map():
    rng = random.Random(7)
    for p, M in ((3, 2), (3, 4), (5, 1), (5, 3)):
        iso = find_iso(p, M)
        ring = iso.ring
        m = p**M
        for _ in range(50):
            x = QuatR(ring, tuple(rng.randrange(m) for _ in range(4)))
            y = QuatR(ring, tuple(rng.randrange(m) for _ in range(4)))
            assert iso.to_matrix(x + y) == mat_add(iso.to_matrix(x),
                                                   iso.to_matrix(y))
            assert iso.to_matrix(x * y) == mat_mul(iso.to_matrix(x),
                                                   iso.to_matrix(y))
            assert iso.from_matrix(iso.to_matrix(x)) == x
            # reduced norm matches the determinant through the map
            assert x.norm() == _det2(iso.to_matrix(x))


def test_conjugation_gives_norm():
    ring = make_context("zp", 3).residue_ring(3)
    x = QuatR(ring, (2, 7, 11, 25))
    n = (x * x.conj()).coords
    assert n == (x.norm(), 0, 0, 0)


def test_quat_eval_matches_naive():
    ctx = make_context("zp", 3)
    ring = ctx.residue_ring(2)
    g = phi(ctx, 2)  # any polynomial with several terms
    x = QuatR(ring, (1, 2, 3, 4))
    acc = quat_scalar(ring, 0)
    powx = QuatR(ring, (1, 0, 0, 0))
    gr = g.reduce(2)
    for c in gr.coeffs:
        acc = acc + quat_scalar(ring, c) * powx
        powx = powx * x
    assert quat_eval(g, x) == acc
    assert quat_eval(gr, x) == acc


def test_membership_failure_witness(ctx3):
    F = construct_F(ctx3, 2).F
    w = quat_membership_failure(F)
    assert not w.value.is_zero()
    assert w.pullback_of.coeffs == (0, 0, 1)  # companion of x^2 pulled back
    assert w.alpha.ring.M == 3
    # re-evaluate the witness from scratch
    again = quat_eval(F.num.reduce(3), w.alpha)
    assert again == w.value


def test_membership_failure_value(ctx3):
    F = construct_F(ctx3, 2).F
    w = quat_membership_failure(F)
    assert w.alpha.coords == (0, 14, 11, 13)
    assert w.value.coords == (0, 18, 18, 9)


def test_hurwitz_tag_propagates(ctx3):
    F = construct_F(ctx3, 2).F
    w = quat_membership_failure(F, order=HURWITZ)
    assert w.alpha.order == HURWITZ
    assert w.value.order == HURWITZ
    assert quat_membership_failure(F).alpha.order == LIPSCHITZ


def test_phi_cube_vanishes_on_order(ctx3):
    f = KPoly(phi(ctx3, 2).pow(3), 3)
    with pytest.raises(UnexpectedVanishing):
        quat_membership_failure(f)


def test_den_exp_zero_has_no_witness(ctx3):
    f = KPoly(phi(ctx3, 2), 0)
    with pytest.raises(UnexpectedVanishing):
        quat_membership_failure(f)


def test_membership_failure_validation(ctx3, ctx2t):
    F = construct_F(ctx3, 2).F
    with pytest.raises(ValueError):
        quat_membership_failure(F, p=5)
    with pytest.raises(ValueError):
        quat_membership_failure(F, order="Icosian")
    Ft = construct_F(ctx2t, 2).F
    with pytest.raises(ValueError):
        quat_membership_failure(Ft)


def test_order_degree_bound_agrees_with_matrix_side(ctx3):
    assert order_min_monic_degree(3, 1) == 12
    d = order_min_monic_degree(3, 3)
    assert d == 36
    assert d == minimal_monic_degree(ctx3, 2, 3).min_monic_degree


def test_order_degree_bound_p5():
    assert order_min_monic_degree(5, 1) == 30
