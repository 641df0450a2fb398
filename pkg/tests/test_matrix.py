"""Matrix layer: companions, evaluation, division-free charpoly, powers."""

import random

import pytest

from ivmat import rpoly, vpoly_from_ints
from ivmat.matrix import (DimensionMismatch, NonMonic, charpoly, companion,
                          identity, mat_add, mat_eval, mat_mul, mat_pow,
                          mat_to_json, matrix, scalar_matrix, zero_matrix)


def _random_matrix(ring, n, rng):
    return matrix(ring, [[ring.from_rep_index(rng.randrange(ring.size()))
                          for _ in range(n)] for _ in range(n)])


def _random_monic(ring, d, rng):
    cs = [ring.from_rep_index(rng.randrange(ring.size())) for _ in range(d)]
    return rpoly(ring, cs + [ring.one])


def test_companion_charpoly_roundtrip(ctx2, ctx3, ctx2t):
    rng = random.Random(21)
    for ctx in (ctx2, ctx3, ctx2t):
        ring = ctx.residue_ring(3)
        for d in (1, 2, 3, 4):
            for _ in range(5):
                m = _random_monic(ring, d, rng)
                assert charpoly(companion(m)) == m


def test_companion_rejects_nonmonic(ctx2):
    ring = ctx2.residue_ring(2)
    with pytest.raises(NonMonic):
        companion(rpoly(ring, [1, 2]))


def test_charpoly_identity_matrix(ctx3):
    ring = ctx3.residue_ring(2)
    c = charpoly(identity(ring, 2))
    # (y-1)^2 = y^2 - 2y + 1
    assert c == rpoly(ring, [1, ring.canon(-2), 1])


def test_charpoly_valuations_x2_minus_2(ctx2):
    # charpoly of companion(x^2-2) is x^2-2: sigma_1 vanishes, sigma_2 has
    # valuation exactly 1
    ring = ctx2.residue_ring(2)
    c = charpoly(companion(rpoly(ring, [-2, 0, 1])))
    assert ring.val(c.coeff(1)) >= 2  # zero mod 4
    assert ring.val(c.coeff(0)) == 1


def test_mat_pow(ctx2):
    ring = ctx2.residue_ring(3)
    A = companion(rpoly(ring, [0, 0, 1]))  # x^2
    assert mat_pow(A, 0) == identity(ring, 2)
    assert mat_pow(A, 2) == zero_matrix(ring, 2)
    B = companion(rpoly(ring, [0, 0, 0, 1]))  # x^3
    B2 = mat_pow(B, 2)
    entries = [B2[i][j] for i in range(3) for j in range(3)]
    assert sum(1 for e in entries if not ring.is_zero(e)) == 1
    assert B2[2][0] == ring.one


def test_cayley_hamilton(ctx2, ctx3, ctx2t, ctx4):
    rng = random.Random(42)
    for ctx in (ctx2, ctx3, ctx2t, ctx4):
        for _ in range(10):
            n = rng.randrange(1, 5)
            M = rng.randrange(1, 7)
            ring = ctx.residue_ring(M)
            A = _random_matrix(ring, n, rng)
            assert mat_eval(charpoly(A), A).is_zero()


def test_conditioned_charpoly_valuations(ctx2, ctx3):
    # m = x^n + pi*a_{n-1}x^{n-1} + ... + pi*a_1*x + pi^2*a_0: the i-th
    # symmetric function of the (n-1)-st powers of the roots has valuation
    # at least i; read off charpoly(C^(n-1))
    rng = random.Random(8)
    for ctx in (ctx2, ctx3):
        for n in (2, 3):
            ring = ctx.residue_ring(n + 2)
            for _ in range(25):
                cs = [ring.mul_pi(ring.from_rep_index(
                    rng.randrange(ring.size())), 2)]
                for _ in range(1, n):
                    cs.append(ring.mul_pi(ring.from_rep_index(
                        rng.randrange(ring.size())), 1))
                m = rpoly(ring, cs + [ring.one])
                c = charpoly(mat_pow(companion(m), n - 1))
                for i in range(1, n + 1):
                    assert ring.val(c.coeff(n - i)) >= i


def test_mat_eval_commutes_with_reduction(ctx2, ctx3):
    rng = random.Random(13)
    for ctx in (ctx2, ctx3):
        ring = ctx.residue_ring(4)
        g = vpoly_from_ints(ctx, [rng.randrange(-9, 10) for _ in range(5)])
        A = _random_matrix(ring, 3, rng)
        hi = mat_eval(g, A)
        lo = mat_eval(g.reduce(2), A.reduce(2))
        assert hi.reduce(2) == lo


def test_mat_eval_accepts_vpoly_and_rpoly(ctx2):
    ring = ctx2.residue_ring(3)
    g = vpoly_from_ints(ctx2, [1, 2, 1])
    A = companion(rpoly(ring, [1, 1, 1]))
    assert mat_eval(g, A) == mat_eval(g.reduce(3), A)


def test_mat_arithmetic_basics(ctx3):
    ring = ctx3.residue_ring(2)
    A = matrix(ring, [[1, 2], [0, 1]])
    B = matrix(ring, [[1, 0], [3, 1]])
    assert mat_mul(A, identity(ring, 2)) == A
    assert mat_add(A, zero_matrix(ring, 2)) == A
    AB = mat_mul(A, B)
    assert AB == matrix(ring, [[7, 2], [3, 1]])
    assert scalar_matrix(ring, 2, ring.canon(5)) == matrix(ring, [[5, 0], [0, 5]])


def test_dimension_mismatch(ctx2):
    ring = ctx2.residue_ring(2)
    with pytest.raises(DimensionMismatch):
        mat_mul(identity(ring, 2), identity(ring, 3))


def test_mat_to_json(ctx2):
    ring = ctx2.residue_ring(2)
    data = mat_to_json(identity(ring, 2))
    assert data["n"] == 2 and data["M"] == 2
    assert len(data["entries"]) == 2 and len(data["entries"][0]) == 2
