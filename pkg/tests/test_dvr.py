"""Base ring layer: contexts, residue rings, valuations, exact lifts."""

import random

import pytest

from ivmat import (FQT, ZP, NonPrime, PrecisionIncrease, ReducibleModulus,
                   make_context)
from ivmat.dvr import (BadArity, context_from_json, lift_representative,
                       reduce_precision, val)


def test_make_context_q_values(ctx2, ctx3, ctx4):
    assert ctx2.q == 2
    assert ctx3.q == 3
    assert ctx4.q == 4


def test_make_context_rejects_composite():
    with pytest.raises(NonPrime):
        make_context("zp", 4)
    with pytest.raises(NonPrime):
        make_context("fqt", 9)


def test_make_context_rejects_extension_over_zp():
    with pytest.raises(BadArity):
        make_context("zp", 2, 2, (1, 1, 1))


def test_make_context_rejects_reducible_modulus():
    # u^2 + 1 = (u+1)^2 over F_2
    with pytest.raises(ReducibleModulus):
        make_context("fqt", 2, 2, (1, 0, 1))


def test_make_context_unknown_backend():
    with pytest.raises(ValueError):
        make_context("padic", 2)


def test_context_json_roundtrip(ctx2, ctx4):
    for ctx in (ctx2, ctx4):
        assert context_from_json(ctx.to_json()) == ctx


def test_zp_val_examples(ctx2):
    ring = ctx2.residue_ring(5)
    assert val(ring.elem(12)) == 2
    assert val(ring.elem(0)) == ">=5"
    assert val(ring.elem(1)) == 0


def test_fqt_val_example(ctx2t):
    ring = ctx2t.residue_ring(6)
    # t^3 * unit: digits (0,0,0,1,1,0)
    assert val(ring.elem((0, 0, 0, 1, 1, 0))) == 3
    assert val(ring.elem((0,) * 6)) == ">=6"


def test_reduce_precision(ctx2):
    x = ctx2.residue_ring(5).elem(13)
    y = reduce_precision(x, 2)
    assert y.ring.M == 2 and y.rep == 1
    with pytest.raises(PrecisionIncrease):
        reduce_precision(y, 3)


def test_lift_representative(ctx2, ctx3):
    x = lift_representative(ctx2, 1, 4)
    assert x.ring.M == 4 and x.rep == 1
    y = lift_representative(ctx3, 2, 3)
    assert y.rep == 2


def test_lift_then_reduce_is_identity_on_residues(ctx3, ctx4):
    for ctx in (ctx3, ctx4):
        for r in range(ctx.q):
            x = lift_representative(ctx, r, 4)
            assert reduce_precision(x, 1).ring.res0(reduce_precision(x, 1).rep) == r


def test_canon_idempotent(ctx2, ctx2t):
    rng = random.Random(11)
    ring = ctx2.residue_ring(4)
    for _ in range(50):
        x = rng.randrange(-40, 40)
        assert ring.canon(ring.canon(x)) == ring.canon(x)
    ring = ctx2t.residue_ring(4)
    for _ in range(50):
        x = tuple(rng.randrange(2) for _ in range(4))
        assert ring.canon(ring.canon(x)) == ring.canon(x)


def test_val_of_product(ctx2, ctx3, ctx2t, ctx4):
    # v(xy) = v(x) + v(y), capped at M
    rng = random.Random(7)
    for ctx in (ctx2, ctx3, ctx2t, ctx4):
        ring = ctx.residue_ring(5)
        for _ in range(200):
            x = ring.from_rep_index(rng.randrange(ring.size()))
            y = ring.from_rep_index(rng.randrange(ring.size()))
            vx, vy = ring.val(x), ring.val(y)
            if vx >= 5 or vy >= 5:
                continue
            assert ring.val(ring.mul(x, y)) == min(vx + vy, 5)


def test_unit_inverse(ctx3, ctx4):
    for ctx in (ctx3, ctx4):
        ring = ctx.residue_ring(3)
        count = 0
        for i in range(ring.size()):
            x = ring.from_rep_index(i)
            if not ring.is_unit(x):
                continue
            count += 1
            assert ring.mul(x, ring.unit_inv(x)) == ring.one
        # units are exactly the elements of valuation 0
        assert count == ring.size() - ring.size() // ctx.q


def test_rep_index_roundtrip(ctx2, ctx2t):
    for ctx in (ctx2, ctx2t):
        ring = ctx.residue_ring(3)
        seen = set()
        for i in range(ring.size()):
            x = ring.from_rep_index(i)
            assert ring.rep_index(x) == i
            seen.add(x)
        assert len(seen) == ring.size() == ctx.q**3


def test_pi_shift_ops(ctx2):
    ring = ctx2.residue_ring(4)
    x = ring.canon(3)
    up = ring.mul_pi(x, 2)
    assert ring.val(up) == 2
    assert ring.div_pi(up, 2) == x


def test_exact_ops_zp(ctx2):
    ex = ctx2.exact
    assert ex.val(ex.zero) is None
    assert ex.val(ex.from_int(12)) == 2
    x = ex.from_int(5)
    assert ex.div_pi(ex.mul_pi(x, 3), 3) == x
    assert ex.res0(ex.from_int(7)) == 1


def test_exact_ops_fqt(ctx2t, ctx4):
    for ctx in (ctx2t, ctx4):
        ex = ctx.exact
        assert ex.val(ex.zero) is None
        a = ex.lift_fq(ctx.q - 1)
        assert ex.val(ex.mul_pi(a, 2)) == 2
        assert ex.is_zero(ex.sub(a, a))
        assert ex.res0(a) == ctx.q - 1


def test_describe(ctx2, ctx4):
    assert "2" in ctx2.describe()
    assert "4" in ctx4.describe() or "2" in ctx4.describe()
