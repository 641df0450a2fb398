"""Howell-form span membership over Z/p^K and F_q[t]/(t^K)."""

import itertools
import random

import numpy as np

from ivmat.howell import (RingHowellSystem, ZpHowellSystem, ascend_min_monic,
                          new_system, numpy_ok)


def test_numpy_ok_boundaries(ctx2, ctx2t):
    assert numpy_ok(ctx2, 30)
    assert not numpy_ok(ctx2, 31)
    assert not numpy_ok(ctx2t, 2)


def test_new_system_dispatch(ctx2, ctx2t):
    assert isinstance(new_system(ctx2, 3, 4), ZpHowellSystem)
    assert isinstance(new_system(ctx2t, 3, 4), RingHowellSystem)
    assert isinstance(new_system(ctx2, 40, 4), RingHowellSystem)


def _brute_span(gens, m):
    span = set()
    for combo in itertools.product(range(m), repeat=len(gens)):
        v = tuple(sum(c * g[i] for c, g in zip(combo, gens)) % m
                  for i in range(len(gens[0])))
        span.add(v)
    return span


def test_zp_express_matches_brute_force():
    # every vector of (Z/4)^3: express() succeeds iff the vector is in the
    # span, and the certificate reassembles it
    m = 4
    gens = [(2, 0, 1), (0, 2, 2)]
    sys_ = ZpHowellSystem(2, 2, max_gens=4)
    for g in gens:
        sys_.insert(np.array(g))
    span = _brute_span(gens, m)
    for vec in itertools.product(range(m), repeat=3):
        combo = sys_.express(np.array(vec))
        if vec in span:
            assert combo is not None
            re = [0, 0, 0]
            for j, c in combo.items():
                for i in range(3):
                    re[i] = (re[i] + c * gens[j][i]) % m
            assert tuple(re) == vec
        else:
            assert combo is None


def test_ring_system_express_matches_brute_force(ctx2t):
    ring = ctx2t.residue_ring(2)
    # digit tuples over F_2[t]/(t^2): t = (0,1)
    gens = [[(0, 1), (1, 0)], [(0, 0), (0, 1)]]
    sys_ = RingHowellSystem(ring)
    for g in gens:
        sys_.insert(g)
    all_elems = list(ring.elements())
    span = set()
    for c0 in all_elems:
        for c1 in all_elems:
            v = tuple(ring.add(ring.mul(c0, gens[0][i]),
                               ring.mul(c1, gens[1][i])) for i in range(2))
            span.add(v)
    hits = 0
    for v0 in all_elems:
        for v1 in all_elems:
            vec = (v0, v1)
            combo = sys_.express(list(vec))
            if vec in span:
                hits += 1
                assert combo is not None
                re = [ring.zero, ring.zero]
                for j, c in combo.items():
                    for i in range(2):
                        re[i] = ring.add(re[i], ring.mul(c, gens[j][i]))
                assert tuple(re) == vec
            else:
                assert combo is None
    assert hits == len(span)


def test_zp_vs_generic_agree():
    # same generators through both implementations: identical membership
    rng = random.Random(77)
    import ivmat
    ctx = ivmat.make_context("zp", 3)
    ring = ctx.residue_ring(2)
    zp_sys = ZpHowellSystem(3, 2, max_gens=6)
    gen_sys = RingHowellSystem(ring)
    gens = [[rng.randrange(9) for _ in range(4)] for _ in range(5)]
    for g in gens:
        zp_sys.insert(np.array(g))
        gen_sys.insert(g)
    for _ in range(100):
        v = [rng.randrange(9) for _ in range(4)]
        a = zp_sys.express(np.array(v))
        b = gen_sys.express(v)
        assert (a is None) == (b is None)


class _PowerStream:
    """Powers of fixed scan points mod m, ascending degree."""

    def __init__(self, points, m):
        self.points = points
        self.m = m
        self.cur = [1] * len(points)

    def vector(self):
        return np.array(self.cur, dtype=np.int64)

    def advance(self):
        self.cur = [(c * a) % self.m for c, a in zip(self.cur, self.points)]


def test_ascend_min_monic_kempner():
    # minimal monic vanishing on all of Z/4 has degree 4 (x(x-1)(x-2)(x-3))
    stream = _PowerStream([0, 1, 2, 3], 4)
    system = ZpHowellSystem(2, 2, max_gens=6)
    got = ascend_min_monic(stream, system, 5)
    assert got is not None
    D, combo = got
    assert D == 4
    # reassemble and check the witness actually vanishes at every point
    coeffs = [0] * 5
    coeffs[4] = 1
    for j, c in combo.items():
        coeffs[j] = c
    for a in range(4):
        assert sum(c * a**j for j, c in enumerate(coeffs)) % 4 == 0


def test_ascend_min_monic_exhaustion():
    stream = _PowerStream([0, 1, 2, 3], 4)
    system = ZpHowellSystem(2, 2, max_gens=4)
    assert ascend_min_monic(stream, system, 3) is None


def test_ascend_min_monic_mod_2():
    # x^2 - x vanishes on F_2: minimal degree 2
    stream = _PowerStream([0, 1], 2)
    system = ZpHowellSystem(2, 1, max_gens=4)
    D, combo = ascend_min_monic(stream, system, 3)
    assert D == 2
    assert combo == {1: 1}  # x^2 + x over F_2
