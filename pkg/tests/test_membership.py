"""Membership in Int_K(M_n(V)) and its integral closure; mu tables;
the degree-10 ideal congruence."""

import random

import pytest

from ivmat import (HypothesisViolation, KPoly, closure_membership,
                   closure_profile, construct_F, ideal_congruence,
                   int_matrix_membership, kpoly, mu_table, phi,
                   properly_integral, residue_class_family, rpoly, vpoly,
                   vpoly_from_ints)
from ivmat.matrix import charpoly, companion, mat_eval
from ivmat.membership import default_congruence_modulus
from ivmat.poly import enumerate_monic


@pytest.fixture(scope="module")
def F2(ctx2):
    return construct_F(ctx2, 2)


@pytest.fixture(scope="module")
def F3(ctx3):
    return construct_F(ctx3, 2)


def test_F2_not_in_matrix_ring(F2):
    v = int_matrix_membership(F2.F, 2)
    assert not v.member
    assert v.witness.m.coeffs == (0, 0, 1)  # x^2
    assert v.witness.found_val == 1
    assert v.witness.required_val == 2


def test_phi_cube_in_matrix_ring(ctx3):
    f = KPoly(phi(ctx3, 2).pow(3), 3)
    assert int_matrix_membership(f, 2).member


def test_den_exp_zero_trivial(ctx2):
    f = kpoly(vpoly_from_ints(ctx2, [1, 7, 3]), 0)
    assert int_matrix_membership(f, 2).member
    assert closure_membership(f, 2).member


def test_F2_closure(F2):
    v = closure_membership(F2.F, 2)
    assert v.member
    assert v.checked_count == 256
    assert v.precision_used == 4


def test_x_half_closure_failure(ctx2):
    f = kpoly(vpoly_from_ints(ctx2, [0, 1]), 1)
    v = closure_membership(f, 2)
    assert not v.member
    # brute-force the first failing m in enumeration order: the trace
    # condition v(sigma_1) >= 1 dies at m = x^2 + x
    first = None
    for m in enumerate_monic(ctx2, 2, 2):
        c = charpoly(mat_eval(f.num.reduce(2), companion(m)))
        ring = m.ring
        bad = any(ring.val(c.coeff(2 - i)) < i for i in (1, 2))
        if bad:
            first = m
            break
    assert v.witness.m == first
    assert first.coeffs == (0, 1, 1)


def test_spec_example_witness_x2_minus_2(ctx2):
    # the illustrative witness from the x/2 discussion: charpoly of the
    # companion of x^2-2 is x^2-2 and sigma_2 = -2 has valuation 1 < 2
    f = kpoly(vpoly_from_ints(ctx2, [0, 1]), 1)
    m = rpoly(ctx2.residue_ring(2), [-2, 0, 1])
    prof = closure_profile(f, m)
    assert not prof["ok"]
    bad = [r for r in prof["rows"] if not r["ok"]]
    assert bad == [{"i": 2, "coeff_of_y_power": 0, "val": 1,
                    "required": 2, "ok": False}]


def test_properly_integral_F2(F2):
    v = properly_integral(F2.F, 2)
    assert v.properly_integral
    assert v.closure.member and not v.ring.member


def test_phi_square_quarter_not_properly_integral(ctx2):
    # Phi^2/4 is already in the matrix ring, hence not properly integral
    f = KPoly(phi(ctx2, 2).pow(2), 2)
    v = properly_integral(f, 2)
    assert v.ring.member and v.closure.member
    assert not v.properly_integral


def test_unit_scaling_invariance(ctx2, F2):
    for u in (3, -1, 5):
        scaled = KPoly(F2.F.num.scale(ctx2.exact.from_int(u)), F2.F.den_exp)
        v = properly_integral(scaled, 2)
        assert v.properly_integral
        assert v.ring.witness.m == properly_integral(F2.F, 2).ring.witness.m


def test_ring_membership_implies_closure(ctx2):
    rng = random.Random(17)
    hits = 0
    for _ in range(40):
        g = vpoly_from_ints(ctx2, [rng.randrange(-8, 9) for _ in range(7)])
        f = kpoly(g, rng.randrange(0, 3))
        if int_matrix_membership(f, 2).member:
            hits += 1
            assert closure_membership(f, 2).member
    assert hits > 0  # the sample must actually exercise the implication


def test_degree_n_equals_all_degrees(ctx2, ctx3):
    rng = random.Random(23)
    for ctx, n in ((ctx2, 2), (ctx3, 2), (ctx2, 3)):
        for _ in range(4):
            g = vpoly_from_ints(ctx, [rng.randrange(-8, 9)
                                      for _ in range(6)])
            f = kpoly(g, rng.randrange(1, 3))
            a = closure_membership(f, n)
            b = closure_membership(f, n, all_degrees=True)
            assert a.member == b.member


def test_restricted_class_h_shift(ctx2, ctx3):
    # on the residue class m = (x-a)^n mod pi, h(x-a)/pi^q alone passes
    # the charpoly valuations
    for ctx in (ctx2, ctx3):
        b = construct_F(ctx, 2)
        ex = ctx.exact
        q = ctx.q
        for a in range(q):
            f = kpoly(b.h.shift(ex.neg(ex.lift_fq(a))), q)
            fam = residue_class_family(ctx, 2, q, a)
            assert len(fam) == q ** (2 * (2 * q - 1))
            v = closure_membership(f, 2, family=fam)
            assert v.member
            assert v.checked_count == len(fam)


def test_residue_class_family_contents(ctx2):
    fam = residue_class_family(ctx2, 2, 2, 1)
    ring = fam[0].ring
    assert ring.M == 4
    # every member is monic of degree 2 and reduces to (x-1)^2 = x^2+1 mod 2
    for m in fam:
        assert m.is_monic() and m.degree == 2
        assert m.res_fq() == (1, 0, 1)
    # count: free choice of the two non-leading coefficients above pi
    assert len(fam) == (2 ** 3) ** 2


def test_mu_table_p2(ctx2):
    tab = mu_table(ctx2, 2, 12)
    assert tab.agreement
    vals = {d: oracle for d, _, oracle in tab.entries}
    assert vals[0] == 0 and vals[5] == 0
    assert vals[6] == 1 and vals[10] == 1 and vals[11] == 1
    assert vals[12] == 2
    assert tab.jumps() == [6, 12]


def test_mu_table_beyond_formula_range(ctx2):
    tab = mu_table(ctx2, 2, 16)
    by_d = {d: (f, o) for d, f, o in tab.entries}
    assert by_d[13] == (None, 2)
    assert by_d[16] == (None, 3)  # psi kicks in at degree 16
    assert tab.agreement


def test_mu_table_n3(ctx2):
    tab = mu_table(ctx2, 3, 28)
    assert tab.agreement
    vals = {d: oracle for d, _, oracle in tab.entries}
    assert vals[13] == 0 and vals[14] == 1 and vals[28] == 2


def test_ideal_congruence_F_G(ctx2, F2):
    # the displayed alternative G: x(x^2+2x+2)(x-1)((x-1)^2+2)(x^2+x+1)^2/4
    def conv(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    G = [1]
    for fac in ([0, 1], [2, 2, 1], [-1, 1], [3, -2, 1],
                [1, 1, 1], [1, 1, 1]):
        G = conv(G, fac)
    Gp = KPoly(vpoly_from_ints(ctx2, G), 2)
    assert ideal_congruence(F2.F, Gp)
    assert ideal_congruence(F2.F, F2.F)


def test_ideal_congruence_perturbation(ctx2, F2):
    pert = KPoly(F2.F.num + vpoly_from_ints(ctx2, [0, 2]), 2)
    assert not ideal_congruence(F2.F, pert)


def test_ideal_congruence_hypothesis_violations(ctx2, ctx3, F2, F3):
    with pytest.raises(HypothesisViolation):
        ideal_congruence(F2.F, KPoly(phi(ctx2, 2).pow(2), 2))  # degree 12
    nonmonic = KPoly(F2.F.num.scale(ctx2.exact.from_int(3)), 2)
    with pytest.raises(HypothesisViolation):
        ideal_congruence(F2.F, nonmonic)
    with pytest.raises(HypothesisViolation):
        ideal_congruence(F2.F, KPoly(F2.F.num, 3))  # den_exp mismatch
    with pytest.raises(HypothesisViolation):
        ideal_congruence(F3.F, F3.F)  # default u needs p = 2, k = 2


def test_ideal_congruence_explicit_modulus(ctx3):
    # general route: I = (pi^k, pi^(k-1) u); k = 2, u = x over Z_(3)
    u = vpoly_from_ints(ctx3, [0, 1])
    base = vpoly_from_ints(ctx3, [1, 0, 0, 1])  # monic cubic
    same = KPoly(base, 2)
    shifted = KPoly(base + vpoly_from_ints(ctx3, [9]), 2)          # +pi^2
    inu = KPoly(base + vpoly_from_ints(ctx3, [0, 3, 6]), 2)        # +pi*u*s
    out = KPoly(base + vpoly_from_ints(ctx3, [3]), 2)              # +pi*1
    assert ideal_congruence(same, shifted, u=u)
    assert ideal_congruence(same, inu, u=u)
    assert not ideal_congruence(same, out, u=u)


def test_default_congruence_modulus(ctx2):
    # x^2 (x-1)^2 (x^2+x+1), the degree-6 part of the ideal generator
    u = default_congruence_modulus(ctx2)
    assert u == vpoly_from_ints(ctx2, [0, 0, 1, -1, 0, -1, 1])
    assert u.res_fq() == phi(ctx2, 2).res_fq()


def test_k0_shortcut(ctx2):
    f = kpoly(vpoly_from_ints(ctx2, [3, 5, 7]), 0)
    assert properly_integral(f, 2).ring.member
