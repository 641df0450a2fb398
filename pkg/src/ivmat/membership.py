"""Membership of f = g/pi^k in the ring of integer-valued polynomials on
M_n(V) and in its integral closure, plus the pi-sequence mu_d and the
degree-10 ideal congruence.

Ring membership is a null-ideal question (g in N_k), delegated to the
nullideal module.  Closure membership uses the characteristic-polynomial
criterion: f is integral on the closure iff for every monic m of degree n
the charpoly of g(C_m) has i-th coefficient (of y^(n-i)) with valuation
at least k*i.  Both scans run at finite precision: the charpoly of
g(C_m) only depends on m mod pi^M, and with M = k*n every divisibility
tested has exponent k*i <= M, so truncation loses nothing.
"""

from __future__ import annotations

import numpy as np

from .construct import phi_degree
from .dvr import DvrContext, ZP
from .matrix import charpoly, companion, mat_eval
from .nullideal import null_membership, phi_k_degrees
from .poly import (KPoly, RPoly, VPoly, count_monic, enumerate_monic,
                   fq_divrem, min_coeff_val, monic_from_index,
                   vpoly_from_ints)
from .reports import (FailureWitness, MembershipVerdict, PiSequenceTable,
                      ProperIntegralVerdict)
from .scan import (first_failure, np_scan_ok, zp_charpoly_batch,
                   zp_coeff_arrays, zp_companions, zp_horner)


class HypothesisViolation(ValueError):
    pass


def int_matrix_membership(f: KPoly, n: int,
                          threads: int = 1) -> MembershipVerdict:
    """f = g/pi^k integer-valued on all of M_n(V)?  Equivalent to g lying
    in the level-k null ideal; k = 0 is trivially a member."""
    if f.den_exp == 0:
        return MembershipVerdict(True, None, 0, 0)
    return null_membership(f.num, f.den_exp, n, threads=threads)


# ---------------------------------------------------------------------------
# integral closure


def closure_profile(f: KPoly, m: RPoly) -> dict:
    """The charpoly criterion at a single monic m: per-index valuations of
    the coefficients of charpoly(g(C_m)) against the thresholds k*i.

    Useful for re-checking a witness in isolation.
    """
    k = f.den_exp
    d = m.degree
    if k * d > m.M:
        raise ValueError(f"precision {m.M} too low, need >= {k * d}")
    B = mat_eval(f.num, companion(m))
    c = charpoly(B)
    r = B.ring
    rows = []
    for i in range(1, d + 1):
        v = r.val(c.coeff(d - i))
        rows.append({"i": i, "coeff_of_y_power": d - i, "val": v,
                     "required": k * i, "ok": v >= k * i})
    return {"rows": rows, "ok": all(row["ok"] for row in rows)}


def _closure_scan(ctx: DvrContext, g: VPoly, k: int, d: int, M: int,
                  threads: int, polys: list[RPoly] | None = None):
    """First enumeration index where the charpoly criterion fails, or None.
    Returns (hit, total)."""
    assert k * d <= M
    if polys is None:
        total = count_monic(ctx, d, M)
    else:
        total = len(polys)

    if np_scan_ok(ctx, M, d):
        mz = ctx.p**M
        gm = [int(c) for c in g.reduce(M).coeffs]
        pw = [ctx.p ** (k * i) for i in range(1, d + 1)]
        arrays = None
        if polys is not None:
            arrays = [np.array([int(mp.coeff(j)) for mp in polys],
                               dtype=np.int64) for j in range(d)]

        def run_chunk(s, e):
            if arrays is None:
                C = zp_companions(zp_coeff_arrays(d, mz, s, e), mz)
            else:
                C = zp_companions([a[s:e] for a in arrays], mz)
            B = zp_horner(gm, C, mz)
            cp = zp_charpoly_batch(B, mz)  # descending: cp[:, i] is y^(d-i)
            bad = np.zeros(cp.shape[0], dtype=bool)
            for i in range(1, d + 1):
                bad |= (cp[:, i] % pw[i - 1]) != 0
            if bad.any():
                return s + int(np.argmax(bad))
            return None

        return first_failure(total, run_chunk, threads), total

    def run_chunk(s, e):
        if polys is None:
            it = enumerate_monic(ctx, d, M, s, e)
        else:
            it = polys[s:e]
        for i, mm in enumerate(it):
            B = mat_eval(g, companion(mm))
            c = charpoly(B)
            r = B.ring
            for j in range(1, d + 1):
                if r.val(c.coeff(d - j)) < k * j:
                    return s + i
        return None

    return first_failure(total, run_chunk, threads, chunk_size=1 << 10), total


def _closure_witness(f: KPoly, mm: RPoly, idx: int) -> FailureWitness:
    prof = closure_profile(f, mm)
    failing = [row for row in prof["rows"] if not row["ok"]]
    first = failing[0]
    return FailureWitness(
        mm, idx, f"charpoly coeff of y^{first['coeff_of_y_power']}",
        first["val"], first["required"],
        {"profile": prof["rows"]})


def closure_membership(f: KPoly, n: int, threads: int = 1,
                       all_degrees: bool = False,
                       family: list[RPoly] | None = None) -> MembershipVerdict:
    """f in the integral closure of the matrix integer-valued ring?

    Scans monic m of degree n at precision k*n and applies the charpoly
    criterion.  all_degrees additionally scans degrees 1..n-1 (each at its
    own precision k*d); the verdicts agree, which the test suite asserts
    on random inputs.  family restricts the scan to an explicit list of
    monic polynomials sharing one degree and precision.
    """
    k = f.den_exp
    if k == 0:
        return MembershipVerdict(True, None, 0, 0)
    ctx = f.ctx
    g = f.num

    if family is not None:
        d = family[0].degree
        M = family[0].M
        hit, total = _closure_scan(ctx, g, k, d, M, threads, polys=family)
        if hit is None:
            return MembershipVerdict(True, None, total, M)
        return MembershipVerdict(False, _closure_witness(f, family[hit], hit),
                                 hit + 1, M)

    degrees = range(1, n + 1) if all_degrees else [n]
    checked = 0
    for d in degrees:
        M = k * d
        hit, total = _closure_scan(ctx, g, k, d, M, threads)
        if hit is not None:
            mm = monic_from_index(ctx, d, M, hit)
            return MembershipVerdict(False, _closure_witness(f, mm, hit),
                                     checked + hit + 1, M)
        checked += total
    return MembershipVerdict(True, None, checked, k * n)


def residue_class_family(ctx: DvrContext, n: int, k: int, a: int,
                         M: int | None = None) -> list[RPoly]:
    """All monic m of degree n at precision M (default k*n) with
    m = (x - a)^n mod pi, for a residue-field element a."""
    if M is None:
        M = k * n
    ring = ctx.residue_ring(M)
    ex = ctx.exact
    lin = VPoly(ctx, (ex.neg(ex.lift_fq(a)), ex.one))
    base = lin.pow(n).reduce(M)
    sub = ctx.residue_ring(M - 1)
    Bs = sub.size()
    out = []
    for idx in range(Bs**n):
        cs = list(base.coeffs)
        for j in range(n):
            digit = (idx // Bs ** (n - 1 - j)) % Bs
            rj = sub.to_exact(sub.from_rep_index(digit))
            cs[j] = ring.add(cs[j], ring.mul_pi(ring.from_exact(rj), 1))
        out.append(RPoly(ring, tuple(cs)))
    return out


def properly_integral(f: KPoly, n: int,
                      threads: int = 1) -> ProperIntegralVerdict:
    """In the integral closure but not in the ring itself."""
    clo = closure_membership(f, n, threads=threads)
    ring = int_matrix_membership(f, n, threads=threads)
    return ProperIntegralVerdict(clo, ring,
                                 properly_integral=clo.member
                                 and not ring.member)


# ---------------------------------------------------------------------------
# the pi-sequence mu_d


def mu_table(ctx: DvrContext, n: int, d_max: int) -> PiSequenceTable:
    """mu_d = largest k such that some degree-d polynomial over K with
    denominator pi^k is integer-valued on M_n(V).

    Two routes per d: the closed formula floor(d / deg Phi), valid for
    0 <= d <= q * deg Phi, and an oracle built from the minimal monic
    degrees of the null ideals N_k (mu_d >= k exactly when
    deg phi_k <= d).  The table records both and the agreement flag.
    """
    dphi = phi_degree(ctx, n)
    limit = ctx.q * dphi
    degs = phi_k_degrees(ctx, n, d_max)
    real = [dg for _, dg in degs if dg is not None]
    entries = []
    agree = True
    for d in range(d_max + 1):
        formula = d // dphi if d <= limit else None
        oracle = sum(1 for dg in real if dg <= d)
        if formula is not None and formula != oracle:
            agree = False
        entries.append((d, formula, oracle))
    return PiSequenceTable(ctx, n, dphi, tuple(entries), agree, degs)


# ---------------------------------------------------------------------------
# the degree-10 congruence ideal


def default_congruence_modulus(ctx: DvrContext) -> VPoly:
    # x^2 (x-1)^2 (x^2+x+1)
    sq = vpoly_from_ints(ctx, [0, 1]) * vpoly_from_ints(ctx, [-1, 1])
    return sq * sq * vpoly_from_ints(ctx, [1, 1, 1])


def ideal_congruence(f1: KPoly, f2: KPoly, u: VPoly | None = None) -> bool:
    """Are f1 and f2 congruent modulo the ideal I = (pi^k, pi^(k-1) u)?

    With no explicit u this is the degree-10 uniqueness statement at
    p = 2, k = 2 with u = x^2 (x-1)^2 (x^2+x+1); those hypotheses are
    enforced.  Delta = num1 - num2 lies in I iff every coefficient has
    valuation >= k-1 and (Delta / pi^(k-1)) mod pi is divisible by u over
    the residue field.
    """
    ctx = f1.ctx
    if f2.ctx != ctx:
        raise HypothesisViolation("mismatched coefficient rings")
    k = f1.den_exp
    if f2.den_exp != k or k < 1:
        raise HypothesisViolation("need equal denominator exponents k >= 1")
    g1, g2 = f1.num, f2.num
    if not (g1.is_monic() and g2.is_monic() and g1.degree == g2.degree):
        raise HypothesisViolation("numerators must be monic of equal degree")
    if u is None:
        if not (ctx.backend == ZP and ctx.p == 2 and k == 2
                and g1.degree == 10):
            raise HypothesisViolation(
                "default modulus applies only at p=2, k=2, degree 10; "
                "pass u explicitly otherwise")
        u = default_congruence_modulus(ctx)
    ubar = u.res_fq()
    if not ubar:
        raise HypothesisViolation("u must be nonzero mod pi")
    delta = g1 - g2
    if delta.is_zero():
        return True
    if min_coeff_val(delta) < k - 1:
        return False
    w = delta.div_pi(k - 1).res_fq()
    if not w:
        return True  # delta = 0 mod pi^k
    _, rem = fq_divrem(ctx, w, ubar)
    return not rem
