"""Null ideals N_k of the matrix algebra over V/pi^k.

N_k is the set of g in V[x] with g(A) = 0 mod pi^k for every n x n matrix
A over V/pi^k.  Membership reduces to companion matrices of monic degree-n
polynomials, so every question here is a scan over that enumeration:

* null_membership: evaluate g on every companion, report the first failure.
* minimal_monic_degree: smallest degree of a monic element of N_k, found by
  ascending the degree and testing solvability of the linear system
  "monic f of degree D kills every companion" in Howell form.
* lcm_primary: the same search restricted to companions of the iota-primary
  monic family of degree D = deg(iota) * floor(n / deg iota).
* verify_phi_theorem: packages the generator containments of (Phi, pi)^k,
  the degree equality for k <= q, and the strict failure at k = q + 1.
"""

from __future__ import annotations

import numpy as np

from .construct import construct_psi, phi, phi_degree
from .dvr import DvrContext
from .howell import ascend_min_monic, new_system
from .matrix import companion, mat_eval
from .poly import (RPoly, VPoly, count_monic, enumerate_monic, fq_mul,
                   is_irreducible, lift_fq_poly, monic_from_index)
from .reports import FailureWitness, MembershipVerdict, NullIdealReport, \
    LcmPrimaryReport, PhiTheoremReport
from .scan import (companion_stack, first_failure, np_scan_ok, zp_companions,
                   zp_coeff_arrays, zp_horner)


class SearchExhausted(RuntimeError):
    def __init__(self, D_max: int):
        super().__init__(f"no monic solution up to degree {D_max}")
        self.D_max = D_max


def null_membership(g: VPoly, k: int, n: int,
                    threads: int = 1) -> MembershipVerdict:
    """Does g vanish mod pi^k on all of M_n(V/pi^k)?

    Equivalent to: g(C_m) = 0 mod pi^k for every monic m of degree n at
    precision k.  The witness on failure is the first such m in
    enumeration order, with the valuations of all nonzero entries.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    ctx = g.ctx
    gr = g.reduce(k)
    if gr.is_zero():
        return MembershipVerdict(True, None, 0, k)
    total = count_monic(ctx, n, k)

    if np_scan_ok(ctx, k, n):
        m = ctx.p**k
        cm = [int(c) for c in gr.coeffs]

        def run_chunk(s, e):
            C = zp_companions(zp_coeff_arrays(n, m, s, e), m)
            B = zp_horner(cm, C, m)
            bad = B.reshape(B.shape[0], -1).any(axis=1)
            if bad.any():
                return s + int(np.argmax(bad))
            return None

        hit = first_failure(total, run_chunk, threads)
    else:

        def run_chunk(s, e):
            for i, mm in enumerate(enumerate_monic(ctx, n, k, s, e)):
                if not mat_eval(gr, companion(mm)).is_zero():
                    return s + i
            return None

        hit = first_failure(total, run_chunk, threads, chunk_size=1 << 10)

    if hit is None:
        return MembershipVerdict(True, None, total, k)
    mm = monic_from_index(ctx, n, k, hit)
    B = mat_eval(gr, companion(mm))
    r = B.ring
    nonzero = [{"row": i, "col": j, "val": r.val(B.entries[i][j])}
               for i in range(B.n) for j in range(B.n)
               if not r.is_zero(B.entries[i][j])]
    first = nonzero[0]
    witness = FailureWitness(
        mm, hit, f"entry({first['row']},{first['col']})", first["val"], k,
        {"nonzero_entries": nonzero})
    return MembershipVerdict(False, witness, hit + 1, k)


def _witness_from_combo(ctx: DvrContext, k: int, D: int, combo: dict) -> RPoly:
    ring = ctx.residue_ring(k)
    cs = [ring.zero] * D + [ring.one]
    for j, c in combo.items():
        cs[j] = ring.canon(c)
    return RPoly(ring, tuple(cs))


def _min_monic_search(ctx: DvrContext, n: int, k: int, D_max: int,
                      polys: list[RPoly] | None = None):
    """Smallest D <= D_max such that some monic of degree D kills every
    companion in the stack, plus the Howell-canonical witness.  None when
    the cap is exhausted."""
    stream, _ = companion_stack(ctx, n, k, polys=polys)
    system = new_system(ctx, k, D_max + 1)
    found = ascend_min_monic(stream, system, D_max)
    if found is None:
        return None
    D, combo = found
    return D, _witness_from_combo(ctx, k, D, combo)


def _generator_membership(ctx: DvrContext, n: int, k: int,
                          threads: int = 1) -> tuple:
    """Containment of each generator pi^j * Phi^(k-j) of (Phi, pi)^k
    in N_k, for j = 0..k-1."""
    ph = phi(ctx, n)
    return tuple(
        (j, null_membership(ph.pow(k - j).scale_pi(j), k, n, threads).member)
        for j in range(k))


def minimal_monic_degree(ctx: DvrContext, n: int, k: int,
                         D_max: int | None = None,
                         threads: int = 1) -> NullIdealReport:
    """Degree of a minimal monic element of N_k, with certificate.

    The search never assumes the expected answer: it ascends D from 0 and
    certifies both directions (no solution below D by Howell rank, the
    degree-D witness re-checked by a full companion scan).  D_max defaults
    to k * deg Phi, which always contains the solution since Phi^k is in
    N_k.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    dphi = phi_degree(ctx, n)
    if D_max is None:
        D_max = k * dphi
    found = _min_monic_search(ctx, n, k, D_max)
    if found is None:
        raise SearchExhausted(D_max)
    D, wit = found
    recheck = null_membership(wit.lift(), k, n, threads=threads)
    if not recheck.member:
        raise RuntimeError("howell witness failed the direct companion scan")
    gens = _generator_membership(ctx, n, k, threads)
    return NullIdealReport(ctx, n, k, D, wit,
                           generators_verified=all(ok for _, ok in gens),
                           phi_power_matches=(D == k * dphi))


def phi_k_degrees(ctx: DvrContext, n: int, d_max: int) -> tuple:
    """deg of a minimal monic in N_k for k = 1, 2, ... while it stays
    <= d_max; the first k that exceeds the cap is recorded as None and
    ends the table (the degrees are nondecreasing in k)."""
    out = []
    k = 1
    while True:
        found = _min_monic_search(ctx, n, k, d_max)
        if found is None:
            out.append((k, None))
            return tuple(out)
        out.append((k, found[0]))
        k += 1


def lcm_primary(ctx: DvrContext, iota: tuple, k: int, n: int,
                D_max: int | None = None,
                threads: int = 1) -> LcmPrimaryReport:
    """Minimal monic multiple of every iota-primary monic of degree
    D = deg(iota) * floor(n / deg iota) at precision k.

    iota is a monic irreducible over the residue field (ascending digit
    tuple).  A monic f of degree D is iota-primary when f mod pi is the
    appropriate power of iota; the family is parameterized as
    lift(iota^e) + pi * r with r running over all polynomials of degree
    < D at precision k - 1.  Divisibility by f is g(C_f) = 0, so the
    minimal common multiple comes out of the same Howell ascent.
    """
    iota = tuple(iota)
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    di = len(iota) - 1
    if di < 1 or di > n or iota[-1] != 1 or not is_irreducible(ctx, iota):
        raise ValueError("iota must be monic irreducible of degree 1..n")
    e = n // di
    D = di * e
    ring = ctx.residue_ring(k)

    base_fq = (1,)
    for _ in range(e):
        base_fq = fq_mul(ctx, base_fq, iota)
    base = lift_fq_poly(ctx, base_fq).reduce(k)
    if k == 1:
        family = [base]
    else:
        sub = ctx.residue_ring(k - 1)
        Bs = sub.size()
        family = []
        for idx in range(Bs**D):
            cs = list(base.coeffs)
            for j in range(D):
                digit = (idx // Bs ** (D - 1 - j)) % Bs
                rj = sub.to_exact(sub.from_rep_index(digit))
                cs[j] = ring.add(cs[j], ring.mul_pi(ring.from_exact(rj), 1))
            family.append(RPoly(ring, tuple(cs)))

    if D_max is None:
        D_max = 2 * k * D
    found = _min_monic_search(ctx, n, k, D_max, polys=family)
    if found is None:
        raise SearchExhausted(D_max)
    Dm, wit = found
    applies = k <= ctx.q
    if applies:
        assert Dm == k * D, f"primary lcm degree {Dm} != {k}*{D}"
    return LcmPrimaryReport(iota, k, n, D, len(family), Dm, wit,
                            equality_claim_applies=applies,
                            degree_equals_kD=(Dm == k * D))


def verify_phi_theorem(ctx: DvrContext, n: int, k: int,
                       threads: int = 1) -> PhiTheoremReport:
    """Checks around N_k = (Phi, pi)^k.

    (a) every generator pi^j * Phi^(k-j) lies in N_k (all k);
    (b) the minimal monic degree equals k * deg Phi when k <= q;
    (c) at k = q + 1 the equality breaks: psi lies in N_{q+1} with
        deg psi strictly below (q+1) * deg Phi.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    dphi = phi_degree(ctx, n)
    q = ctx.q
    D_max = k * dphi
    found = _min_monic_search(ctx, n, k, D_max)
    if found is None:
        raise SearchExhausted(D_max)
    D, wit = found
    recheck = null_membership(wit.lift(), k, n, threads=threads)
    if not recheck.member:
        raise RuntimeError("howell witness failed the direct companion scan")
    gens = _generator_membership(ctx, n, k, threads)

    boundary = None
    if k == q + 1:
        pb = construct_psi(ctx, n)
        psi_in = null_membership(pb.psi, k, n, threads).member
        boundary = {
            "psi_degree": pb.psi.degree,
            "power_bound_degree": k * dphi,
            "psi_in_null_ideal": psi_in,
            "strict_gap": psi_in and D <= pb.psi.degree < k * dphi,
        }

    return PhiTheoremReport(
        ctx, n, k, dphi, gens,
        generators_all_pass=all(ok for _, ok in gens),
        min_monic_degree=D,
        expected_degree=k * dphi,
        degree_matches=(D == k * dphi),
        boundary=boundary)
