"""The explicit polynomial constructions over V = Z_(p) or F_q[t]_(t).

Everything here is exact V[x] arithmetic on lifted coefficients; no
precision is involved until a downstream membership check reduces mod
pi^M.  The building blocks:

* phi(ctx, n): Phi = (x^(q^n) - x) ... (x^q - x), the product over the
  first n q-power Frobenius differences.  Monic, degree q + q^2 + ... + q^n.
* theta(ctx, n): the lift of prod f^floor(n/deg f) over monic irreducibles
  f with 2 <= deg f <= n.  Degree deg Phi - q*n.
* construct_F(ctx, n): the numerator H * theta^q over pi^q, where
  h = x^(n-1) * prod_{a in Fq*} (x^n + pi*a) and H = prod_{b in Fq} h(x - b).
* construct_psi(ctx, n): psi = L * theta^(q+1) with
  ell = x^(n-1) * prod_{a in Fq} (x^n + pi*a) (a = 0 included) and
  L = prod_{a in Fq} ell(x - a).

Each constructor re-checks its degree bookkeeping; a failure here means
the arithmetic layer is broken, so they raise AssertionError rather than
return garbage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dvr import DvrContext
from .poly import (KPoly, VPoly, enumerate_irreducibles, fq_mul, kpoly,
                   kpoly_to_json, lift_fq_poly, poly_text, vpoly,
                   vpoly_to_json)
from .dvr import ZP


def phi(ctx: DvrContext, n: int) -> VPoly:
    """Product of (x^(q^j) - x) for j = 1..n; monic of degree
    q + q^2 + ... + q^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    ex = ctx.exact
    q = ctx.q
    out = vpoly(ctx, [ex.one])
    for j in range(1, n + 1):
        d = q**j
        cs = [ex.zero] * (d + 1)
        cs[1] = ex.neg(ex.one)
        cs[d] = ex.one
        out = out * vpoly(ctx, cs)
    assert out.degree == sum(q**j for j in range(1, n + 1))
    return out


def phi_degree(ctx: DvrContext, n: int) -> int:
    return sum(ctx.q**j for j in range(1, n + 1))


def theta(ctx: DvrContext, n: int) -> VPoly:
    """Product of lift(f)^floor(n/deg f) over monic irreducibles f with
    2 <= deg f <= n.  Each factor is lifted coefficientwise first and the
    product is taken exactly in V[x]; lifting the F_q product instead
    would only agree mod pi.  Requires n >= 2 (the product is empty below
    that and the degree bookkeeping it supports starts at n = 2)."""
    if n < 2:
        raise ValueError("theta needs n >= 2")
    out = vpoly(ctx, [ctx.exact.one])
    for d in range(2, n + 1):
        e = n // d
        for f in enumerate_irreducibles(ctx, d):
            out = out * lift_fq_poly(ctx, f).pow(e)
    assert out.degree == phi_degree(ctx, n) - ctx.q * n
    return out


def _linear_factors_product_pows(ctx: DvrContext, n: int) -> tuple:
    # prod_{a in Fq} (x - a)^n over the residue field
    out = (1,)
    fq = ctx.fq
    for a in range(ctx.q):
        lin = (fq.neg(a), 1)
        for _ in range(n):
            out = fq_mul(ctx, out, lin)
    return out


def check_phi_factorisation(ctx: DvrContext, n: int) -> bool:
    """Second route to theta: mod pi, Phi = (prod_a (x-a))^n * theta."""
    lhs = phi(ctx, n).res_fq()
    rhs = fq_mul(ctx, _linear_factors_product_pows(ctx, n),
                 theta(ctx, n).res_fq())
    return lhs == rhs


@dataclass(frozen=True)
class ConstructionBundle:
    """F = H * theta^q / pi^q plus every intermediate, with the degree
    identities already enforced."""

    ctx: DvrContext
    n: int
    phi: VPoly
    theta: VPoly
    h: VPoly
    H: VPoly
    F: KPoly

    def to_json(self) -> dict:
        q = self.ctx.q
        out = {
            "ctx": self.ctx.to_json(),
            "n": self.n,
            "q": q,
            "phi": vpoly_to_json(self.phi),
            "theta": vpoly_to_json(self.theta),
            "h": vpoly_to_json(self.h),
            "H": vpoly_to_json(self.H),
            "F": kpoly_to_json(self.F),
            "degrees": {
                "phi": self.phi.degree,
                "theta": self.theta.degree,
                "h": self.h.degree,
                "H": self.H.degree,
                "F_num": self.F.num.degree,
            },
        }
        if self.ctx.backend == ZP:
            out["phi_text"] = poly_text(self.phi)
            out["F_num_text"] = poly_text(self.F.num)
        return out


def _x_pow_plus(ctx: DvrContext, n: int, c) -> VPoly:
    ex = ctx.exact
    cs = [ex.zero] * (n + 1)
    cs[0] = c
    cs[n] = ex.one
    return vpoly(ctx, cs)


def construct_F(ctx: DvrContext, n: int) -> ConstructionBundle:
    """The properly integral element H * theta^q / pi^q of Int(Lambda_n)."""
    if n < 2:
        raise ValueError("the construction needs n >= 2")
    ex = ctx.exact
    q = ctx.q
    ph = phi(ctx, n)
    th = theta(ctx, n)
    # h = x^(n-1) * prod over nonzero residues a of (x^n + pi*a)
    h = vpoly(ctx, [ex.zero] * (n - 1) + [ex.one])
    for a in range(1, q):
        h = h * _x_pow_plus(ctx, n, ex.mul_pi(ex.lift_fq(a), 1))
    assert h.degree == q * n - 1
    H = vpoly(ctx, [ex.one])
    for b in range(q):
        H = H * h.shift(ex.neg(ex.lift_fq(b)))
    assert H.degree == q * q * n - q
    num = H * th.pow(q)
    assert num.degree == q * ph.degree - q
    F = KPoly(num, q)  # lowest terms for free: num is monic
    return ConstructionBundle(ctx, n, ph, th, h, H, F)


@dataclass(frozen=True)
class PsiBundle:
    """psi = L * theta^(q+1), the degree witness at level k = q + 1."""

    ctx: DvrContext
    n: int
    theta: VPoly
    ell: VPoly
    L: VPoly
    psi: VPoly

    def to_json(self) -> dict:
        out = {
            "ctx": self.ctx.to_json(),
            "n": self.n,
            "q": self.ctx.q,
            "theta": vpoly_to_json(self.theta),
            "ell": vpoly_to_json(self.ell),
            "L": vpoly_to_json(self.L),
            "psi": vpoly_to_json(self.psi),
            "degrees": {
                "theta": self.theta.degree,
                "ell": self.ell.degree,
                "L": self.L.degree,
                "psi": self.psi.degree,
            },
        }
        if self.ctx.backend == ZP:
            out["psi_text"] = poly_text(self.psi)
        return out


def construct_psi(ctx: DvrContext, n: int) -> PsiBundle:
    """Monic element of the level-(q+1) null ideal of degree
    (q+1) * deg Phi - q, beating the q+1 power bound."""
    if n < 2:
        raise ValueError("the construction needs n >= 2")
    ex = ctx.exact
    q = ctx.q
    th = theta(ctx, n)
    # ell includes the a = 0 factor (plain x^n), unlike h
    ell = vpoly(ctx, [ex.zero] * (n - 1) + [ex.one])
    for a in range(q):
        ell = ell * _x_pow_plus(ctx, n, ex.mul_pi(ex.lift_fq(a), 1))
    assert ell.degree == q * n + n - 1
    L = vpoly(ctx, [ex.one])
    for a in range(q):
        L = L * ell.shift(ex.neg(ex.lift_fq(a)))
    psi = L * th.pow(q + 1)
    assert psi.degree == (q + 1) * phi_degree(ctx, n) - q
    return PsiBundle(ctx, n, th, ell, L, psi)
