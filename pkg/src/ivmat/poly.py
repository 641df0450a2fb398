"""Dense univariate polynomials over V and its finite quotients.

Three layers, matching how the algorithms consume them:

* VPoly: exact coefficients (lifts of V elements, no precision cap),
  ascending order, trailing zeros stripped.
* RPoly: coefficients in V/pi^M at a fixed precision M.
* KPoly: num/pi^den_exp in lowest terms, the elements of K[x] we test
  for membership.

Residue-field polynomials (over F_q) are plain tuples of F_q digits,
ascending; they only appear as inputs to irreducibility and enumeration
helpers and as reductions mod pi.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .dvr import DvrContext, ResidueRing, ZP


class NonMonicDivisor(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact polynomials


@dataclass(frozen=True)
class VPoly:
    ctx: DvrContext
    coeffs: tuple  # exact lifts, ascending, stripped

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        ex = self.ctx.exact
        return bool(self.coeffs) and ex.is_zero(ex.sub(self.coeffs[-1], ex.one))

    def __add__(self, other: "VPoly") -> "VPoly":
        ex = self.ctx.exact
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [ex.add(a[i] if i < len(a) else ex.zero,
                      b[i] if i < len(b) else ex.zero) for i in range(n)]
        return vpoly(self.ctx, out)

    def __sub__(self, other: "VPoly") -> "VPoly":
        return self + (-other)

    def __neg__(self) -> "VPoly":
        ex = self.ctx.exact
        return VPoly(self.ctx, tuple(ex.neg(c) for c in self.coeffs))

    def __mul__(self, other: "VPoly") -> "VPoly":
        ex = self.ctx.exact
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return VPoly(self.ctx, ())
        out = [ex.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not ex.is_zero(x):
                for j, y in enumerate(b):
                    out[i + j] = ex.add(out[i + j], ex.mul(x, y))
        return vpoly(self.ctx, out)

    def scale(self, c) -> "VPoly":
        ex = self.ctx.exact
        return vpoly(self.ctx, [ex.mul(c, a) for a in self.coeffs])

    def scale_pi(self, j: int) -> "VPoly":
        ex = self.ctx.exact
        return vpoly(self.ctx, [ex.mul_pi(a, j) for a in self.coeffs])

    def div_pi(self, j: int) -> "VPoly":
        ex = self.ctx.exact
        return vpoly(self.ctx, [ex.div_pi(a, j) for a in self.coeffs])

    def pow(self, k: int) -> "VPoly":
        out = vpoly(self.ctx, [self.ctx.exact.one])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, c) -> "VPoly":
        """g(x + c) by repeated Horner over exact lifts."""
        ex = self.ctx.exact
        out = VPoly(self.ctx, ())
        xc = vpoly(self.ctx, [c, ex.one])
        for a in reversed(self.coeffs):
            out = out * xc + vpoly(self.ctx, [a])
        return out

    def reduce(self, M: int) -> "RPoly":
        ring = self.ctx.residue_ring(M)
        return rpoly(ring, [ring.from_exact(c) for c in self.coeffs])

    def res_fq(self) -> tuple:
        """Reduction mod pi as a residue-field polynomial (F_q digits)."""
        ex = self.ctx.exact
        return fq_strip(tuple(ex.res0(c) for c in self.coeffs))


def vpoly(ctx: DvrContext, coeffs) -> VPoly:
    ex = ctx.exact
    out = list(coeffs)
    while out and ex.is_zero(out[-1]):
        out.pop()
    return VPoly(ctx, tuple(out))


def vpoly_from_ints(ctx: DvrContext, ints) -> VPoly:
    """Build a VPoly from plain integer coefficients (ascending)."""
    ex = ctx.exact
    return vpoly(ctx, [ex.from_int(c) for c in ints])


def vpoly_x(ctx: DvrContext) -> VPoly:
    ex = ctx.exact
    return VPoly(ctx, (ex.zero, ex.one))


def lift_fq_poly(ctx: DvrContext, f: tuple) -> VPoly:
    """Canonical lift of a residue-field polynomial to V[x]."""
    ex = ctx.exact
    return vpoly(ctx, [ex.lift_fq(a) for a in f])


# ---------------------------------------------------------------------------
# residue-ring polynomials


@dataclass(frozen=True)
class RPoly:
    ring: ResidueRing
    coeffs: tuple  # raw representatives, ascending, stripped

    @property
    def ctx(self) -> DvrContext:
        return self.ring.ctx

    @property
    def M(self) -> int:
        return self.ring.M

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        r = self.ring
        return bool(self.coeffs) and r.is_zero(r.sub(self.coeffs[-1], r.one))

    def __add__(self, other: "RPoly") -> "RPoly":
        r = self.ring
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [r.add(a[i] if i < len(a) else r.zero,
                     b[i] if i < len(b) else r.zero) for i in range(n)]
        return rpoly(r, out)

    def __sub__(self, other: "RPoly") -> "RPoly":
        return self + (-other)

    def __neg__(self) -> "RPoly":
        return RPoly(self.ring, tuple(self.ring.neg(c) for c in self.coeffs))

    def __mul__(self, other: "RPoly") -> "RPoly":
        r = self.ring
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RPoly(r, ())
        out = [r.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not r.is_zero(x):
                for j, y in enumerate(b):
                    out[i + j] = r.add(out[i + j], r.mul(x, y))
        return rpoly(r, out)

    def lift(self) -> VPoly:
        r = self.ring
        return vpoly(r.ctx, [r.to_exact(c) for c in self.coeffs])

    def reduce(self, M2: int) -> "RPoly":
        ring2 = self.ring.ctx.residue_ring(M2)
        return rpoly(ring2, [ring2.from_exact(self.ring.to_exact(c))
                             for c in self.coeffs])

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    def res_fq(self) -> tuple:
        r = self.ring
        return fq_strip(tuple(r.res0(c) for c in self.coeffs))


def rpoly(ring: ResidueRing, coeffs) -> RPoly:
    out = [ring.canon(c) for c in coeffs]
    while out and ring.is_zero(out[-1]):
        out.pop()
    return RPoly(ring, tuple(out))


def divrem_monic(f: RPoly, m: RPoly) -> tuple[RPoly, RPoly]:
    """Long division by a monic divisor; exact over the residue ring."""
    if not m.is_monic():
        raise NonMonicDivisor("divisor must be monic")
    r = f.ring
    dm = m.degree
    rem = list(f.coeffs)
    quo = [r.zero] * max(len(rem) - dm, 0)
    for i in range(len(rem) - dm - 1, -1, -1):
        c = rem[i + dm]
        if r.is_zero(c):
            continue
        quo[i] = c
        for j, mc in enumerate(m.coeffs):
            rem[i + j] = r.sub(rem[i + j], r.mul(c, mc))
    return rpoly(r, quo), rpoly(r, rem[:dm])


def min_coeff_val(g) -> int:
    """Minimum pi-adic valuation over the coefficients of g."""
    if isinstance(g, VPoly):
        if g.is_zero():
            raise ZeroPolynomial("zero polynomial has no minimum valuation")
        ex = g.ctx.exact
        vals = [ex.val(c) for c in g.coeffs]
        return min(v for v in vals if v is not None)
    if g.is_zero():
        raise ZeroPolynomial("zero polynomial has no minimum valuation")
    return min(g.ring.val(c) for c in g.coeffs)


# ---------------------------------------------------------------------------
# K[x] in lowest terms


@dataclass(frozen=True)
class KPoly:
    """num(x)/pi^den_exp with pi not dividing num when den_exp > 0."""

    num: VPoly
    den_exp: int

    @property
    def ctx(self) -> DvrContext:
        return self.num.ctx


def kpoly(num: VPoly, den_exp: int) -> KPoly:
    if den_exp < 0:
        raise ValueError("denominator exponent must be >= 0")
    if num.is_zero():
        return KPoly(num, 0)
    if den_exp > 0:
        v = min(min_coeff_val(num), den_exp)
        if v:
            num = num.div_pi(v)
            den_exp -= v
    return KPoly(num, den_exp)


# ---------------------------------------------------------------------------
# residue-field polynomial helpers (tuples of F_q digits, ascending)


def fq_strip(f: tuple) -> tuple:
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def fq_mul(ctx: DvrContext, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    fq = ctx.fq
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fq.add(out[i + j], fq.mul(x, y))
    return tuple(out)


def fq_divrem(ctx: DvrContext, f: tuple, m: tuple) -> tuple[tuple, tuple]:
    """Division over F_q; m need not be monic (leading coeff inverted)."""
    fq = ctx.fq
    m = fq_strip(m)
    if not m:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = fq.inv(m[-1])
    dm = len(m) - 1
    rem = list(f)
    quo = [0] * max(len(rem) - dm, 0)
    for i in range(len(rem) - dm - 1, -1, -1):
        c = fq.mul(rem[i + dm], inv_lead)
        if c:
            quo[i] = c
            for j, mc in enumerate(m):
                rem[i + j] = fq.sub(rem[i + j], fq.mul(c, mc))
    return fq_strip(tuple(quo)), fq_strip(tuple(rem[:dm]))


def is_irreducible(ctx: DvrContext, f) -> bool:
    """Irreducibility over F_q by trial division (degrees here are tiny)."""
    f = fq_strip(tuple(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for m in enumerate_irreducibles(ctx, e):
            if not fq_divrem(ctx, f, m)[1]:
                return False
    return True


def enumerate_irreducibles(ctx: DvrContext, d: int) -> list[tuple]:
    """All monic irreducibles of degree d over F_q, lexicographic in the
    ascending coefficient tuple."""
    key = ("irr", d)
    if key in ctx._cache:
        return ctx._cache[key]
    q = ctx.q
    out = []
    if d == 1:
        out = [(a, 1) for a in range(q)]
    else:
        lower = [m for e in range(1, d // 2 + 1)
                 for m in enumerate_irreducibles(ctx, e)]
        for cs in itertools.product(range(q), repeat=d):
            f = cs + (1,)
            if all(fq_divrem(ctx, f, m)[1] for m in lower):
                out.append(f)
    ctx._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# monic enumeration at precision M


def count_monic(ctx: DvrContext, d: int, M: int) -> int:
    return ctx.residue_ring(M).size() ** d


def monic_from_index(ctx: DvrContext, d: int, M: int, idx: int) -> RPoly:
    """The idx-th monic polynomial of degree d at precision M.

    Index order is lexicographic in the ascending coefficient tuple
    (c_0, ..., c_{d-1}): c_0 is the most significant digit.  This fixed
    order is what makes "first failing witness" deterministic.
    """
    ring = ctx.residue_ring(M)
    B = ring.size()
    cs = []
    for j in range(d):
        digit = (idx // B ** (d - 1 - j)) % B
        cs.append(ring.from_rep_index(digit))
    cs.append(ring.one)
    return RPoly(ring, tuple(cs))


def monic_index(m: RPoly) -> int:
    ring = m.ring
    B = ring.size()
    d = m.degree
    idx = 0
    for j in range(d):
        idx += ring.rep_index(m.coeff(j)) * B ** (d - 1 - j)
    return idx


def enumerate_monic(ctx: DvrContext, d: int, M: int, start: int = 0,
                    stop: int | None = None):
    """Iterate the monic degree-d polynomials at precision M in index
    order; [start, stop) supports range partitioning for parallel scans."""
    if d < 1 or M < 1:
        raise ValueError("need d >= 1 and M >= 1")
    total = count_monic(ctx, d, M)
    if stop is None or stop > total:
        stop = total
    for idx in range(start, stop):
        yield monic_from_index(ctx, d, M, idx)


# ---------------------------------------------------------------------------
# text and JSON formats


def poly_text(g, var: str = "x") -> str:
    """Human text form like "x^6 - x^5 - x^3 + x^2"; zp only."""
    if isinstance(g, RPoly):
        g = g.lift()
    if g.ctx.backend != ZP:
        raise ValueError("text format is defined for the zp backend only")
    if g.is_zero():
        return "0"
    parts = []
    for k in range(g.degree, -1, -1):
        c = g.coeffs[k] if k < len(g.coeffs) else 0
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xs = var if k == 1 else f"{var}^{k}"
            body = xs if mag == 1 else f"{mag}{xs}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(r"^([+-]?\d*)(?:\*?(x)(?:\^(\d+))?)?$")


def parse_poly_text(ctx: DvrContext, s: str) -> VPoly:
    """Parse the text form (zp only).  Accepts optional spaces and '*'."""
    if ctx.backend != ZP:
        raise ValueError("text format is defined for the zp backend only")
    s = s.strip()
    if s in ("", "0"):
        return VPoly(ctx, ())
    s = s.replace(" ", "").replace("-", "+-")
    terms = [t for t in s.split("+") if t]
    coeffs: dict[int, int] = {}
    for t in terms:
        m = _TERM_RE.match(t)
        if not m:
            raise ValueError(f"cannot parse term {t!r}")
        cs, xs, es = m.groups()
        if xs is None:
            if cs in ("", "+", "-"):
                raise ValueError(f"cannot parse term {t!r}")
            k, c = 0, int(cs)
        else:
            k = int(es) if es is not None else 1
            c = int(cs) if cs not in ("", "+", "-") else (-1 if cs == "-" else 1)
        coeffs[k] = coeffs.get(k, 0) + c
    top = max(coeffs)
    return vpoly(ctx, [coeffs.get(k, 0) for k in range(top + 1)])


def _coeff_to_json(ctx: DvrContext, c):
    if ctx.backend == ZP:
        return str(c)
    # nested arrays of F_p digits by (t-power, u-power)
    fq = ctx.fq
    return [[int(d) for d in fq._digits(a)] if ctx.e > 1 else [int(a)]
            for a in c]


def _coeff_from_json(ctx: DvrContext, c):
    if ctx.backend == ZP:
        return int(c)
    fq = ctx.fq
    out = []
    for digs in c:
        if isinstance(digs, int):
            digs = [digs]
        out.append(fq._undigits([int(d) % ctx.p for d in list(digs) +
                                 [0] * (ctx.e - len(digs))]))
    return ctx.exact._strip(tuple(out))


def vpoly_to_json(g: VPoly) -> dict:
    return {"coeffs": [_coeff_to_json(g.ctx, c) for c in g.coeffs]}


def vpoly_from_json(ctx: DvrContext, data: dict) -> VPoly:
    return vpoly(ctx, [_coeff_from_json(ctx, c) for c in data["coeffs"]])


def kpoly_to_json(f: KPoly) -> dict:
    out = vpoly_to_json(f.num)
    out["den_exp"] = f.den_exp
    return out


def kpoly_from_json(ctx: DvrContext, data: dict) -> KPoly:
    return kpoly(vpoly_from_json(ctx, data), int(data.get("den_exp", 0)))


def rpoly_to_json(m: RPoly) -> dict:
    out = vpoly_to_json(m.lift())
    out["precision"] = m.M
    return out
