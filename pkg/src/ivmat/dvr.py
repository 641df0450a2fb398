"""Discrete valuation rings with finite residue field.

Two backends are supported: ``zp`` is Z localized at a prime p (uniformizer
pi = p, residue field F_p), and ``fqt`` is F_q[t] localized at (t)
(uniformizer pi = t, residue field F_q with q = p^e).

Every computation runs inside a finite quotient V/pi^M at an explicit
precision M.  All divisibility questions asked downstream are of the form
"val(x) >= j" with j <= M, so truncation is exact.  Canonical representatives
are the digit lifts: integers 0..p^M-1 for zp, t-polynomials of degree < M
with F_q coefficients for fqt.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class NonPrime(ValueError):
    pass


class ReducibleModulus(ValueError):
    pass


class BadArity(ValueError):
    pass


class PrecisionIncrease(ValueError):
    pass


ZP = "zp"
FQT = "fqt"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FqOps:
    """Arithmetic tables for F_q = F_p[u]/(modulus), q = p^e.

    Field elements are encoded as integers in [0, q): the element
    a0 + a1*u + ... + a_{e-1}*u^{e-1} is stored as sum(a_i * p^i).
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.e = e
        self.q = q = p**e
        if e == 1:
            self._add = None  # plain mod-p arithmetic, no tables needed
            return
        # reduce u^e once: u^e = -(m0 + m1 u + ... + m_{e-1} u^{e-1})
        top = [(-c) % p for c in modulus[:e]]
        digs = [self._digits(a) for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digs[a]
            for b in range(a, q):
                db = digs[b]
                prod = [0] * (2 * e - 1)
                for i, ai in enumerate(da):
                    if ai:
                        for j, bj in enumerate(db):
                            prod[i + j] = (prod[i + j] + ai * bj) % p
                for i in range(2 * e - 2, e - 1, -1):
                    c = prod[i]
                    if c:
                        prod[i] = 0
                        for j, t in enumerate(top):
                            prod[i - e + j] = (prod[i - e + j] + c * t) % p
                v = self._undigits(prod[:e])
                mul[a][b] = v
                mul[b][a] = v
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._inv[a]

    def from_int(self, c: int) -> int:
        # image of an ordinary integer in the prime subfield
        return c % self.p


@dataclass(frozen=True)
class DvrContext:
    """The ambient DVR: backend, prime p, residue field size q = p^e."""

    backend: str
    p: int
    e: int = 1
    field_modulus: tuple[int, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def fq(self) -> FqOps:
        if "fq" not in self._cache:
            self._cache["fq"] = FqOps(self.p, self.e, self.field_modulus)
        return self._cache["fq"]

    def residue_ring(self, M: int) -> "ResidueRing":
        key = ("ring", M)
        if key not in self._cache:
            if M < 1:
                raise ValueError("precision M must be >= 1")
            cls = ZpRing if self.backend == ZP else FqtRing
            self._cache[key] = cls(self, M)
        return self._cache[key]

    @property
    def exact(self) -> "ExactOps":
        if "exact" not in self._cache:
            cls = ZpExactOps if self.backend == ZP else FqtExactOps
            self._cache["exact"] = cls(self)
        return self._cache["exact"]

    def describe(self) -> str:
        if self.backend == ZP:
            return f"Z_({self.p})"
        return f"F_{self.q}[t]_(t)"

    def to_json(self) -> dict:
        out = {"backend": self.backend, "p": self.p, "e": self.e}
        if self.field_modulus is not None:
            out["field_modulus"] = list(self.field_modulus)
        return out


def make_context(backend: str, p: int, e: int = 1,
                 field_modulus=None) -> DvrContext:
    """Validated constructor for DvrContext.

    field_modulus is required exactly when backend is fqt with e > 1; it is
    given as ascending F_p coefficients of a monic irreducible of degree e.
    """
    if backend not in (ZP, FQT):
        raise ValueError(f"unknown backend {backend!r}")
    if not _is_prime(p):
        raise NonPrime(f"p = {p} is not prime")
    if e < 1:
        raise BadArity("extension degree e must be >= 1")
    if backend == ZP:
        if e != 1:
            raise BadArity("zp backend forces e = 1")
        if field_modulus is not None:
            raise BadArity("zp backend takes no field modulus")
        return DvrContext(ZP, p, 1, None)
    if e == 1:
        if field_modulus is not None:
            raise BadArity("field modulus only applies when e > 1")
        return DvrContext(FQT, p, 1, None)
    if field_modulus is None:
        raise BadArity("fqt backend with e > 1 needs a field modulus")
    mod = tuple(int(c) % p for c in field_modulus)
    if len(mod) != e + 1 or mod[e] != 1:
        raise ReducibleModulus(
            f"field modulus must be monic of degree {e} over F_{p}")
    from . import poly  # deferred: the irreducibility test lives there
    base = make_context(FQT, p, 1)
    if not poly.is_irreducible(base, mod):
        raise ReducibleModulus(f"{list(mod)} is reducible over F_{p}")
    return DvrContext(FQT, p, e, mod)


def context_from_json(data: dict) -> DvrContext:
    fm = data.get("field_modulus")
    return make_context(data["backend"], int(data["p"]), int(data.get("e", 1)),
                        tuple(fm) if fm is not None else None)


class ResidueRing:
    """Arithmetic on canonical representatives of V/pi^M.

    Raw elements are plain ints (zp) or tuples of M F_q digits (fqt);
    the RingElem wrapper is for the public surface, hot loops stay raw.
    """

    ctx: DvrContext
    M: int

    def elem(self, rep) -> "RingElem":
        return RingElem(self, self.canon(rep))


class ZpRing(ResidueRing):
    def __init__(self, ctx: DvrContext, M: int):
        self.ctx = ctx
        self.M = M
        self.m = ctx.p**M
        self.zero = 0
        self.one = 1 % self.m

    def canon(self, x: int) -> int:
        return x % self.m

    def add(self, x, y):
        return (x + y) % self.m

    def sub(self, x, y):
        return (x - y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def is_zero(self, x) -> bool:
        return x == 0

    def val(self, x) -> int:
        # capped valuation: returns M for zero
        if x == 0:
            return self.M
        p, v = self.ctx.p, 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    def is_unit(self, x) -> bool:
        return x % self.ctx.p != 0

    def unit_inv(self, x):
        return pow(x, -1, self.m)

    def pi_pow(self, j: int):
        return self.ctx.p**j % self.m

    def mul_pi(self, x, j: int):
        return (x * self.ctx.p**j) % self.m

    def div_pi(self, x, j: int):
        # exact division of a canonical representative by pi^j
        pj = self.ctx.p**j
        if x % pj:
            raise ValueError(f"{x} not divisible by pi^{j}")
        return x // pj

    def res0(self, x) -> int:
        # image in the residue field
        return x % self.ctx.p

    def size(self) -> int:
        return self.m

    def rep_index(self, x) -> int:
        return x

    def from_rep_index(self, i: int):
        return i

    def elements(self):
        return range(self.m)

    def to_exact(self, x):
        return x

    def from_exact(self, c):
        return c % self.m


class FqtRing(ResidueRing):
    def __init__(self, ctx: DvrContext, M: int):
        self.ctx = ctx
        self.M = M
        self.fq = ctx.fq
        self.zero = (0,) * M
        self.one = (1,) + (0,) * (M - 1)

    def canon(self, x) -> tuple:
        if len(x) == self.M:
            return tuple(x)
        x = tuple(x)[: self.M]
        return x + (0,) * (self.M - len(x))

    def add(self, x, y):
        f = self.fq
        return tuple(f.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        f = self.fq
        return tuple(f.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        f = self.fq
        return tuple(f.neg(a) for a in x)

    def mul(self, x, y):
        f, M = self.fq, self.M
        out = [0] * M
        for i, a in enumerate(x):
            if a:
                for j in range(M - i):
                    b = y[j]
                    if b:
                        out[i + j] = f.add(out[i + j], f.mul(a, b))
        return tuple(out)

    def is_zero(self, x) -> bool:
        return not any(x)

    def val(self, x) -> int:
        for i, a in enumerate(x):
            if a:
                return i
        return self.M

    def is_unit(self, x) -> bool:
        return x[0] != 0

    def unit_inv(self, x):
        # power series inversion mod t^M
        f, M = self.fq, self.M
        b0 = f.inv(x[0])
        out = [b0] + [0] * (M - 1)
        for i in range(1, M):
            s = 0
            for j in range(1, i + 1):
                if x[j] and out[i - j]:
                    s = f.add(s, f.mul(x[j], out[i - j]))
            out[i] = f.neg(f.mul(b0, s))
        return tuple(out)

    def pi_pow(self, j: int):
        if j >= self.M:
            return self.zero
        return (0,) * j + (1,) + (0,) * (self.M - j - 1)

    def mul_pi(self, x, j: int):
        if j >= self.M:
            return self.zero
        return (0,) * j + tuple(x[: self.M - j])

    def div_pi(self, x, j: int):
        if any(x[:j]):
            raise ValueError(f"element not divisible by pi^{j}")
        return tuple(x[j:]) + (0,) * j

    def res0(self, x) -> int:
        return x[0]

    def size(self) -> int:
        return self.ctx.q**self.M

    def rep_index(self, x) -> int:
        v = 0
        for d in x:  # first t-digit is the most significant for ordering
            v = v * self.ctx.q + d
        return v

    def from_rep_index(self, i: int):
        q = self.ctx.q
        ds = []
        for _ in range(self.M):
            ds.append(i % q)
            i //= q
        return tuple(reversed(ds))

    def elements(self):
        return itertools.product(range(self.ctx.q), repeat=self.M)

    def to_exact(self, x):
        out = tuple(x)
        while out and out[-1] == 0:
            out = out[:-1]
        return out

    def from_exact(self, c):
        return self.canon(c)


@dataclass(frozen=True)
class RingElem:
    """A canonical representative in V/pi^M, tied to its ring."""

    ring: ResidueRing
    rep: object

    @property
    def M(self) -> int:
        return self.ring.M

    def __add__(self, other):
        return RingElem(self.ring, self.ring.add(self.rep, other.rep))

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.sub(self.rep, other.rep))

    def __mul__(self, other):
        return RingElem(self.ring, self.ring.mul(self.rep, other.rep))

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.rep))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.rep)


def val(x: RingElem):
    """Valuation of x, or the string ">=M" when x vanishes mod pi^M."""
    v = x.ring.val(x.rep)
    if x.ring.is_zero(x.rep):
        return f">={x.ring.M}"
    return v


def reduce_precision(x: RingElem, M2: int) -> RingElem:
    if M2 > x.ring.M:
        raise PrecisionIncrease(f"cannot grow precision {x.ring.M} -> {M2}")
    ring2 = x.ring.ctx.residue_ring(M2)
    return ring2.elem(ring2.from_exact(x.ring.to_exact(x.rep)))


def lift_representative(ctx: DvrContext, r: int, M: int) -> RingElem:
    """Canonical lift of a residue-field element to precision M.

    zp: the digit 0..p-1 itself; fqt: the t-degree-0 element with that
    F_q coefficient.
    """
    ring = ctx.residue_ring(M)
    if ctx.backend == ZP:
        return ring.elem(r % ctx.p)
    return ring.elem(ring.canon((r,)))


class ExactOps:
    """Exact arithmetic on lifts (no precision): the coefficient domain of
    VPoly.  zp lifts are unbounded signed ints; fqt lifts are F_q[t]
    polynomials stored as stripped tuples of F_q digits."""


class ZpExactOps(ExactOps):
    def __init__(self, ctx: DvrContext):
        self.ctx = ctx
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def val(self, a):
        # exact pi-adic valuation; None means +infinity (a = 0)
        if a == 0:
            return None
        p, v = self.ctx.p, 0
        while a % p == 0:
            a //= p
            v += 1
        return v

    def mul_pi(self, a, j: int):
        return a * self.ctx.p**j

    def div_pi(self, a, j: int):
        pj = self.ctx.p**j
        if a % pj:
            raise ValueError(f"{a} not divisible by pi^{j}")
        return a // pj

    def lift_fq(self, r: int):
        return r % self.ctx.p

    def from_int(self, c: int):
        return c

    def res0(self, a) -> int:
        return a % self.ctx.p


class FqtExactOps(ExactOps):
    def __init__(self, ctx: DvrContext):
        self.ctx = ctx
        self.zero = ()
        self.one = (1,)

    def _strip(self, t):
        t = tuple(t)
        while t and t[-1] == 0:
            t = t[:-1]
        return t

    def add(self, a, b):
        f = self.ctx.fq
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return self._strip(f.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        f = self.ctx.fq
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return self._strip(out)

    def neg(self, a):
        f = self.ctx.fq
        return tuple(f.neg(x) for x in a)

    def is_zero(self, a) -> bool:
        return len(a) == 0

    def val(self, a):
        for i, x in enumerate(a):
            if x:
                return i
        return None

    def mul_pi(self, a, j: int):
        if not a:
            return ()
        return (0,) * j + a

    def div_pi(self, a, j: int):
        if any(a[:j]):
            raise ValueError("element not divisible by pi^j")
        return self._strip(a[j:])

    def lift_fq(self, r: int):
        return (r,) if r else ()

    def from_int(self, c: int):
        return self.lift_fq(self.ctx.fq.from_int(c))

    def res0(self, a) -> int:
        return a[0] if a else 0
