"""Howell-form row spans over the chain rings Z/p^K and F_q[t]/(t^K).

Plain Gaussian elimination is unsound over these rings (zero divisors, no
general inverses), so membership in a row span is decided through a Howell
form: at most one pivot row per leading column, each pivot entry normalized
to pi^v by a unit, and for every stored row with pivot valuation v > 0 its
annihilator multiple pi^(K-v) * row is inserted as well.  With that closure
property, a vector lies in the span of all inserted generators exactly when
reduction against the pivots cancels it completely.

Rows are inserted incrementally (generators arrive one at a time from a
power-vector stream) and every stored row carries the combination of
original generators that produced it, so a successful membership test
returns an explicit certificate.  The certificate is what turns "degree D
is solvable" into an actual monic witness polynomial downstream.

Vectors live either in numpy int64 arrays (zp backend, modulus small
enough to rule out overflow) or in plain lists of ring representatives
(fqt backend, or zp with a huge modulus).
"""

from __future__ import annotations

import numpy as np

from .dvr import DvrContext, ResidueRing, ZP

# numpy path is safe while products stay inside int64: t*entry < m^2
_NP_MODULUS_LIMIT = 1 << 31


def numpy_ok(ctx: DvrContext, K: int) -> bool:
    return ctx.backend == ZP and ctx.p**K < _NP_MODULUS_LIMIT


class ZpHowellSystem:
    """Howell span with numpy rows over Z/p^K."""

    def __init__(self, p: int, K: int, max_gens: int):
        self.p = p
        self.K = K
        self.m = p**K
        self.max_gens = max_gens
        self.gen_count = 0
        self.rows: dict[int, tuple[int, np.ndarray, np.ndarray]] = {}

    def _val(self, x: int) -> int:
        if x == 0:
            return self.K
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def neg(self, vec: np.ndarray) -> np.ndarray:
        return (-vec) % self.m

    def _reduce(self, vec, combo):
        m = self.m
        for c in sorted(self.rows):
            e = int(vec[c])
            if e == 0:
                continue
            v, row, rcombo = self.rows[c]
            pv = self.p**v
            if e % pv == 0:
                t = e // pv
                vec = (vec - t * row) % m
                combo = (combo - t * rcombo) % m
        return vec, combo

    def insert(self, vec: np.ndarray) -> None:
        g = self.gen_count
        self.gen_count += 1
        combo = np.zeros(self.max_gens, dtype=np.int64)
        combo[g] = 1
        self._insert_row(np.asarray(vec, dtype=np.int64) % self.m, combo)

    def _insert_row(self, vec, combo):
        stack = [(vec, combo)]
        while stack:
            cur, cc = stack.pop()
            cur, cc = self._reduce(cur, cc)
            nz = np.nonzero(cur)[0]
            if len(nz) == 0:
                continue
            lead = int(nz[0])
            v = self._val(int(cur[lead]))
            unit = int(cur[lead]) // self.p**v
            inv = pow(unit, -1, self.m)
            cur = (cur * inv) % self.m
            cc = (cc * inv) % self.m
            old = self.rows.get(lead)
            # after reduction the new pivot is strictly stronger if present
            self.rows[lead] = (v, cur, cc)
            if old is not None:
                stack.append((old[1], old[2]))
            if v > 0:
                ann = self.p ** (self.K - v)
                stack.append(((cur * ann) % self.m, (cc * ann) % self.m))

    def express(self, vec: np.ndarray):
        """Combination of inserted generators equal to vec, or None.

        Returns {generator_index: coefficient} with canonical nonzero
        coefficients mod p^K.
        """
        vec = np.asarray(vec, dtype=np.int64) % self.m
        combo = np.zeros(self.max_gens, dtype=np.int64)
        vec, combo = self._reduce(vec, combo)
        if np.any(vec):
            return None
        # vec - sum t_r row_r = 0 with combo tracking the subtracted part
        out = (-combo) % self.m
        return {int(i): int(out[i]) for i in np.nonzero(out)[0]}

    def contains(self, vec) -> bool:
        return self.express(vec) is not None


class RingHowellSystem:
    """Howell span with list-of-representative rows over any chain ring."""

    def __init__(self, ring: ResidueRing, max_gens: int | None = None):
        self.ring = ring
        self.K = ring.M
        self.gen_count = 0
        self.rows: dict[int, tuple[int, list, dict]] = {}

    def neg(self, vec):
        r = self.ring
        return [r.neg(x) for x in vec]

    def _combo_submul(self, combo, t, rcombo):
        r = self.ring
        for k, c in rcombo.items():
            nv = r.sub(combo.get(k, r.zero), r.mul(t, c))
            if r.is_zero(nv):
                combo.pop(k, None)
            else:
                combo[k] = nv
        return combo

    def _reduce(self, vec, combo):
        r = self.ring
        for c in sorted(self.rows):
            e = vec[c]
            if r.is_zero(e):
                continue
            v, row, rcombo = self.rows[c]
            if r.val(e) >= v:
                t = r.div_pi(e, v)
                vec = [r.sub(x, r.mul(t, y)) for x, y in zip(vec, row)]
                combo = self._combo_submul(combo, t, rcombo)
        return vec, combo

    def insert(self, vec) -> None:
        r = self.ring
        g = self.gen_count
        self.gen_count += 1
        self._insert_row([r.canon(x) for x in vec], {g: r.one})

    def _insert_row(self, vec, combo):
        r = self.ring
        stack = [(vec, combo)]
        while stack:
            cur, cc = stack.pop()
            cur, cc = self._reduce(cur, cc)
            lead = next((i for i, x in enumerate(cur) if not r.is_zero(x)), None)
            if lead is None:
                continue
            v = r.val(cur[lead])
            unit = r.div_pi(cur[lead], v)  # cur[lead] = unit * pi^v
            inv = r.unit_inv(unit)
            cur = [r.mul(inv, x) for x in cur]
            cc = {k: r.mul(inv, c) for k, c in cc.items()}
            old = self.rows.get(lead)
            self.rows[lead] = (v, cur, cc)
            if old is not None:
                stack.append((old[1], old[2]))
            if v > 0:
                ann = r.pi_pow(self.K - v)
                stack.append(([r.mul(ann, x) for x in cur],
                              {k: r.mul(ann, c) for k, c in cc.items()}))

    def express(self, vec):
        r = self.ring
        vec, combo = self._reduce([r.canon(x) for x in vec], {})
        if any(not r.is_zero(x) for x in vec):
            return None
        return {k: r.neg(c) for k, c in combo.items() if not r.is_zero(c)}

    def contains(self, vec) -> bool:
        return self.express(vec) is not None


def new_system(ctx: DvrContext, K: int, max_gens: int):
    """Pick the numpy span when the modulus allows it, else the generic one."""
    if numpy_ok(ctx, K):
        return ZpHowellSystem(ctx.p, K, max_gens)
    return RingHowellSystem(ctx.residue_ring(K), max_gens)


def ascend_min_monic(stream, system, D_max: int):
    """Smallest D with -w_D in the span of w_0..w_{D-1}, with certificate.

    stream yields the power vectors w_D (entries of X^D across all scan
    points); system is a Howell span over the same ring.  Returns
    (D, combo) where combo maps j to c_j with x^D + sum c_j x^j vanishing
    on every scan point, or None when D_max is exhausted.
    """
    for D in range(D_max + 1):
        w = stream.vector()
        if D > 0:
            combo = system.express(system.neg(w))
            if combo is not None:
                return D, combo
        system.insert(w)
        stream.advance()
    return None
