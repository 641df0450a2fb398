"""Verdict and report dataclasses shared by the null-ideal and membership
layers, with JSON renderings used by the service and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .dvr import DvrContext
from .poly import RPoly, poly_text, rpoly_to_json
from .dvr import ZP


def _poly_payload(m: RPoly) -> dict:
    out = rpoly_to_json(m)
    if m.ring.ctx.backend == ZP:
        out["text"] = poly_text(m)
    return out


@dataclass(frozen=True)
class FailureWitness:
    """A monic m at stated precision certifying a membership failure.

    where identifies the violated quantity (a matrix entry of g(C_m), or a
    characteristic polynomial coefficient of g(C_m)); found_val is its
    valuation, required_val the threshold it misses.
    """

    m: RPoly
    index: int
    where: str
    found_val: int
    required_val: int
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "m": _poly_payload(self.m),
            "index": self.index,
            "where": self.where,
            "found_val": self.found_val,
            "required_val": self.required_val,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: FailureWitness | None
    checked_count: int
    precision_used: int

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "witness": self.witness.to_json() if self.witness else None,
            "checked_count": self.checked_count,
            "precision_used": self.precision_used,
        }


@dataclass(frozen=True)
class ProperIntegralVerdict:
    closure: MembershipVerdict
    ring: MembershipVerdict
    properly_integral: bool

    def to_json(self) -> dict:
        return {
            "closure": self.closure.to_json(),
            "ring": self.ring.to_json(),
            "properly_integral": self.properly_integral,
        }


@dataclass(frozen=True)
class NullIdealReport:
    ctx: DvrContext
    n: int
    k: int
    min_monic_degree: int
    witness_phi_k: RPoly
    generators_verified: bool
    phi_power_matches: bool

    def to_json(self) -> dict:
        return {
            "ctx": self.ctx.to_json(),
            "n": self.n,
            "k": self.k,
            "min_monic_degree": self.min_monic_degree,
            "witness": _poly_payload(self.witness_phi_k),
            "generators_verified": self.generators_verified,
            "phi_power_matches": self.phi_power_matches,
        }


@dataclass(frozen=True)
class LcmPrimaryReport:
    iota: tuple
    k: int
    n: int
    D: int
    family_size: int
    degree: int
    witness: RPoly
    equality_claim_applies: bool  # k <= q
    degree_equals_kD: bool

    def to_json(self) -> dict:
        return {
            "iota": list(self.iota),
            "k": self.k,
            "n": self.n,
            "D": self.D,
            "family_size": self.family_size,
            "degree": self.degree,
            "witness": _poly_payload(self.witness),
            "equality_claim_applies": self.equality_claim_applies,
            "degree_equals_kD": self.degree_equals_kD,
        }


@dataclass(frozen=True)
class PhiTheoremReport:
    ctx: DvrContext
    n: int
    k: int
    phi_degree: int
    generators: tuple  # ((j, in_null_ideal), ...) for pi^j * Phi^(k-j)
    generators_all_pass: bool
    min_monic_degree: int
    expected_degree: int  # k * deg Phi
    degree_matches: bool
    boundary: dict | None  # k = q+1 gap data (psi degree, membership, gap)

    @property
    def passes(self) -> bool:
        ok = self.generators_all_pass
        if self.k <= self.ctx.q:
            ok = ok and self.degree_matches
        if self.boundary is not None:
            ok = ok and self.boundary["psi_in_null_ideal"] \
                and self.boundary["strict_gap"]
        return ok

    def to_json(self) -> dict:
        return {
            "ctx": self.ctx.to_json(),
            "n": self.n,
            "k": self.k,
            "phi_degree": self.phi_degree,
            "generators": [{"pi_exponent": j, "in_null_ideal": ok}
                           for j, ok in self.generators],
            "generators_all_pass": self.generators_all_pass,
            "min_monic_degree": self.min_monic_degree,
            "expected_degree": self.expected_degree,
            "degree_matches": self.degree_matches,
            "boundary": self.boundary,
            "passes": self.passes,
        }


@dataclass(frozen=True)
class PiSequenceTable:
    ctx: DvrContext
    n: int
    phi_degree: int
    entries: tuple  # ((d, formula_or_None, oracle), ...)
    agreement: bool
    phi_k_degrees: tuple  # ((k, deg phi_k or None beyond d_max), ...)

    def jumps(self) -> list[int]:
        """Degrees d where the oracle value increases."""
        out = []
        prev = 0
        for d, _, oracle in self.entries:
            if oracle > prev:
                out.append(d)
                prev = oracle
        return out

    def to_json(self) -> dict:
        return {
            "ctx": self.ctx.to_json(),
            "n": self.n,
            "phi_degree": self.phi_degree,
            "entries": [{"d": d, "mu_formula": f, "mu_oracle": o}
                        for d, f, o in self.entries],
            "agreement": self.agreement,
            "phi_k_degrees": [{"k": k, "degree": dg}
                              for k, dg in self.phi_k_degrees],
            "jumps": self.jumps(),
        }
