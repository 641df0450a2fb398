"""HTTP service exposing the package over six POST endpoints that mirror
the CLI subcommands one-to-one.  The CLI talks to this app in-process by
default (ASGI transport), or over the network when pointed at a running
`ivmat serve`.

Status codes: 200 carries a verdict (including negative verdicts --
"not a member" is a result, not an error); 400/422 marks invalid input;
409 marks a computation that contradicts an asserted identity or
exhausts a theory-given search bound, which the CLI maps to its
contradiction exit code.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .cases import CASES, case_quat_iso, run_all, run_case
from .construct import construct_F, construct_psi, phi_degree
from .dvr import DvrContext, make_context
from .membership import (closure_membership, int_matrix_membership, mu_table,
                         properly_integral)
from .nullideal import lcm_primary, minimal_monic_degree, verify_phi_theorem
from .poly import KPoly, kpoly, kpoly_from_json, parse_poly_text

app = FastAPI(title="ivmat", docs_url=None, redoc_url=None)


@app.exception_handler(ValueError)
async def _bad_input(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(RuntimeError)
async def _contradiction(request: Request, exc: RuntimeError):
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.exception_handler(AssertionError)
async def _broken_identity(request: Request, exc: AssertionError):
    return JSONResponse(status_code=409, content={"detail": str(exc)})


class RingIn(BaseModel):
    p: int
    backend: Literal["zp", "fqt"] = "zp"
    e: int = 1
    field_modulus: list[int] | None = None

    def context(self) -> DvrContext:
        fm = tuple(self.field_modulus) if self.field_modulus else None
        return make_context(self.backend, self.p, self.e, fm)


class PolyIn(BaseModel):
    """A K[x] element: canonical text plus den_exp, or the JSON
    coefficient form (which carries its own den_exp)."""

    text: str | None = None
    coeffs: list | None = None
    den_exp: int = 0

    def parse(self, ctx: DvrContext) -> KPoly:
        if self.text is not None:
            return kpoly(parse_poly_text(ctx, self.text), self.den_exp)
        if self.coeffs is not None:
            return kpoly_from_json(ctx, {"coeffs": self.coeffs,
                                         "den_exp": self.den_exp})
        raise ValueError("polynomial needs either 'text' or 'coeffs'")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


class ConstructIn(RingIn):
    n: int = 2
    psi: bool = False


@app.post("/construct")
def construct(req: ConstructIn) -> dict:
    ctx = req.context()
    out = {"schema": 1, "bundle": construct_F(ctx, req.n).to_json()}
    if req.psi:
        out["psi"] = construct_psi(ctx, req.n).to_json()
    return out


class CheckIn(RingIn):
    n: int = 2
    poly: PolyIn
    mode: Literal["closure", "ring", "proper"] = "proper"
    threads: int = Field(default=1, ge=1, le=64)


@app.post("/check")
def check(req: CheckIn) -> dict:
    ctx = req.context()
    f = req.poly.parse(ctx)
    if req.mode == "closure":
        result = closure_membership(f, req.n, threads=req.threads).to_json()
    elif req.mode == "ring":
        result = int_matrix_membership(f, req.n, threads=req.threads).to_json()
    else:
        result = properly_integral(f, req.n, threads=req.threads).to_json()
    return {"schema": 1, "mode": req.mode, "result": result}


class NullIdealIn(RingIn):
    n: int = 2
    k: int = 1
    action: Literal["verify", "min-degree", "lcm"] = "verify"
    iota: list[int] | None = None
    d_max: int | None = None
    threads: int = Field(default=1, ge=1, le=64)


@app.post("/null-ideal")
def null_ideal(req: NullIdealIn) -> dict:
    ctx = req.context()
    if req.action == "verify":
        rep = verify_phi_theorem(ctx, req.n, req.k, threads=req.threads)
        return {"schema": 1, "action": "verify", "report": rep.to_json()}
    if req.action == "min-degree":
        rep = minimal_monic_degree(ctx, req.n, req.k, D_max=req.d_max,
                                   threads=req.threads)
        return {"schema": 1, "action": "min-degree", "report": rep.to_json()}
    if req.iota is None:
        raise ValueError("lcm action needs iota (ascending digit list)")
    rep = lcm_primary(ctx, tuple(req.iota), req.k, req.n, D_max=req.d_max,
                      threads=req.threads)
    return {"schema": 1, "action": "lcm", "report": rep.to_json()}


class PiSequenceIn(RingIn):
    n: int = 2
    d_max: int | None = None


@app.post("/pi-sequence")
def pi_sequence(req: PiSequenceIn) -> dict:
    ctx = req.context()
    d_max = req.d_max
    if d_max is None:
        d_max = ctx.q * phi_degree(ctx, req.n)
    table = mu_table(ctx, req.n, d_max)
    return {"schema": 1, "table": table.to_json(),
            "agreement": table.agreement}


class QuatIn(BaseModel):
    p: int = 3
    k: int = 3
    order: str = "Lipschitz"
    check_f: bool = False


@app.post("/quat")
def quat(req: QuatIn) -> dict:
    order = {"lipschitz": "Lipschitz", "hurwitz": "Hurwitz"}.get(
        req.order.lower())
    if order is None:
        raise ValueError(f"unknown order {req.order!r}")
    res = case_quat_iso(p=req.p, k=req.k, order=order, check_f=req.check_f)
    return res.to_json()


class VerifyPaperIn(BaseModel):
    case: str | None = None  # None runs every case
    p: int | None = None
    n: int | None = None
    k: int | None = None
    d_max: int | None = None
    threads: int = Field(default=1, ge=1, le=64)


@app.post("/verify-paper")
def verify_paper(req: VerifyPaperIn) -> dict:
    if req.case is not None:
        if req.case not in CASES:
            raise ValueError(f"unknown case {req.case!r}; "
                             f"known: {', '.join(sorted(CASES))}")
        res = run_case(req.case, p=req.p, n=req.n, k=req.k, d_max=req.d_max,
                       threads=req.threads)
        return res.to_json()
    results = [r.to_json() for r in run_all(threads=req.threads)]
    return {"schema": 1, "pass": all(r["pass"] for r in results),
            "cases": results}
