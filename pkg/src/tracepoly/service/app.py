"""FastAPI service wrapping the core package.

Long scans and searches are the natural fit for a service surface; every
endpoint is a stateless wrapper around a library call, with pydantic models
validating both directions.  Run with ``tracepoly serve`` or point uvicorn
at ``tracepoly.service.app:app``.
"""
from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..discreteness import arithmeticity_screen, killer_search
from ..quatalg import (
    AlgebraMismatchError,
    NonPolynomialResultError,
    enumerate_units,
    qconj,
    qmul,
    qnorm,
    rho,
    rho_inv,
)
from ..words import NotGoodWordError, WordSyntaxError, parse_word, star
from ..wordpoly import chebyshev_rstw, word_bundle
from ..zeroset import scan_roots
from .schemas import (
    ArithRequest,
    ArithResponse,
    ChebyshevRequest,
    ComplexNumber,
    DiscreteRequest,
    DiscreteResponse,
    PolyData,
    QuatData,
    QuatPairRequest,
    RootEntry,
    ScanRequest,
    ScanResponse,
    StarRequest,
    StarResponse,
    UnitsRequest,
    UnitsResponse,
    WordBundle,
    WordRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="tracepoly",
        version=__version__,
        description="Exact trace polynomials of good words in two-generator Mobius groups",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/words/poly", response_model=WordBundle)
    def poly(req: WordRequest) -> WordBundle:
        try:
            w = parse_word(req.word, order2=req.order2)
        except (WordSyntaxError, NotGoodWordError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        if w.is_identity:
            raise HTTPException(status_code=422, detail="word reduces to the identity")
        return WordBundle.model_validate(word_bundle(w))

    @app.post("/words/star", response_model=StarResponse)
    def star_words(req: StarRequest) -> StarResponse:
        try:
            w1 = parse_word(req.w1, order2=True)
            w2 = parse_word(req.w2, order2=True)
        except (WordSyntaxError, NotGoodWordError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        out = star(w1, w2)
        return StarResponse(word=str(out), is_identity=out.is_identity)

    @app.post("/units", response_model=UnitsResponse)
    def units(req: UnitsRequest) -> UnitsResponse:
        try:
            found = enumerate_units(req.max_degree, Fraction(req.coeff_bound).limit_denominator(64))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return UnitsResponse(count=len(found), units=[QuatData.of(q) for q in found])

    @app.post("/discreteness/check", response_model=DiscreteResponse)
    def discreteness(req: DiscreteRequest) -> DiscreteResponse:
        cert = killer_search(
            req.beta.value(), req.gamma.value(),
            max_depth=req.max_depth, word_budget=req.word_budget,
        )
        if cert is None:
            return DiscreteResponse(result="inconclusive")
        return DiscreteResponse(result="certificate", certificate=cert.to_json())

    @app.post("/zeroset/scan", response_model=ScanResponse)
    def zeroset(req: ScanRequest) -> ScanResponse:
        try:
            scan = scan_roots(req.beta.value(), req.max_syllables, req.max_exp, budget=req.budget)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return ScanResponse(
            beta=ComplexNumber.of(scan.beta),
            words_scanned=scan.words_scanned,
            roots=[
                RootEntry(re=r.gamma.real, im=r.gamma.imag, word=str(r.word), multiplicity=r.multiplicity)
                for r in scan.roots
            ],
        )

    @app.post("/arith/screen", response_model=ArithResponse)
    def arith(req: ArithRequest) -> ArithResponse:
        try:
            result = arithmeticity_screen(req.minpoly, req.v_expr)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return ArithResponse(passed=result.passed, diagnostics=result.diagnostics)

    def _quat_op(req: QuatPairRequest, op):
        try:
            p = req.p.to_quat()
            if op is qmul:
                if req.q is None:
                    raise HTTPException(status_code=422, detail="mul needs two operands")
                return op(p, req.q.to_quat())
            return op(p)
        except (AlgebraMismatchError, NonPolynomialResultError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/quat/mul", response_model=QuatData)
    def quat_mul(req: QuatPairRequest) -> QuatData:
        return QuatData.of(_quat_op(req, qmul))

    @app.post("/quat/conj", response_model=QuatData)
    def quat_conj(req: QuatPairRequest) -> QuatData:
        return QuatData.of(_quat_op(req, qconj))

    @app.post("/quat/norm", response_model=PolyData)
    def quat_norm(req: QuatPairRequest) -> PolyData:
        return PolyData.of(_quat_op(req, qnorm))

    @app.post("/quat/rho", response_model=QuatData)
    def quat_rho(req: QuatPairRequest) -> QuatData:
        return QuatData.of(_quat_op(req, rho))

    @app.post("/quat/rho-inv", response_model=QuatData)
    def quat_rho_inv(req: QuatPairRequest) -> QuatData:
        return QuatData.of(_quat_op(req, rho_inv))

    @app.post("/chebyshev", response_model=QuatData)
    def chebyshev(req: ChebyshevRequest) -> QuatData:
        try:
            return QuatData.of(chebyshev_rstw(*req.exponents))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    return app


app = create_app()
