"""Pydantic request/response models for the HTTP service.

Exact polynomial data travels as the same JSON shape the library uses
(decimal-string numerators and denominators), so nothing is lost over the
wire; complex scalars are (re, im) pairs.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..exactpoly import RatPoly2
from ..quatalg import Quat


class ComplexNumber(BaseModel):
    re: float = 0.0
    im: float = 0.0

    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z: complex) -> "ComplexNumber":
        return cls(re=z.real, im=z.imag)


class PolyTerm(BaseModel):
    i: int
    j: int
    num: str
    den: str = "1"


class PolyData(BaseModel):
    basis: Literal["xz", "uv"]
    terms: list[PolyTerm]

    def to_poly(self) -> RatPoly2:
        return RatPoly2.from_json(self.model_dump())

    @classmethod
    def of(cls, p: RatPoly2) -> "PolyData":
        return cls.model_validate(p.to_json())


class QuatData(BaseModel):
    algebra: Literal["q0", "quv"]
    r: PolyData
    s: PolyData
    t: PolyData
    w: PolyData

    def to_quat(self) -> Quat:
        return Quat.from_json(self.model_dump())

    @classmethod
    def of(cls, q: Quat) -> "QuatData":
        return cls.model_validate(q.to_json())


class WordRequest(BaseModel):
    word: str = Field(..., description="word in the a/b grammar, e.g. 'b a^2 B'")
    order2: bool = False


class WordBundle(BaseModel):
    word: str
    order2: bool
    classification: dict
    r: PolyData
    s: PolyData
    t: PolyData
    w: PolyData
    g: PolyData
    p: PolyData
    balanced: bool
    checks: dict


class StarRequest(BaseModel):
    w1: str
    w2: str


class StarResponse(BaseModel):
    word: str
    is_identity: bool


class UnitsRequest(BaseModel):
    max_degree: int = 2
    coeff_bound: float = 2.0


class UnitsResponse(BaseModel):
    count: int
    units: list[QuatData]


class DiscreteRequest(BaseModel):
    beta: ComplexNumber
    gamma: ComplexNumber
    max_depth: int = 30
    word_budget: int = 200


class DiscreteResponse(BaseModel):
    result: Literal["certificate", "inconclusive"]
    certificate: Optional[dict] = None


class ScanRequest(BaseModel):
    beta: ComplexNumber
    max_syllables: int = 4
    max_exp: int = 3
    budget: int = 10_000


class RootEntry(BaseModel):
    re: float
    im: float
    word: str
    multiplicity: int


class ScanResponse(BaseModel):
    beta: ComplexNumber
    words_scanned: int
    roots: list[RootEntry]


class ArithRequest(BaseModel):
    minpoly: list[int] = Field(..., description="ascending coefficients, monic")
    v_expr: list[int] = Field(default=[0, 1], description="v as a polynomial in u")


class ArithResponse(BaseModel):
    passed: bool
    diagnostics: dict


class QuatPairRequest(BaseModel):
    p: QuatData
    q: Optional[QuatData] = None


class ChebyshevRequest(BaseModel):
    exponents: list[int] = Field(..., min_length=5, max_length=5)
