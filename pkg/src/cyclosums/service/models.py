"""Pydantic request/response models for the computation service.

Every endpoint returns a CommandResult envelope: machine-parseable status,
a JSON payload, and diagnostics.  Exact rationals ride as
numerator/denominator decimal strings; polynomials as ascending
coefficient arrays of decimal strings.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class CommandResult(BaseModel):
    status: Literal["ok", "error"]
    payload: Any = None
    diagnostics: list[str] = Field(default_factory=list)


class PolyRequest(BaseModel):
    n: int


class FactorRequest(BaseModel):
    expr: str  # "x^L+1" or "x^L-1"


class PfracRequest(BaseModel):
    l: int
    sign: int  # +1 for x^l + 1, -1 for x^l - 1


class ShuffleRequest(BaseModel):
    w1: str
    w2: str


class BasisRequest(BaseModel):
    letters: str  # comma-separated k:l specs
    weight: int


class CountTable1Request(BaseModel):
    max_letters: int = 8
    max_weight: int = 8


class EvalSumRequest(BaseModel):
    index: str
    n: int


class StuffleRequest(BaseModel):
    idx1: str
    idx2: str


class SyncRequest(BaseModel):
    index: str
    k: int


class DupRequest(BaseModel):
    index: str
    variant: Literal[1, 2] = 1


class CountTable2Request(BaseModel):
    max_weight: int = 5


class EvalHplRequest(BaseModel):
    word: str
    x: str
    prec: int = 30
    method: Literal["auto", "series", "quad"] = "auto"


class PhiRequest(BaseModel):
    k: int
    l: int = 0
    n: int
    prec: int = 30
    plus: bool = False


class PhiAsymRequest(BaseModel):
    k: int
    l: int = 0
    n: int
    order: int = 12
    prec: int = 30


class VerifyEx2Request(BaseModel):
    n_max: int = 5
    prec: int = 20
    tol: float = 1.0e-12


class ConstRequest(BaseModel):
    expr: str  # "sigma S[...]" | "zeta K" | "catalan" | "polygamma N P Q" | ...
    prec: int = 30


class PolygammaRequest(BaseModel):
    order: int
    p: int
    q: int
    prec: int = 30


class Table4Request(BaseModel):
    l_max: int = 20


class Table5Request(BaseModel):
    l_max: int = 20


class RankRequest(BaseModel):
    weight: int
    cyclotomy: int


class RamanujanRequest(BaseModel):
    prec: int = 25


class LiRootRequest(BaseModel):
    weight: int
    l: int
    k: int
    prec: int = 30


class MotivicRequest(BaseModel):
    w: int
    n_max: int = 10


class MellinRequest(BaseModel):
    index: str


class DiffRequest(BaseModel):
    index: str
    order: int = 1
    n: Optional[int] = None
    prec: int = 25


class VerifySuite(BaseModel):
    suite: Literal["tables", "identities", "numerics", "all"] = "all"
    fast: bool = True
