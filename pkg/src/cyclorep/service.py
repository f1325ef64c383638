"""HTTP service exposing the library: polynomial generation, factoring,
detection, size reports, and the bit-exact codec.

Every domain failure maps to HTTP 400 with a body of the shape
{"error": {"kind": ..., "message": ...}} so clients can distinguish parse
errors from capacity or domain errors without string matching.  Run with
`uvicorn cyclorep.service:app`; the bundled CLI talks to the same app
in-process by default.
"""

from __future__ import annotations

import base64
import binascii
from typing import Literal, Optional, Union

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import codec
from .cyclotomic import (
    c_poly,
    extract_cyclotomic_factors,
    is_cyclotomic_quick,
    phi_poly,
)
from .errors import CycloRepError, DomainError, MalformedBlobError
from .factorrep import (
    CAwareFactorization,
    Factorization,
    PhiAwareFactorization,
    PlainFactorization,
    expand,
    factor_full,
    format_factorization,
    parse_factorization,
    squarefree_decomposition,
    to_c_aware,
    to_phi_aware,
    to_plain,
)
from .poly import SparsePoly, format_poly, norms, parse_poly, to_dense, to_sparse
from .tables import height_record_rows, two_binomial_size_rows, xn1_size_rows

app = FastAPI(title="cyclorep", version="0.1.0")


@app.exception_handler(CycloRepError)
async def _domain_error_handler(_request, exc: CycloRepError):
    return JSONResponse(
        status_code=400, content={"error": {"kind": exc.kind, "message": str(exc)}}
    )


Vocab = Literal["dense", "sparse", "plain", "phi", "c"]
FactorVocab = Literal["plain", "phi", "c"]
Inner = Literal["dense", "sparse"]


class PolyStats(BaseModel):
    degree: int
    height: int
    terms: int


class PolyRequest(BaseModel):
    k: int
    stats: bool = False


class PolyResponse(BaseModel):
    text: str
    stats: Optional[PolyStats] = None


class FactorRequest(BaseModel):
    poly: str
    vocab: FactorVocab = "phi"
    squarefree_only: bool = False


class FactorResponse(BaseModel):
    text: str


class DetectRequest(BaseModel):
    poly: str


class DetectResponse(BaseModel):
    verdict: Literal["cyclotomic", "not-cyclotomic"]
    quick: Literal["cyclotomic", "not-cyclotomic", "unknown"]
    line: str


class SizeRequest(BaseModel):
    input: str
    vocab: Vocab
    n_param: int = 16
    k_param: int = 16
    inner: Inner = "sparse"


class SizeResponse(BaseModel):
    layout: str
    measured_bits: int
    formula_bits: Optional[int] = None
    parameters: list[tuple[str, int]]


class EncodeRequest(BaseModel):
    input: str
    vocab: Vocab
    n_param: int = 16
    k_param: int = 16
    inner: Inner = "sparse"


class EncodeResponse(BaseModel):
    blob_b64: str
    byte_length: int
    body_bits: int
    layout: str


class DecodeRequest(BaseModel):
    blob_b64: str


class DecodeResponse(BaseModel):
    layout: str
    text: str


class TableRequest(BaseModel):
    which: Literal[1, 2, 3]
    max_k: Optional[int] = None
    n: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    n_param: int = 16
    k_param: int = 16


class TableRowModel(BaseModel):
    label: str
    columns: list[tuple[str, Union[int, str]]]


class TableResponse(BaseModel):
    rows: list[TableRowModel]


def _stats_of(f: SparsePoly) -> PolyStats:
    n = norms(f)
    return PolyStats(degree=f.degree, height=n.height, terms=n.term_count)


@app.get("/health")
async def health():
    return {"status": "ok"}


@app.post("/phi", response_model=PolyResponse)
async def phi_endpoint(req: PolyRequest) -> PolyResponse:
    f = phi_poly(req.k)
    return PolyResponse(text=format_poly(f), stats=_stats_of(f) if req.stats else None)


@app.post("/c", response_model=PolyResponse)
async def c_endpoint(req: PolyRequest) -> PolyResponse:
    f = c_poly(req.k)
    return PolyResponse(text=format_poly(f), stats=_stats_of(f) if req.stats else None)


def _factor_into(f: SparsePoly, vocab: str) -> Factorization:
    full = factor_full(f)
    if vocab == "phi":
        return full
    if vocab == "c":
        return to_c_aware(full)
    return to_plain(full)


def _parse_poly_liberal(text: str) -> SparsePoly:
    # polynomial text, or a product like "(x^5-1)*(x^7-1)" which the
    # factorization grammar accepts and expand() multiplies out
    try:
        return parse_poly(text)
    except CycloRepError:
        return expand(parse_factorization(text))


@app.post("/factor", response_model=FactorResponse)
async def factor_endpoint(req: FactorRequest) -> FactorResponse:
    f = _parse_poly_liberal(req.poly)
    if req.squarefree_only:
        if req.vocab != "plain":
            raise DomainError(
                "squarefree_only applies to the plain vocabulary; "
                "phi and c always factor fully"
            )
        rep: Factorization = squarefree_decomposition(f)
    else:
        rep = _factor_into(f, req.vocab)
    return FactorResponse(text=format_factorization(rep))


@app.post("/detect", response_model=DetectResponse)
async def detect_endpoint(req: DetectRequest) -> DetectResponse:
    f = _parse_poly_liberal(req.poly)
    quick = is_cyclotomic_quick(f)
    ext = extract_cyclotomic_factors(f)
    pure = (
        ext.x_power == 0
        and ext.cofactor.degree == 0
        and abs(ext.cofactor.coefficient(0)) == 1
    )
    if pure:
        shown = PhiAwareFactorization(
            content=ext.cofactor.coefficient(0),
            phi_factors=tuple((m, k) for k, m in ext.decomposition.parts),
        )
        verdict = "cyclotomic"
        line = f"cyclotomic: {format_factorization(shown)}"
    else:
        residual = SparsePoly.x() ** ext.x_power * ext.cofactor
        verdict = "not-cyclotomic"
        line = f"not-cyclotomic (cofactor: {format_poly(residual)})"
    return DetectResponse(verdict=verdict, quick=quick.value, line=line)


def _coerce_factorization(rep: Factorization, vocab: str) -> Factorization:
    # move a parsed factorization into the requested vocabulary
    if vocab == "phi":
        if isinstance(rep, PhiAwareFactorization):
            return rep
        if isinstance(rep, CAwareFactorization):
            return to_phi_aware(rep)
        return factor_full(expand(rep))
    if vocab == "c":
        if isinstance(rep, CAwareFactorization):
            return rep
        if isinstance(rep, PhiAwareFactorization):
            return to_c_aware(rep)
        return to_c_aware(factor_full(expand(rep)))
    if isinstance(rep, PlainFactorization):
        return rep
    if isinstance(rep, CAwareFactorization):
        rep = to_phi_aware(rep)
    return to_plain(rep)


def _resolve_value(text: str, vocab: str):
    """Turn request input text into the value the codec should serialize.

    dense/sparse take polynomial text.  The factorization vocabularies accept
    either polynomial text (factored here) or factorization text (used as-is,
    converted when it names a different vocabulary).
    """
    if vocab == "dense":
        return to_dense(_parse_poly_liberal(text))
    if vocab == "sparse":
        return to_sparse(_parse_poly_liberal(text))
    try:
        f = parse_poly(text)
    except CycloRepError:
        return _coerce_factorization(parse_factorization(text), vocab)
    return _factor_into(f, vocab)


@app.post("/size", response_model=SizeResponse)
async def size_endpoint(req: SizeRequest) -> SizeResponse:
    value = _resolve_value(req.input, req.vocab)
    report = codec.size_report(value, req.n_param, req.k_param, inner=req.inner)
    return SizeResponse(
        layout=report.layout,
        measured_bits=report.measured_bits,
        formula_bits=report.formula_bits,
        parameters=list(report.parameters),
    )


@app.post("/encode", response_model=EncodeResponse)
async def encode_endpoint(req: EncodeRequest) -> EncodeResponse:
    value = _resolve_value(req.input, req.vocab)
    blob = codec.encode(value, req.n_param, req.k_param, inner=req.inner)
    raw = blob.to_bytes()
    return EncodeResponse(
        blob_b64=base64.b64encode(raw).decode("ascii"),
        byte_length=len(raw),
        body_bits=codec.measured_bits(value, req.n_param, req.k_param, inner=req.inner),
        layout=codec.LAYOUT_NAMES[blob.layout_tag],
    )


@app.post("/decode", response_model=DecodeResponse)
async def decode_endpoint(req: DecodeRequest) -> DecodeResponse:
    try:
        raw = base64.b64decode(req.blob_b64, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise MalformedBlobError(f"blob is not valid base64: {exc}") from exc
    blob = codec.EncodedBlob.from_bytes(raw)
    value = codec.decode(blob)
    if isinstance(value, (PlainFactorization, PhiAwareFactorization, CAwareFactorization)):
        text = format_factorization(value)
    else:
        text = format_poly(value)
    return DecodeResponse(layout=codec.LAYOUT_NAMES[blob.layout_tag], text=text)


@app.post("/table", response_model=TableResponse)
async def table_endpoint(req: TableRequest) -> TableResponse:
    if req.which == 1:
        if req.max_k is None:
            raise DomainError("table 1 needs max_k")
        rows = height_record_rows(req.max_k)
    elif req.which == 2:
        if req.n is None:
            raise DomainError("table 2 needs n")
        rows = xn1_size_rows(req.n, req.n_param, req.k_param)
    else:
        if req.p is None or req.q is None:
            raise DomainError("table 3 needs p and q")
        rows = two_binomial_size_rows(req.p, req.q, req.n_param, req.k_param)
    return TableResponse(
        rows=[TableRowModel(label=r.label, columns=list(r.columns)) for r in rows]
    )
