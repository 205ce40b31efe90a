"""HTTP front end: one stateless endpoint per operation.

Run with ``uvicorn restrix.service:app`` or ``python -m restrix.service``.
The CLI talks to this app (in-process by default, over the network with
--server), so both surfaces share the same JSON contract.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import jsonio
from .core import (
    check_restriction_axioms,
    is_ample,
    is_F_restriction,
    is_proper,
    is_reduced,
    natural_order,
    projections,
    sigma,
)
from .dot import cayley_dot, order_dot
from .errors import InputError, RestrixError, TheoremViolation
from .expansions import build_partial_product, prefix_expand_group
from .freerestr import compute_d
from .munn import check_alphabet, parse_word, tree_of_word, word_letters
from .presentations import bounded_enumerate
from .verify import default_suite, suite_passed, verify_cg, verify_d_lemmas

app = FastAPI(
    title="restrix",
    description="Finite restriction monoids, Munn trees and expansions",
    version="0.1.0",
)


@app.exception_handler(RestrixError)
async def restrix_error_handler(request: Request, exc: RestrixError):
    status = 500 if isinstance(exc, TheoremViolation) else 422
    return JSONResponse(
        status_code=status,
        content={"detail": {"kind": exc.kind, "message": str(exc)}},
    )


class AlgebraPayload(BaseModel):
    """Biunary algebra tables; ``size`` must match the table when given."""

    mul: list[list[int]]
    one: int
    size: int | None = None
    star: list[int] | None = None
    plus: list[int] | None = None
    inv: list[int] | None = None

    def to_data(self):
        data = {"mul": self.mul, "one": self.one}
        if self.size is not None:
            data["size"] = self.size
        for key in ("star", "plus", "inv"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data


class CheckResponse(BaseModel):
    ok: bool
    report: list[str]


@app.post("/check", response_model=CheckResponse)
def check(payload: AlgebraPayload):
    S = jsonio.biunary_from_json(payload.to_data())
    report = check_restriction_axioms(S)
    return {"ok": not report, "report": report}


class AnalyzeResponse(BaseModel):
    size: int
    axiom_report: list[str]
    is_restriction: bool
    projections: list[int] | None = None
    order_pairs: list[list[int]] | None = None
    sigma_classes: list[list[int]] | None = None
    predicates: dict | None = None


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(payload: AlgebraPayload):
    S = jsonio.biunary_from_json(payload.to_data())
    report = check_restriction_axioms(S)
    out = {
        "size": S.size,
        "axiom_report": report,
        "is_restriction": not report,
    }
    if report:
        return out
    _, emb = projections(S)
    out["projections"] = list(emb)
    out["order_pairs"] = sorted([a, b] for (a, b) in natural_order(S).pairs)
    out["sigma_classes"] = [list(c) for c in sigma(S).classes()]
    out["predicates"] = {
        "reduced": is_reduced(S),
        "proper": is_proper(S),
        "f_restriction": is_F_restriction(S),
        "left_ample": is_ample(S, "left"),
        "right_ample": is_ample(S, "right"),
        "ample": is_ample(S, "both"),
    }
    return out


class PrefixExpandRequest(BaseModel):
    group: dict
    names: list[str] | None = None


class PrefixExpandResponse(BaseModel):
    algebra: dict
    labels: list[str]
    count: int


@app.post("/prefix-expand", response_model=PrefixExpandResponse)
def prefix_expand(payload: PrefixExpandRequest):
    G = jsonio.monoid_from_json(payload.group)
    pe = prefix_expand_group(G, names=payload.names)
    return {
        "algebra": jsonio.algebra_to_json(pe.algebra),
        "labels": list(pe.labels()),
        "count": pe.algebra.size,
    }


class ProductResponse(BaseModel):
    algebra: dict
    elements: list[list[int]]


@app.post("/product", response_model=ProductResponse)
def product(payload: dict):
    phi = jsonio.premorphism_from_json(payload)
    prod = build_partial_product(phi)
    return {
        "algebra": jsonio.algebra_to_json(prod.algebra),
        "elements": [list(e) for e in prod.elements],
    }


class EnumerateRequest(BaseModel):
    monoid: dict
    relations: str = "pm"
    signature: str = "restriction"
    extra: list = Field(default_factory=list)
    bound: int = 6


class EnumerateResponse(BaseModel):
    status: str
    count: int
    algebra: dict | None = None
    generator_map: list[int] | None = None


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_presentation(payload: EnumerateRequest):
    pres = jsonio.presentation_from_json(payload.model_dump())
    result = bounded_enumerate(pres)
    out = {"status": "closed" if result.closed else "exceeded", "count": result.count}
    if result.closed:
        out["algebra"] = jsonio.algebra_to_json(result.algebra)
        out["generator_map"] = list(result.generator_map)
    return out


class WordRequest(BaseModel):
    expr: str
    alphabet: str | None = None


@app.post("/munn")
def munn(payload: WordRequest):
    alphabet = check_alphabet(payload.alphabet) if payload.alphabet else None
    word = parse_word(payload.expr, alphabet)
    if alphabet is None:
        alphabet = tuple(word_letters(word)) or ("a",)
    return jsonio.tree_to_json(tree_of_word(word, alphabet))


class DuRequest(BaseModel):
    word: str
    alphabet: str | None = None


@app.post("/du")
def du(payload: DuRequest):
    alphabet = check_alphabet(payload.alphabet) if payload.alphabet else None
    word = parse_word(payload.word, alphabet)
    if alphabet is None:
        alphabet = tuple(word_letters(word)) or ("a",)
    return jsonio.frpair_to_json(compute_d(word, alphabet))


class VerifyRequest(BaseModel):
    suite: str = "default"
    seed: int = 0
    timings: bool = False


class VerifyResponse(BaseModel):
    all_pass: bool
    reports: list[dict]


@app.post("/verify", response_model=VerifyResponse)
def verify(payload: VerifyRequest):
    if payload.suite == "default":
        reports = default_suite(seed=payload.seed)
    elif payload.suite == "quick":
        from .registry import example_fr_model

        reports = [
            verify_cg(example_fr_model(), instance="example model"),
            verify_d_lemmas(samples=50, seed=payload.seed),
        ]
    else:
        raise InputError(f"unknown suite {payload.suite!r}")
    out = []
    for r in reports:
        entry = {
            "theorem": r.theorem,
            "instance": r.instance,
            "status": r.status,
            "witness": r.witness,
        }
        if payload.timings:
            entry["seconds"] = round(r.seconds, 6)
        out.append(entry)
    return {"all_pass": suite_passed(reports), "reports": out}


class DotRequest(BaseModel):
    algebra: dict
    what: str
    generators: list[int] | None = None
    labels: list[str] | None = None


@app.post("/export-dot")
def export_dot(payload: DotRequest):
    S = jsonio.algebra_from_json(payload.algebra)
    if not hasattr(S, "star"):  # plain monoid: use its reduced structure
        from .registry import monoid_as_reduced

        S = monoid_as_reduced(S)
    if payload.what == "order":
        text = order_dot(S, labels=payload.labels)
    elif payload.what == "cayley":
        text = cayley_dot(S, generators=payload.generators, labels=payload.labels)
    else:
        raise InputError(f"unknown export {payload.what!r}; use order or cayley")
    return {"dot": text}


@app.get("/health")
def health():
    return {"status": "ok"}


def main():
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
