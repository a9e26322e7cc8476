"""HTTP service over the engine: one POST endpoint per verb.

Every endpoint takes a :class:`Request` (the JSON input plus bound, field and
seed) and answers with a :class:`Report`.  Errors are mapped to distinct
status codes: 400 for inputs that do not parse, 409 for guard or bound
violations and 500 for failed internal invariants.  A report whose checks
fail is still returned with status 200 and ``ok`` false.
"""
from __future__ import annotations

import random
from itertools import product
from typing import Any, Optional

from fastapi import FastAPI, Request as HttpRequest
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field as PydField

from . import __version__
from .action import (SIDE_BY_SIDE, cell_shom, chain_map_defect, constant_diagram, cup_and_homotopy, dg_diagram,
                     hochschild, hom_to_rhom_check, random_rhom, strict_basis, triv_factorization_check)
from .complexes import ChainComplex
from .dg_cat import DgCategory, corpus, identity_functor, scaling_functor
from .errors import BoundExceeded, ColoringError, GuardExceeded, InvariantError, ShapeError
from .linalg import Field
from .realize import augmentation_qiso_check, random_operad_chain, realize_seq
from .seq import Coloring, SeqElement, compose_seq, enumerate_seq, validate_seq, verify_operad
from .two_ordinal import TwoOrdinal, TwoOrdinalMap

VERBS = ("enum-seq", "compose-seq", "homology", "realize", "verify-operad", "verify-contractible",
         "hochschild", "verify-action")


class ParseError(ValueError):
    """The request input does not match the verb's schema."""


class Request(BaseModel):
    input: Any = None
    bound: Optional[int] = PydField(default=None, ge=1)
    field: str = "Q"
    seed: int = 0


class Report(BaseModel):
    verb: str
    ok: bool
    report: dict


class ErrorReport(BaseModel):
    error: str
    detail: str


# -- input parsing ------------------------------------------------------------------

def parse_field(name: str) -> Field:
    try:
        return Field(name.replace("Fp", "Fp:").replace("::", ":") if name.startswith("Fp") and ":" not in name
                     else name)
    except (ValueError, IndexError) as exc:
        raise ParseError(f"field must be Q or Fp:<prime>: {exc}") from None


def _need(data: Any, *keys: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError("input must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ParseError(f"input is missing {', '.join(missing)}")
    return data


def parse_category(data: Any, field: Field) -> DgCategory:
    """A category JSON, or {"corpus": name} for one of the built-in examples."""
    data = _need(data)
    if "corpus" in data:
        cats = corpus(field)
        if data["corpus"] not in cats:
            raise ParseError(f"unknown corpus category {data['corpus']!r}; known: {sorted(cats)}")
        return cats[data["corpus"]]
    _need(data, "objects", "homs", "units")
    A = DgCategory.from_json({**data, "field": field.name})
    A.validate()
    return A


def _parse(fn, *args):
    try:
        return fn(*args)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ShapeError, ColoringError) as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from None


def _coloring(data: Any) -> Coloring:
    data = _need(data, "columns", "output")
    return _parse(Coloring.from_json, {"inputs": 1, **data})


# -- verbs --------------------------------------------------------------------------

def run_enum_seq(req: Request, field: Field) -> Report:
    col = _coloring(req.input)
    elems = enumerate_seq(col)
    return Report(verb="enum-seq", ok=True,
                  report={"coloring": col.to_json(), "count": len(elems), "elements": [e.to_json() for e in elems]})


def run_compose_seq(req: Request, field: Field) -> Report:
    data = _need(req.input, "map", "inner", "outer")
    P = _parse(TwoOrdinalMap.from_json, data["map"])
    outer = _parse(SeqElement.from_json, data["outer"], P.dst)
    inner = {}
    for key, v in _need(data["inner"]).items():
        cell = _parse(lambda k: tuple(int(x) for x in k.split(",")), key)
        from .two_ordinal import cell_preimage
        ball = _parse(cell_preimage, P, cell)
        inner[cell] = _parse(SeqElement.from_json, v, ball.shape)
    r = _parse(compose_seq, P, inner, outer)
    rep = validate_seq(r)
    return Report(verb="compose-seq", ok=bool(rep), report={"result": r.to_json(), "valid": rep.to_json()})


def run_homology(req: Request, field: Field) -> Report:
    data = _need(req.input, "dims")
    C = _parse(ChainComplex.from_json, {**data, "field": field.name})
    h = C.homology()
    return Report(verb="homology", ok=True,
                  report={"field": field.name, "dims": {str(k): n for k, n in sorted(C.dims.items())},
                          "homology": {str(k): n for k, n in sorted(h.items())},
                          "euler": C.euler_characteristic()})


def run_realize(req: Request, field: Field) -> Report:
    col = _coloring(req.input)
    R = realize_seq(col, req.bound or 6, field, col.output)
    return Report(verb="realize", ok=True, report=R.to_json())


def run_verify_operad(req: Request, field: Field) -> Report:
    data = req.input or {}
    data = _need(data)
    kw = {k: int(data[k]) for k in ("max_columns", "max_size", "max_color", "max_out") if k in data}
    if req.bound is not None:
        kw.setdefault("max_size", req.bound)
    rep = verify_operad(**kw)
    return Report(verb="verify-operad", ok=rep.ok, report=rep.to_json())


def run_verify_contractible(req: Request, field: Field) -> Report:
    data = _need(req.input, "columns")
    col = _coloring({"output": 1, **data})
    rep = augmentation_qiso_check(col, req.bound or 6, field, col.output)
    return Report(verb="verify-contractible", ok=rep.ok, report=rep.to_json())


def run_hochschild(req: Request, field: Field) -> Report:
    A = parse_category(req.input, field)
    H = hochschild(A, req.bound or 4)
    rep = H.to_json()
    rep["cohomology"] = {m: d for m, d in rep["dimensions"].items() if d}
    return Report(verb="hochschild", ok=True, report=rep)


def run_verify_action(req: Request, field: Field) -> Report:
    """Chain-map property on seeded random inputs, triv factorization, hom -> Rhom and the cup witness."""
    data = _need(req.input)
    A = parse_category(data.get("category", {"corpus": "dual"}), field)
    shape = TwoOrdinal(tuple(data.get("columns", SIDE_BY_SIDE.columns)))
    trials = int(data.get("trials", 10))
    level = req.bound or 3
    rng = random.Random(req.seed)
    D = constant_diagram(shape, A)
    cells = shape.cells()
    chain_ok, nonzero = True, 0
    for _ in range(trials):
        degs = [rng.choice([0, 1, 2]) for _ in cells]
        xd = rng.randint(-sum(degs) - 1, 2 - sum(degs))
        xi = random_operad_chain(shape, xd, level, rng, field)
        ins = {f: random_rhom(cell_shom(D, f), d, level + 2, rng) for f, d in zip(cells, degs)}
        from .action import act_O
        nonzero += not act_O(xi, D, ins).is_zero()
        chain_ok = chain_ok and chain_map_defect(xi, D, ins).is_zero()
    # strict inputs: a diagram mixing the identity and a rescaling where one exists
    G = _rescaling(A)
    Id = identity_functor(A)
    Ds = dg_diagram(shape, [A] * shape.n_objects, [[Id if i % 2 == 0 else G for i in range(n)]
                                                  for n in shape.columns])
    triv = []
    for colors in product((1, 2), repeat=len(cells)):
        for out in (1, 2):
            triv.append(triv_factorization_check(Ds, Coloring.of(shape, dict(zip(cells, colors)), out)))
    sb = strict_basis(D)
    hom_ok = True
    for combo in product(*[range(len(sb[f])) for f in cells]):
        ins = {f: sb[f][i] for f, i in zip(cells, combo)}
        degs = {f: cell_shom(D, f).degree(0, next(iter(ins[f]))) for f in cells}
        xi = random_operad_chain(shape, rng.choice([0, 0, 1, -1]), level, rng, field)
        hom_ok = hom_ok and hom_to_rhom_check(xi, D, ins, degs, level + 2)
    report = {"category": A.name, "columns": list(shape.columns), "seed": req.seed, "level_bound": level,
              "chain_map": {"trials": trials, "nonzero": nonzero, "ok": chain_ok},
              "triv": {"checked": len(triv), "ok": all(t.ok for t in triv),
                       "failures": [t.to_json() for t in triv if not t.ok][:5]},
              "hom_to_rhom": {"ok": hom_ok}}
    ok = chain_ok and report["triv"]["ok"] and hom_ok
    if data.get("cup", shape == SIDE_BY_SIDE):
        cup = cup_and_homotopy(A, level, seed=req.seed)
        report["cup"] = cup.to_json()
        ok = ok and cup.ok
    return Report(verb="verify-action", ok=ok, report=report)


def _rescaling(A: DgCategory):
    """x -> 2x on the non-unit basis vectors when that is a functor, else the identity."""
    if len(A.objects) == 1:
        hs = A.hom(A.objects[0], A.objects[0])
        unit = A.units[A.objects[0]]
        scale = {i: 2 for i in range(hs.dim) if i not in unit}
        try:
            G = scaling_functor(A, scale)
            G.validate()
            return G
        except (InvariantError, ShapeError, KeyError):
            pass
    return identity_functor(A)


HANDLERS = {"enum-seq": run_enum_seq, "compose-seq": run_compose_seq, "homology": run_homology,
            "realize": run_realize, "verify-operad": run_verify_operad,
            "verify-contractible": run_verify_contractible, "hochschild": run_hochschild,
            "verify-action": run_verify_action}


def run(verb: str, req: Request) -> Report:
    if verb not in HANDLERS:
        raise ParseError(f"unknown verb {verb!r}")
    return HANDLERS[verb](req, parse_field(req.field))


# -- application --------------------------------------------------------------------

app = FastAPI(title="twoperad", version=__version__)


@app.exception_handler(ParseError)
@app.exception_handler(RequestValidationError)
async def _parse_error(request: HttpRequest, exc: Exception):
    return JSONResponse(status_code=400, content={"error": "parse", "detail": str(exc)})


@app.exception_handler(GuardExceeded)
@app.exception_handler(BoundExceeded)
async def _guard_error(request: HttpRequest, exc: Exception):
    return JSONResponse(status_code=409, content={"error": "guard", "detail": str(exc)})


@app.exception_handler(InvariantError)
async def _invariant_error(request: HttpRequest, exc: Exception):
    return JSONResponse(status_code=500, content={"error": "invariant", "detail": str(exc)})


@app.get("/verbs")
def verbs() -> dict:
    return {"verbs": list(VERBS), "version": __version__}


def _endpoint(verb: str):
    def handler(req: Request) -> Report:
        return run(verb, req)
    handler.__name__ = verb.replace("-", "_")
    return handler


for _verb in VERBS:
    app.post(f"/{_verb}", response_model=Report,
             responses={400: {"model": ErrorReport}, 409: {"model": ErrorReport},
                        500: {"model": ErrorReport}})(_endpoint(_verb))


def main() -> None:  # pragma: no cover - thin wrapper around uvicorn
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":  # pragma: no cover
    main()
