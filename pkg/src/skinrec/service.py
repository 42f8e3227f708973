"""HTTP JSON API over an immutable EngineState plus a session store.

Handlers never mutate the engine; the only writes go through the session
store, which serializes them internally. Every error body carries a stable
machine-readable ``code`` and a human ``message``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .assessment import (
    QuestionnaireAnswers,
    Shine,
    SkinAssessment,
    Tightness,
    direct,
    from_confidences,
    from_questionnaire,
)
from .catalog import Category, Concern, SkinType, filter_products
from .engine import EngineState, embedding_for_scope
from .errors import (
    InvalidDistribution,
    SkinrecError,
    StaleModel,
    UnknownAnchor,
    UnknownBrand,
    UnknownSession,
)
from .routine import alternatives as compute_alternatives
from .routine import recommend as compute_recommendation
from .serialize import (
    assessment_to_json,
    embedding_to_json,
    product_to_json,
    routine_to_json,
    scored_product_to_json,
    timestamp,
)
from .sessions import SessionStore
from .vectors import nearest

ClassifierAdapter = Callable[[bytes], SkinAssessment]


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "validation_error", message)


class QuestionnairePayload(BaseModel):
    tightness_after_wash: str
    midday_shine: str
    reacts_to_new_products: bool
    primary_goal: str


class AssessPayload(BaseModel):
    skin_type: Optional[str] = None
    concern: Optional[str] = None
    confidences: Optional[list[float]] = None
    questionnaire: Optional[QuestionnairePayload] = None


class RecommendPayload(BaseModel):
    assessment: AssessPayload
    anchor: Optional[int] = None
    alpha: Optional[float] = None


class AlternativesPayload(BaseModel):
    category: str
    brand: str


def _parse_enum(parser, raw: str, what: str):
    try:
        return parser(raw)
    except SkinrecError as e:
        raise _bad_request(f"bad {what}: {e}")


def parse_assessment(payload: AssessPayload) -> SkinAssessment:
    if payload.questionnaire is not None:
        q = payload.questionnaire
        try:
            answers = QuestionnaireAnswers(
                tightness_after_wash=Tightness(q.tightness_after_wash),
                midday_shine=Shine(q.midday_shine),
                reacts_to_new_products=q.reacts_to_new_products,
                primary_goal=_parse_enum(Concern.parse, q.primary_goal, "primary_goal"),
            )
        except ValueError as e:
            raise _bad_request(f"bad questionnaire answer: {e}")
        return from_questionnaire(answers)
    if payload.confidences is not None:
        if payload.skin_type is None:
            raise _bad_request("confidences require a skin_type")
        skin_type = _parse_enum(SkinType.parse, payload.skin_type, "skin_type")
        try:
            return from_confidences(payload.confidences, skin_type)
        except InvalidDistribution as e:
            raise _bad_request(str(e))
    if payload.skin_type is not None and payload.concern is not None:
        return direct(
            _parse_enum(SkinType.parse, payload.skin_type, "skin_type"),
            _parse_enum(Concern.parse, payload.concern, "concern"),
        )
    raise _bad_request(
        "assessment needs a questionnaire, a confidences vector with skin_type, "
        "or an explicit skin_type and concern"
    )


def create_app(
    engine: EngineState,
    store: SessionStore,
    classifier_adapter: Optional[ClassifierAdapter] = None,
    ui_dir: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="skinrec", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.engine = engine
    app.state.store = store

    @app.exception_handler(ApiError)
    async def handle_api_error(_: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "validation_error", "message": str(exc.errors())}
        )

    def current_engine() -> EngineState:
        return app.state.engine

    @app.get("/health")
    def health():
        eng = current_engine()
        return {
            "status": "ok",
            "products": len(eng.catalog),
            "fingerprint": eng.fingerprint,
        }

    @app.get("/products")
    def list_products(
        category: Optional[str] = None,
        skin_type: Optional[str] = None,
        issue: Optional[str] = None,
        brand: Optional[str] = None,
    ):
        eng = current_engine()
        products = filter_products(
            eng.catalog,
            category=_parse_enum(Category.parse, category, "category") if category else None,
            skin_type=_parse_enum(SkinType.parse, skin_type, "skin_type") if skin_type else None,
            issue=_parse_enum(Concern.parse, issue, "issue") if issue else None,
            brand=brand,
        )
        return {"count": len(products), "products": [product_to_json(p) for p in products]}

    @app.get("/products/{product_id}")
    def get_product(product_id: int):
        product = current_engine().catalog.get(product_id)
        if product is None:
            raise ApiError(404, "unknown_product", f"no product with id {product_id}")
        return product_to_json(product)

    @app.get("/products/{product_id}/similar")
    def similar_products(product_id: int, k: int = 5):
        eng = current_engine()
        if k < 1:
            raise _bad_request(f"k must be >= 1, got {k}")
        product = eng.catalog.get(product_id)
        if product is None:
            raise ApiError(404, "unknown_product", f"no product with id {product_id}")
        pairs = nearest(eng.matrix, eng.catalog.by_id[product_id], k)
        results = []
        for pid, sim in pairs:
            neighbour = eng.catalog.get(pid)
            results.append(
                {
                    "product_id": pid,
                    "similarity": sim,
                    "brand": neighbour.brand,
                    "name": neighbour.name,
                    "category": neighbour.category.value,
                }
            )
        return {"product_id": product_id, "k": k, "similar": results}

    @app.get("/embedding")
    def embedding(scope: str = "global"):
        eng = current_engine()
        try:
            emb = embedding_for_scope(eng, scope)
        except KeyError as e:
            raise ApiError(404, "unknown_embedding", str(e))
        except (ValueError, SkinrecError) as e:
            raise _bad_request(str(e))
        return embedding_to_json(emb, scope, eng.catalog)

    @app.post("/assess")
    def assess(payload: AssessPayload):
        return assessment_to_json(parse_assessment(payload))

    @app.post("/classify-image")
    async def classify_image(request: Request):
        if classifier_adapter is None:
            raise ApiError(
                501,
                "classifier_not_bundled",
                "no image classifier adapter is configured on this deployment",
            )
        body = await request.body()
        if not body:
            raise _bad_request("empty image upload")
        return assessment_to_json(classifier_adapter(body))

    @app.post("/sessions", status_code=201)
    def create_session():
        session = store.create()
        return {"session_id": session.session_id, "created_at": timestamp(session.created_at)}

    def _session_or_404(session_id: str):
        try:
            return store.get(session_id)
        except UnknownSession as e:
            raise ApiError(404, "unknown_session", str(e))

    @app.post("/sessions/{session_id}/recommend")
    def session_recommend(session_id: str, payload: RecommendPayload):
        eng = current_engine()
        _session_or_404(session_id)
        assessment = parse_assessment(payload.assessment)
        alpha = eng.config.alpha if payload.alpha is None else payload.alpha
        if not (0.0 <= alpha <= 1.0):
            raise _bad_request(f"alpha must be in [0, 1], got {alpha}")
        try:
            routine = compute_recommendation(
                eng.catalog, eng.matrix, eng.model, assessment, payload.anchor, alpha
            )
        except UnknownAnchor as e:
            raise ApiError(404, "unknown_anchor", str(e))
        except StaleModel as e:
            raise ApiError(409, "stale_model", str(e))
        store.record_recommendation(session_id, assessment, routine)
        return {"session_id": session_id, **routine_to_json(routine, eng.catalog)}

    @app.post("/sessions/{session_id}/alternatives")
    def session_alternatives(session_id: str, payload: AlternativesPayload):
        eng = current_engine()
        session = _session_or_404(session_id)
        if not session.routines:
            raise _bad_request("session has no routine yet; call recommend first")
        category = _parse_enum(Category.parse, payload.category, "category")
        try:
            results = compute_alternatives(
                eng.catalog, eng.matrix, session.routines[-1], category, payload.brand
            )
        except UnknownBrand as e:
            raise ApiError(404, "unknown_brand", str(e))
        store.record_alternatives(session_id, category, payload.brand, results)
        return {
            "session_id": session_id,
            "category": category.value,
            "brand": payload.brand,
            "products": [scored_product_to_json(s, eng.catalog) for s in results],
        }

    @app.get("/sessions/{session_id}/history")
    def session_history(session_id: str):
        eng = current_engine()
        session = _session_or_404(session_id)
        return {
            "session_id": session_id,
            "created_at": timestamp(session.created_at),
            "routines": [routine_to_json(r, eng.catalog) for r in session.routines],
        }

    if ui_dir is not None and Path(ui_dir).exists():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
