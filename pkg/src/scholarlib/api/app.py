"""The gateway HTTP API: one surface for every client (UI, CLI, tests).

All bodies are JSON. Domain errors map onto status codes uniformly:
validation failures 400, unknown entities 404, conflicts 409. Partial
federation failure is not an error: /search answers 200 with the failing
sources listed in ``source_errors``.

Identity is demo-grade: the acting user comes from the request body, or
from the ``X-ScholarLib-User`` header when the body omits it.
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .. import graph
from ..enrichment import (
    RankWeights,
    create_alert,
    post_to_network,
    recommend_terms,
    rerank,
    run_alerts,
)
from ..errors import (
    DuplicateName,
    InvalidUser,
    ScholarLibError,
    StoreCorruption,
    UnknownAlert,
    UnknownItem,
    UnknownSource,
    UnknownUser,
)
from ..federation import Federation, SearchQuery, validate_base_url
from ..models import SNUser
from ..store import Store
from . import schemas as s

USER_HEADER = "X-ScholarLib-User"


def _status_for(exc: ScholarLibError) -> int:
    if isinstance(exc, DuplicateName):
        return 409
    if isinstance(exc, (UnknownUser, UnknownItem, UnknownSource, UnknownAlert)):
        return 404
    if isinstance(exc, StoreCorruption):
        return 500
    return 400


def _acting_user(body_user: str | None, header_user: str | None) -> str:
    user = body_user or header_user
    if not user:
        raise InvalidUser(f"no acting user: pass it in the body or the {USER_HEADER} header")
    return user


def create_app(
    store: Store,
    federation: Federation | None = None,
    weights: RankWeights | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    federation = federation or Federation(store)
    weights = weights or RankWeights()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        store.flush()

    app = FastAPI(title="scholarlib-gateway", version="0.1.0", lifespan=lifespan)
    app.state.store = store
    app.state.federation = federation
    app.state.weights = weights
    alert_run_lock = threading.Lock()
    app.state.alert_run_lock = alert_run_lock

    @app.exception_handler(ScholarLibError)
    def domain_error(request: Request, exc: ScholarLibError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc), content={"error": exc.code, "detail": exc.detail}
        )

    @app.get("/healthz", response_model=s.HealthOut)
    def healthz():
        return s.HealthOut(status="ok")

    # -- federated search ------------------------------------------------------

    @app.get("/search", response_model=s.SearchResponse, response_model_exclude_none=True)
    def search(
        q: str = Query(""),
        offset: int = Query(0),
        limit: int = Query(10),
        user: str | None = Query(None),
        sources: list[str] | None = Query(None),
    ):
        parsed_sources: list[str] | None = None
        if sources:
            parsed_sources = [name for chunk in sources for name in chunk.split(",") if name]
        query = SearchQuery(text=q, offset=offset, limit=limit, sources=parsed_sources)
        outcome = federation.federated_search(query)
        ranked = rerank(
            [(hit.item, hit.base_rank) for hit in outcome.hits], weights, store.summary_for
        )
        results = []
        for entry in ranked:
            summary = store.summary_for(entry.item.item_id)
            in_library = store.in_library(user, entry.item.item_id) if user else None
            results.append(s.SearchResultOut.from_ranked(entry, summary, in_library))
        statuses = [s.SourceStatusOut.from_status(status) for status in outcome.statuses]
        return s.SearchResponse(
            query=query.text,
            offset=query.offset,
            limit=query.limit,
            results=results,
            source_status=statuses,
            source_errors=[status for status in statuses if status.error is not None],
        )

    @app.get("/recommend", response_model=s.RecommendationsOut)
    def recommend(term: str = Query(""), k: int = Query(10)):
        ranked = recommend_terms(store, term, k)
        return s.RecommendationsOut(
            query=term,
            terms=[s.RecommendationOut(term=t, count=c) for t, c in ranked],
        )

    # -- items and annotations ---------------------------------------------------

    @app.get("/items/{item_id}", response_model=s.ItemDetailOut, response_model_exclude_none=True)
    def get_item(item_id: str):
        item = store.require_item(item_id)
        return s.ItemDetailOut(
            item=s.ItemOut.from_item(item),
            summary=s.SummaryOut.from_summary(store.summary_for(item_id)),
        )

    @app.get(
        "/items/{item_id}/annotations",
        response_model=list[s.AnnotationOut],
        response_model_exclude_none=True,
    )
    def item_annotations(item_id: str):
        store.require_item(item_id)
        return [s.AnnotationOut.from_annotation(a) for a in store.annotations_for(item_id)]

    @app.post(
        "/items/{item_id}/comments",
        response_model=s.AnnotationOut,
        status_code=201,
        response_model_exclude_none=True,
    )
    def add_comment(item_id: str, body: s.CommentIn, x_scholarlib_user: str | None = Header(None)):
        author = _acting_user(body.user, x_scholarlib_user)
        return s.AnnotationOut.from_annotation(store.add_comment(author, item_id, body.text))

    @app.post(
        "/items/{item_id}/ratings",
        response_model=s.AnnotationOut,
        status_code=201,
        response_model_exclude_none=True,
    )
    def add_rating(item_id: str, body: s.RatingIn, x_scholarlib_user: str | None = Header(None)):
        author = _acting_user(body.user, x_scholarlib_user)
        return s.AnnotationOut.from_annotation(store.add_rating(author, item_id, body.value))

    @app.post(
        "/items/{item_id}/library",
        response_model=s.AnnotationOut,
        status_code=201,
        response_model_exclude_none=True,
    )
    def add_to_library(
        item_id: str, body: s.LibraryIn, x_scholarlib_user: str | None = Header(None)
    ):
        author = _acting_user(body.user, x_scholarlib_user)
        return s.AnnotationOut.from_annotation(store.add_to_library(author, item_id, body.folder))

    @app.post(
        "/items/{item_id}/forwards",
        response_model=s.AnnotationOut,
        status_code=201,
        response_model_exclude_none=True,
    )
    def add_forward(item_id: str, body: s.ForwardIn, x_scholarlib_user: str | None = Header(None)):
        author = _acting_user(body.user, x_scholarlib_user)
        ann = graph.forward_item(store, author, body.to, item_id, body.parent)
        return s.AnnotationOut.from_annotation(ann)

    @app.get("/items/{item_id}/spread", response_model=s.SpreadOut)
    def spread(item_id: str):
        return s.SpreadOut.from_trace(graph.trace_spread(store, item_id))

    # -- social search --------------------------------------------------------------

    @app.get(
        "/social/search",
        response_model=s.SocialSearchResponse,
        response_model_exclude_none=True,
    )
    def social_search(q: str = Query("")):
        found = store.social_search(q)
        return s.SocialSearchResponse(
            query=q,
            profiles=[s.UserOut.from_user(user) for user in found.profiles],
            comments=[s.AnnotationOut.from_annotation(ann) for ann in found.comments],
            items=[
                s.ItemWithSummaryOut(
                    item=s.ItemOut.from_item(item), summary=s.SummaryOut.from_summary(summary)
                )
                for item, summary in found.items
            ],
        )

    # -- users, contacts, posts ---------------------------------------------------------

    @app.post("/users", response_model=s.UserOut, status_code=201)
    def upsert_user(body: s.UserIn):
        user = store.upsert_user(
            SNUser(
                user_id=body.user_id,
                display_name=body.display_name,
                sns_origin=body.sns_origin,
                interests=body.interests,
            )
        )
        return s.UserOut.from_user(user)

    @app.get("/users", response_model=list[s.UserOut])
    def list_users():
        return [s.UserOut.from_user(user) for user in store.list_users()]

    @app.get("/users/{user_id}", response_model=s.UserOut)
    def get_user(user_id: str):
        return s.UserOut.from_user(store.require_user(user_id))

    @app.get("/users/{user_id}/library", response_model=s.LibraryOut)
    def user_library(user_id: str):
        store.require_user(user_id)
        folders: dict[str, list[s.ItemOut]] = {}
        for ann in store.library_of(user_id):
            item = store.get_item(ann.item)
            if item is not None:
                folders.setdefault(ann.payload["folder"], []).append(s.ItemOut.from_item(item))
        return s.LibraryOut(
            user=user_id,
            folders=[
                s.FolderOut(folder=name, items=items) for name, items in sorted(folders.items())
            ],
        )

    @app.get("/users/{user_id}/notifications", response_model=s.NotificationsOut)
    def user_notifications(user_id: str):
        store.require_user(user_id)
        return s.NotificationsOut(
            notifications=[
                s.NotificationOut.from_notification(note)
                for note in store.list_notifications(user_id)
            ]
        )

    @app.post("/contacts", status_code=204)
    def add_contact(body: s.ContactIn):
        graph.add_contact(store, body.user_a, body.user_b)

    @app.post("/posts", response_model=s.NotificationsOut, status_code=201)
    def post_item(body: s.PostIn, x_scholarlib_user: str | None = Header(None)):
        sender = _acting_user(body.sender, x_scholarlib_user)
        notes = post_to_network(store, sender, body.item, body.message, body.recipients)
        return s.NotificationsOut(
            notifications=[s.NotificationOut.from_notification(note) for note in notes]
        )

    # -- alerts -------------------------------------------------------------------------

    @app.post("/alerts", response_model=s.AlertOut, status_code=201)
    def add_alert(body: s.AlertIn, x_scholarlib_user: str | None = Header(None)):
        user = _acting_user(body.user, x_scholarlib_user)
        return s.AlertOut.from_alert(create_alert(store, user, body.extra_terms))

    @app.get("/alerts", response_model=list[s.AlertOut])
    def list_alerts(user: str | None = Query(None)):
        return [s.AlertOut.from_alert(alert) for alert in store.list_alerts(user)]

    @app.post("/alerts/run", response_model=s.NotificationsOut)
    def run_all_alerts():
        if not alert_run_lock.acquire(blocking=False):
            return JSONResponse(
                status_code=409,
                content={"error": "run_in_progress", "detail": "an alert run is already active"},
            )
        try:
            notes = run_alerts(store, federation)
        finally:
            alert_run_lock.release()
        return s.NotificationsOut(
            notifications=[s.NotificationOut.from_notification(note) for note in notes]
        )

    # -- registry --------------------------------------------------------------------------

    @app.post("/registry/dls", response_model=s.RegistrationOut, status_code=201)
    def register_dl(body: s.RegistryIn):
        return s.RegistrationOut.from_registration(federation.register(body.name, body.base_url))

    @app.get("/registry/dls", response_model=list[s.RegistrationOut])
    def list_dls():
        return [s.RegistrationOut.from_registration(reg) for reg in store.list_sources()]

    @app.get("/registry/dls/{name}", response_model=s.RegistrationOut)
    def get_dl(name: str):
        return s.RegistrationOut.from_registration(store.require_source(name))

    @app.put("/registry/dls/{name}", response_model=s.RegistrationOut)
    def update_dl(name: str, body: s.RegistryUpdateIn):
        reg = store.require_source(name)
        if body.base_url:
            reg.base_url = validate_base_url(body.base_url)
            store.update_source(reg)
        return s.RegistrationOut.from_registration(federation.reprobe(name))

    @app.delete("/registry/dls/{name}", status_code=204)
    def delete_dl(name: str):
        store.remove_source(name)

    # -- export / import ---------------------------------------------------------------------

    @app.get("/export", response_class=PlainTextResponse)
    def export_dump():
        lines = store.export_lines()
        return PlainTextResponse("\n".join(lines) + ("\n" if lines else ""))

    @app.post("/import", response_model=s.ImportOut)
    async def import_dump(request: Request, replace: bool = Query(True)):
        body = (await request.body()).decode("utf-8")
        counts = store.import_lines(body.splitlines(), replace=replace)
        return s.ImportOut(imported=counts)

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
