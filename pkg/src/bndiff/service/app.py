"""FastAPI application wiring the core package to the session API."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response

from ..inference import ImpossibleEvidenceError
from ..learning import LearnConfig, learn_structure, read_csv, subsample
from ..model import BayesianNetwork, DomainError, EvidenceSet, ModelError
from ..netformat import NetworkFormatError, network_from_document, network_to_document
from ..relevance import FilterConfig, diff_report, filter_top
from ..scene import build_scene, cpt_panel_to_document, cpt_view, scene_to_document
from ..svg import render_svg
from .schemas import (
    CreateSessionRequest,
    CreateSessionResponse,
    EvidenceBody,
    LearnOptions,
    RankedVariable,
    SessionSummary,
    ThresholdBody,
)
from .sessions import Session, SessionStore


def _learned_network(request: CreateSessionRequest) -> BayesianNetwork:
    options = request.learn or LearnOptions()
    data = read_csv(request.dataset)
    if options.sample_n is not None:
        data = subsample(data, options.sample_n, options.seed)
    config = LearnConfig(
        max_indegree=options.max_indegree,
        dirichlet_alpha=options.alpha,
        max_passes=options.max_passes,
    )
    return learn_structure(data, config)


def create_app(cache_enabled: bool = True) -> FastAPI:
    app = FastAPI(title="bndiff", version="0.1.0")
    store = SessionStore(cache_enabled=cache_enabled)

    def session_or_404(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    def summary(session: Session) -> SessionSummary:
        _diff, ranking = session.diff_and_ranking()
        retained = [v.name for v in filter_top(ranking, session.filter_config)]
        return SessionSummary(
            id=session.id,
            e1=session.e1.to_mapping(session.network),
            e2=session.e2.to_mapping(session.network),
            threshold=session.threshold,
            eligible_count=ranking.eligible_count,
            retained=retained,
            ranking=[
                RankedVariable(name=e.variable.name, relevance=e.score)
                for e in ranking.entries
            ],
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201, response_model=CreateSessionResponse)
    def create_session(request: CreateSessionRequest):
        if (request.network is None) == (request.dataset is None):
            raise HTTPException(
                status_code=400,
                detail="provide exactly one of 'network' or 'dataset'",
            )
        try:
            if request.network is not None:
                net = network_from_document(request.network)
            else:
                net = _learned_network(request)
        except (NetworkFormatError, ModelError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = store.create(net)
        return CreateSessionResponse(id=session.id, variables=list(net.names))

    @app.get("/sessions/{session_id}/network")
    def get_network(session_id: str):
        session = session_or_404(session_id)
        return network_to_document(session.network)

    @app.put("/sessions/{session_id}/evidence/{which}", response_model=SessionSummary)
    def put_evidence(session_id: str, which: int, body: EvidenceBody):
        session = session_or_404(session_id)
        if which not in (1, 2):
            raise HTTPException(status_code=400, detail="evidence set must be 1 or 2")
        try:
            candidate = EvidenceSet.from_mapping(session.network, body.root)
        except DomainError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with session.lock:
            e1 = candidate if which == 1 else session.e1
            e2 = candidate if which == 2 else session.e2
            try:
                session.diff_and_ranking(e1, e2)
            except ImpossibleEvidenceError as exc:
                raise HTTPException(
                    status_code=409,
                    detail={"message": str(exc), "whichSet": exc.which_set},
                )
            session.e1, session.e2 = e1, e2
            return summary(session)

    @app.put("/sessions/{session_id}/threshold", response_model=SessionSummary)
    def put_threshold(session_id: str, body: ThresholdBody):
        session = session_or_404(session_id)
        try:
            FilterConfig(body.percent)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with session.lock:
            session.threshold = body.percent
            return summary(session)

    @app.get("/sessions/{session_id}/diff")
    def get_diff(session_id: str):
        session = session_or_404(session_id)
        diff, ranking = session.diff_and_ranking()
        return diff_report(diff, ranking, session.filter_config)

    def _scene(session: Session):
        diff, ranking = session.diff_and_ranking()
        return build_scene(
            session.network, diff, ranking, session.filter_config, session.layout()
        )

    @app.get("/sessions/{session_id}/scene")
    def get_scene(session_id: str):
        return scene_to_document(_scene(session_or_404(session_id)))

    @app.get("/sessions/{session_id}/scene.svg")
    def get_scene_svg(session_id: str):
        svg = render_svg(_scene(session_or_404(session_id)))
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/cpt/{variable}")
    def get_cpt(session_id: str, variable: str):
        session = session_or_404(session_id)
        try:
            cpt = session.network.cpt(variable)
        except DomainError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return cpt_panel_to_document(cpt_view(cpt))

    return app


app = create_app()
