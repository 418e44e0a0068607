"""HTTP/JSON service for live enrollment and authentication.

Exposes the enrollment flow (create user, submit samples per session,
finalize) and authentication under a /v1 prefix, backed by the file-based
feature store.  Timestamps are client-captured and used as-is; the server
never re-timestamps events.
"""

from __future__ import annotations

import math
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .enrollment import (AuthPolicy, authenticate, enroll, hash_secret)
from .errors import KeytrajError
from .events import (EventKind, FeatureKind, KeyEvent, KeystrokeSample,
                     extract_trajectory)
from .store import FeatureStore, encode_sample, pending_samples


class CreateUserBody(BaseModel):
    user_id: str = Field(min_length=1)
    secret: str = Field(min_length=1)


class EventItem(BaseModel):
    key: str
    kind: str
    timestamp_ms: float


class SubmitSampleBody(BaseModel):
    session: int = Field(ge=1)
    secret_text: str
    events: List[EventItem]


class AuthenticateBody(BaseModel):
    secret: str
    events: List[EventItem]


def _to_sample(user_id: str, session_id: str, secret: str,
               events: List[EventItem]) -> KeystrokeSample:
    try:
        evs = [KeyEvent(e.key, EventKind(e.kind), e.timestamp_ms)
               for e in events]
    except (ValueError, KeytrajError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return KeystrokeSample(user_id, session_id, secret, evs)


def _finite(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def create_app(store_dir: str, session_count: int = 3,
               reps_per_session: int = 5,
               threshold_floor: float = 0.0,
               feature_kind: FeatureKind = FeatureKind.PRESS_PRESS) -> FastAPI:
    store = FeatureStore(store_dir)
    policy = AuthPolicy(threshold_floor=threshold_floor)
    app = FastAPI(title="keytraj")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )

    def _require_pending(user_id: str) -> dict:
        state = store.load_pending(user_id)
        if state is None:
            raise HTTPException(status_code=404,
                                detail=f"no open enrollment for {user_id}")
        return state

    @app.post("/v1/users", status_code=201)
    def create_user(body: CreateUserBody):
        with store.lock(body.user_id):
            if store.load_feature(body.user_id) is not None \
                    or store.load_pending(body.user_id) is not None:
                raise HTTPException(status_code=409,
                                    detail="user already exists")
            store.save_pending(body.user_id, {
                "user_id": body.user_id,
                "secret_hash": hash_secret(body.user_id, body.secret),
                "sessions": {str(i): [] for i in range(1, session_count + 1)},
                "status": "open",
            })
        return {"user_id": body.user_id, "sessions": session_count,
                "reps_per_session": reps_per_session}

    @app.get("/v1/users/{user_id}/enrollment")
    def enrollment_progress(user_id: str):
        state = _require_pending(user_id)
        return {
            "user_id": user_id,
            "status": state["status"],
            "sessions": {k: len(v) for k, v in state["sessions"].items()},
            "reps_per_session": reps_per_session,
        }

    @app.post("/v1/users/{user_id}/samples")
    def submit_sample(user_id: str, body: SubmitSampleBody):
        with store.lock(user_id):
            state = _require_pending(user_id)
            if body.session > session_count:
                raise HTTPException(status_code=422,
                                    detail=f"session must be 1..{session_count}")
            if hash_secret(user_id, body.secret_text) != state["secret_hash"]:
                raise HTTPException(status_code=422,
                                    detail="secret does not match enrollment")
            key = str(body.session)
            if len(state["sessions"][key]) >= reps_per_session:
                raise HTTPException(status_code=409,
                                    detail="session already complete")
            sample = _to_sample(user_id, f"s{body.session}", body.secret_text,
                                body.events)
            try:
                traj = extract_trajectory(sample, feature_kind)
            except KeytrajError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            state["sessions"][key].append(encode_sample(sample))
            store.save_pending(user_id, state)
            return {
                "session": body.session,
                "count": len(state["sessions"][key]),
                "reps_per_session": reps_per_session,
                "latencies": list(traj.latencies),
            }

    @app.post("/v1/users/{user_id}/finalize")
    def finalize(user_id: str):
        with store.lock(user_id):
            state = _require_pending(user_id)
            sessions = pending_samples(state)
            incomplete = [k for k in sorted(sessions)
                          if len(sessions[k]) < reps_per_session]
            if incomplete:
                raise HTTPException(
                    status_code=409,
                    detail=f"sessions incomplete: {incomplete}")
            try:
                feature = enroll([sessions[k] for k in sorted(sessions)],
                                 feature_kind)
            except KeytrajError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            store.save_feature(feature)
            store.drop_pending(user_id)
        return {
            "user_id": user_id,
            "user_threshold": feature.user_threshold,
            "rep_length": len(feature.user_rep_traj),
            "rep_latencies": list(feature.user_rep_traj.latencies),
        }

    @app.post("/v1/users/{user_id}/authenticate")
    def do_authenticate(user_id: str, body: AuthenticateBody):
        feature = store.load_feature(user_id)
        if feature is None:
            raise HTTPException(status_code=404,
                                detail=f"no feature for {user_id}")
        sample = _to_sample(user_id, "auth", body.secret, body.events)
        decision = authenticate(sample, feature, policy)
        store.audit({
            "user_id": user_id,
            "accepted": decision.accepted,
            "reason": decision.reason.value,
            "dissimilarity": _finite(decision.dissimilarity),
        })
        return {
            "accepted": decision.accepted,
            "dissimilarity": _finite(decision.dissimilarity),
            "threshold": decision.threshold,
            "reason": decision.reason.value,
        }

    @app.get("/v1/users/{user_id}/feature")
    def feature_summary(user_id: str):
        feature = store.load_feature(user_id)
        if feature is None:
            raise HTTPException(status_code=404,
                                detail=f"no feature for {user_id}")
        return {
            "user_id": feature.user_id,
            "feature_kind": feature.feature_kind.value,
            "user_threshold": feature.user_threshold,
            "rep_length": len(feature.user_rep_traj),
            "rep_latencies": list(feature.user_rep_traj.latencies),
            "created_at": feature.created_at,
        }

    return app
