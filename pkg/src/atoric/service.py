"""Session service over the wedge workbench: create, inspect, mutate, antiflip, flip, undo/redo."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse

from .exactmath import DomainError, frac_from_str, frac_to_str
from .flip import NoIntegralFlip, flip, initial_antiflip
from .mori import budget, generate, is_infinitely_right_mutable, validate_seed
from .mutate import classify, mutate
from .render import default_viewport, render_svg
from .wedge import MarkedChain, WedgeParams, from_chain, invariants, realize, sigma


@dataclass
class SessionState:
    wedge: WedgeParams
    bounds: tuple[Fraction, Fraction]
    label: str  # what produced this state ("create", "mutate right", ...)


@dataclass
class Session:
    id: str
    history: list[SessionState]
    cursor: int
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def current(self) -> SessionState:
        return self.history[self.cursor]

    def push(self, state: SessionState):
        # a new action discards any redo tail
        del self.history[self.cursor + 1 :]
        self.history.append(state)
        self.cursor += 1


class Registry:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._counter = itertools.count(1)
        self._lock = threading.Lock()

    def create(self, state: SessionState) -> Session:
        with self._lock:
            sid = f"s{next(self._counter)}"
            s = Session(sid, [state], 0)
            self._sessions[sid] = s
            return s

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(sid)


def _witness_str(w) -> str:
    if isinstance(w, tuple) and len(w) == 2:
        return f"({frac_to_str(Fraction(w[0]))}, {frac_to_str(Fraction(w[1]))})"
    return str(w)


def _classify_json(w: WedgeParams) -> dict:
    out = {}
    for side in ("left", "right"):
        m = classify(w, side)
        out[side] = {"status": m.status, "witness": _witness_str(m.witness)}
    return out


def _state_json(s: Session) -> dict:
    st = s.current
    w = st.wedge
    body = {
        "id": s.id,
        "wedge": w.to_json(),
        "bounds": [frac_to_str(st.bounds[0]), frac_to_str(st.bounds[1])],
        "invariants": invariants(w).to_json(),
        "classify": _classify_json(w),
        "history_length": len(s.history),
        "cursor": s.cursor,
        "label": st.label,
        "budget": None,
    }
    try:
        if is_infinitely_right_mutable(w):
            body["budget"] = budget(w, st.bounds[1], 5).to_json()
    except DomainError:
        pass
    return body


def _error(status: int, message: str, witness: Optional[str] = None) -> JSONResponse:
    body = {"error": message}
    if witness is not None:
        body["witness"] = witness
    return JSONResponse(body, status_code=status)


def create_app() -> FastAPI:
    app = FastAPI(title="atoric workbench")
    registry = Registry()

    def _get(sid: str) -> Optional[Session]:
        return registry.get(sid)

    @app.post("/session")
    def create_session(payload: dict):
        try:
            if "wedge" in payload:
                w = WedgeParams.from_json(payload["wedge"])
            elif "chain" in payload:
                c = payload["chain"]
                mc = MarkedChain(tuple(c["left"]), c["c"], tuple(c["right"]))
                w = from_chain(mc, frac_from_str(str(payload["a"])))
            else:
                return _error(422, "payload needs 'wedge' or 'chain'")
            l1 = frac_from_str(str(payload.get("l1", "1")))
            l2 = frac_from_str(str(payload.get("l2", "1")))
            if l1 <= 0 or l2 <= 0:
                return _error(422, "bounds must be positive")
        except (DomainError, KeyError, ValueError, TypeError) as e:
            return _error(422, f"invalid session payload: {e}")
        s = registry.create(SessionState(w, (l1, l2), "create"))
        return {"id": s.id}

    @app.get("/session/{sid}")
    def get_session(sid: str):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        return _state_json(s)

    @app.post("/session/{sid}/mutate")
    def post_mutate(sid: str, payload: dict):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        side = payload.get("side")
        if side not in ("left", "right"):
            return _error(422, "side must be 'left' or 'right'")
        with s.lock:
            st = s.current
            m = classify(st.wedge, side)
            if m.status != "mutable":
                return _error(409, f"{side} side is {m.status}", _witness_str(m.witness))
            new = mutate(st.wedge, side)
            l1, l2 = st.bounds
            # a mutation consumes affine length equal to the new compact edge
            if side == "right":
                l2 = l2 - new.a
            else:
                l1 = l1 - new.a
            if l1 <= 0 or l2 <= 0:
                return _error(409, "mutation would exhaust the bounded region")
            s.push(SessionState(new, (l1, l2), f"mutate {side}"))
            return _state_json(s)

    @app.post("/session/{sid}/antiflip")
    def post_antiflip(sid: str, payload: dict):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        try:
            a_minus = frac_from_str(str(payload["aMinus"]))
        except (DomainError, KeyError, ValueError) as e:
            return _error(422, f"bad aMinus: {e}")
        with s.lock:
            st = s.current
            if sigma(st.wedge) <= 0:
                return _error(409, "antiflip needs a K-positive wedge",
                              f"sigma = {sigma(st.wedge)}")
            if a_minus <= 0 or a_minus >= st.bounds[1]:
                return _error(409, f"aMinus must lie in (0, {frac_to_str(st.bounds[1])})")
            res = initial_antiflip(st.wedge, a_minus)
            bounds = (st.bounds[0] + st.wedge.a, st.bounds[1] - a_minus)
            s.push(SessionState(res.minus, bounds, "antiflip"))
            return _state_json(s)

    @app.post("/session/{sid}/flip")
    def post_flip(sid: str, payload: dict):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        try:
            a_plus = frac_from_str(str(payload["aPlus"]))
        except (DomainError, KeyError, ValueError) as e:
            return _error(422, f"bad aPlus: {e}")
        with s.lock:
            st = s.current
            try:
                res = flip(st.wedge, a_plus)
            except (NoIntegralFlip, DomainError) as e:
                return _error(409, str(e))
            if res.kind != "FlipTo":
                return _error(409, "flip ends in a divisorial contraction",
                              str(res.sphere))
            s.push(SessionState(res.plus, st.bounds, "flip"))
            return _state_json(s)

    @app.post("/session/{sid}/undo")
    def post_undo(sid: str):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        with s.lock:
            if s.cursor == 0:
                return _error(409, "nothing to undo")
            s.cursor -= 1
            return _state_json(s)

    @app.post("/session/{sid}/redo")
    def post_redo(sid: str):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        with s.lock:
            if s.cursor + 1 >= len(s.history):
                return _error(409, "nothing to redo")
            s.cursor += 1
            return _state_json(s)

    @app.get("/session/{sid}/render.svg")
    def get_render(sid: str):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        poly = realize(s.current.wedge)
        svg = render_svg(poly, default_viewport(poly))
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/session/{sid}/mori")
    def get_mori(sid: str, n: int = 5):
        s = _get(sid)
        if s is None:
            return _error(404, "unknown session")
        w = s.current.wedge
        try:
            seed = validate_seed(w.p1, w.q1, w.p2, w.q2)
        except DomainError as e:
            return _error(409, f"current wedge is not a valid Mori seed: {e}")
        return generate(seed, n).to_json()

    return app


app = create_app()
