"""HTTP/JSON API over the registry, rules, query pipeline and sim world.

Every endpoint is a thin adapter around the corresponding library call:
the server's only own behavior is supplying `now` from its clock and
mapping exceptions onto status codes (validation -> 400, not-found ->
404, anything else -> 500) with an {"code", "message"} error body.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from threading import Lock

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .config import HubConfig
from .errors import BdpError, NotFoundError, ValidationError
from .kvstore import SortedKVStore
from .proximity import ProximityBrowser
from .registry import Registry, chunks_from_wire
from .rules import Fingerprint, RuleBook
from .simworld import SimWorld


def now_ms() -> int:
    return int(time.time() * 1000)


@dataclass
class HubState:
    """Everything one hub process owns, wired from a config."""

    config: HubConfig
    store: SortedKVStore
    registry: Registry
    rulebook: RuleBook
    browser: ProximityBrowser
    world: SimWorld
    world_lock: Lock = field(default_factory=Lock)

    @classmethod
    def from_config(cls, config: HubConfig | None = None) -> "HubState":
        config = config if config is not None else HubConfig()
        store = SortedKVStore(config.storage_path)
        registry = Registry(store, config.make_bloom())
        if len(store):
            registry.rebuild_bloom()  # refill the cache after log replay
        rules_path = config.rules_path()
        if rules_path.exists():
            rulebook = RuleBook.from_wire_list(json.loads(rules_path.read_text()))
        else:
            rulebook = RuleBook()
        world_path = config.world_path()
        if world_path.exists():
            world = SimWorld.load(world_path)
        else:
            world = SimWorld(
                gamma=config.sim_gamma,
                noise_sigma=config.sim_noise_sigma,
                rssi_floor=config.sim_rssi_floor,
                seed=config.sim_seed,
            )
        return cls(
            config=config,
            store=store,
            registry=registry,
            rulebook=rulebook,
            browser=ProximityBrowser(registry, rulebook),
            world=world,
        )

    def save_rules(self) -> None:
        """Persist the ruleset next to the store log (stateful hubs only)."""
        if self.config.storage_path is None:
            return
        path = self.config.rules_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.rulebook.to_wire_list(), indent=2) + "\n")

    def close(self) -> None:
        self.store.close()


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


async def _json_body(request: Request) -> dict:
    try:
        body = json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise ValidationError("request body is not valid JSON", code="malformed_json")
    if not isinstance(body, dict):
        raise ValidationError("request body must be a JSON object", code="malformed_json")
    return body


def _require(body: dict, key: str):
    if key not in body or body[key] is None:
        raise ValidationError(f"missing required field: {key}")
    return body[key]


def _int_param(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be an integer") from None


def _float_param(name: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a number") from None


def create_app(state: HubState) -> FastAPI:
    app = FastAPI(title="bdp hub", openapi_url=None)
    app.state.hub = state
    # The companion UI is served from its own origin (plain static files).
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ValidationError)
    async def _on_validation(_req, exc: ValidationError):
        return _error_response(400, exc.code, str(exc))

    @app.exception_handler(NotFoundError)
    async def _on_not_found(_req, exc: NotFoundError):
        return _error_response(404, exc.code, str(exc))

    @app.exception_handler(BdpError)
    async def _on_bdp_error(_req, exc: BdpError):
        return _error_response(500, "internal", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _on_request_invalid(_req, exc):
        return _error_response(400, "invalid_request", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def _on_http_error(_req, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok")

    # -- records ------------------------------------------------------------

    @app.post("/records", status_code=201)
    async def create_record(request: Request):
        body = await _json_body(request)
        chunks = chunks_from_wire(_require(body, "data_array"))
        record_id = state.registry.create_record(_require(body, "mac"), chunks, now_ms())
        return {"recordID": record_id}

    @app.get("/records")
    async def get_records(mac: str, include_inactive: int = 0):
        records = state.registry.get_records_by_mac(mac, bool(include_inactive))
        return [r.to_wire() for r in records]

    @app.patch("/records/{record_id}")
    async def update_record(record_id: str, request: Request):
        body = await _json_body(request)
        chunks = chunks_from_wire(_require(body, "data_array"))
        return state.registry.update_record(record_id, chunks, now_ms()).to_wire()

    @app.patch("/records/{record_id}/status")
    async def set_status(record_id: str, request: Request):
        body = await _json_body(request)
        active = _require(body, "active")
        if not isinstance(active, (bool, int)) or isinstance(active, int) and active not in (0, 1):
            raise ValidationError("active must be a boolean or 0/1")
        return state.registry.set_status(record_id, bool(active), now_ms()).to_wire()

    # -- query ---------------------------------------------------------------

    @app.post("/query")
    async def query(request: Request):
        body = await _json_body(request)
        raw_fp = _require(body, "fingerprint")
        if not isinstance(raw_fp, list):
            raise ValidationError("fingerprint must be a list of {mac, rssi}")
        observations = []
        for obs in raw_fp:
            if not isinstance(obs, dict):
                raise ValidationError("fingerprint entries must be {mac, rssi} objects")
            observations.append(
                (_require(obs, "mac"), _float_param("rssi", _require(obs, "rssi")))
            )
        fp = Fingerprint.of(observations, scan_time=now_ms())
        tx = body.get("tx_power_1m", state.config.default_tx_power_1m)
        tx = None if tx is None else _float_param("tx_power_1m", tx)
        result = state.browser.query(_require(body, "requester"), fp, tx_power_1m=tx)
        return result.to_wire()

    # -- rules ----------------------------------------------------------------

    @app.post("/rules", status_code=201)
    async def create_rule(request: Request):
        body = await _json_body(request)
        rule_id = state.rulebook.create_rule(
            node=_require(body, "node"),
            rssi_min=_require(body, "rssi_min"),
            rssi_max=_require(body, "rssi_max"),
            content=chunks_from_wire(_require(body, "content")),
            enabled=bool(body.get("enabled", True)),
            label=body.get("label"),
        )
        state.save_rules()
        return {"ruleID": rule_id}

    @app.get("/rules")
    async def list_rules():
        return [rule.to_wire() for rule in state.rulebook.list_rules()]

    @app.patch("/rules/{rule_id}")
    async def patch_rule(rule_id: str, request: Request):
        body = await _json_body(request)
        if "enabled" in body:
            state.rulebook.set_enabled(rule_id, bool(body["enabled"]))
        updatable = {"node", "rssi_min", "rssi_max", "content", "label"}
        if updatable & set(body):
            content = body.get("content")
            state.rulebook.update_rule(
                rule_id,
                node=body.get("node"),
                rssi_min=body.get("rssi_min"),
                rssi_max=body.get("rssi_max"),
                content=None if content is None else chunks_from_wire(content),
                label=body.get("label"),
            )
        state.save_rules()
        return state.rulebook.get_rule(rule_id).to_wire()

    # -- stats -----------------------------------------------------------------

    @app.get("/stats/events")
    async def event_stats(request: Request, provider: str):
        params = request.query_params
        start = _int_param("from", _require(dict(params), "from"))
        end = _int_param("to", _require(dict(params), "to"))
        count = state.registry.event_stats(provider, (start, end))
        return {"provider": provider, "from": start, "to": end, "count": count}

    # -- simulation --------------------------------------------------------------

    @app.post("/sim/world")
    async def load_world(request: Request):
        body = await _json_body(request)
        world = SimWorld.from_wire(body)
        with state.world_lock:
            state.world = world
        return {"nodes": len(world.nodes), "gamma": world.gamma,
                "noise_sigma": world.noise_sigma, "rssi_floor": world.rssi_floor}

    @app.post("/sim/scan")
    async def sim_scan(request: Request):
        body = await _json_body(request)
        x = _float_param("x", _require(body, "x"))
        y = _float_param("y", _require(body, "y"))
        with state.world_lock:
            fp = state.world.scan((x, y), time=now_ms())
        return {
            "observations": [{"mac": mac, "rssi": rssi} for mac, rssi in fp.observations],
            "scan_time": fp.scan_time,
        }

    @app.post("/sim/nodes/{mac}/move")
    async def move_node(mac: str, request: Request):
        body = await _json_body(request)
        x = _float_param("x", _require(body, "x"))
        y = _float_param("y", _require(body, "y"))
        with state.world_lock:
            node = state.world.move_node(mac, x, y)
        return node.to_wire()

    return app


def create_app_from_config(config: HubConfig | None = None) -> FastAPI:
    return create_app(HubState.from_config(config))
