"""Command line for the proximity hub.

Stateful verbs (post/query/rules/sim) run embedded against the storage
named in the config file, so a sequence of invocations shares one hub
state through the append-only log; `serve` exposes the same state over
HTTP. Without a config (or without storage.path) everything is
in-memory and gone when the process exits.
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from . import bloom as bloomlib
from .bench import run_bench
from .config import HubConfig
from .errors import BdpError
from .registry import DataChunk
from .rules import Fingerprint
from .service import HubState, create_app, now_ms
from .simworld import SimWorld

DEFAULT_REQUESTER = "02:00:00:00:00:01"


class _HubGroup(click.Group):
    """Render package errors as clean CLI failures, not tracebacks."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BdpError as exc:
            raise click.ClickException(str(exc)) from exc


def _load_config(config_path: str | None) -> HubConfig:
    if config_path is None:
        return HubConfig()
    return HubConfig.load(config_path)


def _state(config_path: str | None) -> HubState:
    return HubState.from_config(_load_config(config_path))


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, separators=(",", ":")))


config_option = click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False),
    default=None, help="Hub config file (JSON).",
)


@click.group(cls=_HubGroup)
def main():
    """Proximity data hub: records, rules, queries, simulation, benchmarks."""


@main.command()
@config_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(config_path, host, port):
    """Run the HTTP/JSON API server."""
    import uvicorn

    state = _state(config_path)
    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")


@main.command()
@config_option
@click.option("--mac", required=True, help="Node identifier the data binds to.")
@click.option("--type", "chunk_type", required=True, help="Chunk type (text, url, ...).")
@click.option("--data", required=True, help="Chunk payload.")
def post(config_path, mac, chunk_type, data):
    """Create a record with one data chunk."""
    state = _state(config_path)
    try:
        record_id = state.registry.create_record(
            mac, [DataChunk.of(chunk_type, data)], now_ms()
        )
    finally:
        state.close()
    _echo_json({"recordID": record_id})


@main.command()
@config_option
@click.option("--fingerprint", "fingerprint_file", type=click.Path(exists=True),
              help="JSON file with [{mac, rssi}, ...] observations.")
@click.option("--sim-at", help="Scan the loaded sim world from 'X,Y' instead.")
@click.option("--requester", default=DEFAULT_REQUESTER, show_default=True)
@click.option("--tx-power-1m", type=float, default=None,
              help="Calibrated power for distance estimates (overrides config).")
def query(config_path, fingerprint_file, sim_at, requester, tx_power_1m):
    """Run a proximity query and print the resulting JSON array."""
    if (fingerprint_file is None) == (sim_at is None):
        raise click.UsageError("exactly one of --fingerprint or --sim-at is required")
    config = _load_config(config_path)
    state = HubState.from_config(config)
    try:
        if sim_at is not None:
            try:
                x, y = (float(part) for part in sim_at.split(","))
            except ValueError:
                raise click.UsageError("--sim-at expects 'X,Y'") from None
            fp = state.world.scan((x, y), time=now_ms())
        else:
            raw = json.loads(Path(fingerprint_file).read_text())
            observations = raw["observations"] if isinstance(raw, dict) else raw
            fp = Fingerprint.of(
                [(o["mac"], o["rssi"]) for o in observations], scan_time=now_ms()
            )
        tx = tx_power_1m if tx_power_1m is not None else config.default_tx_power_1m
        result = state.browser.query(requester, fp, tx_power_1m=tx)
    finally:
        state.close()
    click.echo(result.to_json().decode())


@main.group()
def rules():
    """Manage proximity rules."""


@rules.command("add")
@config_option
@click.option("--node", required=True)
@click.option("--min", "rssi_min", required=True, type=float)
@click.option("--max", "rssi_max", required=True, type=float)
@click.option("--type", "chunk_type", required=True)
@click.option("--data", required=True)
@click.option("--label", default=None)
def rules_add(config_path, node, rssi_min, rssi_max, chunk_type, data, label):
    """Add a rule activating one content chunk."""
    state = _state(config_path)
    try:
        rule_id = state.rulebook.create_rule(
            node, rssi_min, rssi_max, [DataChunk.of(chunk_type, data)], label=label
        )
        state.save_rules()
    finally:
        state.close()
    _echo_json({"ruleID": rule_id})


@rules.command("list")
@config_option
def rules_list(config_path):
    """Print all rules as a JSON array."""
    state = _state(config_path)
    try:
        _echo_json(state.rulebook.to_wire_list())
    finally:
        state.close()


@rules.command("toggle")
@config_option
@click.argument("rule_id")
@click.option("--on/--off", "enabled", default=True)
def rules_toggle(config_path, rule_id, enabled):
    """Enable or disable a rule."""
    state = _state(config_path)
    try:
        rule = state.rulebook.set_enabled(rule_id, enabled)
        state.save_rules()
    finally:
        state.close()
    _echo_json(rule.to_wire())


@main.command("bloom-tune")
@click.option("--n", "expected_n", required=True, type=int)
@click.option("--target-fp", required=True, type=float)
def bloom_tune(expected_n, target_fp):
    """Print the filter geometry for an expected key count and FP target."""
    m = bloomlib.optimal_bit_count(expected_n, target_fp)
    k = bloomlib.optimal_hash_count(m, expected_n)
    _echo_json(
        {
            "m": m,
            "k": k,
            "predicted_fp_exact": bloomlib.predicted_fp_exact(m, expected_n, k),
            "predicted_fp_approx": bloomlib.predicted_fp_approx(m, expected_n, k),
        }
    )


@main.command()
@click.option("--records", default=100_000, show_default=True, type=int)
@click.option("--queries", default=200_000, show_default=True, type=int)
@click.option("--unregistered", default=0.9, show_default=True, type=float,
              help="Fraction of lookup traffic hitting nodes with no data.")
def bench(records, queries, unregistered):
    """Measure lookup throughput and the Bloom-gated speedup."""
    report = run_bench(records=records, queries=queries, unregistered_frac=unregistered)
    click.echo(json.dumps(report, indent=2))


@main.group()
def sim():
    """Manage the simulated radio world."""


@sim.command("load")
@config_option
@click.argument("world_file", type=click.Path(exists=True, dir_okay=False))
def sim_load(config_path, world_file):
    """Validate a world file and make it the hub's active world."""
    config = _load_config(config_path)
    world = SimWorld.load(world_file)
    target = config.world_path()
    target.parent.mkdir(parents=True, exist_ok=True)
    world.save(target)
    _echo_json(
        {
            "world": str(target),
            "nodes": len(world.nodes),
            "gamma": world.gamma,
            "noise_sigma": world.noise_sigma,
            "rssi_floor": world.rssi_floor,
        }
    )


if __name__ == "__main__":
    main()
