"""Rule engine semantics against a nested-loop reference evaluator."""

import random

import pytest

from bdp.errors import NotFoundError, ValidationError
from bdp.registry import DataChunk
from bdp.rules import Fingerprint, ProximityRule, RuleBook, evaluate, rule_from_wire

HI = [DataChunk.of("text", "hi")]


def reference_evaluate(ruleset, fingerprint):
    """Independent nested-loop evaluator: scan observations per rule."""
    fired = []
    for rule in ruleset:
        if not rule.enabled:
            continue
        for node, rssi in fingerprint.observations:
            if node == rule.node and rule.rssi_min <= rssi <= rule.rssi_max:
                fired.append((rule.rule_id, rule.content))
                break
    return fired


def make_rule(node="aa:bb:cc:dd:ee:01", lo=-80.0, hi=-40.0, enabled=True, rule_id="r1"):
    return ProximityRule(rule_id, node, lo, hi, tuple(HI), enabled=enabled)


def test_rule_fires_inside_interval():
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -60)])
    assert evaluate([make_rule()], fp) == [("r1", tuple(HI))]


def test_rule_silent_outside_interval():
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -90)])
    assert evaluate([make_rule()], fp) == []


def test_empty_ruleset():
    assert evaluate([], Fingerprint.of([("aa:bb:cc:dd:ee:01", -60)])) == []


def test_invisible_node_never_fires():
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:02", -60)])
    assert evaluate([make_rule()], fp) == []


def test_interval_endpoints_inclusive():
    rule = make_rule(lo=-80.0, hi=-40.0)
    for rssi in (-80.0, -40.0):
        assert evaluate([rule], Fingerprint.of([(rule.node, rssi)])), rssi
    for rssi in (-80.0001, -39.9999):
        assert not evaluate([rule], Fingerprint.of([(rule.node, rssi)])), rssi


def test_disabled_rule_never_fires():
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -60)])
    assert evaluate([make_rule(enabled=False)], fp) == []


def test_output_preserves_ruleset_order():
    rules = [make_rule(rule_id="a", lo=-100, hi=0), make_rule(rule_id="b", lo=-100, hi=0)]
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -50)])
    assert [rid for rid, _ in evaluate(rules, fp)] == ["a", "b"]


def test_evaluation_is_pure():
    rules = [make_rule()]
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -50)])
    first = evaluate(rules, fp)
    second = evaluate(rules, fp)
    assert first == second
    assert rules[0] == make_rule()


def test_matches_reference_on_random_pairs():
    rng = random.Random(1234)
    macs = [f"02:00:00:00:00:{i:02x}" for i in range(12)]
    for _ in range(300):
        ruleset = []
        for j in range(rng.randrange(0, 30)):
            lo = rng.uniform(-100, -30)
            ruleset.append(
                ProximityRule(
                    rule_id=f"rule{j}",
                    node=rng.choice(macs),
                    rssi_min=lo,
                    rssi_max=lo + rng.uniform(0, 40),
                    content=tuple(HI),
                    enabled=rng.random() < 0.8,
                )
            )
        fp = Fingerprint.of(
            [(mac, rng.uniform(-100, -30)) for mac in rng.sample(macs, rng.randrange(0, 12))]
        )
        assert evaluate(ruleset, fp) == reference_evaluate(ruleset, fp)


# -- fingerprint hygiene -----------------------------------------------------

def test_fingerprint_collapses_duplicates_keeping_strongest():
    fp = Fingerprint.of(
        [("aa:bb:cc:dd:ee:01", -70), ("AA:BB:CC:DD:EE:01", -55), ("aa:bb:cc:dd:ee:02", -60)]
    )
    assert fp.observations == (("aa:bb:cc:dd:ee:01", -55.0), ("aa:bb:cc:dd:ee:02", -60.0))


def test_fingerprint_rejects_nonfinite_rssi():
    with pytest.raises(ValidationError):
        Fingerprint.of([("aa:bb:cc:dd:ee:01", float("nan"))])


# -- rulebook CRUD -------------------------------------------------------------

def test_create_rejects_inverted_interval():
    book = RuleBook()
    with pytest.raises(ValidationError):
        book.create_rule("aa:bb:cc:dd:ee:01", -40, -80, HI)


def test_create_rejects_empty_content():
    with pytest.raises(ValidationError):
        RuleBook().create_rule("aa:bb:cc:dd:ee:01", -80, -40, [])


def test_disable_then_evaluate_drops_rule():
    book = RuleBook()
    rule_id = book.create_rule("aa:bb:cc:dd:ee:01", -80, -40, HI)
    fp = Fingerprint.of([("aa:bb:cc:dd:ee:01", -60)])
    assert book.evaluate(fp)
    book.set_enabled(rule_id, False)
    assert book.evaluate(fp) == []
    book.set_enabled(rule_id, True)
    assert book.evaluate(fp)


def test_list_rules_in_creation_order():
    book = RuleBook()
    ids = [book.create_rule(f"02:00:00:00:00:{i:02x}", -80, -40, HI) for i in range(5)]
    assert [r.rule_id for r in book.list_rules()] == ids


def test_update_rule_validates_combined_interval():
    book = RuleBook()
    rule_id = book.create_rule("aa:bb:cc:dd:ee:01", -80, -40, HI)
    with pytest.raises(ValidationError):
        book.update_rule(rule_id, rssi_min=-30)  # above the existing max
    updated = book.update_rule(rule_id, rssi_min=-90, label="door")
    assert updated.rssi_min == -90 and updated.label == "door"


def test_unknown_rule_id():
    book = RuleBook()
    with pytest.raises(NotFoundError):
        book.set_enabled("missing", True)
    with pytest.raises(NotFoundError):
        book.update_rule("missing", rssi_min=-90)


def test_wire_roundtrip():
    book = RuleBook()
    book.create_rule("aa:bb:cc:dd:ee:01", -80, -40, HI, label="cafe door")
    book.create_rule("aa:bb:cc:dd:ee:02", -70, -50, HI, enabled=False)
    wires = book.to_wire_list()
    assert wires[0]["label"] == "cafe door"
    assert "label" not in wires[1]
    clone = RuleBook.from_wire_list(wires)
    assert clone.to_wire_list() == wires


def test_rule_from_wire_validates():
    with pytest.raises(ValidationError):
        rule_from_wire({"ruleID": "x", "node": "aa:bb:cc:dd:ee:01",
                        "rssi_min": -40, "rssi_max": -80, "content": [{"type": "text", "data": "x"}]})
    with pytest.raises(ValidationError):
        rule_from_wire({"ruleID": "", "node": "aa:bb:cc:dd:ee:01",
                        "rssi_min": -80, "rssi_max": -40, "content": [{"type": "text", "data": "x"}]})
