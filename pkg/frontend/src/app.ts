/** Wires the three views to the hub API: rule editor, record manager,
 * and the live proximity panel over the simulated world. */

import { HubApi, HubApiError } from "./api.js";
import { el, replaceChildrenWith } from "./dom.js";
import { WorldMap } from "./map.js";
import { ProximityPanel } from "./panel.js";
import { MIN_POLL_INTERVAL_MS, Poller } from "./poller.js";
import { renderChunk, renderEntry } from "./render.js";
import type { PollResult } from "./panel.js";
import type { RecordWire, RuleWire, WorldWire } from "./types.js";
import { normalizeMac, validateRecordForm, validateRuleForm } from "./validate.js";

const SAMPLE_WORLD: WorldWire = {
	gamma: 2.0,
	noise_sigma: 0.0,
	rssi_floor: -90.0,
	seed: 7,
	nodes: [
		{ mac: "02:00:00:00:00:01", x: 0, y: 0, tx_power_1m: -59, discoverable: true },
		{ mac: "02:00:00:00:00:02", x: 25, y: 5, tx_power_1m: -59, discoverable: true },
		{ mac: "02:00:00:00:00:03", x: 50, y: 0, tx_power_1m: -59, discoverable: true },
		{ mac: "02:00:00:00:00:04", x: 25, y: 30, tx_power_1m: -59, discoverable: true },
		{ mac: "02:00:00:00:00:05", x: 0, y: 30, tx_power_1m: -63, discoverable: true },
	],
};

function input(id: string): HTMLInputElement {
	return el(id) as HTMLInputElement;
}

function showErrors(target: HTMLElement, errors: string[]): void {
	replaceChildrenWith(
		target,
		errors.map((message) => ({ tag: "li", attrs: { class: "error" }, text: message })),
	);
}

function describeError(error: unknown): string {
	if (error instanceof HubApiError) return `${error.code}: ${error.message}`;
	return String(error);
}

function main(): void {
	const api = new HubApi(input("base-url").value);
	let worldNodes = SAMPLE_WORLD.nodes;

	const panel = new ProximityPanel(api);
	const statusBar = el("status");

	const setStatus = (text: string, isError = false) => {
		statusBar.textContent = text;
		statusBar.className = isError ? "status status-error" : "status";
	};

	// -- proximity browser panel ------------------------------------------

	const entriesList = el("entries");
	const map = new WorldMap(el("world-canvas") as HTMLCanvasElement, (x, y) => {
		panel.setObserver(x, y);
		poller.requestNow();
	});
	map.setWorld(worldNodes);
	map.setObserver(0, 0);

	const applyPoll = (result: PollResult) => {
		map.setHeard(result.scan.observations.map((o) => o.mac));
		if (result.entries.length === 0) {
			replaceChildrenWith(entriesList, [
				{ tag: "li", attrs: { class: "entry entry-empty" }, text: "nothing nearby has content" },
			]);
		} else {
			replaceChildrenWith(entriesList, result.entries.map(renderEntry));
		}
		setStatus(
			`heard ${result.scan.observations.length} node(s), ` +
				`${result.entries.length} content entr${result.entries.length === 1 ? "y" : "ies"}`,
		);
	};

	const poller = new Poller(
		() => panel.pollOnce(),
		applyPoll,
		Number(input("poll-interval").value) || MIN_POLL_INTERVAL_MS,
		(error) => setStatus(describeError(error), true),
	);

	el("session-apply").addEventListener("click", () => {
		api.baseUrl = input("base-url").value;
		panel.requester = normalizeMac(input("requester").value) ?? panel.requester;
		const tx = input("tx-power").value.trim();
		panel.txPower1m = tx === "" ? undefined : Number(tx);
		poller.setInterval(Number(input("poll-interval").value) || MIN_POLL_INTERVAL_MS);
		input("poll-interval").value = String(poller.interval);
		setStatus("session updated");
	});

	el("world-sample").addEventListener("click", () => {
		void (async () => {
			try {
				await api.loadWorld(SAMPLE_WORLD);
				worldNodes = SAMPLE_WORLD.nodes;
				map.setWorld(worldNodes);
				setStatus(`sample world loaded (${worldNodes.length} nodes)`);
			} catch (error) {
				setStatus(describeError(error), true);
			}
		})();
	});

	input("world-file").addEventListener("change", () => {
		const file = input("world-file").files?.[0];
		if (!file) return;
		void (async () => {
			try {
				const world = JSON.parse(await file.text()) as WorldWire;
				await api.loadWorld(world);
				worldNodes = world.nodes ?? [];
				map.setWorld(worldNodes);
				setStatus(`world "${file.name}" loaded (${worldNodes.length} nodes)`);
			} catch (error) {
				setStatus(describeError(error), true);
			}
		})();
	});

	poller.start();

	// -- rule editor --------------------------------------------------------

	const ruleErrors = el("rule-errors");
	const rulesList = el("rules-list");

	const drawRules = (rules: RuleWire[]) => {
		replaceChildrenWith(
			rulesList,
			rules.map((rule) => ({
				tag: "li",
				attrs: { class: rule.enabled ? "rule" : "rule rule-disabled", "data-rule": rule.ruleID },
				children: [
					{
						tag: "div",
						attrs: { class: "rule-head" },
						children: [
							{ tag: "code", text: rule.node },
							{ tag: "span", text: ` in [${rule.rssi_min}, ${rule.rssi_max}] dBm ` },
							...(rule.label ? [{ tag: "em", text: rule.label } as const] : []),
							{
								tag: "button",
								attrs: { "data-toggle": rule.ruleID, "data-enabled": String(rule.enabled) },
								text: rule.enabled ? "disable" : "enable",
							},
						],
					},
					{ tag: "div", attrs: { class: "rule-content" }, children: rule.content.map(renderChunk) },
				],
			})),
		);
	};

	const refreshRules = async () => {
		try {
			drawRules(await api.listRules());
		} catch (error) {
			setStatus(describeError(error), true);
		}
	};

	rulesList.addEventListener("click", (event) => {
		const button = (event.target as HTMLElement).closest("button[data-toggle]");
		if (!button) return;
		const ruleId = button.getAttribute("data-toggle") as string;
		const enabled = button.getAttribute("data-enabled") === "true";
		void (async () => {
			try {
				await api.patchRule(ruleId, { enabled: !enabled });
				await refreshRules();
			} catch (error) {
				setStatus(describeError(error), true);
			}
		})();
	});

	el("rule-create").addEventListener("click", () => {
		const checked = validateRuleForm({
			node: input("rule-node").value,
			rssiMin: input("rule-min").value,
			rssiMax: input("rule-max").value,
			chunkType: input("rule-chunk-type").value,
			chunkData: input("rule-chunk-data").value,
			label: input("rule-label").value,
		});
		if (!checked.ok) {
			showErrors(ruleErrors, checked.errors); // invalid: no request leaves the browser
			return;
		}
		showErrors(ruleErrors, []);
		void (async () => {
			try {
				await api.createRule(checked.value);
				await refreshRules();
				setStatus("rule created");
			} catch (error) {
				showErrors(ruleErrors, [describeError(error)]);
			}
		})();
	});

	void refreshRules();

	// -- record manager -------------------------------------------------------

	const recordErrors = el("record-errors");
	const recordsList = el("records-list");
	let recordsMac: string | null = null;

	const drawRecords = (records: RecordWire[]) => {
		replaceChildrenWith(
			recordsList,
			records.map((record) => ({
				tag: "li",
				attrs: { class: record.status ? "record" : "record record-off" },
				children: [
					{
						tag: "div",
						attrs: { class: "record-head" },
						children: [
							{ tag: "code", text: record.recordID.slice(0, 8) },
							{ tag: "span", text: record.status ? " active " : " off " },
							{
								tag: "button",
								attrs: {
									"data-record": record.recordID,
									"data-active": String(Boolean(record.status)),
								},
								text: record.status ? "switch off" : "switch on",
							},
						],
					},
					{
						tag: "div",
						attrs: { class: "record-chunks" },
						children: record.data_array.map(renderChunk),
					},
				],
			})),
		);
	};

	const refreshRecords = async () => {
		if (recordsMac === null) return;
		try {
			drawRecords(await api.getRecords(recordsMac, true));
		} catch (error) {
			showErrors(recordErrors, [describeError(error)]);
		}
	};

	el("records-load").addEventListener("click", () => {
		const mac = normalizeMac(input("records-mac").value);
		if (mac === null) {
			showErrors(recordErrors, ["mac must look like aa:bb:cc:dd:ee:ff"]);
			return;
		}
		showErrors(recordErrors, []);
		recordsMac = mac;
		void refreshRecords();
	});

	recordsList.addEventListener("click", (event) => {
		const button = (event.target as HTMLElement).closest("button[data-record]");
		if (!button) return;
		const recordId = button.getAttribute("data-record") as string;
		const active = button.getAttribute("data-active") === "true";
		void (async () => {
			try {
				await api.setRecordStatus(recordId, !active);
				await refreshRecords();
			} catch (error) {
				showErrors(recordErrors, [describeError(error)]);
			}
		})();
	});

	el("record-create").addEventListener("click", () => {
		const checked = validateRecordForm({
			mac: input("record-mac").value,
			chunkType: input("record-chunk-type").value,
			chunkData: input("record-chunk-data").value,
		});
		if (!checked.ok) {
			showErrors(recordErrors, checked.errors);
			return;
		}
		showErrors(recordErrors, []);
		void (async () => {
			try {
				const created = await api.createRecord(checked.value.mac, checked.value.chunks);
				setStatus(`record ${created.recordID.slice(0, 8)} created`);
				recordsMac = checked.value.mac;
				input("records-mac").value = checked.value.mac;
				await refreshRecords();
			} catch (error) {
				showErrors(recordErrors, [describeError(error)]);
			}
		})();
	});

	replaceChildrenWith(el("entries"), [
		{ tag: "li", attrs: { class: "entry entry-empty" }, text: "waiting for the first scan" },
	]);
}

document.addEventListener("DOMContentLoaded", main);
