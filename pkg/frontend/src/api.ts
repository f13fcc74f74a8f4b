/** Thin fetch client for the hub API. No business logic lives here:
 * every method is one endpoint, errors surface as HubApiError with the
 * server's own {code, message} body. */

import type {
	DataChunk,
	EventStats,
	Observation,
	QueryEntry,
	RecordWire,
	RuleWire,
	ScanResponse,
	WorldNode,
	WorldWire,
} from "./types.js";

export class HubApiError extends Error {
	constructor(
		readonly status: number,
		readonly code: string,
		message: string,
	) {
		super(message);
	}
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class HubApi {
	constructor(
		public baseUrl: string,
		private fetchFn: FetchLike = (url, init) => fetch(url, init),
	) {}

	private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
		const init: RequestInit = { method };
		if (body !== undefined) {
			init.headers = { "content-type": "application/json" };
			init.body = JSON.stringify(body);
		}
		const response = await this.fetchFn(this.baseUrl.replace(/\/$/, "") + path, init);
		const text = await response.text();
		let payload: unknown = null;
		try {
			payload = text ? JSON.parse(text) : null;
		} catch {
			payload = text;
		}
		if (!response.ok) {
			const err = payload as { code?: string; message?: string } | null;
			throw new HubApiError(
				response.status,
				err?.code ?? "http_error",
				err?.message ?? `HTTP ${response.status}`,
			);
		}
		return payload as T;
	}

	healthz(): Promise<unknown> {
		return this.request("GET", "/healthz");
	}

	// records
	createRecord(mac: string, chunks: DataChunk[]): Promise<{ recordID: string }> {
		return this.request("POST", "/records", { mac, data_array: chunks });
	}

	getRecords(mac: string, includeInactive = false): Promise<RecordWire[]> {
		const suffix = includeInactive ? "&include_inactive=1" : "";
		return this.request("GET", `/records?mac=${encodeURIComponent(mac)}${suffix}`);
	}

	updateRecord(recordId: string, chunks: DataChunk[]): Promise<RecordWire> {
		return this.request("PATCH", `/records/${recordId}`, { data_array: chunks });
	}

	setRecordStatus(recordId: string, active: boolean): Promise<RecordWire> {
		return this.request("PATCH", `/records/${recordId}/status`, { active: active ? 1 : 0 });
	}

	// rules
	createRule(rule: {
		node: string;
		rssi_min: number;
		rssi_max: number;
		content: DataChunk[];
		label?: string;
		enabled?: boolean;
	}): Promise<{ ruleID: string }> {
		return this.request("POST", "/rules", rule);
	}

	listRules(): Promise<RuleWire[]> {
		return this.request("GET", "/rules");
	}

	patchRule(ruleId: string, patch: Partial<Omit<RuleWire, "ruleID">>): Promise<RuleWire> {
		return this.request("PATCH", `/rules/${ruleId}`, patch);
	}

	// query + stats
	query(requester: string, fingerprint: Observation[], txPower1m?: number): Promise<QueryEntry[]> {
		const body: Record<string, unknown> = { requester, fingerprint };
		if (txPower1m !== undefined) body["tx_power_1m"] = txPower1m;
		return this.request("POST", "/query", body);
	}

	eventStats(provider: string, from: number, to: number): Promise<EventStats> {
		return this.request(
			"GET",
			`/stats/events?provider=${encodeURIComponent(provider)}&from=${from}&to=${to}`,
		);
	}

	// simulation
	loadWorld(world: WorldWire): Promise<{ nodes: number }> {
		return this.request("POST", "/sim/world", world);
	}

	simScan(x: number, y: number): Promise<ScanResponse> {
		return this.request("POST", "/sim/scan", { x, y });
	}

	moveNode(mac: string, x: number, y: number): Promise<WorldNode> {
		return this.request("POST", `/sim/nodes/${encodeURIComponent(mac)}/move`, { x, y });
	}
}
