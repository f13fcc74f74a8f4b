/** Proximity browser panel state: one poll = scan from the observer's
 * position, then query with exactly the observations the scan returned.
 * All content decisions stay on the server; this just carries responses. */

import type { HubApi } from "./api.js";
import type { QueryEntry, ScanResponse } from "./types.js";

export interface PollResult {
	scan: ScanResponse;
	entries: QueryEntry[];
}

export class ProximityPanel {
	observerX = 0;
	observerY = 0;
	requester = "02:00:00:00:00:aa";
	txPower1m: number | undefined;

	constructor(private readonly api: HubApi) {}

	setObserver(x: number, y: number): void {
		this.observerX = x;
		this.observerY = y;
	}

	async pollOnce(): Promise<PollResult> {
		const scan = await this.api.simScan(this.observerX, this.observerY);
		if (scan.observations.length === 0) {
			return { scan, entries: [] };
		}
		const entries = await this.api.query(this.requester, scan.observations, this.txPower1m);
		return { scan, entries };
	}
}
