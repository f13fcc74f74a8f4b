/** Wire types of the hub's HTTP/JSON contract. */

export const CHUNK_TYPES = [
	"text",
	"url",
	"image",
	"email",
	"phone",
	"fbprofile",
	"twprofile",
] as const;

export type ChunkType = (typeof CHUNK_TYPES)[number];

/** type stays a plain string: servers newer than this UI may send more. */
export interface DataChunk {
	type: string;
	data: string;
}

export interface RecordWire {
	recordID: string;
	MAC_address: string;
	timestamp_created: number;
	timestamp_modified: number;
	status: 0 | 1;
	data_array: DataChunk[];
}

export interface RuleWire {
	ruleID: string;
	node: string;
	rssi_min: number;
	rssi_max: number;
	enabled: boolean;
	content: DataChunk[];
	label?: string;
}

export interface Observation {
	mac: string;
	rssi: number;
}

export interface ScanResponse {
	observations: Observation[];
	scan_time: number;
}

export interface QueryEntry {
	node: string;
	rssi: number;
	distance_m?: number;
	chunks: DataChunk[];
	source: "record" | "rule";
}

export interface WorldNode {
	mac: string;
	x: number;
	y: number;
	tx_power_1m: number;
	discoverable?: boolean;
}

export interface WorldWire {
	gamma?: number;
	noise_sigma?: number;
	rssi_floor?: number;
	seed?: number;
	nodes: WorldNode[];
}

export interface EventStats {
	provider: string;
	from: number;
	to: number;
	count: number;
}
