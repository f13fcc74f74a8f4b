/** Form validation mirroring the server's invariants, so bad input never
 * leaves the browser. The server remains the authority; this only stops
 * requests that are certain to be rejected. */

import { CHUNK_TYPES, type ChunkType, type DataChunk } from "./types.js";

const MAC_PATTERN = /^([0-9a-fA-F]{2})[:-]([0-9a-fA-F]{2})[:-]([0-9a-fA-F]{2})[:-]([0-9a-fA-F]{2})[:-]([0-9a-fA-F]{2})[:-]([0-9a-fA-F]{2})$/;

const URL_CHUNK_TYPES: ReadonlySet<string> = new Set(["url", "image", "fbprofile", "twprofile"]);

/** Canonical lowercase colon form, or null if not a MAC at all. */
export function normalizeMac(input: string): string | null {
	const match = MAC_PATTERN.exec(input.trim());
	if (!match) return null;
	return match.slice(1, 7).map((octet) => octet.toLowerCase()).join(":");
}

export function isKnownChunkType(type: string): type is ChunkType {
	return (CHUNK_TYPES as readonly string[]).includes(type);
}

/** Absolute http(s) URL with a host; anything else (including other
 * schemes) is refused so a chunk can never smuggle an executable href. */
export function isSafeAbsoluteUrl(data: string): boolean {
	let parsed: URL;
	try {
		parsed = new URL(data);
	} catch {
		return false;
	}
	return (parsed.protocol === "http:" || parsed.protocol === "https:") && parsed.host !== "";
}

export function chunkError(type: string, data: string): string | null {
	if (!isKnownChunkType(type)) return `unknown chunk type: ${type}`;
	if (!data) return "chunk data must not be empty";
	if (URL_CHUNK_TYPES.has(type) && !isSafeAbsoluteUrl(data)) {
		return `${type} payload must be an absolute http(s) URL`;
	}
	return null;
}

export interface RuleForm {
	node: string;
	rssiMin: string;
	rssiMax: string;
	chunkType: string;
	chunkData: string;
	label: string;
}

export interface ValidRule {
	node: string;
	rssi_min: number;
	rssi_max: number;
	content: DataChunk[];
	label?: string;
}

export type RuleFormResult =
	| { ok: true; value: ValidRule }
	| { ok: false; errors: string[] };

/** Mirrors the rule invariants: node is a MAC, min <= max, content valid
 * and non-empty. Returns every problem at once for inline display. */
export function validateRuleForm(form: RuleForm): RuleFormResult {
	const errors: string[] = [];
	const node = normalizeMac(form.node);
	if (node === null) errors.push("node must be a MAC address like aa:bb:cc:dd:ee:ff");

	const rssiMin = Number(form.rssiMin);
	const rssiMax = Number(form.rssiMax);
	if (!Number.isFinite(rssiMin)) errors.push("rssi min must be a number");
	if (!Number.isFinite(rssiMax)) errors.push("rssi max must be a number");
	if (Number.isFinite(rssiMin) && Number.isFinite(rssiMax) && rssiMin > rssiMax) {
		errors.push("rssi min must not exceed rssi max");
	}

	const chunkProblem = chunkError(form.chunkType, form.chunkData);
	if (chunkProblem !== null) errors.push(chunkProblem);

	if (errors.length > 0) return { ok: false, errors };
	const value: ValidRule = {
		node: node as string,
		rssi_min: rssiMin,
		rssi_max: rssiMax,
		content: [{ type: form.chunkType, data: form.chunkData }],
	};
	if (form.label.trim() !== "") value.label = form.label.trim();
	return { ok: true, value };
}

export interface RecordForm {
	mac: string;
	chunkType: string;
	chunkData: string;
}

export type RecordFormResult =
	| { ok: true; value: { mac: string; chunks: DataChunk[] } }
	| { ok: false; errors: string[] };

export function validateRecordForm(form: RecordForm): RecordFormResult {
	const errors: string[] = [];
	const mac = normalizeMac(form.mac);
	if (mac === null) errors.push("mac must look like aa:bb:cc:dd:ee:ff");
	const chunkProblem = chunkError(form.chunkType, form.chunkData);
	if (chunkProblem !== null) errors.push(chunkProblem);
	if (errors.length > 0) return { ok: false, errors };
	return {
		ok: true,
		value: { mac: mac as string, chunks: [{ type: form.chunkType, data: form.chunkData }] },
	};
}
