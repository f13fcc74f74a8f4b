/** Chunk and entry rendering as plain data (NodeSpec), applied to the
 * document by dom.ts. Dispatch is over the closed chunk type set; any
 * other type becomes inert text. Payloads only ever land in attributes
 * or text content, never in markup, so nothing from the wire executes. */

import type { DataChunk, QueryEntry } from "./types.js";
import { isSafeAbsoluteUrl } from "./validate.js";

export interface NodeSpec {
	tag: string;
	attrs?: Record<string, string>;
	text?: string;
	children?: NodeSpec[];
}

function inert(chunk: DataChunk, className = "chunk chunk-unknown"): NodeSpec {
	return { tag: "span", attrs: { class: className }, text: `${chunk.type}: ${chunk.data}` };
}

function link(href: string, text: string, className: string): NodeSpec {
	return {
		tag: "a",
		attrs: { href, class: className, target: "_blank", rel: "noopener noreferrer" },
		text,
	};
}

/** tel: href keeps digits and a leading +, like dialers expect. */
export function telHref(phone: string): string {
	return "tel:" + phone.replace(/[^\d+]/g, "");
}

export function renderChunk(chunk: DataChunk): NodeSpec {
	switch (chunk.type) {
		case "text":
			return { tag: "span", attrs: { class: "chunk chunk-text" }, text: chunk.data };
		case "url":
			if (!isSafeAbsoluteUrl(chunk.data)) return inert(chunk);
			return link(chunk.data, chunk.data, "chunk chunk-url");
		case "image":
			if (!isSafeAbsoluteUrl(chunk.data)) return inert(chunk);
			return {
				tag: "img",
				attrs: { src: chunk.data, alt: "image chunk", class: "chunk chunk-image" },
			};
		case "email":
			return link("mailto:" + chunk.data, chunk.data, "chunk chunk-email");
		case "phone":
			return link(telHref(chunk.data), chunk.data, "chunk chunk-phone");
		case "fbprofile":
		case "twprofile": {
			if (!isSafeAbsoluteUrl(chunk.data)) return inert(chunk);
			const badge = chunk.type === "fbprofile" ? "fb" : "tw";
			return {
				tag: "a",
				attrs: {
					href: chunk.data,
					class: `chunk chunk-profile profile-${badge}`,
					target: "_blank",
					rel: "noopener noreferrer",
				},
				children: [
					{ tag: "span", attrs: { class: "badge" }, text: badge },
					{ tag: "span", text: chunk.data },
				],
			};
		}
		default:
			return inert(chunk);
	}
}

export function renderEntry(entry: QueryEntry): NodeSpec {
	const meta: NodeSpec[] = [
		{ tag: "span", attrs: { class: "entry-node" }, text: entry.node },
		{ tag: "span", attrs: { class: "entry-rssi" }, text: `${entry.rssi.toFixed(1)} dBm` },
	];
	if (entry.distance_m !== undefined) {
		meta.push({
			tag: "span",
			attrs: { class: "entry-distance" },
			text: `~${entry.distance_m.toFixed(1)} m`,
		});
	}
	meta.push({ tag: "span", attrs: { class: `entry-source source-${entry.source}` }, text: entry.source });
	return {
		tag: "li",
		attrs: { class: "entry" },
		children: [
			{ tag: "div", attrs: { class: "entry-meta" }, children: meta },
			{ tag: "div", attrs: { class: "entry-chunks" }, children: entry.chunks.map(renderChunk) },
		],
	};
}
