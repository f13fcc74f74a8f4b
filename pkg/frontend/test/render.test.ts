import { describe, expect, it } from "vitest";

import { renderChunk, renderEntry, telHref } from "../src/render.js";
import type { QueryEntry } from "../src/types.js";

describe("renderChunk dispatch", () => {
	it("text is a plain span", () => {
		expect(renderChunk({ type: "text", data: "hello <b>there</b>" })).toEqual({
			tag: "span",
			attrs: { class: "chunk chunk-text" },
			text: "hello <b>there</b>", // stays text, markup never interpreted
		});
	});

	it("url becomes a safe external link", () => {
		const spec = renderChunk({ type: "url", data: "https://example.com/menu" });
		expect(spec.tag).toBe("a");
		expect(spec.attrs?.["href"]).toBe("https://example.com/menu");
		expect(spec.attrs?.["rel"]).toContain("noopener");
	});

	it("image becomes an img tag", () => {
		const spec = renderChunk({ type: "image", data: "https://example.com/p.png" });
		expect(spec.tag).toBe("img");
		expect(spec.attrs?.["src"]).toBe("https://example.com/p.png");
	});

	it("email and phone are click-to-act links", () => {
		expect(renderChunk({ type: "email", data: "a@b.example" }).attrs?.["href"]).toBe(
			"mailto:a@b.example",
		);
		expect(renderChunk({ type: "phone", data: "+1 (555) 123-4567" }).attrs?.["href"]).toBe(
			"tel:+15551234567",
		);
	});

	it("profiles carry a badge and the raw link", () => {
		const spec = renderChunk({ type: "fbprofile", data: "https://facebook.com/someone" });
		expect(spec.attrs?.["class"]).toContain("profile-fb");
		expect(spec.children?.[0]?.text).toBe("fb");
		const tw = renderChunk({ type: "twprofile", data: "https://twitter.com/someone" });
		expect(tw.attrs?.["class"]).toContain("profile-tw");
	});

	it("unknown types render as inert text, never elements that act", () => {
		const spec = renderChunk({ type: "hologram", data: "<script>boom()</script>" });
		expect(spec.tag).toBe("span");
		expect(spec.attrs?.["class"]).toContain("chunk-unknown");
		expect(spec.text).toContain("hologram");
		expect(spec.children).toBeUndefined();
	});

	it("url-ish chunks with unsafe payloads degrade to inert text", () => {
		for (const data of ["javascript:alert(1)", "/relative", "ftp://example.com/x"]) {
			const spec = renderChunk({ type: "url", data });
			expect(spec.tag).toBe("span");
			expect(spec.attrs?.["href"]).toBeUndefined();
		}
	});
});

describe("telHref", () => {
	it("keeps digits and the leading plus only", () => {
		expect(telHref("+1 (555) 123-4567")).toBe("tel:+15551234567");
		expect(telHref("555 0000")).toBe("tel:5550000");
	});
});

describe("renderEntry", () => {
	const entry: QueryEntry = {
		node: "02:00:00:00:00:01",
		rssi: -75.98970004336019,
		distance_m: 7.071067811865475,
		chunks: [{ type: "text", data: "north gate" }],
		source: "record",
	};

	it("shows node, rssi, distance and source", () => {
		const spec = renderEntry(entry);
		const meta = spec.children?.[0]?.children ?? [];
		const texts = meta.map((m) => m.text);
		expect(texts).toContain("02:00:00:00:00:01");
		expect(texts).toContain("-76.0 dBm");
		expect(texts).toContain("~7.1 m");
		expect(texts).toContain("record");
	});

	it("omits distance when the server did", () => {
		const { distance_m: _omitted, ...rest } = entry;
		const spec = renderEntry(rest as QueryEntry);
		const texts = (spec.children?.[0]?.children ?? []).map((m) => m.text);
		expect(texts).not.toContain("~7.1 m");
	});
});
