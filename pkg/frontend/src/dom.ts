/** Materialize NodeSpecs via createElement/textContent only; there is
 * deliberately no innerHTML anywhere wire data could reach. */

import type { NodeSpec } from "./render.js";

export function materialize(spec: NodeSpec): HTMLElement {
	const el = document.createElement(spec.tag);
	if (spec.attrs) {
		for (const [name, value] of Object.entries(spec.attrs)) {
			el.setAttribute(name, value);
		}
	}
	if (spec.text !== undefined) el.textContent = spec.text;
	if (spec.children) {
		for (const child of spec.children) el.appendChild(materialize(child));
	}
	return el;
}

export function replaceChildrenWith(parent: HTMLElement, specs: NodeSpec[]): void {
	parent.replaceChildren(...specs.map(materialize));
}

export function el(id: string): HTMLElement {
	const found = document.getElementById(id);
	if (!found) throw new Error(`missing element #${id}`);
	return found;
}
