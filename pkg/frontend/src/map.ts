/** Plain 2-D canvas world map: nodes as dots, the observer as a
 * draggable ring. Click or drag anywhere to reposition the observer. */

import type { WorldNode } from "./types.js";

export class WorldMap {
	private nodes: WorldNode[] = [];
	private observer = { x: 0, y: 0 };
	private heard = new Set<string>();
	private dragging = false;
	private margin = 28;

	constructor(
		private readonly canvas: HTMLCanvasElement,
		private readonly onObserverMove: (x: number, y: number) => void,
	) {
		canvas.addEventListener("pointerdown", (event) => {
			this.dragging = true;
			canvas.setPointerCapture(event.pointerId);
			this.pointTo(event);
		});
		canvas.addEventListener("pointermove", (event) => {
			if (this.dragging) this.pointTo(event);
		});
		canvas.addEventListener("pointerup", () => {
			this.dragging = false;
		});
	}

	setWorld(nodes: WorldNode[]): void {
		this.nodes = nodes;
		this.draw();
	}

	setHeard(macs: Iterable<string>): void {
		this.heard = new Set(macs);
		this.draw();
	}

	setObserver(x: number, y: number): void {
		this.observer = { x, y };
		this.draw();
	}

	/** World bounding box (nodes plus observer) with a little slack. */
	private bounds() {
		const xs = this.nodes.map((n) => n.x).concat([this.observer.x]);
		const ys = this.nodes.map((n) => n.y).concat([this.observer.y]);
		const minX = Math.min(...xs, 0) - 5;
		const maxX = Math.max(...xs, 10) + 5;
		const minY = Math.min(...ys, 0) - 5;
		const maxY = Math.max(...ys, 10) + 5;
		return { minX, maxX, minY, maxY };
	}

	private toCanvas(x: number, y: number): [number, number] {
		const { minX, maxX, minY, maxY } = this.bounds();
		const w = this.canvas.width - 2 * this.margin;
		const h = this.canvas.height - 2 * this.margin;
		const cx = this.margin + ((x - minX) / (maxX - minX)) * w;
		const cy = this.canvas.height - this.margin - ((y - minY) / (maxY - minY)) * h;
		return [cx, cy];
	}

	private toWorld(cx: number, cy: number): [number, number] {
		const { minX, maxX, minY, maxY } = this.bounds();
		const w = this.canvas.width - 2 * this.margin;
		const h = this.canvas.height - 2 * this.margin;
		const x = minX + ((cx - this.margin) / w) * (maxX - minX);
		const y = minY + ((this.canvas.height - this.margin - cy) / h) * (maxY - minY);
		return [x, y];
	}

	private pointTo(event: PointerEvent): void {
		const rect = this.canvas.getBoundingClientRect();
		const scaleX = this.canvas.width / rect.width;
		const scaleY = this.canvas.height / rect.height;
		const [x, y] = this.toWorld(
			(event.clientX - rect.left) * scaleX,
			(event.clientY - rect.top) * scaleY,
		);
		this.observer = { x: Math.round(x * 10) / 10, y: Math.round(y * 10) / 10 };
		this.draw();
		this.onObserverMove(this.observer.x, this.observer.y);
	}

	draw(): void {
		const ctx = this.canvas.getContext("2d");
		if (!ctx) return;
		ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
		ctx.fillStyle = "#10151c";
		ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);

		for (const node of this.nodes) {
			const [cx, cy] = this.toCanvas(node.x, node.y);
			const heard = this.heard.has(node.mac);
			ctx.beginPath();
			ctx.arc(cx, cy, heard ? 6 : 4, 0, Math.PI * 2);
			ctx.fillStyle = node.discoverable === false ? "#444c55" : heard ? "#53d18a" : "#7a95b5";
			ctx.fill();
			ctx.fillStyle = "#9fb3c8";
			ctx.font = "10px monospace";
			ctx.fillText(node.mac.slice(-5), cx + 8, cy + 3);
		}

		const [ox, oy] = this.toCanvas(this.observer.x, this.observer.y);
		ctx.beginPath();
		ctx.arc(ox, oy, 9, 0, Math.PI * 2);
		ctx.strokeStyle = "#ffb454";
		ctx.lineWidth = 2.5;
		ctx.stroke();
		ctx.beginPath();
		ctx.arc(ox, oy, 2.5, 0, Math.PI * 2);
		ctx.fillStyle = "#ffb454";
		ctx.fill();
		ctx.fillStyle = "#ffb454";
		ctx.font = "11px monospace";
		ctx.fillText(`(${this.observer.x.toFixed(1)}, ${this.observer.y.toFixed(1)})`, ox + 12, oy - 8);
	}
}
