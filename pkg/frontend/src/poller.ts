/** Fixed-interval polling with at most one request in flight. Every poll
 * gets a sequence number when it starts; a result is applied only if no
 * newer poll started meanwhile, so stale responses can never overwrite
 * fresh state. Intervals clamp to the 250 ms floor. */

export const MIN_POLL_INTERVAL_MS = 250;

type Scheduler = (fn: () => void, ms: number) => unknown;
type Canceler = (handle: unknown) => void;

export class Poller<T> {
	private seq = 0;
	private applied = 0;
	private inFlight = false;
	private running = false;
	private wakeEarly = false;
	private timer: unknown = null;
	private intervalMs: number;

	constructor(
		private readonly poll: () => Promise<T>,
		private readonly apply: (result: T) => void,
		intervalMs: number,
		private readonly onError: (error: unknown) => void = () => {},
		private readonly schedule: Scheduler = (fn, ms) => setTimeout(fn, ms),
		private readonly cancel: Canceler = (handle) => clearTimeout(handle as number),
	) {
		this.intervalMs = Math.max(MIN_POLL_INTERVAL_MS, intervalMs);
	}

	get interval(): number {
		return this.intervalMs;
	}

	setInterval(ms: number): void {
		this.intervalMs = Math.max(MIN_POLL_INTERVAL_MS, ms);
	}

	start(): void {
		if (this.running) return;
		this.running = true;
		void this.tick();
	}

	stop(): void {
		this.running = false;
		if (this.timer !== null) {
			this.cancel(this.timer);
			this.timer = null;
		}
	}

	/** Invalidate any in-flight response and poll again as soon as the
	 * single-flight rule allows (now, or right after the current one). */
	requestNow(): void {
		this.seq += 1;
		if (!this.running) return;
		if (this.inFlight) {
			this.wakeEarly = true;
			return;
		}
		if (this.timer !== null) {
			this.cancel(this.timer);
			this.timer = null;
		}
		void this.tick();
	}

	private async tick(): Promise<void> {
		if (!this.running || this.inFlight) return;
		this.inFlight = true;
		const mySeq = ++this.seq;
		try {
			const result = await this.poll();
			if (mySeq === this.seq && mySeq > this.applied) {
				this.applied = mySeq;
				this.apply(result);
			}
		} catch (error) {
			if (mySeq === this.seq) this.onError(error);
		} finally {
			this.inFlight = false;
		}
		if (!this.running) return;
		if (this.wakeEarly) {
			this.wakeEarly = false;
			void this.tick();
			return;
		}
		this.timer = this.schedule(() => void this.tick(), this.intervalMs);
	}
}
