import { describe, expect, it } from "vitest";

import { Scheduler, debounce } from "../src/debounce.js";

/** Deterministic manual clock standing in for setTimeout. */
class FakeClock implements Scheduler {
  private now = 0;
  private queue: { at: number; fn: () => void; id: number }[] = [];
  private nextId = 1;

  set(fn: () => void, ms: number): unknown {
    const id = this.nextId++;
    this.queue.push({ at: this.now + ms, fn, id });
    return id;
  }

  clear(handle: unknown): void {
    this.queue = this.queue.filter((t) => t.id !== handle);
  }

  advance(ms: number): void {
    this.now += ms;
    const due = this.queue.filter((t) => t.at <= this.now).sort((a, b) => a.at - b.at);
    this.queue = this.queue.filter((t) => t.at > this.now);
    for (const t of due) t.fn();
  }
}

describe("debounce", () => {
  it("collapses a slider drag burst into exactly one call", () => {
    const clock = new FakeClock();
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 300, clock);
    // drag beta from 30 to 80 in small steps, 50 ms apart
    for (let v = 30; v <= 80; v += 10) {
      d(v);
      clock.advance(50);
    }
    expect(calls).toEqual([]); // still inside the window
    clock.advance(300);
    expect(calls).toEqual([80]); // exactly one request, with the final value
  });

  it("fires separately for bursts separated by more than the window", () => {
    const clock = new FakeClock();
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 300, clock);
    d(1);
    clock.advance(301);
    d(2);
    clock.advance(301);
    expect(calls).toEqual([1, 2]);
  });

  it("flush runs the pending call immediately", () => {
    const clock = new FakeClock();
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 300, clock);
    d(7);
    expect(d.pending).toBe(true);
    d.flush();
    expect(calls).toEqual([7]);
    expect(d.pending).toBe(false);
    d.flush(); // nothing pending: no double fire
    expect(calls).toEqual([7]);
  });

  it("cancel drops the pending call", () => {
    const clock = new FakeClock();
    const calls: number[] = [];
    const d = debounce((v: number) => calls.push(v), 300, clock);
    d(9);
    d.cancel();
    clock.advance(1000);
    expect(calls).toEqual([]);
  });
});
