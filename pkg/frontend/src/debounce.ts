/**
 * Trailing-edge debounce used for slider drags: a burst of calls inside the
 * window collapses into one invocation after the window elapses.
 */

export interface Scheduler {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

const realTimers: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (handle) => clearTimeout(handle as ReturnType<typeof setTimeout>),
};

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  /** Run a pending invocation immediately (the "apply" button path). */
  flush(): void;
  cancel(): void;
  readonly pending: boolean;
}

export const DEBOUNCE_MS = 300;

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number = DEBOUNCE_MS,
  scheduler: Scheduler = realTimers,
): Debounced<A> {
  let handle: unknown = null;
  let lastArgs: A | null = null;

  const invoke = () => {
    handle = null;
    if (lastArgs !== null) {
      const args = lastArgs;
      lastArgs = null;
      fn(...args);
    }
  };

  const debounced = ((...args: A) => {
    lastArgs = args;
    if (handle !== null) scheduler.clear(handle);
    handle = scheduler.set(invoke, ms);
  }) as Debounced<A>;

  debounced.flush = () => {
    if (handle !== null) {
      scheduler.clear(handle);
      invoke();
    }
  };
  debounced.cancel = () => {
    if (handle !== null) scheduler.clear(handle);
    handle = null;
    lastArgs = null;
  };
  Object.defineProperty(debounced, "pending", { get: () => handle !== null });
  return debounced;
}
