/**
 * Trailing-edge debounce used for slider drags: a burst of calls inside the
 * window collapses into one invocation after the window elapses.
 */
const realTimers = {
    set: (fn, ms) => setTimeout(fn, ms),
    clear: (handle) => clearTimeout(handle),
};
export const DEBOUNCE_MS = 300;
export function debounce(fn, ms = DEBOUNCE_MS, scheduler = realTimers) {
    let handle = null;
    let lastArgs = null;
    const invoke = () => {
        handle = null;
        if (lastArgs !== null) {
            const args = lastArgs;
            lastArgs = null;
            fn(...args);
        }
    };
    const debounced = ((...args) => {
        lastArgs = args;
        if (handle !== null)
            scheduler.clear(handle);
        handle = scheduler.set(invoke, ms);
    });
    debounced.flush = () => {
        if (handle !== null) {
            scheduler.clear(handle);
            invoke();
        }
    };
    debounced.cancel = () => {
        if (handle !== null)
            scheduler.clear(handle);
        handle = null;
        lastArgs = null;
    };
    Object.defineProperty(debounced, "pending", { get: () => handle !== null });
    return debounced;
}
