/**
 * Per-tab session state.
 *
 * Invariants maintained here:
 *  - slider values are always within their declared ranges (clamped on set);
 *  - at most one transfer request is considered current (sequence gating);
 *  - the values shown on the sliders are exactly the values sent.
 */
import { DEFAULT_PARAMS, clampParam, isStructureMode, } from "./params.js";
export class SessionState {
    constructor() {
        this.params = { ...DEFAULT_PARAMS };
        this.inputFiles = null;
        this.referenceId = null;
        this.referenceFiles = null;
        this.lastResult = null;
        this.requestInFlight = false;
    }
    /** Clamps into range; returns the value actually stored. */
    setAlpha(value) {
        this.params.alpha = clampParam("alpha", value);
        return this.params.alpha;
    }
    setBeta(value) {
        this.params.beta = clampParam("beta", value);
        return this.params.beta;
    }
    setSoftenSigma(value) {
        this.params.softenSigma = clampParam("softenSigma", value);
        return this.params.softenSigma;
    }
    setStructureMode(value) {
        if (!isStructureMode(value)) {
            throw new RangeError(`unknown structure mode: ${value}`);
        }
        this.params.structureMode = value;
    }
    /** Selecting a gallery entry clears any uploaded reference, and vice versa. */
    selectReference(id) {
        this.referenceId = id;
        this.referenceFiles = null;
    }
    uploadReference(files) {
        this.referenceFiles = files;
        this.referenceId = null;
    }
    get hasReference() {
        return this.referenceId !== null || this.referenceFiles !== null;
    }
    /** request_transfer precondition: input image and reference selected. */
    get readyToTransfer() {
        return this.inputFiles !== null && this.hasReference;
    }
}
