/**
 * Per-tab session state.
 *
 * Invariants maintained here:
 *  - slider values are always within their declared ranges (clamped on set);
 *  - at most one transfer request is considered current (sequence gating);
 *  - the values shown on the sliders are exactly the values sent.
 */

import {
  DEFAULT_PARAMS,
  TransferParams,
  clampParam,
  isStructureMode,
} from "./params.js";

export interface FileTriple {
  image: File | Blob;
  landmarks: File | Blob;
  labels: File | Blob;
}

export interface ResultInfo {
  url: string; // object URL of the rendered PNG
  sha256: string;
  timings: Record<string, number>;
  seq: number;
}

export class SessionState {
  params: TransferParams = { ...DEFAULT_PARAMS };
  inputFiles: FileTriple | null = null;
  referenceId: string | null = null;
  referenceFiles: FileTriple | null = null;
  lastResult: ResultInfo | null = null;
  requestInFlight = false;

  /** Clamps into range; returns the value actually stored. */
  setAlpha(value: number): number {
    this.params.alpha = clampParam("alpha", value);
    return this.params.alpha;
  }

  setBeta(value: number): number {
    this.params.beta = clampParam("beta", value);
    return this.params.beta;
  }

  setSoftenSigma(value: number): number {
    this.params.softenSigma = clampParam("softenSigma", value);
    return this.params.softenSigma;
  }

  setStructureMode(value: string): void {
    if (!isStructureMode(value)) {
      throw new RangeError(`unknown structure mode: ${value}`);
    }
    this.params.structureMode = value;
  }

  /** Selecting a gallery entry clears any uploaded reference, and vice versa. */
  selectReference(id: string): void {
    this.referenceId = id;
    this.referenceFiles = null;
  }

  uploadReference(files: FileTriple): void {
    this.referenceFiles = files;
    this.referenceId = null;
  }

  get hasReference(): boolean {
    return this.referenceId !== null || this.referenceFiles !== null;
  }

  /** request_transfer precondition: input image and reference selected. */
  get readyToTransfer(): boolean {
    return this.inputFiles !== null && this.hasReference;
  }
}
