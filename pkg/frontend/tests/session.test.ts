import { describe, expect, it } from "vitest";

import { PARAM_RANGES } from "../src/params.js";
import { FileTriple, SessionState } from "../src/session.js";

function triple(): FileTriple {
  return {
    image: new Blob(["img"]),
    landmarks: new Blob(["{}"]),
    labels: new Blob(["lbl"]),
  };
}

describe("SessionState", () => {
  it("starts with defaults and no in-flight request", () => {
    const s = new SessionState();
    expect(s.params.alpha).toBe(0.95);
    expect(s.params.beta).toBe(30);
    expect(s.requestInFlight).toBe(false);
    expect(s.readyToTransfer).toBe(false);
  });

  it("clamps slider setters to their declared ranges", () => {
    const s = new SessionState();
    expect(s.setAlpha(1.5)).toBe(1);
    expect(s.setAlpha(-1)).toBe(0);
    expect(s.setBeta(500)).toBe(PARAM_RANGES.beta.max);
    expect(s.setBeta(0)).toBe(PARAM_RANGES.beta.min);
    expect(s.setSoftenSigma(-3)).toBe(PARAM_RANGES.softenSigma.min);
  });

  it("stored value is exactly what the setter returns (round-trip)", () => {
    const s = new SessionState();
    const shown = s.setAlpha(0.37);
    expect(s.params.alpha).toBe(shown);
  });

  it("rejects unknown structure modes", () => {
    const s = new SessionState();
    expect(() => s.setStructureMode("glitter")).toThrow(RangeError);
    s.setStructureMode("literal");
    expect(s.params.structureMode).toBe("literal");
  });

  it("gallery selection and uploaded reference are mutually exclusive", () => {
    const s = new SessionState();
    s.selectReference("classic");
    expect(s.referenceId).toBe("classic");
    s.uploadReference(triple());
    expect(s.referenceId).toBeNull();
    expect(s.referenceFiles).not.toBeNull();
    s.selectReference("evening");
    expect(s.referenceFiles).toBeNull();
  });

  it("readyToTransfer requires input triple plus a reference", () => {
    const s = new SessionState();
    s.inputFiles = triple();
    expect(s.readyToTransfer).toBe(false);
    s.selectReference("classic");
    expect(s.readyToTransfer).toBe(true);
  });
});
