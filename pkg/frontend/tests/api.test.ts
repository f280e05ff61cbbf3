import { describe, expect, it } from "vitest";

import {
  buildTransferForm,
  checksumMatches,
  parseTimings,
} from "../src/api.js";
import { DEFAULT_PARAMS } from "../src/params.js";
import { FileTriple } from "../src/session.js";

function triple(): FileTriple {
  return {
    image: new Blob(["png-bytes"], { type: "image/png" }),
    landmarks: new Blob(['{"points": []}'], { type: "application/json" }),
    labels: new Blob(["label-bytes"], { type: "image/png" }),
  };
}

describe("buildTransferForm", () => {
  it("includes the input triple and gallery reference id", () => {
    const form = buildTransferForm(DEFAULT_PARAMS, triple(), { id: "classic" });
    expect(form.get("reference_id")).toBe("classic");
    expect(form.get("reference")).toBeNull();
    for (const field of ["input", "input_landmarks", "input_labels"]) {
      expect(form.get(field)).toBeInstanceOf(Blob);
    }
  });

  it("includes the uploaded reference triple instead of an id", () => {
    const form = buildTransferForm(DEFAULT_PARAMS, triple(), { files: triple() });
    expect(form.get("reference_id")).toBeNull();
    for (const field of ["reference", "reference_landmarks", "reference_labels"]) {
      expect(form.get(field)).toBeInstanceOf(Blob);
    }
  });

  it("encodes exactly the parameters shown on the controls", () => {
    const form = buildTransferForm(
      { ...DEFAULT_PARAMS, alpha: 0.42, beta: 77, illumination: false },
      triple(),
      { id: "classic" },
    );
    expect(form.get("alpha")).toBe("0.42");
    expect(form.get("beta")).toBe("77");
    expect(form.get("illumination")).toBe("false");
    expect(form.get("structure_mode")).toBe("illumination");
  });

  it("refuses out-of-range parameters (never reaches the network)", () => {
    expect(() =>
      buildTransferForm({ ...DEFAULT_PARAMS, alpha: 3 }, triple(), { id: "x" }),
    ).toThrow(RangeError);
  });
});

describe("parseTimings", () => {
  it("parses the stage-timing header", () => {
    const timings = parseTimings('{"load": 0.003, "decompose": 0.26}');
    expect(timings).toEqual({ load: 0.003, decompose: 0.26 });
  });

  it("tolerates a missing or malformed header", () => {
    expect(parseTimings(null)).toEqual({});
    expect(parseTimings("not-json")).toEqual({});
    expect(parseTimings('{"stage": "oops"}')).toEqual({});
  });
});

describe("checksumMatches", () => {
  const digest = "a".repeat(64);

  it("matches case-insensitively on full-length digests", () => {
    expect(checksumMatches(digest, digest.toUpperCase())).toBe(true);
  });

  it("rejects different or truncated digests", () => {
    expect(checksumMatches(digest, "b".repeat(64))).toBe(false);
    expect(checksumMatches("abc", "abc")).toBe(false);
    expect(checksumMatches("", "")).toBe(false);
  });
});
