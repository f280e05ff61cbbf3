/**
 * End-to-end parity: the studio's request path, pointed at the real
 * service, must reproduce the engine's frozen golden image at default
 * parameters — verified by sha256 of both the response body and the
 * X-Result-Sha256 header.
 *
 * Skipped automatically when the `makeuplab` CLI is not installed.
 */

import { createHash } from "node:crypto";
import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { buildTransferForm, checksumMatches, postTransfer } from "../src/api.js";
import { DEFAULT_PARAMS } from "../src/params.js";
import { FileTriple } from "../src/session.js";

const hasEngine = spawnSync("makeuplab", ["--help"]).status === 0;
const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;
const GOLDEN = join(__dirname, "..", "..", "tests", "data", "golden.png");

function sha256(data: Uint8Array): string {
  return createHash("sha256").update(data).digest("hex");
}

function fileTriple(dir: string, stem: string): FileTriple {
  const blob = (name: string, type: string) =>
    new Blob([readFileSync(join(dir, name))], { type });
  return {
    image: blob(`${stem}.png`, "image/png"),
    landmarks: blob(`${stem}.landmarks.json`, "application/json"),
    labels: blob(`${stem}.labels.png`, "image/png"),
  };
}

describe.runIf(hasEngine)("golden parity against the live service", () => {
  let server: ReturnType<typeof spawn>;
  let fixtureDir: string;

  beforeAll(async () => {
    fixtureDir = mkdtempSync(join(tmpdir(), "studio-parity-"));
    const gen = spawnSync("makeuplab", [
      "make-fixtures",
      "--out",
      fixtureDir,
      "--seed",
      "0",
    ]);
    expect(gen.status).toBe(0);

    server = spawn("makeuplab", ["serve", "--bind", `127.0.0.1:${PORT}`], {
      stdio: "ignore",
    });
    const deadline = Date.now() + 30_000;
    for (;;) {
      try {
        const res = await fetch(`${BASE}/health`);
        if (res.ok) break;
      } catch {
        // not up yet
      }
      if (Date.now() > deadline) throw new Error("service did not come up");
      await new Promise((r) => setTimeout(r, 250));
    }
  }, 60_000);

  afterAll(() => {
    server?.kill();
    rmSync(fixtureDir, { recursive: true, force: true });
  });

  it(
    "default-parameter preview matches the engine's golden checksum",
    async () => {
      const form = buildTransferForm(
        DEFAULT_PARAMS,
        fileTriple(fixtureDir, "input"),
        { files: fileTriple(fixtureDir, "reference") },
      );
      const result = await postTransfer(form, BASE);

      const body = new Uint8Array(await result.bytes.arrayBuffer());
      const goldenSha = sha256(readFileSync(GOLDEN));
      expect(sha256(body)).toBe(goldenSha);
      expect(checksumMatches(result.sha256, goldenSha)).toBe(true);
      expect(result.timings).toHaveProperty("transfer");
    },
    60_000,
  );

  it("out-of-range parameters are rejected client-side before any request", () => {
    expect(() =>
      buildTransferForm(
        { ...DEFAULT_PARAMS, alpha: 1.5 },
        fileTriple(fixtureDir, "input"),
        { files: fileTriple(fixtureDir, "reference") },
      ),
    ).toThrow(RangeError);
  });
});
