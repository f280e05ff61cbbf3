/**
 * HTTP client for the transfer service. This module is the UI's only
 * contact with the backend: GET /health, GET /references, POST /transfer.
 */

import { TransferParams, paramsToFormFields } from "./params.js";
import { FileTriple } from "./session.js";

export interface GalleryEntry {
  id: string;
  name: string;
  image: string;
  thumbnail: string;
  landmarks: string;
  labels: string;
}

export interface TransferResult {
  bytes: Blob;
  sha256: string;
  timings: Record<string, number>;
}

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
    public readonly stage?: string,
  ) {
    super(stage ? `stage '${stage}': ${detail}` : `${status}: ${detail}`);
  }
}

export function buildTransferForm(
  params: TransferParams,
  input: FileTriple,
  reference: { id: string } | { files: FileTriple },
): FormData {
  const form = new FormData();
  form.append("input", input.image, "input.png");
  form.append("input_landmarks", input.landmarks, "input.landmarks.json");
  form.append("input_labels", input.labels, "input.labels.png");
  if ("id" in reference) {
    form.append("reference_id", reference.id);
  } else {
    form.append("reference", reference.files.image, "reference.png");
    form.append(
      "reference_landmarks",
      reference.files.landmarks,
      "reference.landmarks.json",
    );
    form.append("reference_labels", reference.files.labels, "reference.labels.png");
  }
  for (const [key, value] of Object.entries(paramsToFormFields(params))) {
    form.append(key, value);
  }
  return form;
}

async function errorFromResponse(response: Response): Promise<ServiceError> {
  let detail = response.statusText;
  let stage: string | undefined;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
    if (typeof body.stage === "string") {
      stage = body.stage;
      detail = body.reason ?? detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ServiceError(response.status, detail, stage);
}

export async function fetchReferences(baseUrl = ""): Promise<GalleryEntry[]> {
  const response = await fetch(`${baseUrl}/references`);
  if (!response.ok) throw await errorFromResponse(response);
  return (await response.json()) as GalleryEntry[];
}

export async function postTransfer(
  form: FormData,
  baseUrl = "",
  signal?: AbortSignal,
): Promise<TransferResult> {
  const response = await fetch(`${baseUrl}/transfer`, {
    method: "POST",
    body: form,
    signal,
  });
  if (!response.ok) throw await errorFromResponse(response);
  const bytes = await response.blob();
  return {
    bytes,
    sha256: response.headers.get("X-Result-Sha256") ?? "",
    timings: parseTimings(response.headers.get("X-Stage-Timings")),
  };
}

export function parseTimings(header: string | null): Record<string, number> {
  if (!header) return {};
  try {
    const parsed = JSON.parse(header);
    const out: Record<string, number> = {};
    for (const [key, value] of Object.entries(parsed)) {
      if (typeof value === "number") out[key] = value;
    }
    return out;
  } catch {
    return {};
  }
}

/** Checksum parity: does the served result match a known-good digest? */
export function checksumMatches(resultSha: string, expectedSha: string): boolean {
  return (
    resultSha.length === 64 &&
    resultSha.toLowerCase() === expectedSha.toLowerCase()
  );
}
