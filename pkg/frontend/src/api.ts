/** Thin client over the two read-only endpoints. */

import { FsrSlice, PathDocument, validateDocument } from "./types.js";

export async function fetchDocument(base = ""): Promise<PathDocument> {
  const resp = await fetch(`${base}/api/path`);
  if (!resp.ok) throw new Error(`/api/path returned ${resp.status}`);
  return validateDocument(await resp.json());
}

export async function fetchSlice(index: number, base = ""): Promise<FsrSlice> {
  const resp = await fetch(`${base}/api/fsr?lambda_index=${index}`);
  if (!resp.ok) throw new Error(`/api/fsr returned ${resp.status}`);
  return (await resp.json()) as FsrSlice;
}
