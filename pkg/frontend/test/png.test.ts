import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { encodePng } from "../src/png.js";

function readChunks(buf: Buffer): Array<{ type: string; data: Buffer }> {
  const chunks = [];
  let off = 8;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.toString("ascii", off + 4, off + 8);
    chunks.push({ type, data: buf.subarray(off + 8, off + 8 + len) });
    off += 12 + len;
  }
  return chunks;
}

describe("png encoder", () => {
  it("writes the signature and chunk layout", () => {
    const png = encodePng(3, 2, new Uint8Array(3 * 2 * 4));
    expect([...png.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    expect(chunks[0].data.readUInt32BE(0)).toBe(3);
    expect(chunks[0].data.readUInt32BE(4)).toBe(2);
    expect(chunks[0].data[8]).toBe(8);   // bit depth
    expect(chunks[0].data[9]).toBe(6);   // RGBA
  });

  it("round-trips pixels through the IDAT stream", () => {
    const w = 4;
    const h = 3;
    const rgba = new Uint8Array(w * h * 4);
    for (let i = 0; i < rgba.length; i++) rgba[i] = (i * 37) % 256;
    const png = encodePng(w, h, rgba);
    const idat = readChunks(png).find((c) => c.type === "IDAT")!;
    const raw = inflateSync(idat.data);
    expect(raw.length).toBe((w * 4 + 1) * h);
    for (let y = 0; y < h; y++) {
      expect(raw[y * (w * 4 + 1)]).toBe(0); // filter byte
      const row = raw.subarray(y * (w * 4 + 1) + 1, (y + 1) * (w * 4 + 1));
      expect([...row]).toEqual([...rgba.subarray(y * w * 4, (y + 1) * w * 4)]);
    }
  });

  it("rejects a wrong-sized buffer", () => {
    expect(() => encodePng(2, 2, new Uint8Array(15))).toThrow(/expected 16/);
  });

  it("is deterministic", () => {
    const rgba = new Uint8Array(16).fill(200);
    expect(encodePng(2, 2, rgba).equals(encodePng(2, 2, rgba))).toBe(true);
  });
});
