import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";

function stubFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const impl = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

describe("ApiClient", () => {
  it("posts JSON and parses the response", async () => {
    const { impl, calls } = stubFetch(200, { accepted: true, detail: {} });
    const client = new ApiClient("http://test", impl);
    const result = await client.submitChain("s1", ["b1", "b2"]);
    expect(result.ok).toBe(true);
    expect(result.body).toEqual({ accepted: true, detail: {} });
    expect(calls[0].url).toBe("http://test/v1/sessions/s1/chains");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ cards: ["b1", "b2"] });
  });

  it("records every request and response in the traffic log", async () => {
    const { impl } = stubFetch(201, { id: "s1" });
    const client = new ApiClient("http://test", impl);
    await client.createSession("mini", "blue");
    expect(client.traffic).toHaveLength(1);
    expect(client.traffic[0].method).toBe("POST");
    expect(client.traffic[0].responseBody).toContain("s1");
  });

  it("passes error bodies through with ok=false", async () => {
    const { impl } = stubFetch(409, { code: "wrong_phase", message: "phase=bracelet required" });
    const client = new ApiClient("http://test", impl);
    const result = await client.submitChain("s1", ["b1"]);
    expect(result.ok).toBe(false);
    expect(result.status).toBe(409);
    expect(result.body).toMatchObject({ code: "wrong_phase" });
  });

  it("propagates network failures to the caller", async () => {
    const client = new ApiClient("http://test", async () => {
      throw new TypeError("connection refused");
    });
    await expect(client.getSession("s1")).rejects.toThrow("connection refused");
    expect(client.traffic).toHaveLength(0);
  });

  it("sends the facilitator token as a header", async () => {
    const { impl, calls } = stubFetch(200, { phase: "revealed" });
    const client = new ApiClient("http://test", impl);
    await client.revealSession("s1", "plexi");
    const headers = calls[0].init?.headers as Record<string, string>;
    expect(headers["x-facilitator-token"]).toBe("plexi");
  });
});
