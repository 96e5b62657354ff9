// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createApp, type AppHandles } from "../src/main.js";
import type { SessionPayload } from "../src/types.js";

const SESSION: SessionPayload = {
  id: "s42",
  corpus_id: "mini",
  team: "blue",
  phase: "bracelet",
  created: 1,
  accepted_chains: [],
  accepted_rules: [],
  accepted_derivations: [],
  material: {
    masked_corpus: {
      id: "mini",
      pos_legend: { "0": "DET", "1": "NOUN" },
      palette: { NP: "crimson", VP: "navy" },
      sentences: [
        {
          tokens: [
            { surface: "mo", pos: 0 },
            { surface: "ka", pos: 1 },
          ],
          phrases: [{ start: 0, end: 2, label: "NP" }],
        },
      ],
    },
    decks: {
      bracelet: [
        { id: "b000", face: "ka" },
        { id: "b001", face: "mo" },
        { id: "b002", face: "zu" },
      ],
      grammar: [
        { id: "g000", face: "mo", pos: 0, corpus_word: true },
        { id: "g001", face: "ka", pos: 1, corpus_word: true },
      ],
    },
    sheets: ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 10 10"><text x="1" y="1">mo</text></svg>'],
    coordinates: {
      corpus_id: "mini",
      page_width: 297,
      page_height: 420,
      page_count: 1,
      sentence_count: 1,
      tokens: [
        { sentence: 0, token: 0, page: 0, x: 1, y: 1, width: 2 },
        { sentence: 0, token: 1, page: 0, x: 4, y: 1, width: 2 },
      ],
    },
  },
};

function appWith(responses: Record<string, { status: number; body: unknown }>): AppHandles {
  const client = new ApiClient("http://svc", async (url, init) => {
    const key = `${init?.method ?? "GET"} ${url.replace("http://svc", "")}`;
    const match = responses[key];
    if (!match) throw new TypeError(`connection refused: ${key}`);
    return new Response(JSON.stringify(match.body), { status: match.status });
  });
  document.body.innerHTML = '<div id="app"></div>';
  return createApp(document.getElementById("app")!, client);
}

describe("board DOM", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders sheets and decks after joining", async () => {
    const app = appWith({ "POST /v1/sessions": { status: 201, body: SESSION } });
    await app.createSession("mini", "blue");
    expect(document.querySelectorAll(".sheet-page svg")).toHaveLength(1);
    expect(document.querySelectorAll(".bracelet-deck .card")).toHaveLength(3);
    expect(document.querySelectorAll(".grammar-deck .card")).toHaveLength(2);
  });

  it("clicking deck cards threads them in drag order", async () => {
    const app = appWith({ "POST /v1/sessions": { status: 201, body: SESSION } });
    await app.createSession("mini", "blue");
    const cards = document.querySelectorAll<HTMLButtonElement>(".bracelet-deck .card");
    cards[1].click(); // mo
    cards[0].click(); // ka
    expect(app.state.chain).toEqual(["b001", "b000"]);
    const threaded = document.querySelectorAll(".thread .threaded-card");
    expect([...threaded].map((node) => node.textContent)).toEqual(["mo", "ka"]);
  });

  it("highlights the failing pair from MoveResult.detail", async () => {
    const app = appWith({
      "POST /v1/sessions": { status: 201, body: SESSION },
      "POST /v1/sessions/s42/chains": {
        status: 200,
        body: {
          accepted: false,
          detail: {
            pairs: [
              { position: -1, left: "<s>", right: "mo", attested: true },
              { position: 0, left: "mo", right: "ka", attested: false },
              { position: 1, left: "ka", right: "</s>", attested: true },
            ],
            first_failure: [0, "mo", "ka"],
          },
        },
      },
    });
    await app.createSession("mini", "blue");
    app.pickBraceletCard("b001");
    app.pickBraceletCard("b000");
    await app.submitChain();
    const gaps = [...document.querySelectorAll(".thread .thread-gap")];
    expect(gaps.map((g) => g.className)).toEqual(["thread-gap ok", "thread-gap fail", "thread-gap ok"]);
    expect(document.querySelector(".thread")!.classList.contains("rejected")).toBe(true);
    expect(app.state.session!.accepted_chains).toEqual([]);
  });

  it("keeps the composition and shows a retry affordance on network failure", async () => {
    const app = appWith({ "POST /v1/sessions": { status: 201, body: SESSION } });
    await app.createSession("mini", "blue");
    app.pickBraceletCard("b000");
    app.pickBraceletCard("b001");
    await app.submitChain(); // no stub for /chains: connection refused
    expect(app.state.networkError).toContain("retry");
    expect(app.state.chain).toEqual(["b000", "b001"]);
    expect(document.querySelector(".network-error")!.classList.contains("visible")).toBe(true);
    expect(app.state.session!.accepted_chains).toEqual([]);
  });

  it("slides the overlay in only after the reveal", async () => {
    const revealed: SessionPayload = {
      ...SESSION,
      phase: "revealed",
      accepted_chains: [["b001", "b000"]],
      reveal: {
        hidden_language: "English",
        clear_corpus: {},
        overlay: ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 10 10"><text x="1" y="1">hi</text></svg>'],
        translations: { chains: ["hi there"], derivations: [] },
      },
    };
    const app = appWith({
      "POST /v1/sessions/s42/reveal": { status: 200, body: revealed },
      "POST /v1/sessions": { status: 201, body: SESSION },
    });
    await app.createSession("mini", "blue");
    expect(document.querySelectorAll(".overlay-layer.sliding")).toHaveLength(0);
    await app.reveal();
    expect(document.querySelectorAll(".overlay-layer.sliding svg")).toHaveLength(1);
    expect(document.querySelector(".reveal-language")!.textContent).toBe("English");
  });
});
