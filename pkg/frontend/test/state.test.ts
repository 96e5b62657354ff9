import { describe, expect, it } from "vitest";

import {
  appendCard,
  newBoard,
  pairMarks,
  recordChainResult,
  recordDerivationResult,
  recordRuleResult,
  removeCardAt,
  ruleHints,
} from "../src/state.js";
import type { MoveResult, SessionPayload } from "../src/types.js";

function fakeSession(): SessionPayload {
  return {
    id: "s1",
    corpus_id: "mini",
    team: "blue",
    phase: "bracelet",
    created: 0,
    accepted_chains: [],
    accepted_rules: [],
    accepted_derivations: [],
    material: {
      masked_corpus: { id: "mini", pos_legend: {}, palette: {}, sentences: [] },
      decks: { bracelet: [], grammar: [] },
      sheets: [],
      coordinates: {
        corpus_id: "mini",
        page_width: 297,
        page_height: 420,
        page_count: 0,
        sentence_count: 0,
        tokens: [],
      },
    },
  };
}

describe("composition", () => {
  it("appends cards once: a physical card exists once", () => {
    expect(appendCard(["b1"], "b2")).toEqual(["b1", "b2"]);
    expect(appendCard(["b1", "b2"], "b1")).toEqual(["b1", "b2"]);
  });

  it("removes by index", () => {
    expect(removeCardAt(["b1", "b2", "b3"], 1)).toEqual(["b1", "b3"]);
  });
});

describe("pair marks", () => {
  it("maps boundary and word pairs onto thread gaps", () => {
    const result: MoveResult = {
      accepted: false,
      detail: {
        pairs: [
          { position: -1, left: "<s>", right: "mo", attested: true },
          { position: 0, left: "mo", right: "ka", attested: true },
          { position: 1, left: "ka", right: "zu", attested: false },
          { position: 2, left: "zu", right: "</s>", attested: true },
        ],
        first_failure: [1, "ka", "zu"],
      },
    };
    expect(pairMarks(3, result)).toEqual(["ok", "ok", "fail", "ok"]);
  });

  it("is all unknown before any server verdict", () => {
    expect(pairMarks(2, null)).toEqual(["unknown", "unknown", "unknown"]);
  });
});

describe("server authority", () => {
  it("mirrors accepted chains and clears the thread", () => {
    const state = newBoard();
    state.session = fakeSession();
    state.chain = ["b1", "b2"];
    recordChainResult(state, ["b1", "b2"], { accepted: true, detail: {} });
    expect(state.session.accepted_chains).toEqual([["b1", "b2"]]);
    expect(state.chain).toEqual([]);
  });

  it("never marks a rejected chain accepted", () => {
    const state = newBoard();
    state.session = fakeSession();
    state.chain = ["b1", "b2"];
    recordChainResult(state, ["b1", "b2"], { accepted: false, detail: {} });
    expect(state.session.accepted_chains).toEqual([]);
    expect(state.chain).toEqual(["b1", "b2"]); // kept for another try
  });

  it("applies the same rule to rules and derivations", () => {
    const state = newBoard();
    state.session = fakeSession();
    recordRuleResult(state, "NP", ["0", "1"], { accepted: true, detail: {} });
    recordRuleResult(state, "VP", ["9"], { accepted: false, detail: { reason: "rhs_unattested" } });
    expect(state.session.accepted_rules).toEqual([{ lhs: "NP", rhs: ["0", "1"] }]);
    recordDerivationResult(state, ["g1"], { accepted: false, detail: {} });
    expect(state.session.accepted_derivations).toEqual([]);
  });
});

describe("rule hints", () => {
  it("asks for an lhs strip and a non-empty rhs", () => {
    expect(ruleHints(null, [])).toHaveLength(2);
    expect(ruleHints("NP", [{ kind: "digit", digit: 0 }])).toEqual([]);
  });

  it("flags repeated adjacent strips as a soft warning only", () => {
    const hints = ruleHints("NP", [
      { kind: "strip", label: "PP" },
      { kind: "strip", label: "PP" },
    ]);
    expect(hints.length).toBe(1);
    expect(hints[0]).toContain("PP");
  });
});
