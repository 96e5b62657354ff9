// Board state and pure update helpers.  The server is authoritative: the
// accepted_* lists only ever mirror server-accepted MoveResults, and before
// the reveal the state holds nothing but masked material.

import type { MoveResult, Phase, SessionPayload } from "./types.js";

export type RuleSymbol = { kind: "strip"; label: string } | { kind: "digit"; digit: number };

export interface BoardState {
  session: SessionPayload | null;
  chain: string[];
  ruleLhs: string | null;
  ruleRhs: RuleSymbol[];
  derivation: string[];
  lastChainResult: MoveResult | null;
  lastRuleResult: MoveResult | null;
  lastDerivationResult: MoveResult | null;
  pending: boolean;
  networkError: string | null;
}

export function newBoard(): BoardState {
  return {
    session: null,
    chain: [],
    ruleLhs: null,
    ruleRhs: [],
    derivation: [],
    lastChainResult: null,
    lastRuleResult: null,
    lastDerivationResult: null,
    pending: false,
    networkError: null,
  };
}

export function appendCard(composition: string[], cardId: string): string[] {
  // physical cards exist once: ignore a card already on the thread
  return composition.includes(cardId) ? composition : [...composition, cardId];
}

export function removeCardAt(composition: string[], index: number): string[] {
  return composition.filter((_, i) => i !== index);
}

export function symbolText(symbol: RuleSymbol): string {
  return symbol.kind === "strip" ? symbol.label : String(symbol.digit);
}

export function ruleHints(lhs: string | null, rhs: RuleSymbol[]): string[] {
  // client-side hints only; the server is the judge
  const hints: string[] = [];
  if (lhs === null) {
    hints.push("pick a strip as lhs");
  }
  if (rhs.length === 0) {
    hints.push("rhs: strips or number cards required");
  }
  for (let i = 1; i < rhs.length; i++) {
    const prev = rhs[i - 1];
    const here = rhs[i];
    if (prev.kind === "strip" && here.kind === "strip" && prev.label === here.label) {
      hints.push(`two ${here.label} strips side by side: corpus rules rarely repeat strips`);
      break;
    }
  }
  return hints;
}

export function recordChainResult(state: BoardState, cards: string[], result: MoveResult): void {
  state.lastChainResult = result;
  if (result.accepted && state.session) {
    state.session.accepted_chains.push([...cards]);
    state.chain = [];
  }
}

export function recordRuleResult(state: BoardState, lhs: string, rhs: string[], result: MoveResult): void {
  state.lastRuleResult = result;
  if (result.accepted && state.session) {
    state.session.accepted_rules.push({ lhs, rhs: [...rhs] });
    state.ruleLhs = null;
    state.ruleRhs = [];
  }
}

export function recordDerivationResult(state: BoardState, cards: string[], result: MoveResult): void {
  state.lastDerivationResult = result;
  if (result.accepted && state.session) {
    state.session.accepted_derivations.push([...cards]);
    state.derivation = [];
  }
}

export type PairMark = "ok" | "fail" | "unknown";

export function pairMarks(chainLength: number, result: MoveResult | null): PairMark[] {
  // one mark per gap: [before first card, between cards..., after last card]
  const marks: PairMark[] = new Array(chainLength + 1).fill("unknown");
  if (!result || !result.detail.pairs) {
    return marks;
  }
  for (const pair of result.detail.pairs) {
    const gap = pair.position + 1; // boundary pair at -1 marks the leading gap
    if (gap >= 0 && gap < marks.length) {
      marks[gap] = pair.attested ? "ok" : "fail";
    }
  }
  return marks;
}

export function phaseIndex(phase: Phase): number {
  return ["bracelet", "grammar", "derivation", "revealed"].indexOf(phase);
}
