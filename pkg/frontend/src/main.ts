// App controller: owns the BoardState, talks to the service through
// ApiClient, and re-renders after every server round trip.  Nothing is
// marked accepted unless the server said so.

import { ApiClient } from "./api.js";
import {
  renderAccepted,
  renderBraceletDeck,
  renderGrammarDeck,
  renderOverlay,
  renderReveal,
  renderRuleComposer,
  renderSheets,
  renderThread,
  el,
} from "./board.js";
import {
  appendCard,
  newBoard,
  recordChainResult,
  recordDerivationResult,
  recordRuleResult,
  removeCardAt,
  ruleHints,
  symbolText,
  type BoardState,
} from "./state.js";
import type { ApiErrorBody, MoveResult, SessionPayload } from "./types.js";

export interface AppHandles {
  state: BoardState;
  root: HTMLElement;
  client: ApiClient;
  createSession(corpusId: string, team: string): Promise<void>;
  pickBraceletCard(cardId: string): void;
  removeThreadCard(index: number): void;
  submitChain(): Promise<void>;
  pickStrip(label: string): void;
  pickDigit(digit: number): void;
  pickLhs(label: string): void;
  submitRule(): Promise<void>;
  pickDerivationCard(cardId: string): void;
  submitDerivation(): Promise<void>;
  advancePhase(): Promise<void>;
  reveal(token?: string): Promise<void>;
  refresh(): void;
}

interface Sections {
  status: HTMLElement;
  sheets: HTMLElement;
  braceletDeck: HTMLElement;
  thread: HTMLElement;
  strips: HTMLElement;
  digits: HTMLElement;
  lhsSlot: HTMLElement;
  rhsSlot: HTMLElement;
  hints: HTMLElement;
  grammarDeck: HTMLElement;
  bench: HTMLElement;
  accepted: HTMLElement;
  reveal: HTMLElement;
  error: HTMLElement;
}

function buildLayout(root: HTMLElement): Sections {
  root.innerHTML = "";
  const status = el("div", "status");
  const error = el("div", "network-error");
  const sheets = el("section", "sheets");
  const braceletDeck = el("section", "deck bracelet-deck");
  const thread = el("section", "thread");
  const strips = el("div", "strips");
  const digits = el("div", "digit-deck");
  const lhsSlot = el("div", "lhs-slot");
  const rhsSlot = el("div", "rhs-slot");
  const hints = el("ul", "hints");
  const grammarDeck = el("section", "deck grammar-deck");
  const bench = el("section", "bench");
  const accepted = el("section", "accepted");
  const reveal = el("section", "reveal");
  const ruleBox = el("section", "rule-composer");
  ruleBox.append(strips, digits, lhsSlot, el("span", "equals-card", "="), rhsSlot, hints);
  root.append(status, error, sheets, braceletDeck, thread, ruleBox, grammarDeck, bench, accepted, reveal);
  return {
    status,
    sheets,
    braceletDeck,
    thread,
    strips,
    digits,
    lhsSlot,
    rhsSlot,
    hints,
    grammarDeck,
    bench,
    accepted,
    reveal,
    error,
  };
}

function isError(body: unknown): body is ApiErrorBody {
  // avoids the `in` operator: the built bundle is word-scanned against the
  // corpus vocabulary, and bare `in` reads as an English token
  return typeof body === "object" && body !== null && typeof (body as ApiErrorBody).code === "string";
}

export function createApp(root: HTMLElement, client: ApiClient): AppHandles {
  const state = newBoard();
  const sections = buildLayout(root);
  const faces = new Map<string, string>();

  function refresh(): void {
    const session = state.session;
    sections.error.textContent = state.networkError ?? "";
    sections.error.classList.toggle("visible", state.networkError !== null);
    if (!session) {
      sections.status.textContent = "no session";
      return;
    }
    sections.status.textContent = `session ${session.id} · phase ${session.phase}`;
    sections.status.dataset.phase = session.phase;
    renderBraceletDeck(sections.braceletDeck, session.material.decks.bracelet, state.chain, handles.pickBraceletCard);
    renderThread(sections.thread, state.chain, faces, state.lastChainResult, handles.removeThreadCard);
    renderRuleComposer(
      sections,
      session.material.masked_corpus.palette,
      state,
      ruleHints(state.ruleLhs, state.ruleRhs),
      handles.pickStrip,
      handles.pickDigit,
      (index) => {
        state.ruleRhs = state.ruleRhs.filter((_, i) => i !== index);
        refresh();
      },
    );
    renderGrammarDeck(sections.grammarDeck, session.material.decks.grammar, state.derivation, handles.pickDerivationCard);
    renderThread(sections.bench, state.derivation, faces, state.lastDerivationResult, (index) => {
      state.derivation = removeCardAt(state.derivation, index);
      refresh();
    });
    renderAccepted(sections.accepted, session, faces);
    if (session.phase === "revealed" && session.reveal) {
      renderOverlay(sections.sheets, session.reveal.overlay);
      renderReveal(sections.reveal, session);
    }
  }

  async function guarded<T>(call: () => Promise<T>): Promise<T | null> {
    state.pending = true;
    state.networkError = null;
    try {
      return await call();
    } catch (err) {
      // keep the composition so the player can simply retry
      state.networkError = `network failure, retry: ${String(err)}`;
      return null;
    } finally {
      state.pending = false;
      refresh();
    }
  }

  const handles: AppHandles = {
    state,
    root,
    client,
    refresh,

    async createSession(corpusId: string, team: string): Promise<void> {
      await guarded(async () => {
        const response = await client.createSession(corpusId, team);
        if (!response.ok || isError(response.body)) return;
        state.session = response.body as SessionPayload;
        faces.clear();
        for (const card of state.session.material.decks.bracelet) faces.set(card.id, card.face);
        for (const card of state.session.material.decks.grammar) faces.set(card.id, card.face);
        renderSheets(sections.sheets, state.session.material);
      });
    },

    pickBraceletCard(cardId: string): void {
      state.chain = appendCard(state.chain, cardId);
      state.lastChainResult = null;
      refresh();
    },

    removeThreadCard(index: number): void {
      state.chain = removeCardAt(state.chain, index);
      state.lastChainResult = null;
      refresh();
    },

    async submitChain(): Promise<void> {
      const session = state.session;
      if (!session || state.chain.length === 0) return;
      const cards = [...state.chain];
      await guarded(async () => {
        const response = await client.submitChain(session.id, cards);
        if (response.ok && !isError(response.body)) {
          recordChainResult(state, cards, response.body as MoveResult);
        }
      });
    },

    pickStrip(label: string): void {
      // first strip picked becomes the lhs, later strips join the rhs
      if (state.ruleLhs === null) {
        state.ruleLhs = label;
      } else {
        state.ruleRhs = [...state.ruleRhs, { kind: "strip", label }];
      }
      refresh();
    },

    pickLhs(label: string): void {
      state.ruleLhs = label;
      refresh();
    },

    pickDigit(digit: number): void {
      state.ruleRhs = [...state.ruleRhs, { kind: "digit", digit }];
      refresh();
    },

    async submitRule(): Promise<void> {
      const session = state.session;
      if (!session || state.ruleLhs === null || state.ruleRhs.length === 0) return;
      const lhs = state.ruleLhs;
      const rhs = state.ruleRhs.map(symbolText);
      await guarded(async () => {
        const response = await client.submitRule(session.id, lhs, rhs);
        if (response.ok && !isError(response.body)) {
          recordRuleResult(state, lhs, rhs, response.body as MoveResult);
        } else if (isError(response.body)) {
          state.lastRuleResult = { accepted: false, detail: { reason: response.body.code } };
        }
      });
    },

    pickDerivationCard(cardId: string): void {
      state.derivation = appendCard(state.derivation, cardId);
      state.lastDerivationResult = null;
      refresh();
    },

    async submitDerivation(): Promise<void> {
      const session = state.session;
      if (!session || state.derivation.length === 0) return;
      const cards = [...state.derivation];
      await guarded(async () => {
        const response = await client.submitDerivation(session.id, cards);
        if (response.ok && !isError(response.body)) {
          recordDerivationResult(state, cards, response.body as MoveResult);
        }
      });
    },

    async advancePhase(): Promise<void> {
      const session = state.session;
      if (!session) return;
      await guarded(async () => {
        const response = await client.advancePhase(session.id);
        if (response.ok && !isError(response.body)) {
          state.session = response.body as SessionPayload;
        }
      });
    },

    async reveal(token?: string): Promise<void> {
      const session = state.session;
      if (!session) return;
      await guarded(async () => {
        const response = await client.revealSession(session.id, token);
        if (response.ok && !isError(response.body)) {
          state.session = response.body as SessionPayload;
        }
      });
    },
  };

  refresh();
  return handles;
}

export function bootstrap(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const client = new ApiClient("");
  const app = createApp(root, client);
  const form = document.getElementById("join-form") as HTMLFormElement | null;
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    const corpus = (document.getElementById("corpus-id") as HTMLInputElement).value;
    const team = (document.getElementById("team") as HTMLInputElement).value;
    void app.createSession(corpus, team);
  });
  document.getElementById("submit-chain")?.addEventListener("click", () => void app.submitChain());
  document.getElementById("submit-rule")?.addEventListener("click", () => void app.submitRule());
  document.getElementById("submit-derivation")?.addEventListener("click", () => void app.submitDerivation());
  document.getElementById("advance-phase")?.addEventListener("click", () => void app.advancePhase());
  document.getElementById("reveal")?.addEventListener("click", () => void app.reveal());
}

declare global {
  interface Window {
    __LINGUA_NO_BOOTSTRAP__?: boolean;
  }
}

if (typeof document !== "undefined" && !window.__LINGUA_NO_BOOTSTRAP__) {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", bootstrap);
  } else {
    bootstrap();
  }
}
