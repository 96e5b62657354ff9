// DOM rendering for the game board.  Pure render-from-state functions; all
// interaction is delegated through the callbacks the app wires in.

import type { BoardState, PairMark, RuleSymbol } from "./state.js";
import { pairMarks, symbolText } from "./state.js";
import type { BraceletCard, GrammarCard, Material, MoveResult, SessionPayload } from "./types.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderSheets(container: HTMLElement, material: Material): void {
  container.innerHTML = "";
  material.sheets.forEach((svg, index) => {
    const page = el("div", "sheet-page");
    page.dataset.page = String(index);
    page.innerHTML = svg;
    const overlay = el("div", "overlay-layer");
    overlay.dataset.page = String(index);
    page.appendChild(overlay);
    container.appendChild(page);
  });
}

export function renderOverlay(container: HTMLElement, overlayPages: string[]): void {
  const layers = container.querySelectorAll<HTMLElement>(".overlay-layer");
  layers.forEach((layer) => {
    const page = Number(layer.dataset.page);
    const svg = overlayPages[page];
    if (svg) {
      layer.innerHTML = svg;
      layer.classList.add("sliding");
    }
  });
}

function cardNode(face: string, cardId: string, className: string): HTMLElement {
  const node = el("button", className, face);
  node.dataset.cardId = cardId;
  node.draggable = true;
  node.addEventListener("dragstart", (event) => {
    (event as DragEvent).dataTransfer?.setData("text/plain", cardId);
  });
  return node;
}

export function renderBraceletDeck(
  container: HTMLElement,
  deck: BraceletCard[],
  used: string[],
  onPick: (cardId: string) => void,
): void {
  container.innerHTML = "";
  for (const card of deck) {
    const node = cardNode(card.face, card.id, "card bracelet-card");
    if (used.includes(card.id)) node.classList.add("used");
    node.addEventListener("click", () => onPick(card.id));
    container.appendChild(node);
  }
}

export function renderGrammarDeck(
  container: HTMLElement,
  deck: GrammarCard[],
  used: string[],
  onPick: (cardId: string) => void,
): void {
  container.innerHTML = "";
  for (const card of deck) {
    const node = cardNode(card.face, card.id, "card grammar-card");
    const footer = el("span", "pos-footer", String(card.pos));
    node.appendChild(footer);
    if (!card.corpus_word) node.classList.add("new-word");
    if (used.includes(card.id)) node.classList.add("used");
    node.addEventListener("click", () => onPick(card.id));
    container.appendChild(node);
  }
}

function markClass(mark: PairMark): string {
  return `thread-gap ${mark}`;
}

export function renderThread(
  container: HTMLElement,
  composition: string[],
  faces: Map<string, string>,
  result: MoveResult | null,
  onRemove: (index: number) => void,
): void {
  container.innerHTML = "";
  const marks = pairMarks(composition.length, result);
  container.appendChild(el("span", markClass(marks[0])));
  composition.forEach((cardId, index) => {
    const node = el("button", "card threaded-card", faces.get(cardId) ?? cardId);
    node.dataset.cardId = cardId;
    node.addEventListener("click", () => onRemove(index));
    container.appendChild(node);
    container.appendChild(el("span", markClass(marks[index + 1])));
  });
  if (result) {
    container.classList.toggle("accepted", result.accepted);
    container.classList.toggle("rejected", !result.accepted);
  } else {
    container.classList.remove("accepted", "rejected");
  }
}

export function renderRuleComposer(
  options: {
    strips: HTMLElement;
    digits: HTMLElement;
    lhsSlot: HTMLElement;
    rhsSlot: HTMLElement;
    hints: HTMLElement;
  },
  palette: Record<string, string>,
  state: BoardState,
  hints: string[],
  onStrip: (label: string) => void,
  onDigit: (digit: number) => void,
  onRemoveRhs: (index: number) => void,
): void {
  options.strips.innerHTML = "";
  for (const [label, color] of Object.entries(palette)) {
    const strip = el("button", "strip", label);
    strip.style.background = color;
    strip.dataset.label = label;
    strip.addEventListener("click", () => onStrip(label));
    options.strips.appendChild(strip);
  }
  options.digits.innerHTML = "";
  for (let digit = 0; digit <= 9; digit++) {
    const card = el("button", "card digit-card", String(digit));
    card.dataset.digit = String(digit);
    card.addEventListener("click", () => onDigit(digit));
    options.digits.appendChild(card);
  }
  options.lhsSlot.innerHTML = "";
  if (state.ruleLhs) {
    const strip = el("span", "strip chosen", state.ruleLhs);
    strip.style.background = palette[state.ruleLhs] ?? "gray";
    options.lhsSlot.appendChild(strip);
  } else {
    options.lhsSlot.appendChild(el("span", "placeholder", "lhs"));
  }
  options.rhsSlot.innerHTML = "";
  state.ruleRhs.forEach((symbol: RuleSymbol, index: number) => {
    const node = el("button", symbol.kind === "strip" ? "strip chosen" : "card digit-card chosen", symbolText(symbol));
    if (symbol.kind === "strip") node.style.background = palette[symbol.label] ?? "gray";
    node.addEventListener("click", () => onRemoveRhs(index));
    options.rhsSlot.appendChild(node);
  });
  options.hints.innerHTML = "";
  for (const hint of hints) {
    options.hints.appendChild(el("li", "hint", hint));
  }
}

export function renderAccepted(container: HTMLElement, session: SessionPayload, faces: Map<string, string>): void {
  container.innerHTML = "";
  const chains = el("ul", "accepted-chains");
  for (const chain of session.accepted_chains) {
    chains.appendChild(el("li", "accepted-item", chain.map((id) => faces.get(id) ?? id).join(" ")));
  }
  const rules = el("ul", "accepted-rules");
  for (const rule of session.accepted_rules) {
    rules.appendChild(el("li", "accepted-item", `${rule.lhs} = ${rule.rhs.join(" ")}`));
  }
  container.appendChild(chains);
  container.appendChild(rules);
}

export function renderReveal(container: HTMLElement, session: SessionPayload): void {
  container.innerHTML = "";
  if (!session.reveal) return;
  container.appendChild(el("h2", "reveal-language", session.reveal.hidden_language));
  const list = el("ul", "translations");
  for (const text of session.reveal.translations.chains) {
    list.appendChild(el("li", "translation chain-translation", text));
  }
  for (const text of session.reveal.translations.derivations) {
    list.appendChild(el("li", "translation derivation-translation", text));
  }
  container.appendChild(list);
}
