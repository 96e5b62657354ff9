// Wire types for the game service API (v1).

export type Phase = "bracelet" | "grammar" | "derivation" | "revealed";

export interface MaskedToken {
  surface: string;
  pos: number;
}

export interface PhraseSpan {
  start: number;
  end: number;
  label: string;
}

export interface MaskedSentence {
  tokens: MaskedToken[];
  phrases: PhraseSpan[];
}

export interface MaskedCorpus {
  id: string;
  pos_legend: Record<string, string>;
  palette: Record<string, string>;
  sentences: MaskedSentence[];
}

export interface BraceletCard {
  id: string;
  face: string;
}

export interface GrammarCard {
  id: string;
  face: string;
  pos: number;
  corpus_word: boolean;
}

export interface TokenCoord {
  sentence: number;
  token: number;
  page: number;
  x: number;
  y: number;
  width: number;
}

export interface Coordinates {
  corpus_id: string;
  page_width: number;
  page_height: number;
  page_count: number;
  sentence_count: number;
  tokens: TokenCoord[];
}

export interface Material {
  masked_corpus: MaskedCorpus;
  decks: { bracelet: BraceletCard[]; grammar: GrammarCard[] };
  sheets: string[];
  coordinates: Coordinates;
}

export interface PairVerdict {
  position: number;
  left: string;
  right: string;
  attested: boolean;
}

export interface MoveDetail {
  pairs?: PairVerdict[];
  first_failure?: [number, string, string] | null;
  score?: number;
  reason?: string | null;
  derivable?: boolean;
  longest_prefix?: number;
}

export interface MoveResult {
  accepted: boolean;
  detail: MoveDetail;
}

export interface SubmittedRule {
  lhs: string;
  rhs: string[];
}

export interface RevealPayload {
  hidden_language: string;
  clear_corpus: unknown;
  overlay: string[];
  translations: { chains: string[]; derivations: string[] };
}

export interface SessionPayload {
  id: string;
  corpus_id: string;
  team: string;
  phase: Phase;
  created: number;
  accepted_chains: string[][];
  accepted_rules: SubmittedRule[];
  accepted_derivations: string[][];
  material: Material;
  reveal?: RevealPayload;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
