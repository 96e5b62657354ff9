// Thin typed client over the game service; every request/response body is
// kept in a traffic log so tests can inspect what actually crossed the wire.

import type { ApiErrorBody, MoveResult, SessionPayload } from "./types.js";

export interface TrafficEntry {
  method: string;
  url: string;
  requestBody: string | null;
  status: number;
  responseBody: string;
}

export interface ApiResponse<T> {
  ok: boolean;
  status: number;
  body: T | ApiErrorBody;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly traffic: TrafficEntry[] = [];

  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, payload?: unknown, headers?: Record<string, string>): Promise<ApiResponse<T>> {
    const url = `${this.baseUrl}${path}`;
    const requestBody = payload === undefined ? null : JSON.stringify(payload);
    const response = await this.fetchImpl(url, {
      method,
      headers: { "content-type": "application/json", ...headers },
      body: requestBody ?? undefined,
    });
    const responseBody = await response.text();
    this.traffic.push({ method, url, requestBody, status: response.status, responseBody });
    return { ok: response.ok, status: response.status, body: JSON.parse(responseBody) as T | ApiErrorBody };
  }

  createSession(corpusId: string, team: string): Promise<ApiResponse<SessionPayload>> {
    return this.request("POST", "/v1/sessions", { corpus_id: corpusId, team });
  }

  getSession(sessionId: string): Promise<ApiResponse<SessionPayload>> {
    return this.request("GET", `/v1/sessions/${sessionId}`);
  }

  submitChain(sessionId: string, cards: string[]): Promise<ApiResponse<MoveResult>> {
    return this.request("POST", `/v1/sessions/${sessionId}/chains`, { cards });
  }

  submitRule(sessionId: string, lhs: string, rhs: string[]): Promise<ApiResponse<MoveResult>> {
    return this.request("POST", `/v1/sessions/${sessionId}/rules`, { lhs, rhs });
  }

  submitDerivation(sessionId: string, cards: string[]): Promise<ApiResponse<MoveResult>> {
    return this.request("POST", `/v1/sessions/${sessionId}/derivations`, { cards });
  }

  advancePhase(sessionId: string, to?: string): Promise<ApiResponse<SessionPayload>> {
    return this.request("POST", `/v1/sessions/${sessionId}/phase`, to ? { to } : {});
  }

  revealSession(sessionId: string, facilitatorToken?: string): Promise<ApiResponse<SessionPayload>> {
    const headers = facilitatorToken ? { "x-facilitator-token": facilitatorToken } : undefined;
    return this.request("POST", `/v1/sessions/${sessionId}/reveal`, {}, headers);
  }
}
