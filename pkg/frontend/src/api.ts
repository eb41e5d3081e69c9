/** Typed fetch client for the bndiff session API. */

import type {
  CptPanel,
  DiffReport,
  NetworkDocument,
  SceneDocument,
  SessionSummary,
} from './scene.js';

export interface LearnOptions {
  maxIndegree?: number;
  alpha?: number;
  sampleN?: number;
  seed?: number;
  maxPasses?: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === 'string' ? detail : JSON.stringify(detail));
  }
}

export class Client {
  constructor(public baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: body !== undefined ? { 'Content-Type': 'application/json' } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (!response.ok) {
      let detail: unknown = response.statusText;
      try {
        detail = ((await response.json()) as { detail?: unknown }).detail ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSessionFromNetwork(network: NetworkDocument): Promise<{ id: string; variables: string[] }> {
    return this.request('POST', '/sessions', { network });
  }

  createSessionFromDataset(
    dataset: string,
    learn?: LearnOptions,
  ): Promise<{ id: string; variables: string[] }> {
    return this.request('POST', '/sessions', { dataset, learn });
  }

  getNetwork(sessionId: string): Promise<NetworkDocument> {
    return this.request('GET', `/sessions/${sessionId}/network`);
  }

  putEvidence(
    sessionId: string,
    which: 1 | 2,
    evidence: Record<string, string>,
  ): Promise<SessionSummary> {
    return this.request('PUT', `/sessions/${sessionId}/evidence/${which}`, evidence);
  }

  putThreshold(sessionId: string, percent: number): Promise<SessionSummary> {
    return this.request('PUT', `/sessions/${sessionId}/threshold`, { percent });
  }

  getDiff(sessionId: string): Promise<DiffReport> {
    return this.request('GET', `/sessions/${sessionId}/diff`);
  }

  getScene(sessionId: string): Promise<SceneDocument> {
    return this.request('GET', `/sessions/${sessionId}/scene`);
  }

  getCpt(sessionId: string, variable: string): Promise<CptPanel> {
    return this.request('GET', `/sessions/${sessionId}/cpt/${encodeURIComponent(variable)}`);
  }
}
