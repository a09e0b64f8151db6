// Thin typed client over the cogkg HTTP service. The base URL comes from
// the ?api= query parameter so the static bundle stays deployment-free.

import type { ActivationEntry, SayResponse, SignalsData, TaxonomyEdge, TaxonomyNode } from './model.js';

export const DEFAULT_BASE = 'http://127.0.0.1:8990';

/** Resolve the service URL from a page query string like '?api=http://…'. */
export function resolveBase(search: string, fallback: string = DEFAULT_BASE): string {
    const match = new URLSearchParams(search).get('api');
    if (!match) return fallback;
    return match.replace(/\/+$/, '');
}

export interface TaxonomyResponse {
    nodes: TaxonomyNode[];
    edges: TaxonomyEdge[];
}

export class CogApi {
    constructor(readonly base: string) {}

    private async getJson<T>(path: string): Promise<T> {
        const resp = await fetch(this.base + path);
        if (!resp.ok) throw new Error(`GET ${path}: ${resp.status}`);
        return resp.json() as Promise<T>;
    }

    /** POST /say; service-level errors come back as kind:'error' turns. */
    async say(text: string): Promise<SayResponse> {
        const resp = await fetch(this.base + '/say', {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify({ text }),
        });
        const body = (await resp.json()) as SayResponse;
        if (!resp.ok && body.kind !== 'error') {
            throw new Error(`POST /say: ${resp.status}`);
        }
        return body;
    }

    activation(): Promise<ActivationEntry[]> {
        return this.getJson<ActivationEntry[]>('/activation');
    }

    taxonomy(): Promise<TaxonomyResponse> {
        return this.getJson<TaxonomyResponse>('/graph/taxonomy');
    }

    signals(): Promise<SignalsData> {
        return this.getJson<SignalsData>('/signals');
    }

    async reset(): Promise<void> {
        const resp = await fetch(this.base + '/reset', { method: 'POST' });
        if (!resp.ok) throw new Error(`POST /reset: ${resp.status}`);
    }
}
