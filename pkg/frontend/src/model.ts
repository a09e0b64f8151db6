// Pure state logic for the panels. Everything here is a function of the
// HTTP responses received, so reloading and replaying the GETs reproduces
// the UI exactly; no DOM access so it all runs under vitest in node.

export interface SignalsData {
    surprise: number;
    certainty: number;
    confusion: number;
    boredom: number;
}

export interface SayResponse {
    kind: 'ack' | 'answer' | 'error';
    text: string;
    verdict?: string;
    signals?: SignalsData;
}

export interface ActivationEntry {
    id: number;
    label: string;
    level: number;
}

export interface TaxonomyNode {
    id: number;
    label: string;
    kind: string;
}

export interface TaxonomyEdge {
    id: number;
    src: number;
    dst: number;
    rel: string;
}

export interface ChatTurn {
    direction: 'user' | 'agent';
    text: string;
    verdict?: string;
    signals?: SignalsData;
    error?: boolean;
    timestamp: number;
}

// ---------------------------------------------------------------------------
// chat

export function canSend(text: string): boolean {
    return text.trim().length > 0;
}

/** Append the user turn and its agent reply as an ordered pair. */
export function appendTurnPair(
    turns: ChatTurn[],
    userText: string,
    response: SayResponse,
    now: number,
): ChatTurn[] {
    const user: ChatTurn = { direction: 'user', text: userText, timestamp: now };
    const agent: ChatTurn = {
        direction: 'agent',
        text: response.text,
        verdict: response.verdict,
        signals: response.signals,
        error: response.kind === 'error',
        timestamp: now,
    };
    return [...turns, user, agent];
}

// ---------------------------------------------------------------------------
// signal gauges

const ZERO_SIGNALS: SignalsData = { surprise: 0, certainty: 0, confusion: 0, boredom: 0 };

const clamp01 = (x: number) => Math.min(1, Math.max(0, x));

/** Gauge values for the last turn; zeros before any turn arrives. */
export function gaugeValues(signals: SignalsData | null | undefined): SignalsData {
    const s = signals ?? ZERO_SIGNALS;
    return {
        surprise: clamp01(s.surprise),
        certainty: clamp01(s.certainty),
        confusion: clamp01(s.confusion),
        boredom: clamp01(s.boredom),
    };
}

// ---------------------------------------------------------------------------
// working-memory panel

/** Ids whose level rose since the previous poll (these flash). */
export function risenIds(prev: ActivationEntry[], next: ActivationEntry[]): Set<number> {
    const before = new Map(prev.map((e) => [e.id, e.level]));
    const out = new Set<number>();
    for (const entry of next) {
        const old = before.get(entry.id);
        if (old === undefined || entry.level > old) {
            out.add(entry.id);
        }
    }
    return out;
}

/** Poll health: stale once this many consecutive polls have failed. */
export const STALE_AFTER = 3;

export function nextFailureCount(count: number, ok: boolean): number {
    return ok ? 0 : count + 1;
}

export function isStale(failureCount: number): boolean {
    return failureCount >= STALE_AFTER;
}

// ---------------------------------------------------------------------------
// taxonomy forest

export interface ForestNode {
    node: TaxonomyNode;
    /** relation this node reaches its parent with ('' for roots) */
    viaRel: string;
    children: ForestNode[];
    /** true when this node was already rendered elsewhere (cycle) */
    cycleBadge: boolean;
}

/**
 * Build a forest rooted at nodes with no valid is-a/instance-of parents.
 * Each node renders once; an edge that would render a node a second time
 * produces a badge-only marker instead (the server permits trivial cycles).
 */
export function buildForest(nodes: TaxonomyNode[], edges: TaxonomyEdge[]): ForestNode[] {
    const byId = new Map(nodes.map((n) => [n.id, n]));
    const childrenOf = new Map<number, { child: number; rel: string }[]>();
    const hasParent = new Set<number>();
    for (const edge of edges) {
        if (!byId.has(edge.src) || !byId.has(edge.dst)) continue;
        hasParent.add(edge.src);
        const bucket = childrenOf.get(edge.dst) ?? [];
        bucket.push({ child: edge.src, rel: edge.rel });
        childrenOf.set(edge.dst, bucket);
    }

    const rendered = new Set<number>();
    const build = (id: number, viaRel: string): ForestNode => {
        const node = byId.get(id)!;
        if (rendered.has(id)) {
            return { node, viaRel, children: [], cycleBadge: true };
        }
        rendered.add(id);
        const kids = (childrenOf.get(id) ?? [])
            .slice()
            .sort((a, b) => a.child - b.child)
            .map(({ child, rel }) => build(child, rel));
        return { node, viaRel, children: kids, cycleBadge: false };
    };

    const roots = nodes
        .filter((n) => !hasParent.has(n.id))
        .sort((a, b) => a.id - b.id)
        .map((n) => build(n.id, ''));
    // pure cycles have no parentless entry point; surface them once anyway
    for (const node of nodes) {
        if (!rendered.has(node.id)) {
            roots.push(build(node.id, ''));
        }
    }
    return roots;
}

export function forestIsEmpty(forest: ForestNode[]): boolean {
    return forest.length === 0;
}
