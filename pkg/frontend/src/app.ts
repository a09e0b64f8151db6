// DOM wiring: chat pane, working-memory bars, taxonomy browser, and the
// four signal gauges. All state is derived from the HTTP responses; the
// panels re-render from scratch on every update.

import { CogApi, resolveBase } from './api.js';
import {
    ActivationEntry,
    ChatTurn,
    ForestNode,
    SignalsData,
    appendTurnPair,
    buildForest,
    canSend,
    gaugeValues,
    isStale,
    nextFailureCount,
    risenIds,
} from './model.js';

const POLL_MS = 750;

const api = new CogApi(resolveBase(window.location.search));

let turns: ChatTurn[] = [];
let lastSignals: SignalsData | null = null;
let lastActivation: ActivationEntry[] = [];
let pollFailures = 0;
let inFlight = false;

const $ = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing #${id}`);
    return el as T;
};

// ---------------------------------------------------------------------------
// chat

function renderChat(): void {
    const log = $('chat-log');
    log.replaceChildren(
        ...turns.map((turn) => {
            const row = document.createElement('div');
            row.className = `turn ${turn.direction}${turn.error ? ' error' : ''}`;
            const body = document.createElement('span');
            body.textContent = turn.text;
            row.appendChild(body);
            if (turn.verdict) {
                const badge = document.createElement('span');
                badge.className = 'verdict';
                badge.textContent = turn.verdict;
                row.appendChild(badge);
            }
            return row;
        }),
    );
    log.scrollTop = log.scrollHeight;
}

function setBanner(message: string | null): void {
    const banner = $('banner');
    banner.textContent = message ?? '';
    banner.classList.toggle('hidden', message === null);
}

function updateSendState(): void {
    const input = $<HTMLInputElement>('chat-input');
    $<HTMLButtonElement>('chat-send').disabled = inFlight || !canSend(input.value);
}

async function submitChat(event: Event): Promise<void> {
    event.preventDefault();
    const input = $<HTMLInputElement>('chat-input');
    const text = input.value.trim();
    if (!canSend(text) || inFlight) return;
    inFlight = true;
    updateSendState();
    try {
        const response = await api.say(text);
        turns = appendTurnPair(turns, text, response, Date.now());
        if (response.signals) lastSignals = response.signals;
        input.value = '';
        setBanner(null);
        renderChat();
        renderGauges();
        void refreshTaxonomy();
    } catch {
        // network failure: keep the input so the user can retry
        setBanner(`Cannot reach the service at ${api.base} - is 'cog serve' running?`);
    } finally {
        inFlight = false;
        updateSendState();
        input.focus();
    }
}

// ---------------------------------------------------------------------------
// working-memory panel

function renderActivation(entries: ActivationEntry[]): void {
    const panel = $('wm-list');
    const flash = risenIds(lastActivation, entries);
    lastActivation = entries;
    if (entries.length === 0) {
        panel.replaceChildren();
        $('wm-empty').classList.remove('hidden');
        return;
    }
    $('wm-empty').classList.add('hidden');
    panel.replaceChildren(
        ...entries.map((entry) => {
            const row = document.createElement('div');
            row.className = 'wm-row' + (flash.has(entry.id) ? ' flash' : '');
            const name = document.createElement('span');
            name.className = 'wm-label';
            name.textContent = entry.label || `#${entry.id}`;
            const bar = document.createElement('div');
            bar.className = 'bar';
            const fill = document.createElement('div');
            fill.className = 'fill';
            fill.style.width = `${Math.round(100 * Math.min(1, Math.max(0, entry.level)))}%`;
            bar.appendChild(fill);
            const value = document.createElement('span');
            value.className = 'wm-value';
            value.textContent = entry.level.toFixed(3);
            row.append(name, bar, value);
            return row;
        }),
    );
}

async function poll(): Promise<void> {
    try {
        const entries = await api.activation();
        pollFailures = nextFailureCount(pollFailures, true);
        renderActivation(entries);
    } catch {
        pollFailures = nextFailureCount(pollFailures, false);
    }
    $('wm-stale').classList.toggle('hidden', !isStale(pollFailures));
}

// ---------------------------------------------------------------------------
// taxonomy browser

function renderForestNode(item: ForestNode): HTMLElement {
    const li = document.createElement('li');
    if (item.cycleBadge) {
        const badge = document.createElement('span');
        badge.className = 'cycle';
        badge.textContent = `${item.node.label || '#' + item.node.id} (cycle)`;
        li.appendChild(badge);
        return li;
    }
    const isLeafEntity = item.node.kind === 'Entity';
    if (item.children.length === 0) {
        const leaf = document.createElement('span');
        leaf.className = isLeafEntity ? 'entity-leaf' : 'leaf';
        leaf.textContent = item.node.label || `#${item.node.id}`;
        li.appendChild(leaf);
        return li;
    }
    const details = document.createElement('details');
    details.open = true;
    const summary = document.createElement('summary');
    summary.textContent = item.node.label || `#${item.node.id}`;
    details.appendChild(summary);
    const ul = document.createElement('ul');
    ul.append(...item.children.map(renderForestNode));
    details.appendChild(ul);
    li.appendChild(details);
    return li;
}

async function refreshTaxonomy(): Promise<void> {
    try {
        const { nodes, edges } = await api.taxonomy();
        const forest = buildForest(nodes, edges);
        const root = $('taxonomy');
        if (forest.length === 0) {
            root.replaceChildren();
            $('taxonomy-empty').classList.remove('hidden');
            return;
        }
        $('taxonomy-empty').classList.add('hidden');
        const ul = document.createElement('ul');
        ul.append(...forest.map(renderForestNode));
        root.replaceChildren(ul);
    } catch {
        // the stale badge on the WM panel already covers connectivity
    }
}

// ---------------------------------------------------------------------------
// signal gauges

const GAUGE_NAMES = ['surprise', 'certainty', 'confusion', 'boredom'] as const;

function renderGauges(): void {
    const values = gaugeValues(lastSignals);
    for (const name of GAUGE_NAMES) {
        const fill = $(`gauge-${name}`);
        fill.style.width = `${Math.round(100 * values[name])}%`;
        $(`gauge-${name}-value`).textContent = values[name].toFixed(2);
    }
}

// ---------------------------------------------------------------------------
// boot

function main(): void {
    $('api-base').textContent = api.base;
    $<HTMLFormElement>('chat-form').addEventListener('submit', (e) => void submitChat(e));
    $<HTMLInputElement>('chat-input').addEventListener('input', updateSendState);
    $<HTMLButtonElement>('reset-btn').addEventListener('click', () => {
        void api.reset().then(() => {
            turns = [];
            lastSignals = null;
            renderChat();
            renderGauges();
            void refreshTaxonomy();
        });
    });
    $<HTMLButtonElement>('taxonomy-refresh').addEventListener('click', () => void refreshTaxonomy());
    updateSendState();
    renderGauges();
    void refreshTaxonomy();
    void poll();
    window.setInterval(() => void poll(), POLL_MS);
}

document.addEventListener('DOMContentLoaded', main);
