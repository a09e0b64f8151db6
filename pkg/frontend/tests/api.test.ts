import { afterEach, describe, expect, it, vi } from 'vitest';

import { CogApi, DEFAULT_BASE, resolveBase } from '../src/api.js';

describe('resolveBase', () => {
    it('defaults to the local service', () => {
        expect(resolveBase('')).toBe(DEFAULT_BASE);
        expect(resolveBase('?other=1')).toBe(DEFAULT_BASE);
    });

    it('reads the api query parameter and strips trailing slashes', () => {
        expect(resolveBase('?api=http://127.0.0.1:9999')).toBe('http://127.0.0.1:9999');
        expect(resolveBase('?api=http://host:1/')).toBe('http://host:1');
    });
});

describe('CogApi', () => {
    afterEach(() => vi.unstubAllGlobals());

    const stub = (status: number, body: unknown) => {
        const mock = vi.fn(async () => ({
            ok: status >= 200 && status < 300,
            status,
            json: async () => body,
        }));
        vi.stubGlobal('fetch', mock);
        return mock;
    };

    it('posts /say and returns the turn', async () => {
        const mock = stub(200, { kind: 'answer', text: 'a cat', verdict: 'yes' });
        const api = new CogApi('http://x');
        const turn = await api.say('What does Tina want?');
        expect(turn.text).toBe('a cat');
        const [url, init] = mock.mock.calls[0] as unknown as [string, RequestInit];
        expect(url).toBe('http://x/say');
        expect(JSON.parse(String(init.body))).toEqual({ text: 'What does Tina want?' });
    });

    it('passes service error turns through (400 with kind error)', async () => {
        stub(400, { kind: 'error', text: 'empty text' });
        const api = new CogApi('http://x');
        const turn = await api.say('');
        expect(turn.kind).toBe('error');
    });

    it('throws on non-error http failures', async () => {
        stub(500, { whatever: true });
        const api = new CogApi('http://x');
        await expect(api.say('Tina wants a cat.')).rejects.toThrow('500');
    });

    it('fetches activation entries', async () => {
        stub(200, [{ id: 1, label: 'Tina', level: 0.8 }]);
        const api = new CogApi('http://x');
        expect(await api.activation()).toEqual([{ id: 1, label: 'Tina', level: 0.8 }]);
    });

    it('throws on failed reads', async () => {
        stub(404, {});
        const api = new CogApi('http://x');
        await expect(api.signals()).rejects.toThrow('404');
    });
});
