import assert from 'node:assert/strict';
import { test } from 'node:test';
import { ApiClient, ServiceError, debounce } from '../src/api.js';
import { DEFAULT_STATE, toScubedRequest } from '../src/state.js';
function fakeResponse(body, status = 200) {
    return {
        ok: status >= 200 && status < 300,
        status,
        statusText: String(status),
        json: async () => body,
    };
}
test('scubed posts the body verbatim and caches identical requests', async () => {
    const calls = [];
    const payload = { ground_splitting_ghz: [50, 51], numerical_error: false };
    const client = new ApiClient('http://svc', async (url, init) => {
        calls.push({ url: String(url), body: String(init?.body) });
        return fakeResponse(payload);
    });
    const body = toScubedRequest(DEFAULT_STATE);
    const first = await client.scubed(body);
    const second = await client.scubed({ ...body });
    assert.equal(calls.length, 1, 'identical request must come from the cache');
    assert.equal(calls[0].url, 'http://svc/api/scubed');
    assert.deepEqual(JSON.parse(calls[0].body), body);
    assert.deepEqual(first, payload);
    assert.equal(second, first);
    assert.equal(client.cacheSize(), 1);
});
test('service errors carry status and detail', async () => {
    const client = new ApiClient('http://svc', async () => fakeResponse({ detail: 'bad direction' }, 422));
    await assert.rejects(client.scubed(toScubedRequest(DEFAULT_STATE)), (err) => err instanceof ServiceError && err.status === 422);
});
test('latest request wins: the previous in-flight call is aborted', async () => {
    let aborted = 0;
    const client = new ApiClient('http://svc', (url, init) => new Promise((resolve, reject) => {
        init?.signal?.addEventListener('abort', () => {
            aborted += 1;
            reject(new DOMException('aborted', 'AbortError'));
        });
        setTimeout(() => resolve(fakeResponse({ lines: [] })), 5);
    }));
    const slow = client.spectrum('SnV', 100, 'PL', 0).catch((e) => e);
    const fast = await client.spectrum('SnV', 50, 'PL', 0);
    const slowResult = await slow;
    assert.equal(aborted, 1);
    assert.ok(slowResult instanceof Error);
    assert.deepEqual(fast, { lines: [] });
});
test('health degrades to false on network failure', async () => {
    const client = new ApiClient('http://svc', async () => {
        throw new TypeError('network down');
    });
    assert.equal(await client.health(), false);
});
test('debounce collapses bursts to the trailing call', async () => {
    let count = 0;
    let last = 0;
    const fn = debounce((v) => { count += 1; last = v; }, 10);
    fn(1);
    fn(2);
    fn(3);
    await new Promise((r) => setTimeout(r, 40));
    assert.equal(count, 1);
    assert.equal(last, 3);
});
