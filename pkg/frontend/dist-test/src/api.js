/** Thin client over the compute service.
 *
 * Every number shown in the UI comes from these responses untouched; the
 * client adds only caching and latest-wins cancellation per panel.
 */
import { requestKey } from './state.js';
export class ServiceError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    baseUrl;
    fetchImpl;
    cache = new Map();
    inflight = new Map();
    constructor(baseUrl, fetchImpl = fetch) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    url(path) {
        return this.baseUrl.replace(/\/$/, '') + path;
    }
    async health() {
        try {
            const res = await this.fetchImpl(this.url('/api/health'));
            return res.ok;
        }
        catch {
            return false;
        }
    }
    async presets() {
        const res = await this.fetchImpl(this.url('/api/presets'));
        if (!res.ok)
            throw new ServiceError(res.status, 'failed to load presets');
        return (await res.json());
    }
    /** POST with per-panel latest-wins cancellation and keyed caching. */
    async post(path, panel, body) {
        const key = path + ':' + requestKey(body);
        if (this.cache.has(key)) {
            return this.cache.get(key);
        }
        this.inflight.get(panel)?.abort();
        const controller = new AbortController();
        this.inflight.set(panel, controller);
        const res = await this.fetchImpl(this.url(path), {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
            signal: controller.signal,
        });
        if (!res.ok) {
            let detail = res.statusText;
            try {
                detail = JSON.stringify((await res.json()).detail);
            }
            catch {
                /* non-JSON error body */
            }
            throw new ServiceError(res.status, detail);
        }
        const data = (await res.json());
        this.cache.set(key, data);
        return data;
    }
    scubed(body) {
        return this.post('/api/scubed', 'scubed', body);
    }
    spectrum(species, temperatureK, mode, broadeningThz) {
        return this.post('/api/spectrum', 'spectrum', {
            species, temperature_k: temperatureK, mode, broadening_thz: broadeningThz,
        });
    }
    cacheSize() {
        return this.cache.size;
    }
}
export function debounce(fn, waitMs = 150) {
    let timer;
    return (...args) => {
        if (timer !== undefined)
            clearTimeout(timer);
        timer = setTimeout(() => fn(...args), waitMs);
    };
}
