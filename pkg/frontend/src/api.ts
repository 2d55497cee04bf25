/** Thin client over the compute service.
 *
 * Every number shown in the UI comes from these responses untouched; the
 * client adds only caching and latest-wins cancellation per panel.
 */

import { requestKey } from './state.js'
import type { Presets, ScubedRequest, ScubedResponse, SpectrumResponse } from './types.js'

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message)
  }
}

type FetchLike = typeof fetch

export class ApiClient {
  private cache = new Map<string, unknown>()
  private inflight = new Map<string, AbortController>()

  constructor(public baseUrl: string, private fetchImpl: FetchLike = fetch) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path
  }

  async health(): Promise<boolean> {
    try {
      const res = await this.fetchImpl(this.url('/api/health'))
      return res.ok
    } catch {
      return false
    }
  }

  async presets(): Promise<Presets> {
    const res = await this.fetchImpl(this.url('/api/presets'))
    if (!res.ok) throw new ServiceError(res.status, 'failed to load presets')
    return (await res.json()) as Presets
  }

  /** POST with per-panel latest-wins cancellation and keyed caching. */
  private async post<T>(path: string, panel: string, body: unknown): Promise<T> {
    const key = path + ':' + requestKey(body)
    if (this.cache.has(key)) {
      return this.cache.get(key) as T
    }
    this.inflight.get(panel)?.abort()
    const controller = new AbortController()
    this.inflight.set(panel, controller)
    const res = await this.fetchImpl(this.url(path), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
      signal: controller.signal,
    })
    if (!res.ok) {
      let detail = res.statusText
      try {
        detail = JSON.stringify((await res.json()).detail)
      } catch {
        /* non-JSON error body */
      }
      throw new ServiceError(res.status, detail)
    }
    const data = (await res.json()) as T
    this.cache.set(key, data)
    return data
  }

  scubed(body: ScubedRequest): Promise<ScubedResponse> {
    return this.post<ScubedResponse>('/api/scubed', 'scubed', body)
  }

  spectrum(species: string, temperatureK: number, mode: 'PL' | 'PLE',
           broadeningThz: number): Promise<SpectrumResponse> {
    return this.post<SpectrumResponse>('/api/spectrum', 'spectrum', {
      species, temperature_k: temperatureK, mode, broadening_thz: broadeningThz,
    })
  }

  cacheSize(): number {
    return this.cache.size
  }
}

export function debounce<A extends unknown[]>(fn: (...args: A) => void,
                                              waitMs = 150): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer)
    timer = setTimeout(() => fn(...args), waitMs)
  }
}
