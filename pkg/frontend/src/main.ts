/** DOM wiring for the explorer: input panel, stress slider, and the four
 * result panels (deformation, strain tensors, splittings/ZPL, spectrum).
 *
 * All physics numbers round-trip through the service; this file only
 * moves JSON into the render functions.  The base URL comes from the
 * `data-api` attribute on #app or defaults to same-origin.
 */

import { ApiClient, ServiceError, debounce } from './api.js'
import {
  renderDeformation, renderLineSpectrum, renderSpectrumPanel,
  renderSplittingPanel, renderStrainTables, renderZplPanel, spectrumCsv,
} from './panels.js'
import {
  DEFAULT_STATE, ExplorerState, parseDirection, toScubedRequest, validate,
} from './state.js'
import type { ScubedResponse, Species, SpectrumResponse } from './types.js'

const app = document.querySelector<HTMLDivElement>('#app')
if (!app) throw new Error('missing #app container')

const api = new ApiClient(app.dataset.api ?? '')
const state: ExplorerState = { ...DEFAULT_STATE }
let lastScubed: ScubedResponse | null = null
let lastSpectrum: SpectrumResponse | null = null

app.innerHTML = `
  <main class="layout">
    <section class="panel inputs">
      <h1>XV strain explorer</h1>
      <p class="banner hidden" id="banner"></p>
      <label>system
        <select id="species">
          <option>SiV</option><option>GeV</option><option>SnV</option><option>PbV</option>
        </select>
      </label>
      <label>ZPL wavelength (nm) <input id="zpl" type="number" step="0.1" value="${DEFAULT_STATE.zplNm}"></label>
      <label>ground splitting (GHz) <input id="gsplit" type="number" step="1" value="${DEFAULT_STATE.groundSplittingGhz}"></label>
      <label>excited splitting (GHz) <input id="esplit" type="number" step="1" value="${DEFAULT_STATE.excitedSplittingGhz}"></label>
      <label>stress direction (Miller) <input id="direction" value="0 0 1"></label>
      <label>orientation
        <select id="orientation">
          <option>111</option><option>1-1-1</option><option>-11-1</option><option>-1-11</option>
        </select>
      </label>
      <label>max stress (GPa) <input id="stress" type="number" step="0.05" value="${DEFAULT_STATE.stressGpa}"></label>
      <label>stress slider
        <input id="slider" type="range" min="0" max="20" value="20">
      </label>
      <label>temperature (K) <input id="temp" type="number" step="5" value="${DEFAULT_STATE.temperatureK}"></label>
      <label>broadening (THz) <input id="broadening" type="number" step="0.05" value="0"></label>
      <p class="errors" id="errors"></p>
    </section>
    <section class="panel" id="deformation"><h2>deformation</h2><div class="body"></div></section>
    <section class="panel" id="tensors"><h2>strain tensors</h2><div class="body"></div></section>
    <section class="panel" id="splittings"><h2>splittings vs stress</h2><div class="body"></div></section>
    <section class="panel" id="zpl"><h2>ZPL shift</h2><div class="body"></div></section>
    <section class="panel" id="zpl-lines"><h2>line positions</h2><div class="body"></div></section>
    <section class="panel" id="spectrum">
      <h2>PL spectrum</h2><div class="body"></div>
      <button id="download">download CSV</button>
    </section>
  </main>`

const $ = <T extends HTMLElement>(sel: string) => app.querySelector<T>(sel)!
const banner = $('#banner')
const errorsEl = $('#errors')

function showBanner(message: string) {
  banner.textContent = message
  banner.classList.remove('hidden')
}

function setBody(id: string, html: string) {
  const panel = $(`#${id} .body`)
  panel.innerHTML = html
}

function renderScubed(resp: ScubedResponse) {
  lastScubed = resp
  const step = Number(($('#slider') as HTMLInputElement).value)
  setBody('deformation', renderDeformation(resp))
  setBody('tensors', renderStrainTables(resp))
  setBody('splittings', renderSplittingPanel(resp))
  setBody('zpl', renderZplPanel(resp))
  setBody('zpl-lines', renderLineSpectrum(resp, step))
}

async function refreshScubed() {
  const problems = validate(state)
  errorsEl.textContent = problems.map((p) => p.message).join('; ')
  if (problems.length > 0) return            // nothing leaves the browser
  try {
    const resp = await api.scubed(toScubedRequest(state))
    banner.classList.add('hidden')
    renderScubed(resp)
  } catch (err) {
    if ((err as Error).name === 'AbortError') return
    showBanner(err instanceof ServiceError
      ? `service error ${err.status}: ${err.message}`
      : 'service unreachable; showing last good result')
  }
}

async function refreshSpectrum() {
  try {
    const resp = await api.spectrum(state.species, state.temperatureK, 'PL',
                                    state.broadeningThz)
    lastSpectrum = resp
    setBody('spectrum', renderSpectrumPanel(resp))
  } catch (err) {
    if ((err as Error).name === 'AbortError') return
    showBanner('spectrum request failed')
  }
}

const debouncedScubed = debounce(refreshScubed, 150)
const debouncedSpectrum = debounce(refreshSpectrum, 150)

function bindNumber(id: string, apply: (v: number) => void) {
  $(`#${id}`).addEventListener('input', (ev) => {
    apply(Number((ev.target as HTMLInputElement).value))
    debouncedScubed()
  })
}

bindNumber('zpl', (v) => { state.zplNm = v })
bindNumber('gsplit', (v) => { state.groundSplittingGhz = v })
bindNumber('esplit', (v) => { state.excitedSplittingGhz = v })
bindNumber('stress', (v) => { state.stressGpa = v })
bindNumber('temp', (v) => { state.temperatureK = v; debouncedSpectrum() })
bindNumber('broadening', (v) => { state.broadeningThz = v; debouncedSpectrum() })

$('#direction').addEventListener('input', (ev) => {
  const parsed = parseDirection((ev.target as HTMLInputElement).value)
  if (parsed === null) {
    errorsEl.textContent = 'stress direction must be three Miller indices'
    return
  }
  state.direction = parsed
  debouncedScubed()
})

$('#species').addEventListener('change', (ev) => {
  state.species = (ev.target as HTMLSelectElement).value as Species
  debouncedScubed()
  debouncedSpectrum()
})

$('#orientation').addEventListener('change', (ev) => {
  state.orientation = (ev.target as HTMLSelectElement).value
  debouncedScubed()
})

$('#slider').addEventListener('input', () => {
  if (lastScubed) {
    const step = Number(($('#slider') as HTMLInputElement).value)
    setBody('zpl-lines', renderLineSpectrum(lastScubed, step))
  }
})

$('#download').addEventListener('click', () => {
  if (!lastSpectrum) return
  const blob = new Blob([spectrumCsv(lastSpectrum)], { type: 'text/csv' })
  const a = document.createElement('a')
  a.href = URL.createObjectURL(blob)
  a.download = `${state.species}_pl.csv`
  a.click()
  URL.revokeObjectURL(a.href)
})

const slider = $('#slider') as HTMLInputElement
slider.max = String(state.nPoints - 1)
slider.value = slider.max

void api.health().then((ok) => {
  if (!ok) showBanner('compute service is not reachable')
})
void refreshScubed()
void refreshSpectrum()
