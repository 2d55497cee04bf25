/** UI-parity scenarios: with a mocked service returning canned JSON for
 * three preset scenarios, every number the panels surface must equal the
 * response value exactly, and no physics may be computed locally (the
 * client is the only code path, and it is fully intercepted here).
 */

import assert from 'node:assert/strict'
import { test } from 'node:test'

import { ApiClient } from '../src/api.js'
import {
  extractRenderedValues, renderLineSpectrum, renderSplittingPanel,
  renderStrainTables, renderZplPanel,
} from '../src/panels.js'
import type { ScubedRequest, ScubedResponse } from '../src/types.js'

function scenario(seed: number, n: number): ScubedResponse {
  // irrational-ish doubles: any local recomputation or rounding would miss
  const grid = Array.from({ length: n }, (_, i) => (i * seed) / Math.PI)
  const curve = (k: number) => grid.map((g) => Math.sqrt(seed * seed + k * g * g))
  return {
    strain_diamond: [[seed * 1e-4, 0, 0], [0, -seed * 1.1e-5, 0], [0, 0, 2e-6]],
    strain_xv: [[seed * 0.7e-4, 1e-6, 0], [1e-6, 2e-6, 0], [0, 0, -1e-6]],
    stress_gpa_grid: grid,
    ground_splitting_ghz: curve(4),
    excited_splitting_ghz: curve(9),
    zpl_shift_ghz: grid.map((g) => -g * Math.E),
    zpl_nm: grid.map((g) => 737 + g / 7),
    lines_thz: grid.map((g) => [406 + g, 406 - g, 407 + g, 407 - g]),
    line_labels: ['A1', 'A3', 'C1', 'C3'],
    atoms: {
      x_atom: { position: [0, 0, 0], displacement: [0, 0, 0] },
      carbons: [[1, 0, 1], [-0.5, 0.87, 1], [-0.5, -0.87, 1],
                [-1, 0, -1], [0.5, -0.87, -1], [0.5, 0.87, -1]].map((p, i) => ({
        position: p as [number, number, number],
        displacement: [seed * 1e-5 * (i + 1), -seed * 2e-5, seed * 3e-5] as [number, number, number],
      })),
    },
    quench_q_ground: 0.65,
    quench_q_excited: 0.56,
    numerical_error: false,
  }
}

const SCENARIOS: Array<{ body: ScubedRequest; resp: ScubedResponse }> = [
  {
    body: { zpl_nm: 737, ground_splitting_ghz: 50, excited_splitting_ghz: 260,
            stress_gpa: 0, stress_direction: [0, 0, 1], species: 'SiV',
            orientation: '111', n_points: 5 },
    resp: scenario(3, 5),
  },
  {
    body: { zpl_nm: 619.3, ground_splitting_ghz: 850, excited_splitting_ghz: 3000,
            stress_gpa: 0.5, stress_direction: [0, 0, 1], species: 'SnV',
            orientation: '111', n_points: 7 },
    resp: scenario(5, 7),
  },
  {
    body: { zpl_nm: 602, ground_splitting_ghz: 170, excited_splitting_ghz: 1120,
            stress_gpa: 1, stress_direction: [1, 1, 0], species: 'GeV',
            orientation: '1-1-1', n_points: 9 },
    resp: scenario(7, 9),
  },
]

test('three preset scenarios render as exact pass-through', async () => {
  for (const { body, resp } of SCENARIOS) {
    let served: unknown = null
    const client = new ApiClient('http://svc', async (_url, init) => {
      served = JSON.parse(String(init?.body))
      return { ok: true, status: 200, json: async () => resp } as unknown as Response
    })
    const got = await client.scubed(body)
    // the client sent exactly the inputs and returned exactly the payload
    assert.deepEqual(served, body)
    assert.deepEqual(got, resp)

    const tensors = extractRenderedValues(renderStrainTables(got))
    assert.deepEqual(tensors,
      [...resp.strain_diamond.flat(), ...resp.strain_xv.flat()].map(String))

    const splits = extractRenderedValues(renderSplittingPanel(got))
    assert.equal(splits[0], String(resp.ground_splitting_ghz.at(-1)))
    assert.equal(splits[1], String(resp.excited_splitting_ghz.at(-1)))

    const zpl = extractRenderedValues(renderZplPanel(got))
    assert.equal(zpl[0], String(resp.zpl_nm.at(-1)))
    assert.equal(zpl[1], String(resp.zpl_shift_ghz.at(-1)))

    for (let step = 0; step < resp.lines_thz.length; step++) {
      const lines = extractRenderedValues(renderLineSpectrum(got, step))
      assert.deepEqual(lines, resp.lines_thz[step]!.map(String))
    }
  }
})

test('identical slider positions re-render identical markup (idempotent)', async () => {
  const { body, resp } = SCENARIOS[1]!
  const client = new ApiClient('http://svc', async () =>
    ({ ok: true, status: 200, json: async () => resp }) as unknown as Response)
  const a = renderSplittingPanel(await client.scubed(body))
  const b = renderSplittingPanel(await client.scubed(body))
  assert.equal(a, b)
})
