/** Wire types mirroring the compute service JSON bodies. */

export type Species = 'SiV' | 'GeV' | 'SnV' | 'PbV'

export interface ScubedRequest {
  zpl_nm: number
  ground_splitting_ghz: number
  excited_splitting_ghz: number
  stress_gpa: number
  stress_direction: [number, number, number]
  species: Species
  orientation: string
  n_points: number
}

export interface AtomRecord {
  position: [number, number, number]
  displacement: [number, number, number]
}

export interface ScubedResponse {
  strain_diamond: number[][]
  strain_xv: number[][]
  stress_gpa_grid: number[]
  ground_splitting_ghz: number[]
  excited_splitting_ghz: number[]
  zpl_shift_ghz: number[]
  zpl_nm: number[]
  lines_thz: number[][]
  line_labels: string[]
  atoms: { x_atom: AtomRecord; carbons: AtomRecord[] }
  quench_q_ground: number
  quench_q_excited: number
  numerical_error: boolean
}

export interface SpectrumLine {
  label: string
  energy_thz: number
  intensity: number
  polarization: string
  initial: string
  final: string
}

export interface SpectrumResponse {
  species: Species
  mode: 'PL' | 'PLE'
  temperature_k: number
  broadening_thz: number
  lines: SpectrumLine[]
  numerical_error: boolean
}

export interface Presets {
  species: Species[]
  manifold_params: Record<string, Record<string, Record<string, number | string>>>
  zpl_reference_thz: Record<string, number>
}
