import assert from 'node:assert/strict';
import { test } from 'node:test';
import { extractRenderedValues, renderDeformation, renderLineSpectrum, renderSpectrumPanel, renderSplittingPanel, renderStrainTables, renderZplPanel, spectrumCsv, } from '../src/panels.js';
/** Fixture shaped like a real service response (values arbitrary but with
 * full double precision to make pass-through failures visible). */
const SCUBED = {
    strain_diamond: [
        [3.0883720930232557e-4, 0, 0],
        [0, 3.0883720930232557e-4, 0],
        [0, 0, -1.1178123509928672e-3],
    ],
    strain_xv: [
        [-3.5491234567890123e-4, 1.2e-5, 7.7e-5],
        [1.2e-5, -3.54e-4, -9.1e-6],
        [7.7e-5, -9.1e-6, 2.08e-4],
    ],
    stress_gpa_grid: [0, 0.25, 0.5],
    ground_splitting_ghz: [50, 53.123456789012345, 61.98765432109876],
    excited_splitting_ghz: [260, 261.5, 265.4321098765432],
    zpl_shift_ghz: [0, -12.345678901234567, -24.691357802469134],
    zpl_nm: [737, 737.0223456789012, 737.0446913578024],
    lines_thz: [
        [406.55, 406.5, 406.85, 406.8],
        [406.54, 406.49, 406.86, 406.81],
        [406.5213456789, 406.4598765432, 406.8934567891, 406.8312345678],
    ],
    line_labels: ['A1', 'A3', 'C1', 'C3'],
    atoms: {
        x_atom: { position: [0, 0, 0], displacement: [0, 0, 0] },
        carbons: [
            { position: [1.456, 0, 1.287], displacement: [4.5e-4, 0, -1.6e-3] },
            { position: [-0.728, 1.261, 1.287], displacement: [-2.2e-4, 3.9e-4, -1.6e-3] },
            { position: [-0.728, -1.261, 1.287], displacement: [-2.2e-4, -3.9e-4, -1.6e-3] },
            { position: [-1.456, 0, -1.287], displacement: [-4.5e-4, 0, 1.6e-3] },
            { position: [0.728, -1.261, -1.287], displacement: [2.2e-4, -3.9e-4, 1.6e-3] },
            { position: [0.728, 1.261, -1.287], displacement: [2.2e-4, 3.9e-4, 1.6e-3] },
        ],
    },
    quench_q_ground: 0.6487654321098765,
    quench_q_excited: 0.5623456789012345,
    numerical_error: false,
};
const SPECTRUM = {
    species: 'SnV',
    mode: 'PL',
    temperature_k: 100,
    broadening_thz: 0,
    lines: [
        { label: 'A1', energy_thz: 484.1, intensity: 1, polarization: 'linear-z', initial: 'A', final: '1' },
        { label: 'A3', energy_thz: 483.1752373479304, intensity: 0.16118932777598988, polarization: 'circular-+', initial: 'A', final: '3' },
        { label: 'C1', energy_thz: 486.9068234, intensity: 0.0489, polarization: 'circular--', initial: 'C', final: '1' },
    ],
    numerical_error: false,
};
test('strain tables pass every tensor entry through exactly', () => {
    const html = renderStrainTables(SCUBED);
    const rendered = extractRenderedValues(html);
    const expected = [...SCUBED.strain_diamond.flat(), ...SCUBED.strain_xv.flat()]
        .map(String);
    assert.deepEqual(rendered, expected);
});
test('splitting panel readouts equal the service numbers exactly', () => {
    const html = renderSplittingPanel(SCUBED);
    const rendered = extractRenderedValues(html);
    assert.deepEqual(rendered, [
        String(SCUBED.ground_splitting_ghz.at(-1)),
        String(SCUBED.excited_splitting_ghz.at(-1)),
    ]);
    // and they parse back to the identical doubles
    assert.equal(Number(rendered[0]), SCUBED.ground_splitting_ghz.at(-1));
});
test('zpl panel passes wavelength and shift through exactly', () => {
    const rendered = extractRenderedValues(renderZplPanel(SCUBED));
    assert.deepEqual(rendered, [
        String(SCUBED.zpl_nm.at(-1)),
        String(SCUBED.zpl_shift_ghz.at(-1)),
    ]);
});
test('line spectrum renders the selected stress step verbatim', () => {
    const html = renderLineSpectrum(SCUBED, 2);
    const rendered = extractRenderedValues(html);
    assert.deepEqual(rendered, SCUBED.lines_thz[2].map(String));
    assert.ok(html.includes('data-label="A1"'));
    // slider positions past the end clamp to the last step
    const clamped = renderLineSpectrum(SCUBED, 99);
    assert.deepEqual(extractRenderedValues(clamped), SCUBED.lines_thz[2].map(String));
});
test('deformation panel carries exact displacement vectors', () => {
    const html = renderDeformation(SCUBED);
    const rendered = extractRenderedValues(html);
    const expected = [SCUBED.atoms.x_atom, ...SCUBED.atoms.carbons]
        .map((a) => a.displacement.map(String).join(','));
    assert.deepEqual(rendered, expected);
    assert.equal((html.match(/<circle/g) ?? []).length, 7);
});
test('spectrum sticks carry exact intensities and energies', () => {
    const html = renderSpectrumPanel(SPECTRUM);
    const rendered = extractRenderedValues(html);
    assert.deepEqual(rendered, SPECTRUM.lines.map((l) => String(l.intensity)));
    for (const line of SPECTRUM.lines) {
        assert.ok(html.includes(`data-energy="${String(line.energy_thz)}"`));
    }
    assert.ok(!html.includes('envelope'), 'no envelope at zero broadening');
});
test('broadening adds a display envelope without touching the sticks', () => {
    const broadened = renderSpectrumPanel({ ...SPECTRUM, broadening_thz: 0.2 });
    assert.ok(broadened.includes('envelope'));
    assert.deepEqual(extractRenderedValues(broadened), SPECTRUM.lines.map((l) => String(l.intensity)));
});
test('csv download equals the service response verbatim', () => {
    const csv = spectrumCsv(SPECTRUM);
    const rows = csv.trim().split('\n');
    assert.equal(rows[0], 'label,energy_thz,intensity,polarization');
    assert.equal(rows.length, 1 + SPECTRUM.lines.length);
    for (const [i, line] of SPECTRUM.lines.entries()) {
        const cells = rows[i + 1].split(',');
        assert.equal(cells[0], line.label);
        assert.equal(Number(cells[1]), line.energy_thz);
        assert.equal(Number(cells[2]), line.intensity);
        assert.equal(cells[3], line.polarization);
    }
});
test('empty spectrum renders a placeholder', () => {
    const html = renderSpectrumPanel({ ...SPECTRUM, lines: [] });
    assert.ok(html.includes('no lines'));
});
