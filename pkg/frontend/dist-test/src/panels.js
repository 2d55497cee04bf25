/** Pure rendering: service JSON in, HTML/SVG strings out.
 *
 * Numeric readouts are serialized with String(value) so the display is an
 * exact pass-through of the service response; plot coordinates are scaled
 * for geometry but each datum also carries its exact value in a data-value
 * attribute.
 */
const SVG_W = 460;
const SVG_H = 300;
const PAD = 42;
export function esc(text) {
    return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;');
}
function linscale(lo, hi, out0, out1) {
    const span = hi - lo || 1;
    return (v) => out0 + ((v - lo) / span) * (out1 - out0);
}
export function renderStrainTables(resp) {
    const table = (name, rows) => {
        const body = rows
            .map((row) => `<tr>${row.map((v) => `<td data-value="${String(v)}">${String(v)}</td>`).join('')}</tr>`)
            .join('');
        return `<figure class="tensor"><figcaption>${esc(name)}</figcaption>` +
            `<table>${body}</table></figure>`;
    };
    return table('strain (diamond frame)', resp.strain_diamond) +
        table('strain (defect frame)', resp.strain_xv);
}
/** Orthographic projection used for the 2.5D atom view. */
export function project(p) {
    const [x = 0, y = 0, z = 0] = p;
    return [x - 0.42 * y, -z + 0.28 * y];
}
export function renderDeformation(resp, exaggeration = 2000) {
    const atoms = [resp.atoms.x_atom, ...resp.atoms.carbons];
    const pts = atoms.map((a) => project(a.position));
    const xs = pts.map((p) => p[0]);
    const ys = pts.map((p) => p[1]);
    const sx = linscale(Math.min(...xs) - 0.8, Math.max(...xs) + 0.8, PAD, SVG_W - PAD);
    const sy = linscale(Math.min(...ys) - 0.8, Math.max(...ys) + 0.8, SVG_H - PAD, PAD);
    const parts = [];
    atoms.forEach((atom, i) => {
        const [px, py] = project(atom.position);
        const [dx, dy] = project(atom.displacement.map((d) => d * exaggeration));
        const cls = i === 0 ? 'atom-x' : 'atom-c';
        const exact = atom.displacement.map(String).join(',');
        parts.push(`<line x1="${sx(px)}" y1="${sy(py)}" x2="${sx(px + dx)}" y2="${sy(py + dy)}" class="disp"/>`, `<circle cx="${sx(px)}" cy="${sy(py)}" r="${i === 0 ? 14 : 9}" class="${cls}" ` +
            `data-value="${exact}"/>`);
    });
    return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img" aria-label="defect deformation">` +
        parts.join('') + '</svg>';
}
export function renderSplittingPanel(resp) {
    const grid = resp.stress_gpa_grid;
    const lo = Math.min(...grid);
    const hi = Math.max(...grid);
    const sx = linscale(lo, hi, PAD, SVG_W - PAD);
    const all = [...resp.ground_splitting_ghz, ...resp.excited_splitting_ghz];
    const sy = linscale(Math.min(...all), Math.max(...all), SVG_H - PAD, PAD);
    const poly = (values, cls) => `<polyline class="${cls}" fill="none" points="` +
        values.map((v, i) => `${sx(grid[i] ?? 0)},${sy(v)}`).join(' ') + '"/>';
    const gLast = resp.ground_splitting_ghz[resp.ground_splitting_ghz.length - 1];
    const eLast = resp.excited_splitting_ghz[resp.excited_splitting_ghz.length - 1];
    return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img" aria-label="splittings vs stress">` +
        poly(resp.ground_splitting_ghz, 'curve-ground') +
        poly(resp.excited_splitting_ghz, 'curve-excited') +
        '</svg>' +
        `<p class="readout">ground <b data-value="${String(gLast)}">${String(gLast)}</b> GHz, ` +
        `excited <b data-value="${String(eLast)}">${String(eLast)}</b> GHz at full stress</p>`;
}
export function renderZplPanel(resp) {
    const nm = resp.zpl_nm[resp.zpl_nm.length - 1];
    const shift = resp.zpl_shift_ghz[resp.zpl_shift_ghz.length - 1];
    const grid = resp.stress_gpa_grid;
    const sx = linscale(Math.min(...grid), Math.max(...grid), PAD, SVG_W - PAD);
    const sy = linscale(Math.min(...resp.zpl_shift_ghz), Math.max(...resp.zpl_shift_ghz) || 1, SVG_H - PAD, PAD);
    return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img" aria-label="zpl shift vs stress">` +
        `<polyline class="curve-zpl" fill="none" points="` +
        resp.zpl_shift_ghz.map((v, i) => `${sx(grid[i] ?? 0)},${sy(v)}`).join(' ') + '"/></svg>' +
        `<p class="readout">ZPL <b data-value="${String(nm)}">${String(nm)}</b> nm ` +
        `(shift <b data-value="${String(shift)}">${String(shift)}</b> GHz)</p>`;
}
/** Four-line spectrum at the selected stress step of the scubed response. */
export function renderLineSpectrum(resp, step) {
    const idx = Math.max(0, Math.min(step, resp.lines_thz.length - 1));
    const lines = resp.lines_thz[idx] ?? [];
    const labels = resp.line_labels;
    const lo = Math.min(...lines);
    const hi = Math.max(...lines);
    const margin = (hi - lo || 1) * 0.15;
    const sx = linscale(lo - margin, hi + margin, PAD, SVG_W - PAD);
    const marks = lines.map((f, i) => `<line x1="${sx(f)}" y1="${SVG_H - PAD}" x2="${sx(f)}" y2="${PAD}" class="zpl-line" ` +
        `data-label="${esc(labels[i] ?? '')}" data-value="${String(f)}"/>` +
        `<text x="${sx(f)}" y="${PAD - 6}" text-anchor="middle">${esc(labels[i] ?? '')}</text>`);
    return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img" aria-label="zpl lines">` +
        marks.join('') + '</svg>';
}
function lorentzian(x, x0, width) {
    const half = width / 2;
    return (half * half) / ((x - x0) * (x - x0) + half * half);
}
/** PL/PLE line list with optional display-only Lorentzian envelope. */
export function renderSpectrumPanel(resp) {
    if (resp.lines.length === 0)
        return '<p class="readout">no lines</p>';
    const energies = resp.lines.map((l) => l.energy_thz);
    const lo = Math.min(...energies);
    const hi = Math.max(...energies);
    const margin = (hi - lo || 1) * 0.06;
    const sx = linscale(lo - margin, hi + margin, PAD, SVG_W - PAD);
    const sy = linscale(0, 1, SVG_H - PAD, PAD);
    const sticks = resp.lines.map((l) => `<line x1="${sx(l.energy_thz)}" y1="${sy(0)}" x2="${sx(l.energy_thz)}" ` +
        `y2="${sy(l.intensity)}" class="pol-${esc(l.polarization)}" ` +
        `data-label="${esc(l.label)}" data-value="${String(l.intensity)}" ` +
        `data-energy="${String(l.energy_thz)}"/>`);
    let envelope = '';
    if (resp.broadening_thz > 0) {
        const n = 240;
        const pts = [];
        for (let i = 0; i <= n; i++) {
            const x = lo - margin + ((hi - lo + 2 * margin) * i) / n;
            let y = 0;
            for (const line of resp.lines) {
                y += line.intensity * lorentzian(x, line.energy_thz, resp.broadening_thz);
            }
            pts.push(`${sx(x)},${sy(Math.min(y, 1))}`);
        }
        envelope = `<polyline class="envelope" fill="none" points="${pts.join(' ')}"/>`;
    }
    return `<svg viewBox="0 0 ${SVG_W} ${SVG_H}" role="img" aria-label="${resp.mode} spectrum">` +
        sticks.join('') + envelope + '</svg>';
}
/** CSV export of a spectrum response: exact pass-through of the values. */
export function spectrumCsv(resp) {
    const header = 'label,energy_thz,intensity,polarization';
    const rows = resp.lines.map((l) => `${l.label},${String(l.energy_thz)},${String(l.intensity)},${l.polarization}`);
    return [header, ...rows].join('\n') + '\n';
}
/** All exact values surfaced by a rendered panel, in document order. */
export function extractRenderedValues(html) {
    const out = [];
    const re = /data-value="([^"]*)"/g;
    let match;
    while ((match = re.exec(html)) !== null) {
        out.push(match[1] ?? '');
    }
    return out;
}
