/** Explorer input state and client-side validation.
 *
 * Validation mirrors the service schema so bad inputs never leave the
 * browser; the service remains the single source of truth for physics.
 */
export const DEFAULT_STATE = {
    zplNm: 737.0,
    groundSplittingGhz: 50.0,
    excitedSplittingGhz: 260.0,
    stressGpa: 0.5,
    direction: [0, 0, 1],
    species: 'SiV',
    orientation: '111',
    nPoints: 21,
    broadeningThz: 0,
    temperatureK: 100,
};
export function validate(state) {
    const errors = [];
    if (!(state.zplNm > 0) || !Number.isFinite(state.zplNm)) {
        errors.push({ field: 'zplNm', message: 'ZPL wavelength must be a positive number of nm' });
    }
    if (!(state.groundSplittingGhz > 0)) {
        errors.push({ field: 'groundSplittingGhz', message: 'ground splitting must be positive GHz' });
    }
    if (!(state.excitedSplittingGhz > 0)) {
        errors.push({ field: 'excitedSplittingGhz', message: 'excited splitting must be positive GHz' });
    }
    if (!Number.isFinite(state.stressGpa)) {
        errors.push({ field: 'stressGpa', message: 'stress must be a finite number of GPa' });
    }
    const norm = Math.hypot(...state.direction);
    if (!(norm > 0) || state.direction.some((c) => !Number.isFinite(c))) {
        errors.push({ field: 'direction', message: 'stress direction must be a nonzero vector' });
    }
    if (!Number.isInteger(state.nPoints) || state.nPoints < 2 || state.nPoints > 201) {
        errors.push({ field: 'nPoints', message: 'curve resolution must be an integer in [2, 201]' });
    }
    if (!(state.temperatureK > 0)) {
        errors.push({ field: 'temperatureK', message: 'temperature must be positive K' });
    }
    if (state.broadeningThz < 0) {
        errors.push({ field: 'broadeningThz', message: 'broadening cannot be negative' });
    }
    return errors;
}
/** Miller-index text like "0 0 1", "1,1,0" or "111" -> vector. */
export function parseDirection(text) {
    const cleaned = text.trim();
    let parts;
    if (/^-?\d(\s*-?\d){2}$/.test(cleaned.replace(/[,;]/g, ' ')) && !cleaned.includes(' ')
        && !cleaned.includes(',') && cleaned.replace('-', '').length === 3) {
        parts = cleaned.split('').map(Number);
    }
    else {
        parts = cleaned.split(/[\s,;]+/).map(Number);
    }
    if (parts.length !== 3 || parts.some((p) => !Number.isFinite(p)))
        return null;
    if (parts.every((p) => p === 0))
        return null;
    return [parts[0], parts[1], parts[2]];
}
/** Polar/azimuthal angles in degrees -> unit vector. */
export function directionFromAngles(polarDeg, azimuthDeg) {
    const th = (polarDeg * Math.PI) / 180;
    const ph = (azimuthDeg * Math.PI) / 180;
    return [Math.sin(th) * Math.cos(ph), Math.sin(th) * Math.sin(ph), Math.cos(th)];
}
export function toScubedRequest(state) {
    return {
        zpl_nm: state.zplNm,
        ground_splitting_ghz: state.groundSplittingGhz,
        excited_splitting_ghz: state.excitedSplittingGhz,
        stress_gpa: state.stressGpa,
        stress_direction: state.direction,
        species: state.species,
        orientation: state.orientation,
        n_points: state.nPoints,
    };
}
/** Canonical cache key: identical inputs hit the client cache. */
export function requestKey(body) {
    return JSON.stringify(body, Object.keys(body).sort());
}
