"""Stress -> strain -> spectrum conversion pipeline.

Takes a measured zero-stress spectrum (ZPL wavelength plus the ground and
excited zero-stress splittings), a uniaxial stress in the diamond frame,
and produces: strain tensors in both frames, the deformed defect
geometry, splitting-versus-stress curves, the ZPL shift, and the
four-line spectrum evolution.  Orbital couplings run through the
quenched two-doublet model.
"""

from dataclasses import dataclass
import math

import numpy as np

from .constants import (A0_DIAMOND_ANGSTROM, GHZ_PER_MEV,
                        thz_to_wavelength_nm, wavelength_nm_to_thz)
from . import elasticity as el
from .hamiltonian import load_params
from .quench import refined_factors


@dataclass
class ScubedRequest:
    zpl_nm: float
    ground_splitting_ghz: float
    excited_splitting_ghz: float
    stress_gpa: float
    stress_direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    species: str = "SiV"
    orientation: str = "111"
    n_points: int = 21

    def validate(self):
        if self.zpl_nm <= 0:
            raise ValueError("ZPL wavelength must be positive")
        if self.ground_splitting_ghz <= 0 or self.excited_splitting_ghz <= 0:
            raise ValueError("zero-stress splittings must be positive")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")
        norm = math.sqrt(sum(c * c for c in self.stress_direction))
        if norm == 0:
            raise ValueError("stress direction must be a nonzero vector")
        return self


# reference carbon positions (units of a0) around the defect; the upper
# three sit along the bond unit vectors e_i, the lower three are inverted
_CARBONS_A0 = np.array([
    [1.0 / math.sqrt(6.0), 0.0, 5.0 / (8.0 * math.sqrt(3.0))],
    [-0.5 / math.sqrt(6.0), 0.5 / math.sqrt(2.0), 5.0 / (8.0 * math.sqrt(3.0))],
    [-0.5 / math.sqrt(6.0), -0.5 / math.sqrt(2.0), 5.0 / (8.0 * math.sqrt(3.0))],
])
CARBON_POSITIONS_A0 = np.vstack([_CARBONS_A0, -_CARBONS_A0])


def atom_displacements(strain_xv: el.StrainTensor) -> dict:
    """Reference positions and strain-induced displacements (Angstrom) of
    the X atom and its six carbons, in the xv frame."""
    positions = CARBON_POSITIONS_A0 * A0_DIAMOND_ANGSTROM
    displacements = positions @ strain_xv.matrix.T
    return {
        "x_atom": {"position": [0.0, 0.0, 0.0], "displacement": [0.0, 0.0, 0.0]},
        "carbons": [{"position": p.tolist(), "displacement": d.tolist()}
                    for p, d in zip(positions, displacements)],
    }


@dataclass
class ScubedResult:
    strain_diamond: el.StrainTensor
    strain_xv: el.StrainTensor
    stress_gpa_grid: np.ndarray
    ground_splitting_ghz: np.ndarray
    excited_splitting_ghz: np.ndarray
    zpl_shift_ghz: np.ndarray
    zpl_nm: np.ndarray
    lines_thz: np.ndarray            # (n_points, 4): A1, A3, C1, C3
    atoms: dict
    quench_q_ground: float
    quench_q_excited: float

    def as_dict(self) -> dict:
        return {
            "strain_diamond": self.strain_diamond.matrix.tolist(),
            "strain_xv": self.strain_xv.matrix.tolist(),
            "stress_gpa_grid": self.stress_gpa_grid.tolist(),
            "ground_splitting_ghz": self.ground_splitting_ghz.tolist(),
            "excited_splitting_ghz": self.excited_splitting_ghz.tolist(),
            "zpl_shift_ghz": self.zpl_shift_ghz.tolist(),
            "zpl_nm": self.zpl_nm.tolist(),
            "lines_thz": self.lines_thz.tolist(),
            "line_labels": ["A1", "A3", "C1", "C3"],
            "atoms": self.atoms,
            "quench_q_ground": self.quench_q_ground,
            "quench_q_excited": self.quench_q_excited,
        }


def run_scubed(req: ScubedRequest, n_cut: int = 20) -> ScubedResult:
    """Evaluate the full stress-to-spectrum chain of a request."""
    req.validate()
    direction = np.asarray(req.stress_direction, dtype=float)
    direction = direction / np.linalg.norm(direction)

    stress = el.uniaxial_stress(req.stress_gpa, direction)
    strain_d = el.hooke_cubic(stress)
    strain_xv = el.diamond_to_xv(strain_d, req.orientation)

    params_g = load_params(req.species, "ground")
    params_e = load_params(req.species, "excited")
    susc_g = el.susceptibilities_for(params_g)
    susc_e = el.susceptibilities_for(params_e)
    q_g = refined_factors(params_g, n_cut).q_prime
    q_e = refined_factors(params_e, n_cut).q_prime

    gamma_g, _ = el.transverse_gamma(strain_xv, susc_g, q_g)
    gamma_e, _ = el.transverse_gamma(strain_xv, susc_e, q_e)
    zpl_slope_mev = el.zpl_shift_mev(strain_xv, susc_g, susc_e)

    d0_g = req.ground_splitting_ghz / GHZ_PER_MEV
    d0_e = req.excited_splitting_ghz / GHZ_PER_MEV
    zpl0_thz = wavelength_nm_to_thz(req.zpl_nm)

    scale = np.linspace(0.0, 1.0, req.n_points)
    split_g = np.hypot(d0_g, 2.0 * gamma_g * scale) * GHZ_PER_MEV
    split_e = np.hypot(d0_e, 2.0 * gamma_e * scale) * GHZ_PER_MEV
    zpl_shift_ghz = zpl_slope_mev * scale * GHZ_PER_MEV
    zpl_thz = zpl0_thz + zpl_shift_ghz / 1e3

    lines = np.empty((req.n_points, 4))
    for i in range(req.n_points):
        ge, gg = split_e[i] / 1e3, split_g[i] / 1e3   # THz
        lines[i] = (zpl_thz[i] - ge / 2 + gg / 2,     # A1
                    zpl_thz[i] - ge / 2 - gg / 2,     # A3
                    zpl_thz[i] + ge / 2 + gg / 2,     # C1
                    zpl_thz[i] + ge / 2 - gg / 2)     # C3

    return ScubedResult(
        strain_diamond=strain_d,
        strain_xv=strain_xv,
        stress_gpa_grid=scale * req.stress_gpa,
        ground_splitting_ghz=split_g,
        excited_splitting_ghz=split_e,
        zpl_shift_ghz=zpl_shift_ghz,
        zpl_nm=np.array([thz_to_wavelength_nm(f) for f in zpl_thz]),
        lines_thz=lines,
        atoms=atom_displacements(strain_xv),
        quench_q_ground=q_g,
        quench_q_excited=q_e,
    )
