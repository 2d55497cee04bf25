"""Stress and strain tensor algebra for the diamond host and the defect
frame: uniaxial stress, generalized Hooke's law for cubic crystals,
frame rotations, the strain -> (Q0, Qx, Qy) displacement projection,
strain susceptibilities and the cantilever voltage-to-strain estimator.

Frames: "diamond" is the cubic crystal frame; "xv" has z along the
defect <111> axis and y along a perpendicular <110> direction.
"""

from dataclasses import dataclass
import math

import numpy as np

from .constants import (A0_DIAMOND_ANGSTROM, C11_GPA, C12_GPA, C44_GPA,
                        EPSILON0_F_PER_M, THZ_PER_MEV,
                        coupling_f_ev_per_angstrom, MASS_DA)

SQRT57 = math.sqrt(57.0)
SQRT114 = math.sqrt(114.0)


@dataclass
class StressTensor:
    matrix: np.ndarray          # GPa, symmetric 3x3
    frame: str = "diamond"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.shape != (3, 3) or not np.array_equal(self.matrix, self.matrix.T):
            raise ValueError("stress tensor must be a symmetric 3x3 matrix")


@dataclass
class StrainTensor:
    matrix: np.ndarray          # dimensionless, symmetric 3x3
    frame: str = "diamond"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.shape != (3, 3) or not np.allclose(self.matrix, self.matrix.T, atol=0):
            raise ValueError("strain tensor must be a symmetric 3x3 matrix")


def uniaxial_stress(magnitude_gpa: float, direction, frame: str = "diamond") -> StressTensor:
    """sigma_ij = S a_i a_j for a unit direction vector a."""
    a = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(a) - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, |a| = {np.linalg.norm(a)}")
    return StressTensor(magnitude_gpa * np.outer(a, a), frame)


def _voigt(t: np.ndarray) -> np.ndarray:
    return np.array([t[0, 0], t[1, 1], t[2, 2], t[0, 1], t[1, 2], t[2, 0]])


def _unvoigt(v: np.ndarray) -> np.ndarray:
    return np.array([[v[0], v[3], v[5]],
                     [v[3], v[1], v[4]],
                     [v[5], v[4], v[2]]])


def cubic_matrix(c11: float, c12: float, c44: float) -> np.ndarray:
    m = np.zeros((6, 6))
    m[:3, :3] = c12
    np.fill_diagonal(m[:3, :3], c11)
    m[3:, 3:] = np.diag([c44] * 3)
    return m


def hooke_cubic(stress: StressTensor, c11: float = C11_GPA, c12: float = C12_GPA,
                c44: float = C44_GPA, convention: str = "compliance") -> StrainTensor:
    """Strain from stress for a cubic crystal.

    convention="compliance" (default) inverts the stiffness matrix built
    from (c11, c12, c44); it reproduces the transverse-contraction ratio
    eps_xx = -c12/(c11+c12) eps_yy under uniaxial stress.
    convention="as-printed" multiplies the 6x6 matrix of (c11, c12, c44)
    onto the stress vector directly; kept for comparison with sources
    that write the law that way.
    """
    if stress.frame != "diamond":
        raise ValueError("Hooke's law is applied in the diamond frame")
    sig = _voigt(stress.matrix)
    if convention == "compliance":
        normal = np.linalg.solve(cubic_matrix(c11, c12, c44)[:3, :3], sig[:3])
        shear = sig[3:] / (2.0 * c44)      # tensor shear, sigma_ij = 2 c44 eps_ij
        eps_t = _unvoigt(np.concatenate([normal, shear]))
    elif convention == "as-printed":
        eps_t = _unvoigt(cubic_matrix(c11, c12, c44) @ sig)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return StrainTensor(eps_t, "diamond")


def rotate_frame(tensor, rotation: np.ndarray, new_frame: str):
    """T' = R T R^T with an orthogonal rotation matrix."""
    r = np.asarray(rotation, dtype=float)
    if np.linalg.norm(r @ r.T - np.eye(3)) > 1e-12:
        raise ValueError("rotation matrix is not orthogonal")
    rotated = r @ tensor.matrix @ r.T
    rotated = (rotated + rotated.T) / 2.0
    return type(tensor)(rotated, new_frame)


# the four possible <111> defect orientations; rows of each matrix are the
# xv-frame axes expressed in diamond coordinates (v_xv = R v_diamond)
def xv_rotation(orientation: str = "111") -> np.ndarray:
    axes = {
        "111": (1, 1, 1), "1-1-1": (1, -1, -1),
        "-11-1": (-1, 1, -1), "-1-11": (-1, -1, 1),
    }
    if orientation not in axes:
        raise KeyError(f"unknown orientation {orientation!r}; options {sorted(axes)}")
    z = np.array(axes[orientation], dtype=float) / math.sqrt(3.0)
    # y along the first perpendicular <110> direction
    for trial in ((1.0, -1.0, 0.0), (1.0, 1.0, 0.0), (0.0, 1.0, -1.0),
                  (0.0, 1.0, 1.0), (1.0, 0.0, -1.0), (1.0, 0.0, 1.0)):
        if abs(np.dot(trial, z)) < 1e-12:
            y = np.asarray(trial) / math.sqrt(2.0)
            break
    x = np.cross(y, z)
    return np.vstack([x, y, z])


def diamond_to_xv(tensor, orientation: str = "111"):
    return rotate_frame(tensor, xv_rotation(orientation), "xv")


def strain_to_q(strain: StrainTensor, a0: float = A0_DIAMOND_ANGSTROM):
    """Collective carbon displacements (Q0, Qx, Qy) in Angstrom from a
    strain tensor in the xv frame."""
    if strain.frame != "xv":
        raise ValueError("strain must be expressed in the xv frame")
    e = strain.matrix
    q0 = -25.0 / (4 * SQRT114) * a0 * e[2, 2] - 4.0 / SQRT114 * a0 * (e[0, 0] + e[1, 1])
    qx = -2.0 / SQRT57 * a0 * (e[0, 0] - e[1, 1]) - 10.0 / SQRT114 * a0 * e[0, 2]
    qy = 4.0 / SQRT57 * a0 * e[0, 1] - 10.0 / SQRT114 * a0 * e[1, 2]
    return q0, qx, qy


@dataclass
class Susceptibilities:
    """Linear strain-to-energy coefficients, meV per unit strain."""

    t_par: float
    t_perp: float
    d: float
    f: float
    f0_ev_per_a: float
    f_ev_per_a: float

    def in_phz(self) -> dict[str, float]:
        to_phz = THZ_PER_MEV / 1e3
        return {k: getattr(self, k) * to_phz for k in ("t_par", "t_perp", "d", "f")}


def susceptibilities_from_f(f0_ev_per_a: float, f_ev_per_a: float,
                            a0: float = A0_DIAMOND_ANGSTROM) -> Susceptibilities:
    """Susceptibilities from the electron-displacement coupling strengths:
    t_par = -25 F0 a0 / (4 sqrt114), t_perp = -4 F0 a0 / sqrt114,
    d = 2 F a0 / sqrt57, f = 10 F a0 / sqrt114 (converted to meV)."""
    ev_to_mev = 1e3
    return Susceptibilities(
        t_par=-25.0 / (4 * SQRT114) * f0_ev_per_a * a0 * ev_to_mev,
        t_perp=-4.0 / SQRT114 * f0_ev_per_a * a0 * ev_to_mev,
        d=2.0 / SQRT57 * f_ev_per_a * a0 * ev_to_mev,
        f=10.0 / SQRT114 * f_ev_per_a * a0 * ev_to_mev,
        f0_ev_per_a=f0_ev_per_a,
        f_ev_per_a=f_ev_per_a,
    )


def susceptibilities_for(params) -> Susceptibilities:
    """Susceptibilities converted from a manifold's (E_JT, hbar_omega),
    using the in-plane carbon mass in E_JT = F^2 / (2 m w^2) and
    F0 = sqrt(2) F."""
    f = coupling_f_ev_per_angstrom(params.e_jt_mev, params.hbar_omega_mev, MASS_DA["C"])
    return susceptibilities_from_f(math.sqrt(2.0) * f, f)


def strain_orbital_coefficients(strain: StrainTensor, susc: Susceptibilities):
    """Orbital-space coefficients of the strain Hamiltonian in meV:
    (common_shift, c_x, c_y) with H = shift*I + c_x tau_x + c_y tau_y.

    c_x multiplies tau_x (the rotated-frame image of sigma_z) and c_y
    multiplies tau_y (image of -sigma_x).
    """
    e = strain.matrix
    shift = susc.t_par * e[2, 2] + susc.t_perp * (e[0, 0] + e[1, 1])
    c_x = -(susc.d * (e[0, 0] - e[1, 1]) + susc.f * e[0, 2])
    c_y = -(-2.0 * susc.d * e[0, 1] + susc.f * e[1, 2])
    return shift, c_x, c_y


def strain_orbital_coefficients_via_q(strain: StrainTensor, susc: Susceptibilities):
    """Same coefficients built through the (Q0, Qx, Qy) projection and the
    electron-displacement couplings; agrees with the direct construction
    to machine precision."""
    q0, qx, qy = strain_to_q(strain)
    ev_to_mev = 1e3
    shift = susc.f0_ev_per_a * q0 * ev_to_mev
    c_x = susc.f_ev_per_a * qx * ev_to_mev
    c_y = susc.f_ev_per_a * qy * ev_to_mev
    return shift, c_x, c_y


def transverse_gamma(strain: StrainTensor, susc: Susceptibilities,
                     q_prime: float = 1.0):
    """Quenched transverse coupling gamma and its angle for the two-level
    strain model: gamma = q' sqrt(c_x^2 + c_y^2)."""
    _, c_x, c_y = strain_orbital_coefficients(strain, susc)
    return q_prime * math.hypot(c_x, c_y), math.atan2(c_y, c_x)


def zpl_shift_mev(strain: StrainTensor, susc_ground: Susceptibilities,
                  susc_excited: Susceptibilities) -> float:
    """Common-mode ZPL shift: difference of the manifold energy shifts."""
    e = strain.matrix
    dt_par = susc_excited.t_par - susc_ground.t_par
    dt_perp = susc_excited.t_perp - susc_ground.t_perp
    return dt_par * e[2, 2] + dt_perp * (e[0, 0] + e[1, 1])


@dataclass
class CantileverDims:
    """Rectangular cantilever and electrode geometry, micrometers."""

    x: float
    l: float
    y: float
    z: float
    h: float


def cantilever_strain(voltage_v: float, dims: CantileverDims,
                      c11_gpa: float = C11_GPA) -> float:
    """Longitudinal strain eps_xx at the cantilever joint:

        eps_xx = (4 eps0 / c11) (x^2 - l^2)
                 / (y^2 z^2 [1/2 + ln(4h/y - 1)/pi]^2) V^2

    Valid for h > y/2 (field model) and x > l (electrode inside the beam).
    """
    if dims.h <= dims.y / 2:
        raise ValueError(f"field model requires h > y/2, got h={dims.h}, y={dims.y}")
    if dims.x <= dims.l:
        raise ValueError(f"geometry requires x > l, got x={dims.x}, l={dims.l}")
    to_m = 1e-6
    x, l, y, z, h = (v * to_m for v in (dims.x, dims.l, dims.y, dims.z, dims.h))
    bracket = 0.5 + math.log(4 * h / y - 1.0) / math.pi
    return (4.0 * EPSILON0_F_PER_M / (c11_gpa * 1e9)
            * (x * x - l * l) / (y * y * z * z * bracket * bracket)
            * voltage_v * voltage_v)


def cantilever_strain_bent(voltage_v: float, dims: CantileverDims,
                           c11_gpa: float = C11_GPA) -> float:
    """One-step bent-beam correction: re-evaluate with
    h' = h - eps_xx (l + x) / 2."""
    eps = cantilever_strain(voltage_v, dims, c11_gpa)
    h_corr = dims.h - 0.5 * eps * (dims.l + dims.x)
    corrected = CantileverDims(dims.x, dims.l, dims.y, dims.z, h_corr)
    return cantilever_strain(voltage_v, corrected, c11_gpa)


def volt_str_row(voltage_v: float, dims: CantileverDims,
                 c11_gpa: float = C11_GPA, c12_gpa: float = C12_GPA) -> dict:
    """One row of the voltage -> strain table: eps_xx and |eps_xx - eps_yy|
    with the transverse contraction eps_yy = -c12/(c11+c12) eps_xx."""
    eps_xx = cantilever_strain(voltage_v, dims, c11_gpa)
    poisson = c12_gpa / (c11_gpa + c12_gpa)
    return {"voltage_v": voltage_v, "eps_xx": eps_xx,
            "eps_xx_minus_yy": (1.0 + poisson) * eps_xx}
