"""Magnetic-field analyses: level diagrams against field strength, spin
orientation angles, optical addressability, and the strained-plus-field
probe that exposes the intrinsic strain of a sample.
"""

from dataclasses import dataclass

import numpy as np

from . import basis as vb
from .constants import MU_B_MEV_PER_T
from .hamiltonian import ManifoldParams, build_h0, build_h_zeeman
from .solver import diagonalize

_BASIS_CACHE: dict[int, vb.VibronicBasis] = {}


def _basis(n_cut: int) -> vb.VibronicBasis:
    if n_cut not in _BASIS_CACHE:
        _BASIS_CACHE[n_cut] = vb.VibronicBasis.build(n_cut)
    return _BASIS_CACHE[n_cut]


def levels_vs_b(params: ManifoldParams, axis: str, b_grid_t,
                n_levels: int = 8, n_cut: int = 14) -> np.ndarray:
    """Lowest eigenvalues of H0 + H_B over a field grid (meV).

    Returns an array of shape (len(b_grid), n_levels).  Along z the
    Kramers pairs split linearly at small field; along x they stay
    degenerate.
    """
    if axis not in ("x", "z"):
        raise ValueError("axis must be 'x' or 'z'")
    basis = _basis(n_cut)
    h0 = build_h0(params, basis).matrix
    out = np.empty((len(b_grid_t), n_levels))
    for i, b in enumerate(b_grid_t):
        field = (b, 0.0, 0.0) if axis == "x" else (0.0, 0.0, b)
        h = h0 + build_h_zeeman(field, basis).matrix
        out[i] = np.linalg.eigvalsh(h)[:n_levels]
    return out


def spin_orientation(params: ManifoldParams, b_x_t: float,
                     n_cut: int = 14) -> float:
    """Polar angle arccos <G_down| sigma_z |G_down> of the lowest
    spin-down-like state under a transverse field B_x (Tesla).

    The ground doublet stays degenerate for any B_x; the two partners are
    disambiguated by their vibronic angular momentum and the one with
    negative spin projection is taken.
    """
    if b_x_t < 0:
        raise ValueError("B_x must be non-negative")
    basis = _basis(n_cut)
    ops = vb.build_orbital_spin_ops(basis)
    h = vb.OperatorMatrix(
        basis, build_h0(params, basis).matrix
        + build_h_zeeman((b_x_t, 0.0, 0.0), basis).matrix, "meV")
    sol = diagonalize(h, label_ops={"l_vo": ops["l_z_vo"].matrix})
    pair = sol.states[:, :2]
    sz = ops["sigma_z"].matrix
    proj = [float(np.real(pair[:, i].conj() @ sz @ pair[:, i])) for i in range(2)]
    return float(np.arccos(np.clip(min(proj), -1.0, 1.0)))


def orientation_difference(species_ground: ManifoldParams,
                           species_excited: ManifoldParams,
                           mu_b_bx_mev, n_cut: int = 14) -> np.ndarray:
    """theta_excited - theta_ground over a grid of mu_B * B_x in meV."""
    out = []
    for mb in np.atleast_1d(mu_b_bx_mev):
        b_t = float(mb) / MU_B_MEV_PER_T
        out.append(spin_orientation(species_excited, b_t, n_cut)
                   - spin_orientation(species_ground, b_t, n_cut))
    return np.asarray(out)


def addressability_splittings(params_g: ManifoldParams, params_e: ManifoldParams,
                              b_field_t, n_cut: int = 12) -> tuple[float, float]:
    """Spin splittings (Delta_12, Delta_AB) of the two manifolds under a
    common magnetic field, meV."""
    basis = _basis(n_cut)
    hz = build_h_zeeman(b_field_t, basis).matrix
    out = []
    for params in (params_g, params_e):
        w = np.linalg.eigvalsh(build_h0(params, basis).matrix + hz)
        out.append(float(w[1] - w[0]))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# strained two-doublet probe under a transverse magnetic field

@dataclass
class ProbeModel:
    """Quenched effective model of the ground quadruplet: zero-field
    splitting delta0, transverse strain coupling gamma (already quenched),
    and a magnetic field along y."""

    delta0_mev: float
    gamma_mev: float
    b_y_t: float = 0.0
    strain_angle: float = 0.0

    def __post_init__(self):
        if self.delta0_mev <= 0:
            raise ValueError("delta0 must be positive")
        if self.gamma_mev < 0:
            raise ValueError("gamma must be non-negative")

    @property
    def zeeman_mev(self) -> float:
        return MU_B_MEV_PER_T * self.b_y_t


def probe_hamiltonian(model: ProbeModel) -> np.ndarray:
    """4x4 matrix (delta0/2) tau_z sigma_z + mu_B B_y sigma_y + gamma tau_perp."""
    tau_z = np.kron(np.diag([1.0, -1.0]), np.eye(2))
    sigma_z = np.kron(np.eye(2), np.diag([1.0, -1.0]))
    sigma_y = np.kron(np.eye(2), np.array([[0, -1j], [1j, 0]]))
    tau_x = np.kron(np.array([[0.0, 1.0], [1.0, 0.0]]), np.eye(2))
    tau_y = np.kron(np.array([[0, -1j], [1j, 0]]), np.eye(2))
    tau_perp = np.cos(model.strain_angle) * tau_x + np.sin(model.strain_angle) * tau_y
    return (0.5 * model.delta0_mev * tau_z @ sigma_z
            + model.zeeman_mev * sigma_y + model.gamma_mev * tau_perp)


@dataclass
class ProbeSplittings:
    delta_s_mev: float          # doublet gap without field
    delta_sm_mev: float         # field-induced intra-doublet splitting
    eigenvalues_mev: np.ndarray


def probe_splitting(model: ProbeModel) -> ProbeSplittings:
    """Closed-form eigenvalues +-sqrt((d0/2)^2 + (mu_B B_y +- gamma)^2)
    and the derived splittings; the matrix spectrum matches to 1e-12."""
    half = 0.5 * model.delta0_mev
    b = model.zeeman_mev
    g = model.gamma_mev
    e_plus = np.hypot(half, b + g)
    e_minus = np.hypot(half, b - g)
    eigenvalues = np.sort([-e_plus, -e_minus, e_minus, e_plus])
    return ProbeSplittings(
        delta_s_mev=float(np.hypot(model.delta0_mev, 2.0 * g)),
        delta_sm_mev=float(e_plus - e_minus),
        eigenvalues_mev=np.asarray(eigenvalues),
    )


def invert_intrinsic_strain(delta_sm_mev: float, delta0_mev: float, b_y_t: float,
                            rel_tol: float = 1e-10) -> float:
    """Intrinsic strain coupling gamma0 from a measured splitting.

    delta_sm is strictly increasing in gamma with range [0, 2 mu_B B_y);
    inversion is done by bisection to rel_tol.
    """
    b = MU_B_MEV_PER_T * b_y_t
    if delta_sm_mev < 0 or delta_sm_mev >= 2.0 * b:
        raise ValueError(
            f"delta_sm = {delta_sm_mev} meV outside the reachable range "
            f"[0, {2.0 * b}) for B_y = {b_y_t} T")
    if delta_sm_mev == 0.0:
        return 0.0

    def f(gamma):
        return probe_splitting(ProbeModel(delta0_mev, gamma, b_y_t)).delta_sm_mev

    lo, hi = 0.0, max(delta0_mev, b, delta_sm_mev)
    while f(hi) < delta_sm_mev:
        hi *= 2.0
    while (hi - lo) > rel_tol * max(hi, 1e-30):
        mid = 0.5 * (lo + hi)
        if f(mid) < delta_sm_mev:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
