"""Quench (Ham) factors of the vibronic ground doublet.

The original factors p, q are expectation values of the orbital Pauli
operators inside the degenerate ground doublet of the spin-free
Hamiltonian H_vib + H_JT.  The refined factors p', q' are computed from
the two lowest spin-up eigenstates of the full H0 (spin-orbit included)
and feed the effective 4x4 model

    H  ~  -(delta0/2) tau_z^m sigma_z^s
          + H_int(p' tau_z^m, q' tau_x^m, q' tau_y^m).

All factors are reported as magnitudes; the gauge is fixed by making the
tau_x cross element real and non-negative.
"""

from dataclasses import dataclass
import warnings

import numpy as np

from . import basis as vb
from .hamiltonian import ManifoldParams, build_h0_spin_block
from .solver import solve_manifold, _rotate_to_labels

DEFAULT_N_CUT = 24


@dataclass
class QuenchFactors:
    p: float
    q: float
    p_prime: float
    q_prime: float
    delta0_mev: float
    delta54_mev: float


@dataclass
class QuenchPrecision:
    """Relative error of the quenched ground-splitting estimates against
    full diagonalization, for a tau_z and a tau_x perturbation."""

    eps_z: float
    eps_x: float | None
    eps_prime_z: float
    eps_prime_x: float | None
    delta_num_z_mev: float
    delta_num_x_mev: float


def _block_tau_ops(n_cut: int):
    pdim = (n_cut + 1) * (n_cut + 2) // 2
    eye = np.eye(pdim)
    return np.kron(eye, vb.PAULI_Z), np.kron(eye, vb.PAULI_X)


def original_factors(hbar_omega_mev: float, e_jt_mev: float,
                     n_cut: int = DEFAULT_N_CUT) -> tuple[float, float]:
    """p and q from the spin-free ground doublet (lambda set to zero)."""
    params = ManifoldParams("SnV", "ground", hbar_omega_mev, 0.0, e_jt_mev)
    h, l_op = build_h0_spin_block(params, n_cut)
    energies, states = np.linalg.eigh(h)
    states = _rotate_to_labels(energies, states, [l_op], 1e-9)
    tau_z, tau_x = _block_tau_ops(n_cut)
    a, b = states[:, 0], states[:, 1]
    p = abs(np.real(a.conj() @ tau_z @ a))
    q = abs(a.conj() @ tau_x @ b)
    return float(p), float(q)


def refined_factors(params: ManifoldParams,
                    n_cut: int = DEFAULT_N_CUT) -> QuenchFactors:
    """p', q' plus the ground splitting delta0 and the gap delta_54."""
    sol = solve_manifold(params, n_cut)
    tau_z, tau_x = _block_tau_ops(n_cut)
    a, b = sol.states[:, 0], sol.states[:, 1]
    p_prime = 0.5 * abs(np.real(a.conj() @ tau_z @ a) - np.real(b.conj() @ tau_z @ b))
    q_prime = abs(b.conj() @ tau_x @ a)
    p, q = original_factors(params.hbar_omega_mev, params.e_jt_mev, n_cut)
    return QuenchFactors(p=p, q=q, p_prime=float(p_prime), q_prime=float(q_prime),
                         delta0_mev=float(sol.energies[1] - sol.energies[0]),
                         delta54_mev=float(sol.energies[2] - sol.energies[1]))


def _ground_splitting_with(params, perturbation, n_cut):
    """Lowest levels of H0 + perturbation, merging both spin sectors.

    The perturbation is an orbital operator, so each spin block can be
    solved separately at half size.  perturbation: (c_z, c_x)
    coefficients of tau_z, tau_x in meV.
    """
    c_z, c_x = perturbation
    tau_z, tau_x = _block_tau_ops(n_cut)
    h_up, _ = build_h0_spin_block(params, n_cut, spin=+1)
    h_dn, _ = build_h0_spin_block(params, n_cut, spin=-1)
    pert = c_z * tau_z + c_x * tau_x
    w_up = np.linalg.eigvalsh(h_up + pert)
    w_dn = np.linalg.eigvalsh(h_dn + pert)
    return np.sort(np.concatenate([w_up[:4], w_dn[:4]]))


def precision_eval(params: ManifoldParams, gamma_z_mev: float = 1.0,
                   gamma_x_mev: float = 1.0, n_cut: int = DEFAULT_N_CUT) -> QuenchPrecision:
    """Accuracy of the quench-factor splitting formulas.

    z channel:  estimate min(delta0, 2 p gamma_z) against the gap of the
    two globally lowest levels of H0 + gamma_z tau_z.
    x channel:  estimate sqrt(delta0^2 + 4 (q gamma_x)^2) against the
    doublet splitting of H0 + gamma_x tau_x, with the error normalized to
    the strain-induced part (delta_num - delta0); None when that
    denominator vanishes.
    """
    fac = refined_factors(params, n_cut)
    d0 = fac.delta0_mev

    levels_z = _ground_splitting_with(params, (gamma_z_mev, 0.0), n_cut)
    delta_num_z = float(levels_z[1] - levels_z[0])
    levels_x = _ground_splitting_with(params, (0.0, gamma_x_mev), n_cut)
    # tau_x perturbation preserves Kramers pairs: gap between doublets
    delta_num_x = float(levels_x[2] - levels_x[0])

    est_z = min(d0, 2 * fac.p * gamma_z_mev)
    est_pz = min(d0, 2 * fac.p_prime * gamma_z_mev)
    est_x = np.hypot(d0, 2 * fac.q * gamma_x_mev)
    est_px = np.hypot(d0, 2 * fac.q_prime * gamma_x_mev)

    def rel(estimate, reference):
        if reference == 0.0:
            return 0.0 if abs(estimate) < 1e-12 else float("inf")
        return (estimate - reference) / reference

    denom_x = delta_num_x - d0
    return QuenchPrecision(
        eps_z=rel(est_z, delta_num_z),
        eps_prime_z=rel(est_pz, delta_num_z),
        eps_x=(est_x - delta_num_x) / denom_x if denom_x != 0 else None,
        eps_prime_x=(est_px - delta_num_x) / denom_x if denom_x != 0 else None,
        delta_num_z_mev=delta_num_z,
        delta_num_x_mev=delta_num_x,
    )


TAU_M_Z = np.diag([-1.0, 1.0])        # (|1'>, |2'>) ordering
TAU_M_X = np.array([[0.0, 1.0], [1.0, 0.0]])
TAU_M_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_Z = np.diag([1.0, -1.0])        # (up, down) ordering


def effective_hamiltonian(factors: QuenchFactors,
                          h_int_coeffs: tuple[float, float, float]) -> np.ndarray:
    """4x4 quench-model Hamiltonian over {|1'>, |2'>} x {up, down}.

    h_int_coeffs are the raw (gamma_z, gamma_x, gamma_y) coefficients of
    the orbital tau operators in meV; the quench factors are applied here.
    Warns when the interaction is not small against delta_54.
    """
    g_z, g_x, g_y = h_int_coeffs
    strength = max(abs(g_z), abs(g_x), abs(g_y))
    if factors.delta54_mev and strength > 0.1 * factors.delta54_mev:
        warnings.warn(
            f"interaction strength {strength:.3g} meV is not small against "
            f"delta_54 = {factors.delta54_mev:.3g} meV; quench model degrades",
            stacklevel=2)
    h_m = (factors.p_prime * g_z * TAU_M_Z + factors.q_prime * g_x * TAU_M_X
           + factors.q_prime * g_y * TAU_M_Y)
    return (-0.5 * factors.delta0_mev * np.kron(TAU_M_Z, SIGMA_Z)
            + np.kron(h_m, np.eye(2)))


def quench_table(species_manifolds, n_cut: int = DEFAULT_N_CUT,
                 gamma_mev: float = 1.0) -> list[dict]:
    """One row per species/manifold with factors and precision columns."""
    rows = []
    for params in species_manifolds:
        fac = refined_factors(params, n_cut)
        prec = precision_eval(params, gamma_mev, gamma_mev, n_cut)
        rows.append({
            "system": params.key,
            "p": fac.p, "p_prime": fac.p_prime,
            "eps_z": prec.eps_z, "eps_prime_z": prec.eps_prime_z,
            "q": fac.q, "q_prime": fac.q_prime,
            "eps_x": prec.eps_x, "eps_prime_x": prec.eps_prime_x,
            "delta0_mev": fac.delta0_mev, "delta54_mev": fac.delta54_mev,
        })
    return rows
