"""Intrinsic vibronic Hamiltonian of an XV manifold and its extensions.

H0 = H_vib + J (x tau_x + y tau_y) + (lambda/2) tau_z sigma_z

with dimensionless displacement operators (oscillator length absorbed
into J = sqrt(E_JT * hbar_omega)).  The spin-orbit sign fixes the
labeling convention: the lowest spin-up eigenstate carries vibronic
angular momentum <L_z^vo> = -1/2.  All operators act in the rotated
orbital frame, so strain enters through tau_x/tau_y and the orbital
Zeeman term through +tau_z/2.
"""

from dataclasses import dataclass
from importlib import resources
import json
import math

import numpy as np

from . import basis as vb
from .constants import MU_B_MEV_PER_T

SPECIES = ("SiV", "GeV", "SnV", "PbV")
MANIFOLDS = ("ground", "excited")


@dataclass(frozen=True)
class ManifoldParams:
    """Physical inputs of one species/manifold."""

    species: str
    manifold: str
    hbar_omega_mev: float
    lambda_so_mev: float
    e_jt_mev: float
    delta54_mev: float | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.hbar_omega_mev <= 0:
            raise ValueError("hbar_omega must be positive")
        if self.e_jt_mev < 0 or self.lambda_so_mev < 0:
            raise ValueError("E_JT and lambda must be non-negative")

    @property
    def coupling_j_mev(self) -> float:
        """Dimensionless-displacement coupling J with E_JT = J^2 / hbar_omega."""
        return math.sqrt(self.e_jt_mev * self.hbar_omega_mev)

    @property
    def key(self) -> str:
        return f"{self.species}-{self.manifold[0].upper()}"


def _load_data() -> dict:
    with resources.files("xvcenter.data").joinpath("params.json").open() as fh:
        return json.load(fh)


_DATA = _load_data()


def bundled_data() -> dict:
    return _DATA


def normalize_manifold(manifold: str) -> str:
    key = manifold.lower()
    if key in ("g", "ground"):
        return "ground"
    if key in ("e", "excited"):
        return "excited"
    raise KeyError(f"unknown manifold {manifold!r}")


def load_params(species: str, manifold: str) -> ManifoldParams:
    """Bundled per-species parameter set (DFT-derived inputs)."""
    if species not in _DATA["manifold_params"]:
        raise KeyError(f"unknown species {species!r}; expected one of {SPECIES}")
    manifold = normalize_manifold(manifold)
    row = _DATA["manifold_params"][species][manifold]
    return ManifoldParams(species=species, manifold=manifold,
                          hbar_omega_mev=row["hbar_omega_mev"],
                          lambda_so_mev=row["lambda_so_mev"],
                          e_jt_mev=row["e_jt_mev"],
                          delta54_mev=row.get("delta54_mev"),
                          provenance=row.get("provenance", ""))


def all_params() -> list[ManifoldParams]:
    return [load_params(s, m) for s in SPECIES for m in MANIFOLDS]


def build_h0(params: ManifoldParams, basis: vb.VibronicBasis) -> vb.OperatorMatrix:
    """Full-basis intrinsic Hamiltonian in meV (real symmetric)."""
    qp = vb.phonon_q_plus(basis.n_cut)
    x = (qp + qp.T) / 2.0
    y = (qp - qp.T) / 2.0j
    hvib = np.kron(np.diag((basis.n_values() + 1.0) * params.hbar_omega_mev), np.eye(4))
    jt = params.coupling_j_mev * (np.kron(x, np.kron(vb.PAULI_X, vb.I2))
                                  + np.kron(y, np.kron(vb.PAULI_Y, vb.I2)).real)
    so = 0.5 * params.lambda_so_mev * np.kron(
        np.eye(basis.phonon_dim), np.kron(vb.PAULI_Z, vb.PAULI_Z))
    return vb.OperatorMatrix(basis, hvib + jt + so, "meV")


def build_h0_spin_block(params: ManifoldParams, n_cut: int,
                        spin: int = +1) -> tuple[np.ndarray, np.ndarray]:
    """H0 restricted to one spin sector, over the phonon x orbital space.

    Returns (H_block, l_values_operator_diagonalizable) where the second
    array is the diagonal-free L_z^vo matrix for labeling.
    """
    qp = vb.phonon_q_plus(n_cut)
    x = (qp + qp.T) / 2.0
    y = (qp - qp.T) / 2.0j
    pstates = vb.phonon_level_states(n_cut)
    pdim = len(pstates)
    hvib = np.diag([(n + 1.0) * params.hbar_omega_mev for n, m in pstates])
    h = (np.kron(hvib, vb.I2)
         + params.coupling_j_mev * (np.kron(x, vb.PAULI_X)
                                    + np.kron(y, vb.PAULI_Y).real)
         + 0.5 * params.lambda_so_mev * spin * np.kron(np.eye(pdim), vb.PAULI_Z))
    l_op = (np.kron(np.diag([float(m) for n, m in pstates]), vb.I2)
            + 0.5 * np.kron(np.eye(pdim), vb.PAULI_Z))
    return h, l_op


def build_h_strain(gamma_mev: float, theta0: float,
                   basis: vb.VibronicBasis) -> vb.OperatorMatrix:
    """Transverse orbital strain coupling gamma (cos t0 tau_x + sin t0 tau_y)."""
    if not np.isfinite(gamma_mev) or not np.isfinite(theta0):
        raise ValueError("strain coefficients must be finite")
    ops = vb.build_orbital_spin_ops(basis)
    mat = gamma_mev * (math.cos(theta0) * ops["tau_x"].matrix
                       + math.sin(theta0) * ops["tau_y"].matrix)
    return vb.OperatorMatrix(basis, mat, "meV")


def build_h_zeeman(b_field_t, basis: vb.VibronicBasis,
                   g_l: float = 1.0, g_s: float = 2.0) -> vb.OperatorMatrix:
    """Zeeman coupling mu_B [Bx sx + By sy + Bz (g_l tau_z / 2 + sz)] in meV.

    The orbital part uses L_z^o = tau_z / 2 in the rotated frame; g_s
    rescales the spin terms relative to the g_s = 2 convention.
    """
    bx, by, bz = (float(c) for c in b_field_t)
    if not all(np.isfinite(c) for c in (bx, by, bz)):
        raise ValueError("magnetic field components must be finite")
    ops = vb.build_orbital_spin_ops(basis)
    spin_scale = g_s / 2.0
    mat = MU_B_MEV_PER_T * (
        spin_scale * (bx * ops["sigma_x"].matrix + by * ops["sigma_y"].matrix
                      + bz * ops["sigma_z"].matrix)
        + g_l * bz * 0.5 * ops["tau_z"].matrix)
    return vb.OperatorMatrix(basis, mat, "meV")


@dataclass
class AntiunitaryOperator:
    """U K0 with K0 complex conjugation in the product basis."""

    basis: vb.VibronicBasis
    unitary: np.ndarray

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.unitary @ vec.conj()

    def conjugate(self, op: np.ndarray) -> np.ndarray:
        """T A T^-1 for a linear operator A."""
        uinv = self.unitary.conj().T
        return self.unitary @ op.conj() @ uinv

    def squared(self) -> np.ndarray:
        return self.unitary @ self.unitary.conj()


def _m_flip(n_cut: int) -> np.ndarray:
    pstates = vb.phonon_level_states(n_cut)
    index = {s: i for i, s in enumerate(pstates)}
    pm = np.zeros((len(pstates), len(pstates)))
    for (n, m), col in index.items():
        pm[index[(n, -m)], col] = 1.0
    return pm


def build_time_reversal(basis: vb.VibronicBasis) -> AntiunitaryOperator:
    """T = (m-flip) x tau_x x (i sigma_y) K0; squares to -identity."""
    u = np.kron(_m_flip(basis.n_cut), np.kron(vb.PAULI_X, (1j * vb.PAULI_Y).real))
    return AntiunitaryOperator(basis, u)


def build_joint_reflection(theta: float, phi: float,
                           basis: vb.VibronicBasis) -> vb.OperatorMatrix:
    """Simultaneous reflection of the phonon plane and orbital pseudo-spin
    about the axis at angle theta, with a pi spin rotation about
    (cos phi, sin phi).

    The orbital factor is i (cos theta tau_x + sin theta tau_y): conjugation
    by it reflects the (tau_x, tau_y) pair with the same matrix that the
    phonon reflection applies to (Q_x, Q_y), which is what makes the
    operator commute with H0.
    """
    pstates = vb.phonon_level_states(basis.n_cut)
    index = {s: i for i, s in enumerate(pstates)}
    fv = np.zeros((len(pstates), len(pstates)), complex)
    for (n, m), col in index.items():
        fv[index[(n, -m)], col] = np.exp(2j * m * theta)
    fo = 1j * (math.cos(theta) * vb.PAULI_X + math.sin(theta) * vb.PAULI_Y)
    fs = math.cos(phi) * vb.PAULI_X + math.sin(phi) * vb.PAULI_Y
    return vb.OperatorMatrix(basis, np.kron(fv, np.kron(fo, fs)), "dimensionless")
