"""Truncated vibronic product basis |n, m> x |orbital +-> x |spin ud>
and the elementary operator matrices over it.

The phonon factor is a 2D isotropic harmonic oscillator in polar
coordinates: level n holds n+1 states with angular momentum
m in {-n, -n+2, ..., n}.  The orbital and spin factors are two-level
systems; ordering is (n asc, m asc, orbital -,+, spin down,up), which
makes the basis for a smaller cutoff an exact prefix of a larger one.
"""

from dataclasses import dataclass, field
import numpy as np

ORBITALS = ("-", "+")
SPINS = ("down", "up")


def phonon_level_states(n_cut: int) -> list[tuple[int, int]]:
    """(n, m) pairs up to n_cut, n+1 states per level."""
    return [(n, m) for n in range(n_cut + 1) for m in range(-n, n + 1, 2)]


@dataclass(frozen=True)
class VibronicBasis:
    """Ordered enumeration of |n, m, orbital, spin> product states."""

    n_cut: int
    states: tuple = field(repr=False)

    @classmethod
    def build(cls, n_cut: int) -> "VibronicBasis":
        if n_cut < 0:
            raise ValueError(f"n_cut must be >= 0, got {n_cut}")
        states = tuple((n, m, orb, spin)
                       for (n, m) in phonon_level_states(n_cut)
                       for orb in ORBITALS for spin in SPINS)
        return cls(n_cut=n_cut, states=states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def phonon_dim(self) -> int:
        return (self.n_cut + 1) * (self.n_cut + 2) // 2

    def index(self, n: int, m: int, orb: str, spin: str) -> int:
        return self.states.index((n, m, orb, spin))

    def spin_indices(self, spin: str) -> np.ndarray:
        return np.array([i for i, s in enumerate(self.states) if s[3] == spin])

    def m_values(self) -> np.ndarray:
        return np.array([float(m) for (n, m) in phonon_level_states(self.n_cut)])

    def n_values(self) -> np.ndarray:
        return np.array([float(n) for (n, m) in phonon_level_states(self.n_cut)])


@dataclass
class OperatorMatrix:
    """Dense operator tagged with the basis it is expressed in."""

    basis: VibronicBasis
    matrix: np.ndarray
    unit: str = "dimensionless"

    def __post_init__(self):
        if self.matrix.shape != (self.basis.dim, self.basis.dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match basis dim {self.basis.dim}")

    def hermiticity_defect(self) -> float:
        """Relative Frobenius distance from the conjugate transpose."""
        norm = np.linalg.norm(self.matrix)
        if norm == 0.0:
            return 0.0
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T) / norm)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, self.matrix.conj().T.copy(), self.unit)


# 2x2 blocks in the (-,+) / (down,up) orderings used by VibronicBasis
PAULI_Z = np.diag([-1.0, 1.0])
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]])
RAISE = np.array([[0.0, 0.0], [1.0, 0.0]])   # |+><-|, |up><down|
LOWER = RAISE.T.copy()
I2 = np.eye(2)


def phonon_q_plus(n_cut: int, scale: float = 1.0) -> np.ndarray:
    """Q+ over the phonon factor alone: |n,m> -> |n-1,m+1>, |n+1,m+1>."""
    states = phonon_level_states(n_cut)
    index = {s: i for i, s in enumerate(states)}
    qp = np.zeros((len(states), len(states)))
    for (n, m), col in index.items():
        up = (n + 1, m + 1)
        dn = (n - 1, m + 1)
        if dn in index:
            qp[index[dn], col] = np.sqrt(n - m)
        if up in index:
            qp[index[up], col] = np.sqrt(n + m + 2)
    return scale * qp


def phonon_second_order(n_cut: int, scale: float = 1.0) -> dict[str, np.ndarray]:
    """x^2-y^2, 2xy and Q++/Q-- over the phonon factor.

    `scale` is the oscillator length sqrt(hbar/2 m w); the quadratic
    operators carry its square.
    """
    states = phonon_level_states(n_cut)
    index = {s: i for i, s in enumerate(states)}
    P = len(states)
    x2y2 = np.zeros((P, P))
    xy2 = np.zeros((P, P), complex)
    s2 = scale * scale

    def put(mat, row, col, val):
        if row in index:
            mat[index[row], col] += val

    for (n, m), col in index.items():
        # x^2 - y^2 couples (n+-2 or n, m+-2); prefactor hbar/4mw = s^2/2
        put(x2y2, (n - 2, m - 2), col, np.sqrt((n + m - 2) * (n + m)) * s2 / 2)
        put(x2y2, (n - 2, m + 2), col, np.sqrt((n - m - 2) * (n - m)) * s2 / 2)
        put(x2y2, (n, m - 2), col, 2 * np.sqrt((n - m + 2) * (n + m)) * s2 / 2)
        put(x2y2, (n, m + 2), col, 2 * np.sqrt((n + m + 2) * (n - m)) * s2 / 2)
        put(x2y2, (n + 2, m - 2), col, np.sqrt((n - m + 4) * (n - m + 2)) * s2 / 2)
        put(x2y2, (n + 2, m + 2), col, np.sqrt((n + m + 4) * (n + m + 2)) * s2 / 2)
        # 2xy = (Q+^2 - Q-^2) / 2i: m-raising entries carry -i, m-lowering +i
        put(xy2, (n - 2, m - 2), col, +1j * np.sqrt((n + m - 2) * (n + m)) * s2 / 2)
        put(xy2, (n - 2, m + 2), col, -1j * np.sqrt((n - m - 2) * (n - m)) * s2 / 2)
        put(xy2, (n, m - 2), col, +1j * 2 * np.sqrt((n - m + 2) * (n + m)) * s2 / 2)
        put(xy2, (n, m + 2), col, -1j * 2 * np.sqrt((n + m + 2) * (n - m)) * s2 / 2)
        put(xy2, (n + 2, m - 2), col, +1j * np.sqrt((n - m + 4) * (n - m + 2)) * s2 / 2)
        put(xy2, (n + 2, m + 2), col, -1j * np.sqrt((n + m + 4) * (n + m + 2)) * s2 / 2)
    # Q++ = Q+^2 / sqrt2 raises m by 2; equals ((x^2-y^2) + i 2xy) / sqrt2
    qpp = (x2y2 + 1j * xy2) / np.sqrt(2)
    qmm = (x2y2 - 1j * xy2) / np.sqrt(2)
    return {"x2_minus_y2": x2y2, "two_xy": xy2, "q_plus_plus": qpp, "q_minus_minus": qmm}


def _lift_phonon(basis: VibronicBasis, pmat: np.ndarray) -> np.ndarray:
    return np.kron(pmat, np.eye(4))


def _lift_orbital(basis: VibronicBasis, t2: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(basis.phonon_dim), np.kron(t2, I2))


def _lift_spin(basis: VibronicBasis, s2: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(basis.phonon_dim), np.kron(I2, s2))


def build_q_plus_minus(basis: VibronicBasis, scale: float = 1.0,
                       unit: str = "dimensionless") -> tuple[OperatorMatrix, OperatorMatrix]:
    """Phonon displacement ladder operators Q+ and Q- = Q+ dagger."""
    qp = _lift_phonon(basis, phonon_q_plus(basis.n_cut, scale))
    return (OperatorMatrix(basis, qp, unit),
            OperatorMatrix(basis, qp.T.copy(), unit))


def build_xy(basis: VibronicBasis, scale: float = 1.0,
             unit: str = "dimensionless") -> tuple[OperatorMatrix, OperatorMatrix]:
    """Hermitian displacement components x = (Q+ + Q-)/2, y = (Q+ - Q-)/2i."""
    qp = phonon_q_plus(basis.n_cut, scale)
    x = (qp + qp.T) / 2.0
    y = (qp - qp.T) / 2.0j
    return (OperatorMatrix(basis, _lift_phonon(basis, x), unit),
            OperatorMatrix(basis, _lift_phonon(basis, y), unit))


def build_second_order_ops(basis: VibronicBasis, scale: float = 1.0,
                           unit: str = "dimensionless") -> dict[str, OperatorMatrix]:
    """Quadratic displacement operators x^2-y^2, 2xy, Q++ and Q--."""
    raw = phonon_second_order(basis.n_cut, scale)
    return {k: OperatorMatrix(basis, _lift_phonon(basis, v), unit)
            for k, v in raw.items()}


def build_orbital_spin_ops(basis: VibronicBasis) -> dict[str, OperatorMatrix]:
    """Pauli operators on each two-level factor plus the angular momenta.

    L_z^v is diagonal with eigenvalue m (units of hbar); L_z^vo adds
    tau_z/2 and is the conserved vibronic angular momentum.
    """
    pdim = basis.phonon_dim
    mdiag = np.diag(basis.m_values())
    ops = {
        "tau_x": _lift_orbital(basis, PAULI_X),
        "tau_y": _lift_orbital(basis, PAULI_Y),
        "tau_z": _lift_orbital(basis, PAULI_Z),
        "tau_plus": _lift_orbital(basis, RAISE),
        "tau_minus": _lift_orbital(basis, LOWER),
        "sigma_x": _lift_spin(basis, PAULI_X),
        "sigma_y": _lift_spin(basis, PAULI_Y),
        "sigma_z": _lift_spin(basis, PAULI_Z),
        "l_z_v": np.kron(mdiag, np.eye(4)),
    }
    ops["l_z_vo"] = ops["l_z_v"] + 0.5 * ops["tau_z"]
    return {k: OperatorMatrix(basis, v, "hbar" if k.startswith("l_") else "dimensionless")
            for k, v in ops.items()}


def build_bond_eigenstates() -> dict[str, np.ndarray]:
    """Hole orbital eigenstates over the six sigma-bond basis states.

    Returns the inversion-even/odd angular-momentum eigenstates and their
    spatially polarized combinations; all vectors are normalized columns.
    """
    w = np.exp(2j * np.pi / 3)
    upper0 = np.array([1, 1, 1], dtype=complex)
    upper_p = np.array([1, w, w ** 2])
    upper_m = np.array([1, w ** -1, w ** -2])

    def glue(upper, sign):
        return np.concatenate([upper, sign * upper]) / np.sqrt(6)

    states = {
        "psi_plus_0": glue(upper0, +1),
        "psi_minus_0": glue(upper0, -1),
        "psi_plus_p1": glue(upper_p, +1),
        "psi_plus_m1": glue(upper_m, +1),
        "psi_minus_p1": glue(upper_p, -1),
        "psi_minus_m1": glue(upper_m, -1),
    }
    for parity in ("plus", "minus"):
        p1 = states[f"psi_{parity}_p1"]
        m1 = states[f"psi_{parity}_m1"]
        states[f"psi_{parity}_x"] = (p1 + m1) / np.sqrt(2)
        states[f"psi_{parity}_y"] = -1j * (p1 - m1) / np.sqrt(2)
    return states
