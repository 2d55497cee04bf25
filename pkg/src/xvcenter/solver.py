"""Dense Hermitian diagonalization with conserved-quantity labeling,
degeneracy pairing and cutoff-convergence checks.

Within every degenerate cluster the eigenvectors are post-rotated so that
each is an eigenvector of the conserved operators (spin_z first, then
L_z^vo); this makes labels and downstream matrix elements deterministic.
"""

from dataclasses import dataclass
import threading

import numpy as np

from . import basis as vb
from .hamiltonian import ManifoldParams, build_h0_spin_block

HERMITICITY_TOL = 1e-10
DEGENERACY_REL_TOL = 1e-9


class NonHermitianError(ValueError):
    pass


class UnpairedEigenvalueError(RuntimeError):
    def __init__(self, orphans):
        self.orphans = orphans
        super().__init__(f"unpaired eigenvalues at indices {orphans}")


@dataclass
class EigenSolution:
    """Eigen-decomposition plus per-state conserved-quantity labels."""

    energies: np.ndarray
    states: np.ndarray                    # states[:, i] belongs to energies[i]
    l_vo: np.ndarray | None = None        # <L_z^vo> per state, units of hbar
    spin_z: np.ndarray | None = None      # <sigma_z^s> per state
    n_cut_used: int | None = None

    @property
    def dim(self) -> int:
        return len(self.energies)

    def residual(self, h: np.ndarray) -> float:
        r = h @ self.states - self.states * self.energies[None, :]
        return float(np.linalg.norm(r) / max(np.linalg.norm(h), 1e-300))


def _expectations(states: np.ndarray, op: np.ndarray) -> np.ndarray:
    """<psi_i| op |psi_i> for every column; diagonal operators (all the
    conserved labels here) take the quadratic-weight shortcut."""
    diag = np.diagonal(op)
    if np.count_nonzero(op) == np.count_nonzero(diag):
        return np.real((np.abs(states) ** 2).T @ diag)
    return np.real(np.sum(states.conj() * (op @ states), axis=0))


def _degenerate_clusters(energies: np.ndarray, rel_tol: float) -> list[list[int]]:
    scale = max(np.max(np.abs(energies)), 1.0)
    clusters, current = [], [0]
    for i in range(1, len(energies)):
        if energies[i] - energies[i - 1] <= rel_tol * scale:
            current.append(i)
        else:
            clusters.append(current)
            current = [i]
    clusters.append(current)
    return clusters


def _rotate_to_labels(energies, states, label_ops, rel_tol):
    """Simultaneously diagonalize each conserved label operator inside
    every degenerate cluster (sequentially refining sub-clusters)."""
    states = states.copy()
    for cluster in _degenerate_clusters(energies, rel_tol):
        if len(cluster) == 1:
            continue
        idx = np.array(cluster)
        sub_groups = [idx]
        for op in label_ops:
            new_groups = []
            for grp in sub_groups:
                block = states[:, grp]
                small = block.conj().T @ op @ block
                small = (small + small.conj().T) / 2.0
                vals, rot = np.linalg.eigh(small)
                states[:, grp] = block @ rot
                # split grp by distinct label values
                start = 0
                for k in range(1, len(grp) + 1):
                    if k == len(grp) or vals[k] - vals[start] > 1e-6:
                        new_groups.append(grp[start:k])
                        start = k
            sub_groups = new_groups
    return states


def diagonalize(op: vb.OperatorMatrix, label_ops: dict[str, np.ndarray] | None = None,
                rel_tol: float = DEGENERACY_REL_TOL) -> EigenSolution:
    """Full spectrum of a Hermitian operator matrix.

    `label_ops` maps label names ('spin_z', 'l_vo') to operators; each is
    used for degenerate-subspace rotation only if it commutes with the
    input (checked numerically), so strained or field-dressed Hamiltonians
    degrade gracefully to expectation-value labels.
    """
    h = op.matrix
    defect = op.hermiticity_defect()
    if defect > HERMITICITY_TOL:
        raise NonHermitianError(
            f"matrix is not Hermitian: relative defect {defect:.3e} > {HERMITICITY_TOL}")
    h = (h + h.conj().T) / 2.0
    energies, states = np.linalg.eigh(h)

    if label_ops is None:
        ops = vb.build_orbital_spin_ops(op.basis)
        label_ops = {"spin_z": ops["sigma_z"].matrix, "l_vo": ops["l_z_vo"].matrix}
    hnorm = np.linalg.norm(h)
    usable = [lab for lab in label_ops.values()
              if np.linalg.norm(lab @ h - h @ lab) <= 1e-8 * max(hnorm, 1.0)]
    if usable:
        states = _rotate_to_labels(energies, states, usable, rel_tol)

    def expect(lab):
        return _expectations(states, lab)

    sol = EigenSolution(energies=energies, states=states, n_cut_used=op.basis.n_cut)
    if "l_vo" in label_ops:
        sol.l_vo = expect(label_ops["l_vo"])
    if "spin_z" in label_ops:
        sol.spin_z = expect(label_ops["spin_z"])
    return sol


def pair_degeneracies(sol: EigenSolution, rel_tol: float = DEGENERACY_REL_TOL):
    """Match eigenvalues into Kramers pairs; partner of (l, s) is (-l, -s).

    Raises UnpairedEigenvalueError listing orphans when any eigenvalue
    cannot be matched within rel_tol (degeneracy genuinely lifted, or
    tolerance too tight).
    """
    pairs, orphans = [], []
    for cluster in _degenerate_clusters(sol.energies, rel_tol):
        if len(cluster) % 2:
            orphans.extend(cluster)
            continue
        remaining = list(cluster)
        while remaining:
            i = remaining.pop(0)
            best = None
            if sol.l_vo is not None:
                for j in remaining:
                    if abs(sol.l_vo[j] + sol.l_vo[i]) < 1e-4 and (
                            sol.spin_z is None or abs(sol.spin_z[j] + sol.spin_z[i]) < 1e-4):
                        best = j
                        break
            if best is None and remaining:
                best = remaining[0]
            if best is None:
                orphans.append(i)
                break
            remaining.remove(best)
            pairs.append((i, best))
    if orphans:
        raise UnpairedEigenvalueError(orphans)
    return pairs


# ---------------------------------------------------------------------------
# spin-sector workhorse with caching (quench, optics and field scans all
# re-solve the same handful of manifolds)

_BLOCK_CACHE: dict[tuple, EigenSolution] = {}
_BLOCK_CACHE_MAX = 64
_BLOCK_CACHE_LOCK = threading.Lock()


def solve_manifold(params: ManifoldParams, n_cut: int, spin: int = +1) -> EigenSolution:
    """Eigen-solution of one spin sector over the phonon x orbital space.

    Results are memoized; concurrent sweeps share the cache safely (a
    duplicate solve may happen under contention, never a corrupt entry).
    """
    key = (round(params.hbar_omega_mev, 9), round(params.e_jt_mev, 9),
           round(params.lambda_so_mev, 9), n_cut, spin)
    with _BLOCK_CACHE_LOCK:
        hit = _BLOCK_CACHE.get(key)
    if hit is not None:
        return hit
    h, l_op = build_h0_spin_block(params, n_cut, spin)
    energies, states = np.linalg.eigh(h)
    states = _rotate_to_labels(energies, states, [l_op], DEGENERACY_REL_TOL)
    l_vals = _expectations(states, l_op)
    sol = EigenSolution(energies=energies, states=states, l_vo=l_vals,
                        spin_z=np.full(len(energies), float(spin)), n_cut_used=n_cut)
    with _BLOCK_CACHE_LOCK:
        if len(_BLOCK_CACHE) >= _BLOCK_CACHE_MAX:
            _BLOCK_CACHE.pop(next(iter(_BLOCK_CACHE)))
        _BLOCK_CACHE[key] = sol
    return sol


def lowest_splitting_mev(params: ManifoldParams, n_cut: int = 20) -> float:
    """Energy gap between the two lowest Kramers doublets of H0."""
    sol = solve_manifold(params, n_cut)
    return float(sol.energies[1] - sol.energies[0])


@dataclass
class ConvergenceRow:
    n_cut: int
    eps_energy: float       # max relative eigenvalue shift, lowest levels
    eps_state: float        # max (1 - |overlap with reference subspace|)


def _refined_energies(params: ManifoldParams, n_cut: int, k: int) -> np.ndarray:
    """Lowest k eigenvalues sharpened by extended-precision Rayleigh
    quotients.  The raw eigh values carry round-off of order
    N eps ||H|| (~1e-12 relative here), which would mask truncation
    errors below that level."""
    sol = solve_manifold(params, n_cut)
    h, _ = build_h0_spin_block(params, n_cut)
    rows, cols = np.nonzero(h)
    vals = h[rows, cols].astype(np.longdouble)
    out = np.empty(k)
    for i in range(k):
        vec = sol.states[:, i].astype(np.longdouble)
        hv = np.zeros(len(vec), dtype=np.longdouble)
        np.add.at(hv, rows, vals * vec[cols])
        out[i] = float((vec @ hv) / (vec @ vec))
    return out


def convergence_study(params: ManifoldParams, n_cut_list,
                      reference_n_cut: int = 40, n_lowest: int = 10) -> list[ConvergenceRow]:
    """Cutoff convergence of the lowest eigenpairs against a large-cutoff
    reference.

    eps_state is reported as 1 - |overlap| (a converged state gives 0);
    overlaps are taken against the reference's degenerate subspace so the
    measure is gauge-independent.  The smaller basis embeds into the
    reference as an exact prefix.
    """
    if reference_n_cut <= max(n_cut_list):
        raise ValueError("reference_n_cut must exceed every entry of n_cut_list")
    ref = solve_manifold(params, reference_n_cut)
    ref_e = _refined_energies(params, reference_n_cut, n_lowest)
    rows = []
    for n_cut in n_cut_list:
        sol = solve_manifold(params, n_cut)
        e = _refined_energies(params, n_cut, n_lowest)
        eps_e = float(np.max(np.abs(e - ref_e) / np.abs(ref_e)))
        clusters = _degenerate_clusters(ref.energies[:n_lowest + 4], 1e-7)
        eps_s = 0.0
        for i in range(n_lowest):
            cluster = next(c for c in clusters if i in c)
            ref_block = ref.states[:, cluster]
            vec = np.zeros(ref.states.shape[0], dtype=sol.states.dtype)
            vec[:sol.states.shape[0]] = sol.states[:, i]
            overlap = np.linalg.norm(ref_block.conj().T @ vec)
            eps_s = max(eps_s, 1.0 - float(overlap))
        rows.append(ConvergenceRow(n_cut=n_cut, eps_energy=eps_e, eps_state=eps_s))
    return rows
