import numpy as np
import pytest

from xvcenter import basis as vb
from xvcenter import hamiltonian as hx
from xvcenter.constants import MU_B_MEV_PER_T


def test_load_params_rows():
    p = hx.load_params("SnV", "excited")
    assert p.hbar_omega_mev == 75.6
    assert p.lambda_so_mev == 96.8
    assert p.e_jt_mev == 83.1
    assert p.coupling_j_mev == pytest.approx(79.26, abs=0.01)
    assert hx.load_params("PbV", "G").manifold == "ground"
    with pytest.raises(KeyError):
        hx.load_params("NV", "ground")
    with pytest.raises(KeyError):
        hx.load_params("SnV", "middle")


def test_params_validation():
    with pytest.raises(ValueError):
        hx.ManifoldParams("SnV", "ground", -1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        hx.ManifoldParams("SnV", "ground", 10.0, -1.0, 1.0)


def test_h0_bare_oscillator(small_basis):
    params = hx.ManifoldParams("SnV", "ground", 50.0, 0.0, 0.0)
    h = hx.build_h0(params, small_basis)
    diag = np.diag(h.matrix)
    assert np.allclose(h.matrix, np.diag(diag))
    assert diag.min() == pytest.approx(50.0)
    assert np.sum(np.abs(diag - 50.0) < 1e-9) == 4


def test_h0_pure_spin_orbit(small_basis):
    params = hx.ManifoldParams("SnV", "ground", 50.0, 7.0, 0.0)
    h = hx.build_h0(params, small_basis)
    ops = vb.build_orbital_spin_ops(small_basis)
    up = np.where(np.diag(ops["sigma_z"].matrix) > 0)[0]
    w = np.linalg.eigvalsh(h.matrix[np.ix_(up, up)])
    assert w[1] - w[0] == pytest.approx(7.0)


def test_h0_block_structure(small_basis, snv_ground):
    h = hx.build_h0(snv_ground, small_basis)
    assert h.hermiticity_defect() == 0.0
    ops = vb.build_orbital_spin_ops(small_basis)
    for name in ("l_z_vo", "sigma_z"):
        lab = ops[name].matrix
        assert np.array_equal(h.matrix @ lab, lab @ h.matrix), name


def test_h0_matches_spin_blocks(small_basis, snv_ground):
    full = hx.build_h0(snv_ground, small_basis).matrix
    w_full = np.linalg.eigvalsh(full)
    w_blocks = []
    for spin in (+1, -1):
        hb, _ = hx.build_h0_spin_block(snv_ground, small_basis.n_cut, spin)
        w_blocks.append(np.linalg.eigvalsh(hb))
    merged = np.sort(np.concatenate(w_blocks))
    assert np.allclose(w_full, merged, atol=1e-10)


def test_strain_hamiltonian(small_basis):
    zero = hx.build_h_strain(0.0, 0.3, small_basis)
    assert np.all(zero.matrix == 0)
    gamma = 0.8
    h = hx.build_h_strain(gamma, 0.3, small_basis)
    w = np.linalg.eigvalsh(h.matrix)
    assert np.max(np.abs(w)) == pytest.approx(gamma, rel=1e-12)
    assert h.hermiticity_defect() < 1e-15


def test_strain_keeps_double_degeneracy(small_basis, snv_ground):
    h0 = hx.build_h0(snv_ground, small_basis).matrix
    hs = hx.build_h_strain(0.6, 1.1, small_basis).matrix
    w = np.linalg.eigvalsh(h0 + hs)
    gaps = w[1::2] - w[0::2]
    assert gaps.max() < 1e-9 * np.abs(w).max()


def test_zeeman_forms(small_basis, snv_ground):
    zero = hx.build_h_zeeman((0.0, 0.0, 0.0), small_basis)
    assert np.all(zero.matrix == 0)
    hz = hx.build_h_zeeman((0.0, 0.0, 1.0), small_basis)
    # spin part alone: +- mu_B Bz = +- 14.1 GHz = +- 0.0583 meV
    spin_part = MU_B_MEV_PER_T * 1.0
    assert spin_part == pytest.approx(0.0583, abs=2e-4)
    ops = vb.build_orbital_spin_ops(small_basis)
    expected = MU_B_MEV_PER_T * (0.5 * ops["tau_z"].matrix + ops["sigma_z"].matrix)
    assert np.allclose(hz.matrix, expected)
    # transverse field keeps Kramers pairs
    h0 = hx.build_h0(snv_ground, small_basis).matrix
    hb = hx.build_h_zeeman((0.4, 0.0, 0.0), small_basis).matrix
    w = np.linalg.eigvalsh(h0 + hb)
    assert (w[1::2] - w[0::2]).max() < 1e-9 * np.abs(w).max()
    with pytest.raises(ValueError):
        hx.build_h_zeeman((np.inf, 0.0, 0.0), small_basis)


def test_strain_plus_transverse_field_lifts_degeneracy(small_basis, snv_ground):
    h = (hx.build_h0(snv_ground, small_basis).matrix
         + hx.build_h_strain(0.5, 0.9, small_basis).matrix
         + hx.build_h_zeeman((0.0, 0.5, 0.0), small_basis).matrix)
    w = np.linalg.eigvalsh(h)
    assert (w[1::2] - w[0::2]).max() > 1e-6 * snv_ground.hbar_omega_mev


def test_time_reversal(small_basis, snv_excited):
    t = hx.build_time_reversal(small_basis)
    assert np.allclose(t.squared(), -np.eye(small_basis.dim))
    h0 = hx.build_h0(snv_excited, small_basis)
    assert (np.linalg.norm(t.conjugate(h0.matrix) - h0.matrix)
            / np.linalg.norm(h0.matrix)) < 1e-12
    # T maps labels (l, s) -> (-l, -s)
    ops = vb.build_orbital_spin_ops(small_basis)
    w, v = np.linalg.eigh(h0.matrix)
    psi = v[:, 0]
    phi = t.apply(psi)
    for op in (ops["l_z_vo"].matrix, ops["sigma_z"].matrix):
        a = np.real(psi.conj() @ op @ psi)
        b = np.real(phi.conj() @ op @ phi)
        assert b == pytest.approx(-a, abs=1e-10)


def test_joint_reflection(small_basis, snv_ground, rng):
    h0 = hx.build_h0(snv_ground, small_basis).matrix
    norm = np.linalg.norm(h0)
    for _ in range(8):
        theta, phi = rng.uniform(0.0, 2 * np.pi, size=2)
        f = hx.build_joint_reflection(theta, phi, small_basis).matrix
        assert np.linalg.norm(f @ h0 - h0 @ f) / norm < 1e-12
        f2 = f @ f
        # squares to a global phase times identity
        phase = f2[0, 0]
        assert abs(abs(phase) - 1.0) < 1e-12
        assert np.allclose(f2, phase * np.eye(small_basis.dim), atol=1e-12)


def test_joint_reflection_matches_strain_axis(small_basis, snv_ground):
    theta0 = 0.77
    h = (hx.build_h0(snv_ground, small_basis).matrix
         + hx.build_h_strain(0.5, theta0, small_basis).matrix)
    norm = np.linalg.norm(h)
    good = hx.build_joint_reflection(theta0, 0.2, small_basis).matrix
    assert np.linalg.norm(good @ h - h @ good) / norm < 1e-12
    bad = hx.build_joint_reflection(theta0 + 0.5, 0.2, small_basis).matrix
    assert np.linalg.norm(bad @ h - h @ bad) / norm > 1e-6
