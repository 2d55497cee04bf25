import math

import numpy as np
import pytest

from xvcenter import hamiltonian as hx
from xvcenter import microscopic as mi

KJ_MOL_EV = 1.0364e-2   # oracle-side conversion constant


def test_morse_stiffness():
    assert mi.morse_stiffness(1e-12, 2.0) == pytest.approx(0.0, abs=1e-10)
    assert mi.morse_stiffness(100.0, 2.0) == pytest.approx(
        4.0 * mi.morse_stiffness(100.0, 1.0))
    # C-C: 2 * 3.586 eV * 4.84 A^-2
    k_cc = mi.morse_stiffness(346.0, 2.2)
    assert k_cc == pytest.approx(2.0 * 346.0 * KJ_MOL_EV * 4.84, rel=1e-3)
    assert k_cc == pytest.approx(34.7, abs=0.1)


def test_alpha_scaling():
    table = mi.bond_table()
    cc = table["C-C"]
    assert mi.estimate_alpha_x(cc, cc) == pytest.approx(2.2)
    assert mi.estimate_alpha_x(table["Sn-C"], cc) == pytest.approx(0.87, abs=0.02)
    assert mi.estimate_alpha_x(table["Pb-C"], cc) == pytest.approx(0.55, abs=0.02)


def test_phonon_energies_reference():
    ref = hx.bundled_data()["validation_targets"]["phonon_energies_mev"]
    for species in ("SiV", "GeV", "SnV", "PbV"):
        ph = mi.phonon_energies(species)
        assert ph.hbo_x_mev == pytest.approx(ref["hbo_x"][species], rel=0.02), species
        assert ph.hbo_c_xy_mev == pytest.approx(ref["hbo_c_xy"], rel=0.02)
        assert ph.hbo_c_z_mev == pytest.approx(ref["hbo_c_z"][species], rel=0.02)
        assert ph.dd_x_angstrom == pytest.approx(ref["dd_x_angstrom"][species], rel=0.05)
        assert ph.dd_c_z_angstrom == pytest.approx(
            ref["dd_c_z_angstrom"][species], rel=0.05)


def test_phonon_mass_ordering():
    energies = [mi.phonon_energies(s).hbo_x_mev for s in ("SiV", "GeV", "SnV", "PbV")]
    assert all(a > b for a, b in zip(energies, energies[1:]))


def test_harmonic_validity_margin():
    """rms displacement times the Morse width stays below 0.1 everywhere."""
    table = mi.bond_table()
    cc = table["C-C"]
    for species in ("SiV", "GeV", "SnV", "PbV"):
        ph = mi.phonon_energies(species)
        alpha_x = mi.estimate_alpha_x(table[f"{mi.SPECIES_X[species]}-C"], cc)
        assert ph.dd_x_angstrom * alpha_x < 0.1
        assert ph.dd_c_xy_angstrom * cc.alpha_per_angstrom < 0.1
        assert ph.dd_c_z_angstrom * cc.alpha_per_angstrom < 0.1


def test_coupling_estimates():
    f0, f = mi.coupling_estimates("SiV", 0.999999)
    assert f == pytest.approx(27.0, rel=1e-5)
    assert f0 / f == pytest.approx(math.sqrt(2.0), rel=1e-14)
    for species in ("SiV", "GeV", "SnV", "PbV"):
        f0, f = mi.coupling_estimates(species, 0.5)
        assert f0 == pytest.approx(math.sqrt(2.0) * f)
    tiny, _ = mi.coupling_estimates("SiV", 1e-9)
    assert tiny == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(ValueError):
        mi.coupling_estimates("SiV", 1.5)


def test_spin_orbit_prefactors():
    ref = hx.bundled_data()["validation_targets"]["so_prefactor_mev"]
    for species, (z, n) in (("SiV", (14, 3)), ("GeV", (32, 4)),
                            ("SnV", (50, 5)), ("PbV", (82, 6))):
        value = mi.so_prefactor_mev(z, n)
        assert value == pytest.approx(ref[species], rel=0.01), species
    assert mi.spin_orbit_strength("SiV", 0.9999999) == pytest.approx(52.0, abs=1.0)
    with pytest.raises(ValueError):
        mi.spin_orbit_strength("SiV", 0.0)


def test_spin_orbit_prefactor_codata_oracle():
    """Direct evaluation with CODATA constants (independent of the model
    calibration): (mu0 mu_B^2 / 40 pi a_B^3) 14^4/27 = 51.6 meV."""
    from xvcenter.constants import BOHR_MAGNETON_J_PER_T, BOHR_RADIUS_M
    codata = mi.so_prefactor_mev(14, 3, mu_b_j_per_t=BOHR_MAGNETON_J_PER_T,
                                 bohr_radius_m=BOHR_RADIUS_M)
    assert codata == pytest.approx(51.6, abs=0.3)
    # the model-convention value sits within 2% of the CODATA evaluation
    assert mi.so_prefactor_mev(14, 3) == pytest.approx(codata, rel=0.02)


def test_extract_factors_reference():
    ref = hx.bundled_data()["validation_targets"]["partition_screening"]
    rows = mi.extract_factors(hx.all_params())
    for row in rows:
        assert row.alpha_x == pytest.approx(ref[row.system]["alpha"], abs=0.005), row.system
        assert row.beta_x == pytest.approx(ref[row.system]["beta"], abs=0.005), row.system
        assert row.mu_convention == "carbon"


def test_extract_factors_identity_beta():
    lam = mi.so_prefactor_mev(50, 5)
    params = hx.ManifoldParams("SnV", "ground", 79.4, lam, 21.6)
    row = mi.extract_factors([params])[0]
    assert row.beta_x == pytest.approx(1.0, rel=1e-12)


def test_excited_factors_exceed_ground():
    rows = {r.system: r for r in mi.extract_factors(hx.all_params())}
    for species in ("SiV", "GeV", "SnV", "PbV"):
        g, e = rows[f"{species}-G"], rows[f"{species}-E"]
        assert e.alpha_x > g.alpha_x
        assert e.beta_x > g.beta_x
