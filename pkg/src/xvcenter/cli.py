"""Command-line entry point.

Subcommands
    spectrum       eigenvalues, PL/PLE line list, optional convergence report
    scubed         stress -> strain -> spectrum conversion
    tables         regenerate the reference tables with a pass/fail summary
    quench-report  quench factors and precision columns for all systems
    probe          intrinsic-strain inversion from a measured splitting

Exit codes: 0 success, 2 usage error, 3 validation failure, 4 numerical
failure.  All physical inputs carry unit suffixes; a JSON config file can
provide any option, with command-line flags taking precedence.
"""

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .constants import GHZ_PER_MEV, MU_B_MEV_PER_T
from . import elasticity as el
from .fields import invert_intrinsic_strain, probe_splitting, ProbeModel
from .hamiltonian import SPECIES, all_params, bundled_data, load_params
from .microscopic import extract_factors
from .optics import boltzmann_populations, dipole_matrices, pl_ple_spectrum, zpl_fraction
from .quench import quench_table
from .scubed import ScubedRequest, run_scubed
from .solver import convergence_study, lowest_splitting_mev, solve_manifold

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4


def _write_rows(path: Path, rows: list[dict], fmt: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")
        return
    with path.open("w", newline="", encoding="utf-8") as fh:
        if not rows:
            return
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def _out_path(args, name: str) -> Path:
    ext = "json" if args.format == "json" else "csv"
    return Path(args.output) / f"{name}.{ext}"


def cmd_spectrum(args) -> int:
    params_g = load_params(args.species, "ground")
    params_e = load_params(args.species, "excited")
    zpl_thz = bundled_data()["zpl_reference_thz"][args.species]

    sol_g = solve_manifold(params_g, args.n_cut)
    sol_e = solve_manifold(params_e, args.n_cut)
    n_states = 8
    level_rows = []
    for name, sol in (("ground", sol_g), ("excited", sol_e)):
        for i in range(n_states):
            level_rows.append({
                "manifold": name, "index": i,
                "energy_mev": sol.energies[i] - sol.energies[0],
                "l_vo": sol.l_vo[i],
            })
    _write_rows(_out_path(args, f"{args.species}_levels"), level_rows, args.format)

    dip = dipole_matrices(sol_g, sol_e, n_states)
    pops_e = boltzmann_populations(sol_e.energies[:n_states], args.temp_k)
    pops_g = boltzmann_populations(sol_g.energies[:n_states], args.temp_k)
    for mode, pops in (("PL", pops_e), ("PLE", pops_g)):
        lines = pl_ple_spectrum(dip, pops, mode, zpl_thz=zpl_thz)
        rows = [{"label": ln.label, "energy_thz": ln.energy_thz,
                 "intensity": ln.intensity, "polarization": ln.polarization}
                for ln in lines]
        _write_rows(_out_path(args, f"{args.species}_{mode.lower()}"), rows, args.format)

    if args.check_convergence:
        cuts = [c for c in (8, 10, 12, 16, 20) if c < args.reference_n_cut]
        rows = []
        for params in (params_g, params_e):
            for row in convergence_study(params, cuts, args.reference_n_cut):
                rows.append({"manifold": params.manifold, "n_cut": row.n_cut,
                             "eps_energy": row.eps_energy, "eps_state": row.eps_state})
        _write_rows(_out_path(args, f"{args.species}_convergence"), rows, args.format)
    return EXIT_OK


def cmd_scubed(args) -> int:
    req = ScubedRequest(
        zpl_nm=args.zpl_nm,
        ground_splitting_ghz=args.ground_split_ghz,
        excited_splitting_ghz=args.excited_split_ghz,
        stress_gpa=args.stress_gpa,
        stress_direction=tuple(args.direction),
        species=args.species,
        orientation=args.orientation,
        n_points=args.n_points,
    )
    result = run_scubed(req, n_cut=args.n_cut)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        (out / "scubed.json").write_text(
            json.dumps(result.as_dict(), indent=2) + "\n", encoding="utf-8")
    else:
        rows = []
        for i, s in enumerate(result.stress_gpa_grid):
            rows.append({
                "stress_gpa": s,
                "ground_splitting_ghz": result.ground_splitting_ghz[i],
                "excited_splitting_ghz": result.excited_splitting_ghz[i],
                "zpl_shift_ghz": result.zpl_shift_ghz[i],
                "zpl_nm": result.zpl_nm[i],
                "line_a1_thz": result.lines_thz[i][0],
                "line_a3_thz": result.lines_thz[i][1],
                "line_c1_thz": result.lines_thz[i][2],
                "line_c3_thz": result.lines_thz[i][3],
            })
        _write_rows(out / "scubed_curves.csv", rows, "csv")
        tensor_rows = [{"frame": fr, "row": i,
                        "c1": t.matrix[i][0], "c2": t.matrix[i][1], "c3": t.matrix[i][2]}
                       for fr, t in (("diamond", result.strain_diamond),
                                     ("xv", result.strain_xv))
                       for i in range(3)]
        _write_rows(out / "scubed_strain.csv", tensor_rows, "csv")
    return EXIT_OK


def _splitting_worker(params_ncut):
    params, n_cut = params_ncut
    return lowest_splitting_mev(params, n_cut) * GHZ_PER_MEV


def cmd_tables(args) -> int:
    targets = bundled_data()["validation_targets"]
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    summary = []

    def check(name, ok):
        summary.append({"table": name, "status": "pass" if ok else "FAIL"})

    # lowest splittings
    work = [(p, args.n_cut) for p in all_params()]
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            values = list(pool.map(_splitting_worker, work))
    else:
        values = [_splitting_worker(w) for w in work]
    rows, ok = [], True
    for params, value in zip(all_params(), values):
        target = targets["lowest_splitting_ghz"][params.key]
        rows.append({"system": params.key, "splitting_ghz": value,
                     "reference_ghz": target, "rel_dev": value / target - 1.0})
        ok &= abs(value / target - 1.0) <= 0.02
    _write_rows(out / f"lowest_splittings.{args.format}", rows, args.format)
    check("lowest_splittings", ok)

    # quench factors
    rows = quench_table(all_params(), n_cut=24)
    ok = True
    for row in rows:
        ref = targets["quench_table"][row["system"]]
        for ours, theirs in (("p", "p"), ("p_prime", "p_prime"),
                             ("q", "q"), ("q_prime", "q_prime")):
            ok &= abs(row[ours] - ref[theirs]) <= 0.01
    _write_rows(out / f"quench_factors.{args.format}", rows, args.format)
    check("quench_factors", ok)

    # Boltzmann populations for SnV
    ref = targets["boltzmann_snv"]
    rows, ok = [], True
    for manifold, key in (("ground", "ground_populations"),
                          ("excited", "excited_populations")):
        sol = solve_manifold(load_params("SnV", manifold), 24)
        for temp, ref_pops in ref[key].items():
            pops = boltzmann_populations(sol.energies[:8], float(temp))
            for i, (val, tgt) in enumerate(zip(pops, ref_pops)):
                rows.append({"manifold": manifold, "T_K": float(temp), "level": i,
                             "population": val, "reference": tgt})
                ok &= abs(val - tgt) <= 0.01
    _write_rows(out / f"boltzmann.{args.format}", rows, args.format)
    check("boltzmann", ok)

    # voltage -> strain
    dims = el.CantileverDims(**bundled_data()["cantilever_prism_um"])
    rows, ok = [], True
    for volt, tgt in targets["volt_str_1e4"].items():
        row = el.volt_str_row(float(volt), dims)
        value = row["eps_xx_minus_yy"] * 1e4
        rows.append({"voltage_v": float(volt), "eps_xx_minus_yy_1e4": value,
                     "reference_1e4": tgt, "rel_dev": value / tgt - 1.0})
        ok &= abs(value / tgt - 1.0) <= 0.01
    _write_rows(out / f"volt_str.{args.format}", rows, args.format)
    check("volt_str", ok)

    # partition / screening factors
    rows, ok = [], True
    for fr in extract_factors(all_params()):
        ref = targets["partition_screening"][fr.system]
        rows.append({"system": fr.system, "alpha": fr.alpha_x, "beta": fr.beta_x,
                     "alpha_ref": ref["alpha"], "beta_ref": ref["beta"],
                     "mu_convention": fr.mu_convention})
        ok &= abs(fr.alpha_x - ref["alpha"]) <= 0.005
        ok &= abs(fr.beta_x - ref["beta"]) <= 0.005
    _write_rows(out / f"partition_screening.{args.format}", rows, args.format)
    check("partition_screening", ok)

    # ZPL fractions at 50 K
    rows, ok = [], True
    for species in SPECIES:
        frac = zpl_fraction(species, 50.0)
        tgt = targets["zpl_fraction_50k"][species]
        rows.append({"species": species, "zpl_fraction": frac, "reference": tgt})
        ok &= abs(frac - tgt) <= 0.02
    _write_rows(out / f"zpl_fractions.{args.format}", rows, args.format)
    check("zpl_fractions", ok)

    _write_rows(out / f"summary.{args.format}", summary, args.format)
    for row in summary:
        print(f"{row['table']}: {row['status']}")
    return EXIT_OK


def cmd_quench_report(args) -> int:
    rows = quench_table(all_params(), n_cut=args.n_cut)
    _write_rows(_out_path(args, "quench_report"), rows, args.format)
    return EXIT_OK


def cmd_probe(args) -> int:
    delta0_mev = args.delta0_ghz / GHZ_PER_MEV
    delta_sm_mev = args.delta_sm_mhz / 1e3 / GHZ_PER_MEV
    gamma0_mev = invert_intrinsic_strain(delta_sm_mev, delta0_mev, args.b_y_tesla)
    model = ProbeModel(delta0_mev, gamma0_mev, args.b_y_tesla)
    result = {
        "gamma0_ghz": gamma0_mev * GHZ_PER_MEV,
        "gamma0_mev": gamma0_mev,
        "delta_s_ghz": probe_splitting(model).delta_s_mev * GHZ_PER_MEV,
        "mu_b_by_mev": MU_B_MEV_PER_T * args.b_y_tesla,
    }
    if args.species:
        susc = el.susceptibilities_for(load_params(args.species, "ground"))
        # equivalent pure eps_xx - eps_yy strain producing gamma0 unquenched
        result["equivalent_strain_exx_minus_eyy"] = gamma0_mev / susc.d
    print(json.dumps(result, indent=2))
    return EXIT_OK


def _add_common(parser):
    parser.add_argument("--output", default="out", help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--config", help="JSON file with defaults for any option")
    parser.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xvcenter",
                                     description="group-IV-vacancy color center toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="levels, PL/PLE lines, convergence")
    sp.add_argument("--species", required=True, choices=SPECIES)
    sp.add_argument("--n-cut", dest="n_cut", type=int, default=20)
    sp.add_argument("--temp", dest="temp_k", type=float, default=100.0,
                    help="temperature in K")
    sp.add_argument("--check-convergence", action="store_true")
    sp.add_argument("--reference-n-cut", dest="reference_n_cut", type=int, default=30)
    _add_common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sc = sub.add_parser("scubed", help="stress-strain-spectrum converter")
    sc.add_argument("--zpl-nm", dest="zpl_nm", type=float, required=True)
    sc.add_argument("--ground-split-ghz", dest="ground_split_ghz", type=float, required=True)
    sc.add_argument("--excited-split-ghz", dest="excited_split_ghz", type=float, required=True)
    sc.add_argument("--stress-gpa", dest="stress_gpa", type=float, required=True)
    sc.add_argument("--direction", type=float, nargs=3, default=(0.0, 0.0, 1.0),
                    metavar=("DX", "DY", "DZ"))
    sc.add_argument("--species", default="SiV", choices=SPECIES)
    sc.add_argument("--orientation", default="111")
    sc.add_argument("--n-points", dest="n_points", type=int, default=21)
    sc.add_argument("--n-cut", dest="n_cut", type=int, default=20)
    _add_common(sc)
    sc.set_defaults(func=cmd_scubed)

    tb = sub.add_parser("tables", help="regenerate reference tables")
    tb.add_argument("--n-cut", dest="n_cut", type=int, default=20)
    _add_common(tb)
    tb.set_defaults(func=cmd_tables)

    qr = sub.add_parser("quench-report", help="quench factors for all systems")
    qr.add_argument("--n-cut", dest="n_cut", type=int, default=24)
    _add_common(qr)
    qr.set_defaults(func=cmd_quench_report)

    pr = sub.add_parser("probe", help="intrinsic strain from a measured splitting")
    pr.add_argument("--delta0-ghz", dest="delta0_ghz", type=float, required=True)
    pr.add_argument("--b-y-tesla", dest="b_y_tesla", type=float, required=True)
    pr.add_argument("--delta-sm-mhz", dest="delta_sm_mhz", type=float, required=True)
    pr.add_argument("--species", choices=SPECIES)
    _add_common(pr)
    pr.set_defaults(func=cmd_probe)
    return parser


def _apply_config(args, parser, argv):
    if not getattr(args, "config", None):
        return args
    try:
        overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file: {exc}")
    explicit = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            continue
        if f"--{key.replace('_', '-')}" in explicit:
            continue                      # flags win over file values
        setattr(args, attr, value)
    return args


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _apply_config(args, parser, argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except np.linalg.LinAlgError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
