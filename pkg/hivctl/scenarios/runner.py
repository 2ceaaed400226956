"""Runs a validated scenario and writes its result files.

**Functions**
    run: dispatches on the scenario mode and returns the written paths.

Output files per mode:
    simulate: trajectory.csv and simulate.json (final state, positivity
        and boundedness checks).
    equilibria: equilibria.json.
    stability: stability.json and stability.txt.
    optimize: solution.csv and optimize.json.
    figures: one CSV per published figure series.
JSON is written with sorted keys so equal scenarios give equal files.
"""

import json
import logging
from pathlib import Path

import numpy as np

from django.conf import settings

from common.exceptions import InfeasibleEquilibrium
from common.logging import LoggerDecorator
from dynamics.types import ObjectiveWeights
from equilibria.conditions import condition_values
from equilibria.points import DISEASE_FREE, FULL_ENDEMIC, all_equilibria
from optctl.solution import summarize
from optctl.sweep import sweep_iterated, sweep_single_pass
from simulation.certificates import boundedness_certificate, positivity_check
from simulation.grid import Grid
from simulation.integrator import simulate
from simulation.trajectory import final_state, write_trajectory_csv
from stability.classify import (
    classify_disease_free,
    classify_e1,
    classify_e2_tau0,
)
from stability.crossing import quasipoly_real_axis_scan

from .config import ScenarioConfig
from .presets import (
    BASELINE_WEIGHTS,
    EQUILIBRIA,
    FIGURES,
    IC1,
    IC2,
    N_DISEASE_FREE,
    OPTIMIZE,
    SIMULATE,
    STABILITY,
    baseline_history,
)


logger = logging.getLogger("scenarios")


def output_dir(out: Path | None) -> Path:
    directory = Path(out or settings.HIVCTL["OUTPUT_DIR"])
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def write_json(data: dict, path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as json_file:
        json.dump(data, json_file, indent=2, sort_keys=True)
        json_file.write("\n")
    return path


def run_simulate(config: ScenarioConfig, directory: Path) -> list[Path]:
    grid = config.grid
    traj = simulate(
        config.params, config.hist, grid, clamp_nonneg=config.clamp_nonneg
    )
    positivity = positivity_check(traj)
    summary = {
        "final_state": list(final_state(traj)),
        "positivity": positivity._asdict(),
    }
    if grid.n > grid.m:
        certificate = boundedness_certificate(traj, config.params)
        summary["boundedness"] = certificate._asdict()
    return [
        write_trajectory_csv(traj, directory / "trajectory.csv"),
        write_json({"simulate": summary}, directory / "simulate.json"),
    ]


def run_equilibria(config: ScenarioConfig, directory: Path) -> list[Path]:
    data = {
        "equilibria": [
            equilibrium.as_dict()
            for equilibrium in all_equilibria(config.params)
        ],
        "conditions": condition_values(config.params).as_dict(),
    }
    return [write_json(data, directory / "equilibria.json")]


def real_axis_evidence(config: ScenarioConfig, kind: str) -> dict:
    tau = config.params.tau
    scan = quasipoly_real_axis_scan(config.params, tau, kind=kind)
    return {
        "tau": tau,
        "sign_changes": scan.sign_changes,
        "positive": scan.positive,
    }


def run_stability(config: ScenarioConfig, directory: Path) -> list[Path]:
    params = config.params
    reports = [classify_disease_free(params), classify_e1(params)]
    skipped = []
    try:
        reports.append(classify_e2_tau0(params))
    except InfeasibleEquilibrium as error:
        logger.warning("No full endemic report: %s", error)
        skipped.append(str(error))

    entries = []
    for report in reports:
        entry = report.as_dict()
        if report.equilibrium.kind in (DISEASE_FREE, FULL_ENDEMIC):
            entry["real_axis_scan"] = real_axis_evidence(
                config, report.equilibrium.kind
            )
        entries.append(entry)
    data = {"stability": entries, "skipped": skipped}
    text_path = directory / "stability.txt"
    text_path.write_text(
        "\n".join(report.as_text() for report in reports), encoding="utf-8"
    )
    return [write_json(data, directory / "stability.json"), text_path]


def solve(config: ScenarioConfig, weights: ObjectiveWeights, grid: Grid):
    if config.iterate:
        return sweep_iterated(
            config.params,
            config.hist,
            grid,
            weights,
            tol=config.tol,
            max_iter=config.max_iter,
            relaxation=config.relax,
        )
    return sweep_single_pass(config.params, config.hist, grid, weights)


def run_optimize(config: ScenarioConfig, directory: Path) -> list[Path]:
    grid = config.grid
    solution = solve(config, config.weights, grid)
    summary = summarize(solution, config.params, config.hist, config.weights)
    return [
        write_trajectory_csv(solution.trajectory, directory / "solution.csv"),
        write_json({"optimize": summary}, directory / "optimize.json"),
    ]


def run_figures(config: ScenarioConfig, directory: Path) -> list[Path]:
    """Data of the published figures on the scenario grid.

    The first figure uses the disease-free virion count with both initial
    conditions; the others use the scenario constants.
    """
    params, grid = config.params, config.grid
    weights = config.weights or ObjectiveWeights(
        tf=config.tf, **BASELINE_WEIGHTS
    )
    paths = []
    disease_free = params.with_overrides(big_n=N_DISEASE_FREE)
    for name, initial in (("fig1_ic1", IC1), ("fig1_ic2", IC2)):
        traj = simulate(disease_free, baseline_history(initial), grid)
        paths.append(write_trajectory_csv(traj, directory / f"{name}.csv"))

    undelayed = params.with_overrides(tau=0.0)
    undelayed_grid = Grid.from_horizon(config.tf, config.dt, 0.0)
    traj = simulate(undelayed, config.hist, undelayed_grid)
    paths.append(write_trajectory_csv(traj, directory / "fig2_tau0.csv"))
    traj = simulate(params, config.hist, grid)
    paths.append(write_trajectory_csv(traj, directory / "fig2_delayed.csv"))

    solution = solve(config, weights, grid)
    paths.append(
        write_trajectory_csv(
            solution.trajectory, directory / "fig2_controlled.csv"
        )
    )
    controls_path = directory / "fig3_controls.csv"
    np.savetxt(
        controls_path,
        np.column_stack([solution.trajectory.times, solution.controls]),
        fmt="%.12g",
        delimiter=",",
        header="t,u1,u2",
        comments="",
    )
    paths.append(controls_path)
    return paths


MODE_RUNNERS = {
    SIMULATE: run_simulate,
    EQUILIBRIA: run_equilibria,
    STABILITY: run_stability,
    OPTIMIZE: run_optimize,
    FIGURES: run_figures,
}


@LoggerDecorator("scenarios")
def run(config: ScenarioConfig, out: Path | None = None) -> list[Path]:
    """Runs the scenario and writes its files.

    Args:
        config: A validated scenario.
        out: Output directory, created if missing. Defaults to
            `settings.HIVCTL["OUTPUT_DIR"]`.

    Returns:
        The written files.
    """
    directory = output_dir(out)
    paths = MODE_RUNNERS[config.mode](config, directory)
    logger.info(
        "Mode %s wrote %s", config.mode, ", ".join(str(p) for p in paths)
    )
    return paths
