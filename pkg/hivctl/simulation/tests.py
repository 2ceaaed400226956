import tempfile
from pathlib import Path

import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from common.exceptions import (
    GridTooShort,
    NonCommensurateDelay,
    NonFiniteState,
)
from dynamics.types import HistoryFunction
from scenarios.presets import (
    IC1,
    IC2,
    N_DISEASE_FREE,
    baseline_history,
    baseline_params,
)

from .certificates import boundedness_certificate, positivity_check
from .grid import Grid
from .integrator import simulate
from .trajectory import (
    Trajectory,
    final_state,
    read_trajectory_csv,
    write_trajectory_csv,
)


class GridTests(SimpleTestCase):
    def test_baseline_grid(self):
        grid = Grid.from_horizon(500.0, 0.01, 10.0)
        self.assertEqual((grid.n, grid.m), (50000, 1000))
        self.assertAlmostEqual(grid.tau, 10.0, places=9)

    def test_zero_delay(self):
        self.assertEqual(Grid.from_horizon(1.0, 0.1, 0.0).m, 0)

    def test_delay_must_be_whole_steps(self):
        self.assertRaises(
            NonCommensurateDelay, Grid.from_horizon, 500.0, 0.01, 0.015
        )
        self.assertRaises(
            NonCommensurateDelay, Grid.from_horizon, 500.005, 0.01, 10.0
        )

    def test_invalid_values_are_named(self):
        with self.assertRaises(ValidationError) as context:
            Grid.from_horizon(-1.0, 0.0, 1.0)
        self.assertEqual(sorted(context.exception.message_dict), ["dt", "tf"])


class DiseaseFreeSimulationTests(SimpleTestCase):
    """Below the infection threshold every run returns to (10, 0, 0, 0)."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = baseline_params(N_DISEASE_FREE)
        cls.grid = Grid.from_horizon(500.0, 0.01, 10.0)
        cls.runs = [
            simulate(cls.params, baseline_history(initial), cls.grid)
            for initial in (IC1, IC2)
        ]

    def test_runs_reach_disease_free_point(self):
        for traj in self.runs:
            x, y, v, z = final_state(traj)
            self.assertLessEqual(abs(x - 10.0), 0.2)
            self.assertLessEqual(y, 1e-2)
            self.assertLessEqual(v, 1e-2)
            self.assertLessEqual(z, 1e-2)

    def test_runs_stay_nonnegative(self):
        for traj in self.runs:
            self.assertTrue(positivity_check(traj).ok)

    def test_runs_respect_bound(self):
        for traj in self.runs:
            certificate = boundedness_certificate(traj, self.params)
            self.assertFalse(certificate.violated)
            self.assertLessEqual(
                certificate.max_f, certificate.bound * (1 + 1e-6)
            )

    def test_history_is_constant(self):
        traj = self.runs[1]
        np.testing.assert_array_equal(
            traj.states[: self.grid.m + 1],
            np.tile([45.0, 2.0, 1.0, 4.0], (self.grid.m + 1, 1)),
        )
        self.assertEqual(traj.state_at(-self.grid.m).x, 45.0)

    def test_no_controls_are_stored(self):
        self.assertIsNone(self.runs[0].controls)

    def test_halving_the_step_changes_little(self):
        fine = simulate(
            self.params,
            baseline_history(IC1),
            Grid.from_horizon(500.0, 0.005, 10.0),
        )
        difference = np.max(
            np.abs(np.subtract(final_state(fine), final_state(self.runs[0])))
        )
        self.assertLess(difference, 0.01 * max(final_state(fine)))


class EquilibriumStartTests(SimpleTestCase):
    def test_disease_free_start_stays_put(self):
        params = baseline_params(N_DISEASE_FREE)
        grid = Grid.from_horizon(500.0, 0.01, 10.0)
        traj = simulate(params, HistoryFunction(10.0, 0.0, 0.0, 0.0), grid)
        np.testing.assert_allclose(
            traj.states,
            np.tile([10.0, 0.0, 0.0, 0.0], (grid.n + grid.m + 1, 1)),
            atol=1e-6,
        )
        certificate = boundedness_certificate(traj, params)
        self.assertAlmostEqual(certificate.max_f, 1500.0, places=9)
        self.assertAlmostEqual(certificate.bound, 1500.0, places=9)
        self.assertFalse(certificate.violated)

    def test_ctl_free_start_stays_put(self):
        params = baseline_params()
        grid = Grid.from_horizon(100.0, 0.01, 10.0)
        traj = simulate(params, HistoryFunction(8.0, 1.0, 100.0, 0.0), grid)
        np.testing.assert_allclose(
            traj.nodes, np.tile([8.0, 1.0, 100.0, 0.0], (10001, 1)), atol=1e-6
        )


class EndemicSimulationTests(SimpleTestCase):
    def test_delayed_run_lingers_near_ctl_free_point(self):
        params = baseline_params()
        grid = Grid.from_horizon(500.0, 0.01, 10.0)
        traj = simulate(params, baseline_history(IC1), grid)
        # The CTL population nearly dies out before it recovers.
        self.assertLess(traj.state_at(20000).z, 1e-4)
        expected = (8.004, 0.997, 99.71, 0.217)
        tolerances = (1e-3, 1e-3, 1e-2, 1e-3)
        for value, target, delta in zip(
            final_state(traj), expected, tolerances
        ):
            self.assertAlmostEqual(value, target, delta=delta)
        self.assertTrue(positivity_check(traj).ok)
        self.assertFalse(boundedness_certificate(traj, params).violated)

    def test_delayed_run_reaches_full_endemic_point(self):
        params = baseline_params()
        grid = Grid.from_horizon(3000.0, 0.01, 10.0)
        traj = simulate(params, baseline_history(IC1), grid)
        expected = (25.0 / 3.0, 0.8, 80.0, 25.0 / 3.0)
        for value, target in zip(final_state(traj), expected):
            self.assertAlmostEqual(value, target, delta=1e-5 * target)

    def test_undelayed_run_approaches_full_endemic_point(self):
        params = baseline_params(tau=0.0)
        grid = Grid.from_horizon(500.0, 0.01, 0.0)
        traj = simulate(params, baseline_history(IC1), grid)
        expected = (25.0 / 3.0, 0.8, 80.0, 25.0 / 3.0)
        for value, target in zip(final_state(traj), expected):
            self.assertLessEqual(abs(value - target), 1e-3 * target)
        self.assertTrue(positivity_check(traj).ok)

    def test_zero_delay_matches_plain_euler_loop(self):
        params = baseline_params(tau=0.0)
        dt, n = 0.01, 5000
        traj = simulate(
            params, baseline_history(IC1), Grid.from_horizon(50.0, dt, 0.0)
        )

        lam, d, beta, a = params.lam, params.d, params.beta, params.a
        p, c, h, big_n, mu = (
            params.p,
            params.c,
            params.h_ctl,
            params.big_n,
            params.mu,
        )
        x, y, v, z = 5.0, 1.0, 1.0, 2.0
        expected = [(x, y, v, z)]
        for _ in range(n):
            dx = lam - d * x - beta * x * v
            dy = beta * x * v - a * y - p * y * z
            dv = a * big_n * y - mu * v
            dz = c * x * y * z - h * z
            x, y, v, z = x + dt * dx, y + dt * dy, v + dt * dv, z + dt * dz
            expected.append((x, y, v, z))

        self.assertLessEqual(
            np.max(np.abs(traj.nodes - np.array(expected))), 1e-12
        )


class FailureTests(SimpleTestCase):
    def test_large_step_diverges(self):
        grid = Grid.from_horizon(3000.0, 1.0, 10.0)
        self.assertRaises(
            NonFiniteState,
            simulate,
            baseline_params(),
            baseline_history(),
            grid,
        )

    def test_grid_built_for_another_delay(self):
        grid = Grid.from_horizon(100.0, 0.01, 5.0)
        self.assertRaises(
            NonCommensurateDelay,
            simulate,
            baseline_params(),
            baseline_history(),
            grid,
        )

    def test_controls_out_of_bounds(self):
        grid = Grid.from_horizon(1.0, 0.1, 1.0)
        controls = np.full((grid.n + 1, 2), 1.5)
        with self.assertRaises(ValidationError) as context:
            simulate(
                baseline_params(tau=1.0), baseline_history(), grid, controls
            )
        self.assertIn("controls", context.exception.message_dict)


class PositivityTests(SimpleTestCase):
    def test_hand_built_negative_state(self):
        grid = Grid.from_horizon(2.0, 1.0, 0.0)
        states = np.array(
            [[10.0, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0], [1, 1, 1, 1]]
        )
        result = positivity_check(Trajectory(grid=grid, states=states))
        self.assertFalse(result.ok)
        self.assertEqual((result.node, result.component), (1, "x"))

    def test_clamping_removes_negative_components(self):
        params = baseline_params()
        grid = Grid.from_horizon(20.0, 10.0, 10.0)
        hist = HistoryFunction(5.0, 0.0, 0.0, 2.0)

        result = positivity_check(simulate(params, hist, grid))
        self.assertFalse(result.ok)
        self.assertEqual((result.node, result.component), (1, "z"))

        clamped = simulate(params, hist, grid, clamp_nonneg=True)
        self.assertTrue(positivity_check(clamped).ok)

    def test_short_grid_has_no_certificate(self):
        params = baseline_params()
        grid = Grid.from_horizon(5.0, 0.01, 10.0)
        traj = simulate(params, baseline_history(), grid)
        self.assertRaises(GridTooShort, boundedness_certificate, traj, params)


class CsvTests(SimpleTestCase):
    def test_uncontrolled_columns_and_last_row(self):
        params = baseline_params(N_DISEASE_FREE)
        grid = Grid.from_horizon(10.0, 0.01, 1.0)
        traj = simulate(
            params.with_overrides(tau=1.0), baseline_history(), grid
        )
        with tempfile.TemporaryDirectory() as directory:
            path = write_trajectory_csv(traj, Path(directory) / "run.csv")
            columns, table = read_trajectory_csv(path)
        self.assertEqual(columns, ["t", "x", "y", "v", "z"])
        self.assertEqual(table.shape, (grid.n + 1, 5))
        self.assertAlmostEqual(table[-1, 0], 10.0, places=9)
        np.testing.assert_allclose(
            table[-1, 1:], final_state(traj), rtol=1e-10
        )

    def test_full_column_set(self):
        grid = Grid.from_horizon(0.2, 0.1, 0.1)
        traj = Trajectory(
            grid=grid,
            states=np.ones((4, 4)),
            controls=np.zeros((3, 2)),
            adjoints=np.zeros((4, 4)),
        )
        with tempfile.TemporaryDirectory() as directory:
            path = write_trajectory_csv(traj, Path(directory) / "run.csv")
            columns, table = read_trajectory_csv(path)
        self.assertEqual(len(columns), 11)
        self.assertEqual(columns[-1], "psi4")
        self.assertEqual(table.shape, (3, 11))
