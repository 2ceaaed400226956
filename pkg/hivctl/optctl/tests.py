import math

import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from common.exceptions import GridTooShort, MissingControls
from dynamics.types import ControlPair, HistoryFunction, State
from scenarios.presets import N_DISEASE_FREE, baseline_params, baseline_weights
from simulation.grid import Grid
from simulation.integrator import simulate
from simulation.trajectory import Trajectory, final_state

from .adjoint import (
    TERMINAL_ADJOINT,
    Adjoint,
    adjoint_rhs,
    control_from_costate,
)
from .objective import (
    constant_control_baseline,
    constant_controls,
    evaluate_objective,
)
from .solution import summarize, switch_count
from .sweep import (
    SCHEME_NOTES,
    backward_pass,
    control_update,
    sweep_iterated,
    sweep_single_pass,
    sweep_stalled,
)


IC1 = HistoryFunction(5.0, 1.0, 1.0, 2.0)
SHORT_TF = 20.0
SHORT_DT = 0.05


def reference_step(params, dt, state, u1, u2):
    """One Euler step of the undelayed model, written out term by term."""
    x, y, v, z = state
    infection = params.beta * (1 - u1)
    return (
        x + dt * (params.lam - params.d * x - infection * x * v),
        y + dt * (infection * x * v - params.a * y - params.p * y * z),
        v + dt * (params.a * params.big_n * (1 - u2) * y - params.mu * v),
        z + dt * (params.c * x * y * z - params.h_ctl * z),
    )


def reference_costate_step(params, dt, costates, state, u1, u2):
    """One backward step of the undelayed costate equations."""
    x, y, v, z = state
    q1, q2, q3, q4 = costates
    infection = params.beta * (1 - u1)
    production = params.a * params.big_n * (1 - u2)
    killing = params.c * x * y
    dq1 = (
        1
        + q1 * (params.d + infection * v)
        - q4 * params.c * y * z
        - q2 * infection * v
    )
    dq2 = (
        q2 * (params.a + params.p * z)
        - q3 * production
        - q4 * params.c * x * z
    )
    dq3 = q1 * infection * x + q3 * params.mu - q2 * infection * x
    dq4 = 1 + q2 * params.p * y + q4 * (params.h_ctl - killing)
    return q1 - dt * dq1, q2 - dt * dq2, q3 - dt * dq3, q4 - dt * dq4


def reference_controls(params, weights, state, costates):
    x, y, v, _ = state
    q1, q2, q3, _ = costates
    raw1 = params.beta / weights.A1 * (q2 - q1) * v * x
    raw2 = q3 * params.a * params.big_n * y / weights.A2
    return min(1.0, max(0.0, raw1)), min(1.0, max(0.0, raw2))


def reference_objective(states, u1, u2, dt, weights):
    values = [
        x + z - weights.A1 / 2 * w1**2 - weights.A2 / 2 * w2**2
        for (x, _, _, z), w1, w2 in zip(states, u1, u2)
    ]
    return dt * (sum(values) - (values[0] + values[-1]) / 2)


def reference_forward(params, hist, dt, n, u1, u2):
    states = [(hist.x0, hist.y0, hist.v0, hist.z0)]
    for i in range(n):
        states.append(reference_step(params, dt, states[-1], u1[i], u2[i]))
    return states


def reference_single_pass(params, hist, dt, n, weights):
    """The single-loop scheme without delay."""
    states = [(hist.x0, hist.y0, hist.v0, hist.z0)]
    u1, u2 = [0.0] * (n + 1), [0.0] * (n + 1)
    costates = [(0.0, 0.0, 0.0, 0.0)] * (n + 1)
    for i in range(n):
        states.append(reference_step(params, dt, states[i], u1[i], u2[i]))
        costates[n - i - 1] = reference_costate_step(
            params, dt, costates[n - i], states[i + 1], u1[i], u2[i]
        )
        u1[i + 1], u2[i + 1] = reference_controls(
            params, weights, states[i + 1], costates[n - i - 1]
        )
    return reference_objective(states, u1, u2, dt, weights)


def reference_iterated(params, hist, dt, n, weights, tol, max_iter, relax):
    """Relaxed forward-backward sweep of the undelayed problem.

    The weight of the new controls is halved after a sweep whose change
    did not shrink by a tenth or whose objective fell.
    """
    u1, u2 = [0.0] * (n + 1), [0.0] * (n + 1)
    changes, objectives = [], []
    for _ in range(max_iter):
        states = reference_forward(params, hist, dt, n, u1, u2)
        objectives.append(reference_objective(states, u1, u2, dt, weights))
        stalled = len(changes) >= 2 and changes[-1] >= 0.9 * changes[-2]
        if len(objectives) >= 2:
            drop = objectives[-2] - objectives[-1]
            stalled = stalled or drop > 1e-9 * abs(objectives[-2])
        if stalled:
            relax *= 0.5
        costates = [(0.0, 0.0, 0.0, 0.0)] * (n + 1)
        for k in range(n, 0, -1):
            costates[k - 1] = reference_costate_step(
                params, dt, costates[k], states[k], u1[k], u2[k]
            )
        new1, new2 = [], []
        for k in range(n + 1):
            raw1, raw2 = reference_controls(
                params, weights, states[k], costates[k]
            )
            new1.append((1 - relax) * u1[k] + relax * raw1)
            new2.append((1 - relax) * u2[k] + relax * raw2)
        change = max(abs(new - old) for new, old in zip(new1 + new2, u1 + u2))
        changes.append(change)
        scale = max(max(new1), max(new2), 1e-12)
        u1, u2 = new1, new2
        if change <= tol * scale:
            break
    states = reference_forward(params, hist, dt, n, u1, u2)
    return reference_objective(states, u1, u2, dt, weights)


class AdjointTests(SimpleTestCase):
    def setUp(self):
        self.params = baseline_params()
        self.state = State(8.33, 0.8, 80.0, 8.333)
        self.ones = Adjoint(1.0, 1.0, 1.0, 1.0)

    def test_zero_costates(self):
        for active in (True, False):
            rhs = adjoint_rhs(
                self.state,
                TERMINAL_ADJOINT,
                TERMINAL_ADJOINT,
                ControlPair(0.3, 0.7),
                ControlPair(0.1, 0.2),
                self.params,
                active,
            )
            self.assertEqual(rhs, (1.0, 0.0, 0.0, 1.0))

    def test_unit_costates(self):
        rhs = adjoint_rhs(
            self.state,
            self.ones,
            self.ones,
            ControlPair(),
            ControlPair(),
            self.params,
            True,
        )
        d, beta, a, p, c, h = 0.1, 0.00025, 0.2, 0.001, 0.03, 0.2
        x, y, v, z = 8.33, 0.8, 80.0, 8.333
        expected = (
            1 + (d + beta * v) - c * y * z - beta * v,
            a - a * 1500 - c * x * z + p * z,
            beta * x + 3 - beta * x,
            1 + p * y + (h - c * x * y),
        )
        for value, target in zip(rhs, expected):
            self.assertAlmostEqual(value, target, delta=1e-12)
        self.assertAlmostEqual(rhs.psi1, 0.900008, delta=1e-12)
        self.assertAlmostEqual(rhs.psi4, 1.00088, delta=1e-12)

    def test_advanced_terms_are_gated(self):
        garbage = Adjoint(*([math.nan] * 4))
        for u in (ControlPair(), ControlPair(0.4, 0.9)):
            inactive = adjoint_rhs(
                self.state,
                self.ones,
                garbage,
                u,
                ControlPair(math.nan, math.inf),
                self.params,
                False,
            )
            zeros = adjoint_rhs(
                self.state,
                self.ones,
                TERMINAL_ADJOINT,
                u,
                ControlPair(),
                self.params,
                False,
            )
            self.assertEqual(inactive, zeros)
            active = adjoint_rhs(
                self.state, self.ones, self.ones, u, u, self.params, True
            )
            self.assertNotEqual(active.psi1, zeros.psi1)
            self.assertNotEqual(active.psi3, zeros.psi3)

    def test_control_characterization(self):
        weights = baseline_weights()
        self.assertEqual(
            control_from_costate(
                self.state, self.state, TERMINAL_ADJOINT, self.params, weights
            ),
            (0.0, 0.0),
        )
        infected = State(10.0, 1.0, 0.0, 0.0)
        u = control_from_costate(
            infected,
            infected,
            Adjoint(0.0, 0.0, 1.0, 0.0),
            self.params,
            weights,
        )
        self.assertEqual(u.u2, 1.0)
        u = control_from_costate(
            infected,
            infected,
            Adjoint(0.0, 0.0, 1.0, 0.0),
            self.params,
            weights.with_overrides(A2=400.0),
        )
        self.assertAlmostEqual(u.u2, 0.75)
        u = control_from_costate(
            State(0.0, 0.0, 0.0, 0.0),
            State(5.0, 0.0, 1.0, 0.0),
            Adjoint(0.0, 1e5, 0.0, 0.0),
            self.params,
            weights,
        )
        self.assertEqual(u, (1.0, 0.0))
        u = control_from_costate(
            State(0.0, 0.0, 0.0, 0.0),
            State(5.0, 0.0, 1.0, 0.0),
            Adjoint(0.0, 1e3, 0.0, 0.0),
            self.params,
            weights,
        )
        self.assertAlmostEqual(u.u1, 0.00025 / 30 * 5e3)


class ObjectiveTests(SimpleTestCase):
    def setUp(self):
        self.grid = Grid.from_horizon(500.0, 1.0, 0.0)
        self.states = np.tile([10.0, 0.0, 0.0, 0.0], (501, 1))
        self.weights = baseline_weights()

    def test_constant_state(self):
        for level, expected in ((0.0, 5000.0), (1.0, -12500.0)):
            traj = Trajectory(
                grid=self.grid,
                states=self.states,
                controls=constant_controls(self.grid, level, level),
            )
            self.assertAlmostEqual(
                evaluate_objective(traj, self.weights), expected, places=6
            )

    def test_controls_are_required(self):
        with self.assertRaises(MissingControls):
            evaluate_objective(
                Trajectory(grid=self.grid, states=self.states), self.weights
            )

    def test_constant_baseline(self):
        params = baseline_params(tau=1.0)
        grid = Grid.from_horizon(10.0, 0.1, 1.0)
        weights = baseline_weights(10.0)
        objectives = constant_control_baseline(params, IC1, grid, weights)
        self.assertEqual(len(objectives), 25)
        untreated = simulate(
            params, IC1, grid, constant_controls(grid, 0.0, 0.0)
        )
        self.assertEqual(
            objectives[(0.0, 0.0)], evaluate_objective(untreated, weights)
        )
        # Full treatment costs 35 a day and cannot pay off in 10 days.
        self.assertLess(objectives[(1.0, 1.0)], objectives[(0.0, 0.0)])

    def test_switch_count(self):
        self.assertEqual(switch_count(np.array([0.0, 1.0, 0.2, 0.6])), 3)
        self.assertEqual(switch_count(np.array([0.5, 0.7, 1.0])), 0)


class SinglePassTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = baseline_params()
        cls.grid = Grid.from_horizon(SHORT_TF, SHORT_DT, 10.0)
        cls.weights = baseline_weights(SHORT_TF)
        cls.solution = sweep_single_pass(
            cls.params, IC1, cls.grid, cls.weights
        )

    def test_solution_shape(self):
        solution, grid = self.solution, self.grid
        self.assertEqual(solution.iterations, 1)
        self.assertIsNone(solution.converged)
        self.assertEqual(solution.notes, list(SCHEME_NOTES))
        self.assertEqual(solution.controls.shape, (grid.n + 1, 2))
        self.assertEqual(
            solution.trajectory.adjoints.shape, (grid.n + grid.m + 1, 4)
        )

    def test_transversality_and_bounds(self):
        adjoints = self.solution.trajectory.adjoints
        self.assertTrue(np.all(adjoints[self.grid.n :] == 0.0))
        controls = self.solution.controls
        self.assertTrue(np.all((controls >= 0.0) & (controls <= 1.0)))
        np.testing.assert_array_equal(controls[0], [0.0, 0.0])
        self.assertTrue(np.any(controls > 0.0))

    def test_controls_follow_from_costates(self):
        traj, grid = self.solution.trajectory, self.grid
        for j in range(1, grid.n + 1):
            costates = Adjoint(*traj.adjoints[grid.n - j].tolist())
            u = control_from_costate(
                traj.state_at(j),
                traj.state_at(j - grid.m),
                costates,
                self.params,
                self.weights,
            )
            self.assertEqual(u, tuple(traj.controls[j]))

    def test_objective_matches_trajectory(self):
        self.assertEqual(
            self.solution.objective,
            evaluate_objective(self.solution.trajectory, self.weights),
        )

    def test_disease_free_start(self):
        params = baseline_params(N_DISEASE_FREE)
        grid = Grid.from_horizon(100.0, 0.01, 10.0)
        solution = sweep_single_pass(
            params,
            HistoryFunction(10.0, 0.0, 0.0, 0.0),
            grid,
            baseline_weights(100.0),
        )
        self.assertTrue(np.all(solution.controls == 0.0))
        np.testing.assert_allclose(
            solution.trajectory.nodes,
            np.tile([10.0, 0.0, 0.0, 0.0], (grid.n + 1, 1)),
            atol=1e-6,
        )

    def test_zero_delay_matches_reference(self):
        params = baseline_params(tau=0.0)
        grid = Grid.from_horizon(SHORT_TF, SHORT_DT, 0.0)
        solution = sweep_single_pass(params, IC1, grid, self.weights)
        expected = reference_single_pass(
            params, IC1, SHORT_DT, grid.n, self.weights
        )
        self.assertAlmostEqual(
            solution.objective, expected, delta=1e-8 * abs(expected)
        )

    def test_preconditions(self):
        grid = Grid.from_horizon(5.0, SHORT_DT, 10.0)
        self.assertRaises(
            GridTooShort,
            sweep_single_pass,
            self.params,
            IC1,
            grid,
            baseline_weights(5.0),
        )
        with self.assertRaises(ValidationError) as context:
            sweep_single_pass(self.params, IC1, self.grid, baseline_weights())
        self.assertEqual(list(context.exception.message_dict), ["tf"])


class IteratedSweepTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = baseline_params()
        cls.grid = Grid.from_horizon(SHORT_TF, SHORT_DT, 10.0)
        cls.weights = baseline_weights(SHORT_TF)
        cls.solution = sweep_iterated(
            cls.params,
            IC1,
            cls.grid,
            cls.weights,
            tol=1e-4,
            max_iter=200,
            relaxation=0.5,
        )

    def test_solution(self):
        solution = self.solution
        self.assertIsInstance(solution.converged, bool)
        self.assertLessEqual(solution.iterations, 200)
        self.assertEqual(
            len(solution.objective_history), solution.iterations + 1
        )
        tail = solution.trajectory.adjoints[self.grid.n :]
        self.assertTrue(np.all(tail == 0.0))
        controls = solution.controls
        self.assertTrue(np.all((controls >= 0.0) & (controls <= 1.0)))
        self.assertEqual(
            solution.objective,
            evaluate_objective(solution.trajectory, self.weights),
        )

    def test_costates_belong_to_returned_controls(self):
        traj = self.solution.trajectory
        np.testing.assert_array_equal(
            traj.adjoints,
            backward_pass(self.params, self.grid, traj.states, traj.controls),
        )

    def test_stalled_sweeps(self):
        self.assertFalse(sweep_stalled([], [10.0]))
        self.assertFalse(sweep_stalled([0.4, 0.2], [10.0, 11.0]))
        self.assertTrue(sweep_stalled([0.1088, 0.1088], [10.0, 11.0]))
        self.assertTrue(sweep_stalled([0.4, 0.2], [11.0, 10.0]))
        self.assertFalse(sweep_stalled([0.4], [10.0, 10.0 - 1e-12]))

    def test_beats_constant_treatments(self):
        baseline = constant_control_baseline(
            self.params, IC1, self.grid, self.weights
        )
        self.assertGreaterEqual(
            self.solution.objective - max(baseline.values()), -1e-6
        )

    def test_one_full_step(self):
        solution = sweep_iterated(
            self.params,
            IC1,
            self.grid,
            self.weights,
            max_iter=1,
            relaxation=1.0,
        )
        self.assertEqual(solution.iterations, 1)
        untreated = simulate(
            self.params,
            IC1,
            self.grid,
            constant_controls(self.grid, 0.0, 0.0),
        )
        adjoints = backward_pass(
            self.params, self.grid, untreated.states, untreated.controls
        )
        np.testing.assert_array_equal(
            solution.controls,
            control_update(
                self.params,
                self.grid,
                self.weights,
                untreated.states,
                adjoints,
            ),
        )

    def test_zero_delay_matches_reference(self):
        params = baseline_params(tau=0.0)
        grid = Grid.from_horizon(SHORT_TF, SHORT_DT, 0.0)
        solution = sweep_iterated(
            params, IC1, grid, self.weights, 1e-4, 50, 0.5
        )
        expected = reference_iterated(
            params, IC1, SHORT_DT, grid.n, self.weights, 1e-4, 50, 0.5
        )
        self.assertAlmostEqual(
            solution.objective, expected, delta=1e-8 * abs(expected)
        )

    def test_invalid_settings(self):
        with self.assertRaises(ValidationError) as context:
            sweep_iterated(
                self.params,
                IC1,
                self.grid,
                self.weights,
                tol=0.0,
                max_iter=0,
                relaxation=1.5,
            )
        self.assertEqual(
            sorted(context.exception.message_dict),
            ["max_iter", "relaxation", "tol"],
        )

    def test_summary(self):
        summary = summarize(self.solution, self.params, IC1, self.weights)
        self.assertEqual(summary["objective"], self.solution.objective)
        self.assertEqual(
            summary["u2_mean"], float(np.mean(self.solution.controls[:, 1]))
        )
        self.assertGreaterEqual(summary["u1_switch_count"], 0)
        self.assertGreaterEqual(
            summary["objective"], summary["zero_control_objective"] - 1e-6
        )


class TreatmentScenarioTests(SimpleTestCase):
    """Single pass on the endemic scenario at the default resolution."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = baseline_params()
        cls.grid = Grid.from_horizon(500.0, 0.01, 10.0)
        cls.weights = baseline_weights(500.0)
        cls.solution = sweep_single_pass(
            cls.params, IC1, cls.grid, cls.weights
        )
        cls.untreated = simulate(cls.params, IC1, cls.grid)

    def test_infection_is_suppressed(self):
        treated = final_state(self.solution.trajectory)
        untreated = final_state(self.untreated)
        self.assertLessEqual(treated.y, 0.05 * untreated.y)
        self.assertLessEqual(treated.v, 0.05 * untreated.v)

    def test_transversality_and_bounds(self):
        adjoints = self.solution.trajectory.adjoints
        self.assertTrue(np.all(adjoints[self.grid.n :] == 0.0))
        controls = self.solution.controls
        self.assertTrue(np.all((controls >= 0.0) & (controls <= 1.0)))

    def test_beats_every_constant_treatment(self):
        baseline = constant_control_baseline(
            self.params, IC1, self.grid, self.weights
        )
        best = max(baseline, key=baseline.get)
        self.assertEqual(best, (0.25, 0.0))
        self.assertAlmostEqual(baseline[best], 4433.48, delta=0.05)
        for objective in baseline.values():
            self.assertGreaterEqual(
                self.solution.objective - objective, -1e-6
            )

    def test_recorded_control_profile(self):
        # u2 stays low and u1 never crosses 0.5 under the single pass.
        controls = self.solution.controls
        self.assertAlmostEqual(self.solution.objective, 4559.68, delta=0.05)
        self.assertAlmostEqual(
            float(np.mean(controls[:, 1])), 0.1032, delta=2e-4
        )
        self.assertEqual(switch_count(controls[:, 0]), 0)


class IteratedTreatmentScenarioTests(SimpleTestCase):
    """Iterated sweep on the endemic scenario with a coarser step."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = baseline_params()
        cls.grid = Grid.from_horizon(500.0, SHORT_DT, 10.0)
        cls.weights = baseline_weights(500.0)
        cls.single = sweep_single_pass(cls.params, IC1, cls.grid, cls.weights)
        cls.solution = sweep_iterated(
            cls.params,
            IC1,
            cls.grid,
            cls.weights,
            tol=1e-4,
            max_iter=200,
            relaxation=0.5,
        )

    def test_converges_after_relaxation_cuts(self):
        solution = self.solution
        self.assertTrue(solution.converged)
        self.assertLess(solution.iterations, 200)
        cuts = [
            note
            for note in solution.notes
            if note.startswith("relaxation reduced")
        ]
        self.assertEqual(len(cuts), 1)

    def test_improves_on_single_pass(self):
        self.assertGreater(self.solution.objective, self.single.objective)
        controls = self.solution.controls
        self.assertTrue(np.all((controls >= 0.0) & (controls <= 1.0)))
