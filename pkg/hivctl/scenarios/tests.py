import json
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from common.exceptions import ParseError
from dynamics.types import HistoryFunction
from simulation.trajectory import read_trajectory_csv

from .config import dump_config, load_config
from .presets import (
    CROSSING_EXAMPLE,
    FIG1_IC1,
    FIG1_IC2,
    FIG2,
    FIG3,
    PRESETS,
)


BASELINE_VALUES = {
    "lam": 1.0,
    "d": 0.1,
    "beta": 0.00025,
    "p": 0.001,
    "h_ctl": 0.2,
    "a": 0.2,
    "c": 0.03,
    "mu": 3.0,
    "tau": 10.0,
}


class TemporaryDirectoryMixin:
    def setUp(self):
        super().setUp()
        self._directory = tempfile.TemporaryDirectory()
        self.directory = Path(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()
        super().tearDown()

    def write_file(self, name: str, content) -> Path:
        path = self.directory / name
        if not isinstance(content, str):
            content = json.dumps(content)
        path.write_text(content, encoding="utf-8")
        return path


class PresetTests(SimpleTestCase):
    def test_published_constants(self):
        for name in (FIG1_IC1, FIG1_IC2, FIG2, FIG3, CROSSING_EXAMPLE):
            config = load_config(preset=name)
            for key, value in BASELINE_VALUES.items():
                self.assertEqual(getattr(config.params, key), value)
            self.assertEqual(
                (config.weights.A1, config.weights.A2), (30.0, 40.0)
            )
            self.assertEqual((config.tf, config.dt), (500.0, 0.01))

    def test_fig2(self):
        config = load_config(preset=FIG2)
        self.assertEqual(config.params.big_n, 1500.0)
        self.assertEqual(config.hist, HistoryFunction(5.0, 1.0, 1.0, 2.0))
        self.assertEqual(config.mode, "simulate")

    def test_fig1(self):
        config = load_config(preset=FIG1_IC2)
        self.assertEqual(config.params.big_n, 750.0)
        self.assertEqual(config.hist, HistoryFunction(45.0, 2.0, 1.0, 4.0))

    def test_unknown_preset(self):
        with self.assertRaises(ValidationError) as context:
            load_config(preset="fig4")
        self.assertEqual(list(context.exception.message_dict), ["preset"])


class LoadConfigTests(TemporaryDirectoryMixin, SimpleTestCase):
    def test_precedence(self):
        path = self.write_file("scenario.json", {"tf": 100.0, "c": 0.025})
        config = load_config(preset=FIG2, path=path)
        self.assertEqual((config.tf, config.params.c), (100.0, 0.025))
        config = load_config(
            preset=FIG2,
            path=path,
            overrides={"tf": 50.0, "c": None},
            mode="stability",
        )
        self.assertEqual((config.tf, config.params.c), (50.0, 0.025))
        self.assertEqual(config.mode, "stability")

    def test_invalid_values_are_named(self):
        path = self.write_file("scenario.json", {"d": -1.0})
        with self.assertRaises(ValidationError) as context:
            load_config(preset=FIG2, path=path)
        self.assertEqual(list(context.exception.message_dict), ["d"])

    def test_missing_values_are_named(self):
        path = self.write_file("scenario.json", {"mode": "simulate"})
        with self.assertRaises(ValidationError) as context:
            load_config(path=path)
        self.assertIn("lam", context.exception.message_dict)
        self.assertIn("x0", context.exception.message_dict)

    def test_malformed_files(self):
        for content in ("{not json", "[1, 2]"):
            path = self.write_file("scenario.json", content)
            self.assertRaises(ParseError, load_config, path=path)

    def test_unknown_key(self):
        path = self.write_file("scenario.json", {"N": 1500})
        with self.assertRaises(ValidationError) as context:
            load_config(preset=FIG2, path=path)
        self.assertEqual(list(context.exception.message_dict), ["N"])

    def test_delay_off_the_grid(self):
        with self.assertRaises(ValidationError) as context:
            load_config(preset=FIG2, overrides={"tau": 10.005})
        self.assertEqual(list(context.exception.message_dict), ["tau"])

    def test_optimize_needs_weights(self):
        data = {
            key: value
            for key, value in PRESETS[FIG3].items()
            if key not in ("A1", "A2")
        }
        path = self.write_file("scenario.json", data)
        with self.assertRaises(ValidationError) as context:
            load_config(path=path)
        self.assertEqual(
            sorted(context.exception.message_dict), ["A1", "A2"]
        )
        self.assertIsNone(load_config(path=path, mode="simulate").weights)

    def test_strict_ranges(self):
        config = load_config(preset=FIG2, overrides={"strict_ranges": True})
        self.assertTrue(config.strict_ranges)
        with self.assertRaises(ValidationError) as context:
            load_config(
                preset=FIG2, overrides={"strict_ranges": True, "d": 0.2}
            )
        self.assertEqual(list(context.exception.message_dict), ["d"])

    def test_dump_and_reload(self):
        config = load_config(
            preset=FIG3, overrides={"tf": 20.0, "iterate": True}
        )
        path = dump_config(config, self.directory / "config.json")
        self.assertEqual(load_config(path=path), config)


class CommandTests(TemporaryDirectoryMixin, SimpleTestCase):
    def hivctl(self, *args, **options):
        options.setdefault("out", self.directory)
        stdout = StringIO()
        call_command("hivctl", *args, stdout=stdout, **options)
        return [Path(line) for line in stdout.getvalue().split()]

    def read_json(self, name: str) -> dict:
        with open(self.directory / name, encoding="utf-8") as json_file:
            return json.load(json_file)

    def test_equilibria(self):
        paths = self.hivctl("equilibria", preset=FIG2)
        self.assertEqual(paths, [self.directory / "equilibria.json"])
        data = self.read_json("equilibria.json")
        kinds = [entry["kind"] for entry in data["equilibria"]]
        self.assertEqual(
            kinds, ["disease-free", "ctl-free-endemic", "full-endemic"]
        )
        self.assertEqual(data["equilibria"][0]["point"], [10.0, 0, 0, 0])
        np.testing.assert_allclose(
            data["equilibria"][2]["point"], [8.333, 0.8, 80, 8.333], rtol=5e-3
        )
        self.assertAlmostEqual(
            data["conditions"]["cond_e2_exist"], 0.075, delta=1e-12
        )

    def test_outputs_are_deterministic(self):
        first = self.hivctl(
            "stability", preset=CROSSING_EXAMPLE, out=self.directory / "a"
        )
        second = self.hivctl(
            "stability", preset=CROSSING_EXAMPLE, out=self.directory / "b"
        )
        for one, other in zip(first, second):
            self.assertEqual(one.read_bytes(), other.read_bytes())

    def test_stability(self):
        self.hivctl(preset=CROSSING_EXAMPLE)
        data = self.read_json("stability.json")
        verdicts = [
            report["verdict_numeric_tau0"] for report in data["stability"]
        ]
        self.assertEqual(verdicts, ["unstable", "unstable", "stable"])
        self.assertEqual(data["skipped"], [])
        for report in data["stability"]:
            for key in (
                "verdict_paper",
                "verdict_rh_standard",
                "crossing_roots",
                "notes",
            ):
                self.assertIn(key, report)
        full_endemic = data["stability"][2]
        self.assertEqual(full_endemic["real_axis_scan"]["sign_changes"], [])
        text = (self.directory / "stability.txt").read_text()
        self.assertIn("kind: full-endemic", text)

    def test_stability_without_full_endemic_point(self):
        self.hivctl(
            "stability",
            config=self.write_file("scenario.json", {"h_ctl": 2.0}),
            preset=FIG2,
        )
        data = self.read_json("stability.json")
        self.assertEqual(len(data["stability"]), 2)
        self.assertEqual(len(data["skipped"]), 1)

    def test_simulate_disease_free(self):
        self.hivctl("simulate", preset=FIG1_IC1)
        columns, table = read_trajectory_csv(
            self.directory / "trajectory.csv"
        )
        self.assertEqual(columns, ["t", "x", "y", "v", "z"])
        self.assertEqual(len(table), 50001)
        x, y, v, z = table[-1, 1:]
        self.assertLessEqual(abs(x - 10.0), 0.2)
        self.assertLess(max(y, v, z), 1e-2)
        summary = self.read_json("simulate.json")["simulate"]
        self.assertTrue(summary["positivity"]["ok"])
        self.assertFalse(summary["boundedness"]["violated"])

    def test_optimize(self):
        paths = self.hivctl("optimize", preset=FIG3, tf=20.0, dt=0.05)
        self.assertEqual(
            paths,
            [
                self.directory / "solution.csv",
                self.directory / "optimize.json",
            ],
        )
        columns, table = read_trajectory_csv(paths[0])
        self.assertEqual(len(columns), 11)
        self.assertEqual(table.shape, (401, 11))
        controls = table[:, 5:7]
        self.assertTrue(np.all((controls >= 0.0) & (controls <= 1.0)))
        summary = self.read_json("optimize.json")["optimize"]
        self.assertEqual(summary["iterations"], 1)
        self.assertIsNone(summary["converged"])
        for key in ("objective", "u1_switch_count", "u2_mean", "notes"):
            self.assertIn(key, summary)

    def test_optimize_iterated(self):
        self.hivctl(
            "optimize",
            preset=FIG3,
            tf=20.0,
            dt=0.05,
            iterate=True,
            max_iter=3,
            relax=1.0,
        )
        summary = self.read_json("optimize.json")["optimize"]
        self.assertLessEqual(summary["iterations"], 3)
        self.assertIsInstance(summary["converged"], bool)

    def test_figures(self):
        paths = self.hivctl("figures", preset=FIG3, tf=20.0, dt=0.05)
        self.assertEqual(
            [path.name for path in paths],
            [
                "fig1_ic1.csv",
                "fig1_ic2.csv",
                "fig2_tau0.csv",
                "fig2_delayed.csv",
                "fig2_controlled.csv",
                "fig3_controls.csv",
            ],
        )
        columns, table = read_trajectory_csv(paths[-1])
        self.assertEqual(columns, ["t", "u1", "u2"])
        self.assertEqual(table.shape, (401, 3))

    def test_dump_config(self):
        paths = self.hivctl(
            "equilibria", preset=FIG2, big_n=750.0, dump_config=True
        )
        self.assertEqual(paths[0], self.directory / "config.json")
        config = load_config(path=paths[0])
        self.assertEqual(config.params.big_n, 750.0)
        self.assertEqual(config.mode, "equilibria")

    def test_initial_state_flag(self):
        self.hivctl("simulate", preset=FIG2, tf=1.0, ic="10,0,0,0")
        _, table = read_trajectory_csv(self.directory / "trajectory.csv")
        np.testing.assert_allclose(table[:, 1:], [[10.0, 0, 0, 0]] * 101)

    def test_batch(self):
        first = self.write_file(
            "first.json", {**PRESETS[FIG2], "mode": "equilibria"}
        )
        second = self.write_file(
            "second.json", {**PRESETS[FIG1_IC1], "mode": "equilibria"}
        )
        paths = self.hivctl(batch=[first, second])
        self.assertEqual(
            paths,
            [
                self.directory / "first" / "equilibria.json",
                self.directory / "second" / "equilibria.json",
            ],
        )

    def test_exit_codes(self):
        cases = (
            ({"preset": FIG2, "dt": 0.03}, 2),
            ({"preset": FIG2, "ic": "1,2,3"}, 2),
            ({"config": self.write_file("bad.json", "{")}, 2),
            ({"config": self.directory / "missing.json"}, 4),
            ({"preset": FIG2, "dt": 1.0, "tf": 3000.0}, 3),
        )
        for options, returncode in cases:
            with self.subTest(options=options):
                with self.assertRaises(CommandError) as context:
                    self.hivctl("simulate", **options)
                self.assertEqual(context.exception.returncode, returncode)
