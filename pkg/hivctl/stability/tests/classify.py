import numpy as np

from django.test import SimpleTestCase

from common.exceptions import InfeasibleEquilibrium
from common.verdicts import INCONCLUSIVE, STABLE, UNSTABLE
from equilibria.conditions import condition_values
from equilibria.points import e2_denominator, endemic_e1, endemic_e2
from scenarios.presets import N_DISEASE_FREE, baseline_params
from stability.classify import (
    classify_disease_free,
    classify_e1,
    classify_e2_tau0,
)

from .utils import draw_until


class DiseaseFreeTest(SimpleTestCase):
    def test_below_threshold(self):
        report = classify_disease_free(baseline_params(N_DISEASE_FREE))
        self.assertEqual(report.verdict_paper, STABLE)
        self.assertEqual(report.verdict_rh_standard, STABLE)
        self.assertEqual(report.verdict_numeric_tau0, STABLE)
        self.assertFalse(any(root > 0 for root in report.crossing_roots))
        self.assertAlmostEqual(
            report.details["cond_ef"], -0.1125, delta=1e-12
        )
        self.assertLessEqual(report.details["coefficient_difference"], 1e-8)

    def test_above_threshold(self):
        report = classify_disease_free(baseline_params())
        self.assertEqual(report.verdict_paper, UNSTABLE)
        self.assertEqual(report.verdict_rh_standard, UNSTABLE)
        self.assertEqual(report.verdict_numeric_tau0, UNSTABLE)
        self.assertTrue(any(root > 0 for root in report.crossing_roots))

    def test_on_threshold(self):
        report = classify_disease_free(baseline_params(1200.0))
        self.assertEqual(report.verdict_paper, INCONCLUSIVE)
        self.assertEqual(report.verdict_rh_standard, INCONCLUSIVE)


class CtlFreeEndemicTest(SimpleTestCase):
    def test_baseline_constants(self):
        report = classify_e1(baseline_params())
        self.assertEqual(report.verdict_paper, UNSTABLE)
        self.assertEqual(report.verdict_rh_standard, UNSTABLE)
        self.assertEqual(report.verdict_numeric_tau0, UNSTABLE)
        self.assertAlmostEqual(
            report.details["cond_e1_e2"], 1.125e-3, delta=1e-12
        )
        self.assertAlmostEqual(report.details["ctl_root"], 0.04, places=12)

    def test_published_cubic_mismatch_is_noted(self):
        report = classify_e1(baseline_params())
        self.assertTrue(
            any(note.startswith("Published cubic") for note in report.notes)
        )
        self.assertFalse(
            any(note.startswith("Rederived cubic") for note in report.notes)
        )
        self.assertLessEqual(report.details["division_residual"], 1e-8)

    def test_crossing_at_zero_closed_form(self):
        rng = np.random.default_rng(23)
        for params in draw_until(rng, lambda p: True, 200):
            details = classify_e1(params).details
            expected = details["crossing_at_zero_closed_form"]
            scale = (params.a * params.lam * params.beta * params.big_n) ** 2
            self.assertLessEqual(
                abs(details["crossing_at_zero"] - expected), 1e-9 * scale
            )

    def test_rederived_cubic_divides_characteristic_polynomial(self):
        rng = np.random.default_rng(29)
        feasible = draw_until(rng, lambda p: endemic_e1(p).feasible, 200)
        for params in feasible:
            report = classify_e1(params)
            self.assertLessEqual(report.details["division_residual"], 1e-8)
            self.assertFalse(
                any(note.startswith("Rederived") for note in report.notes)
            )


class FullEndemicTest(SimpleTestCase):
    def test_baseline_constants(self):
        report = classify_e2_tau0(baseline_params())
        self.assertEqual(report.verdict_numeric_tau0, STABLE)
        self.assertEqual(report.verdict_rh_standard, STABLE)
        self.assertEqual(report.verdict_paper, STABLE)
        self.assertTrue(
            any(note.startswith("Published quartic") for note in report.notes)
        )
        self.assertFalse(
            any(note.startswith("Corrected quartic") for note in report.notes)
        )

    def test_missing_point(self):
        with self.assertRaises(InfeasibleEquilibrium):
            classify_e2_tau0(baseline_params(h_ctl=2.0))

    def test_zero_constant_term(self):
        # h = 0.24 puts the full endemic point on the CTL-free one, z = 0.
        report = classify_e2_tau0(baseline_params(h_ctl=0.24))
        self.assertAlmostEqual(report.equilibrium.point.z, 0.0, places=9)
        self.assertEqual(report.verdict_paper, INCONCLUSIVE)
        self.assertEqual(report.verdict_rh_standard, INCONCLUSIVE)

    def test_serialization(self):
        report = classify_e2_tau0(baseline_params())
        data = report.as_dict()
        for key in (
            "verdict_paper",
            "verdict_rh_standard",
            "verdict_numeric_tau0",
            "crossing_roots",
            "notes",
        ):
            self.assertIn(key, data)
        self.assertEqual(data["equilibrium"]["kind"], "full-endemic")
        text = report.as_text()
        self.assertIn("verdict_numeric_tau0: \"stable\"", text)
        self.assertIn("note: no verdict is given for tau > 0", text)


class VerdictAgreementTest(SimpleTestCase):
    """Criteria against the spectrum of a1 + a2 on random constants."""

    def test_routh_hurwitz_matches_eigenvalues_at_full_endemic_point(self):
        rng = np.random.default_rng(2023)
        feasible = draw_until(
            rng,
            lambda p: e2_denominator(p) > 1e-9 and endemic_e2(p).feasible,
            1000,
        )
        conclusive = 0
        for params in feasible:
            report = classify_e2_tau0(params)
            verdicts = (
                report.verdict_rh_standard,
                report.verdict_numeric_tau0,
            )
            if INCONCLUSIVE in verdicts:
                continue
            conclusive += 1
            self.assertEqual(*verdicts)
        self.assertGreater(conclusive, 900)

    def test_published_criteria_match_eigenvalues(self):
        rng = np.random.default_rng(31)
        draws = draw_until(
            rng,
            lambda p: abs(condition_values(p).cond_ef) > 1e-6
            and endemic_e1(p).feasible,
            1000,
        )
        for params in draws:
            for report in (classify_disease_free(params), classify_e1(params)):
                verdicts = (report.verdict_paper, report.verdict_numeric_tau0)
                if INCONCLUSIVE not in verdicts:
                    self.assertEqual(*verdicts)
