import math
import os
import unittest
from unittest import mock

from hyperverify import closed_forms, identities
from hyperverify.config import RunConfig
from hyperverify.errors import DivergentError, NoConvergence, UnknownIdentity
from hyperverify.identities import (
    DIVERGENT,
    FAIL,
    INTEGRAL_RANGE,
    PASS,
    SKIPPED,
    UNIT,
    IdentityCheck,
    Validity,
    check,
    check_multi_integral,
    registry,
    selected_checks,
    sweep,
    verdict_for,
)
from hyperverify.quadrature import MCSpec
from hyperverify.special_core import EvalResult

SLOW = os.environ.get("HYPERVERIFY_SLOW") == "1"


def _fake_integrals():
    return mock.patch.multiple(
        identities,
        lhs_main=mock.Mock(side_effect=closed_forms.rhs_main),
        j2_plane=mock.Mock(side_effect=closed_forms.j2),
    )


class TestRegistry(unittest.TestCase):

    def test_contents(self):
        ids = [c.id for c in registry()]
        self.assertGreaterEqual(len(ids), 19)
        self.assertEqual(len(ids), len(set(ids)))
        for required in ("main", "I1", "I2a", "I2b", "J1a", "J1b", "J2", "assembly",
                         "3.00", "A.1", "A.2", "A.3", "A.4", "A.51", "A.6", "A.7"):
            self.assertIn(required, ids)

    def test_validity_never_contains_a_pole(self):
        for identity in registry():
            for pole in identity.poles:
                self.assertNotIn(pole, identity.validity, identity.id)
        with self.assertRaises(ValueError):
            IdentityCheck("bad", "", "", None, None, UNIT, poles=(0.5,))

    def test_validity_membership(self):
        self.assertNotIn(0.8, UNIT)
        self.assertNotIn(1.0, UNIT)
        self.assertIn(0.0, UNIT)
        self.assertIn(0.78, INTEGRAL_RANGE)
        self.assertNotIn(0.79, INTEGRAL_RANGE)
        self.assertNotIn(0.0, Validity(0.0, 1.0, lo_open=True))
        self.assertEqual(str(Validity(0.0, 1.0, excluded=(0.8,))), "[0, 1) minus 0.8")

    def test_selected_checks(self):
        default = selected_checks()
        self.assertFalse(any(c.slow or c.exploratory for c in default))
        everything = selected_checks(include_slow=True, include_exploratory=True)
        self.assertEqual(len(everything), len(registry()))

    def test_unknown_identity(self):
        with self.assertRaises(UnknownIdentity):
            check("nosuch", 0.3)


class TestVerdict(unittest.TestCase):

    def test_relative_tolerance(self):
        self.assertEqual(verdict_for(EvalResult(1.0), EvalResult(1.0 + 1e-10), 1e-9), PASS)
        self.assertEqual(verdict_for(EvalResult(1.0), EvalResult(1.1), 1e-9), FAIL)

    def test_error_estimates_widen_the_band(self):
        self.assertEqual(verdict_for(EvalResult(1.0, 0.05), EvalResult(1.06, 0.02), 1e-9), PASS)

    def test_non_finite_fails(self):
        self.assertEqual(verdict_for(EvalResult(math.nan), EvalResult(1.0), 1e-9), FAIL)


class TestCheck(unittest.TestCase):

    def test_main_at_zero(self):
        report = check("main", 0.0)
        self.assertEqual(report.verdict, PASS)
        self.assertAlmostEqual(report.lhs, 0.125, places=9)
        self.assertAlmostEqual(report.rhs, 0.125, places=14)
        self.assertEqual(report.tol, 1e-6)

    def test_pole_is_skipped(self):
        report = check("main", 0.8)
        self.assertEqual(report.verdict, SKIPPED)
        self.assertTrue(math.isnan(report.lhs))
        self.assertIn("outside", report.note)

    def test_outside_integral_range_is_skipped(self):
        self.assertEqual(check("main", 0.79).verdict, SKIPPED)
        self.assertEqual(check("I1", 0.3).verdict, SKIPPED)
        self.assertEqual(check("assembly", 0.0).verdict, SKIPPED)

    def test_closed_form_identities(self):
        for identity_id, d in (("J2-equals-J1b", 0.55), ("assembly", 0.3), ("J1a", 0.6),
                               ("A.4", 0.4), ("A.6", 0.3), ("3.00", 0.25)):
            with self.subTest(identity=identity_id, d=d):
                self.assertEqual(check(identity_id, d).verdict, PASS)

    def test_printed_kernel_fails(self):
        report = check("A.1-printed", 0.0)
        self.assertEqual(report.verdict, FAIL)
        self.assertEqual(check("A.1", 0.0).verdict, PASS)

    def test_thomae_variants(self):
        for d in (0.1, 0.4, 0.7, 0.9):
            with self.subTest(d=d):
                self.assertEqual(check("A.5", d).verdict, PASS)
                self.assertEqual(check("A.51", d).verdict, PASS)
        self.assertEqual(check("A.5-printed", 0.3).verdict, FAIL)
        self.assertTrue(identities.get_identity("A.5-printed").exploratory)

    def test_explicit_tolerance_is_used(self):
        self.assertEqual(check("A.6", 0.3, tol=1e-3).tol, 1e-3)

    @mock.patch.object(identities, "lhs_main", side_effect=DivergentError("pole"))
    def test_divergence_is_a_verdict(self, _):
        report = check("main", 0.3)
        self.assertEqual(report.verdict, DIVERGENT)
        self.assertEqual(report.note, "pole")

    @mock.patch.object(identities, "lhs_main", side_effect=NoConvergence("cap"))
    def test_evaluation_failure_is_a_verdict(self, _):
        with self.assertLogs("hyperverify.identities", level="ERROR"):
            report = check("main", 0.3)
        self.assertEqual(report.verdict, FAIL)

    def test_multi_integral_requires_slow_check(self):
        with self.assertRaises(UnknownIdentity):
            check_multi_integral("main", 0.3)

    def test_j1_parts_are_checked_jointly(self):
        for missing in ("J1a-integral", "J1b-integral"):
            with self.subTest(identity=missing):
                with self.assertRaisesRegex(UnknownIdentity, "J1-integral"):
                    check_multi_integral(missing, 0.3)
        self.assertTrue(identities.get_identity("J1-integral").slow)


class TestSweep(unittest.TestCase):

    def test_ordering_and_size(self):
        with _fake_integrals():
            reports = sweep(grid=[0.3, 0.1])
        self.assertEqual(len(reports), 2 * len(selected_checks()))
        keys = [(r.id, r.d) for r in reports]
        self.assertEqual(keys, sorted(keys))

    def test_empty_grid(self):
        self.assertEqual(sweep(grid=[]), [])

    def test_deterministic_and_parallel(self):
        with _fake_integrals():
            serial = sweep(grid=[0.25, 0.6])
            parallel = sweep(grid=[0.25, 0.6], config=RunConfig(workers=3))
        self.assertEqual(len(serial), len(parallel))
        for left, right in zip(serial, parallel):
            self.assertEqual((left.id, left.d, left.verdict), (right.id, right.d, right.verdict))
            self.assertEqual(repr(left.lhs), repr(right.lhs))

    def test_tolerance_caps_defaults(self):
        with _fake_integrals():
            loose = sweep(grid=[0.3], tol=1.0)
            tight = sweep(grid=[0.3], tol=1e-12)
        by_id = {c.id: c for c in registry()}
        for report in loose:
            self.assertEqual(report.tol, by_id[report.id].default_tol)
        for report in tight:
            self.assertEqual(report.tol, 1e-12)


@unittest.skipUnless(SLOW, "set HYPERVERIFY_SLOW=1 to run quadrature and Monte Carlo checks")
class TestSlowChecks(unittest.TestCase):

    def test_main_integral(self):
        for d in (0.25, 0.6):
            with self.subTest(d=d):
                self.assertEqual(check("main", d).verdict, PASS)

    def test_monte_carlo(self):
        for identity_id in ("J1-integral", "J2-integral", "quad4d"):
            with self.subTest(identity=identity_id):
                report = check_multi_integral(identity_id, 0.3, MCSpec(dimension=4, samples=10 ** 6))
                self.assertEqual(report.verdict, PASS)

    def test_default_grid_has_no_failures(self):
        failures = [(r.id, r.d) for r in sweep() if r.verdict == FAIL]
        self.assertEqual(failures, [])


if __name__ == "__main__":
    unittest.main()
