import math
import unittest

import mpmath
import numpy as np

from hyperverify import transforms
from hyperverify.errors import DomainError, InvalidParams
from hyperverify.hypergeometric import PFQParams, pfq_at_1

SOURCE = PFQParams((0.3, 0.5, 0.7), (1.6, 1.9))


def mp_3f2(p):
    return float(mpmath.hyp3f2(*p.upper, *p.lower, 1))


class TestThomae(unittest.TestCase):

    def assertRelClose(self, actual, expected, rel):
        self.assertLessEqual(abs(actual - expected), rel * abs(expected),
                             f"{actual!r} != {expected!r} within {rel}")

    def test_a4_preserves_value(self):
        expected = mp_3f2(SOURCE)
        self.assertRelClose(transforms.thomae_a4(SOURCE).evaluate().value, expected, 1e-10)
        self.assertRelClose(pfq_at_1(SOURCE).value, expected, 1e-10)

    def test_a51_preserves_value(self):
        self.assertRelClose(transforms.thomae_a51(SOURCE).evaluate().value, mp_3f2(SOURCE), 1e-9)

    def test_a4_is_an_involution(self):
        once = transforms.thomae_a4(SOURCE)
        twice = transforms.thomae_a4(once.target)
        for got, want in zip(twice.target.upper + twice.target.lower, SOURCE.upper + SOURCE.lower):
            self.assertAlmostEqual(got, want, places=14)
        self.assertAlmostEqual(once.prefactor(0.0).value * twice.prefactor(0.0).value, 1.0, places=13)

    def test_a5_preserves_value(self):
        rewrite = transforms.thomae_a5(SOURCE)
        for got, want in zip(rewrite.target.upper + rewrite.target.lower, (0.7, 1.3, 1.1, 2.7, 1.6)):
            self.assertAlmostEqual(got, want, places=14)
        self.assertRelClose(rewrite.evaluate().value, mp_3f2(SOURCE), 1e-10)

    def test_a5_as_printed_differs(self):
        alternative = transforms.thomae_a5_as_printed(SOURCE).evaluate().value
        self.assertGreater(abs(alternative / mp_3f2(SOURCE) - 1), 1e-2)

    def test_rule_lookup(self):
        self.assertIs(transforms.THOMAE_RULES["A.51"], transforms.thomae_a51)
        self.assertIs(transforms.THOMAE_RULES["A.5-printed"], transforms.thomae_a5_as_printed)
        with self.assertRaises(InvalidParams):
            transforms.thomae_apply("A.9", SOURCE)
        with self.assertRaises(InvalidParams):
            transforms.thomae_a4(PFQParams((1, 2), (3,)))

    def test_rules_on_random_tuples(self):
        rng = np.random.default_rng(4)
        tuples = []
        while len(tuples) < 100:
            a, b, c = map(float, rng.uniform(0.25, 2.0, 3))
            e, f = map(float, rng.uniform(0.5, 4.0, 2))
            if min(e + f - a - b - c, e - a, f - c) > 0.25:
                tuples.append(PFQParams((a, b, c), (e, f)))
        for p in tuples:
            expected = pfq_at_1(p).value
            for rule in ("A.4", "A.5", "A.51"):
                with self.subTest(rule=rule, params=p):
                    self.assertRelClose(transforms.thomae_apply(rule, p).evaluate().value, expected, 1e-9)


class TestClosedForms(unittest.TestCase):

    def test_a6_example(self):
        self.assertAlmostEqual(transforms.closed_a6(2, 3, -1).value, 0.5, places=14)

    def test_a6_against_mpmath(self):
        expected = float(mpmath.hyp3f2(0.3, 0.6, 0.4, 1.3, 1.6, 1))
        self.assertAlmostEqual(transforms.closed_a6(0.3, 0.6, 0.4).value, expected, delta=1e-12 * expected)

    def test_a6_equal_parameters(self):
        with self.assertRaises(DomainError):
            transforms.closed_a6(0.5, 0.5, 0.2)

    def test_a7_against_mpmath(self):
        expected = float(mpmath.hyp3f2(0.4, 0.7, 0.3, 1.4, 1.8, 1))
        self.assertAlmostEqual(transforms.closed_a7(0.4, 0.7, 0.3, 1.8).value, expected,
                               delta=1e-10 * expected)

    def test_a6_on_random_tuples(self):
        rng = np.random.default_rng(6)
        count = 0
        while count < 100:
            a, b = map(float, rng.uniform(0.1, 2.0, 2))
            c = float(rng.uniform(-1.5, 1.5))
            if abs(a - b) < 0.05 or abs(c - round(c)) < 0.05:
                continue
            count += 1
            with self.subTest(a=a, b=b, c=c):
                expected = float(mpmath.hyp3f2(a, b, c, a + 1, b + 1, 1))
                self.assertLessEqual(abs(transforms.closed_a6(a, b, c).value - expected), 1e-9 * abs(expected))

    def test_a7_on_random_tuples(self):
        rng = np.random.default_rng(7)
        count = 0
        while count < 100:
            a = float(rng.uniform(0.1, 1.0))
            b = a + float(rng.uniform(0.1, 1.5))
            c = float(rng.uniform(0.05, 0.9))
            dpar = b + c - 1 + float(rng.uniform(0.5, 2.0))
            if dpar < 0.1:
                continue
            count += 1
            with self.subTest(a=a, b=b, c=c, dpar=dpar):
                expected = float(mpmath.hyp3f2(a, b, c, a + 1, dpar, 1))
                actual = transforms.closed_a7(a, b, c, dpar).value
                self.assertLessEqual(abs(actual - expected), 1e-9 * abs(expected))


class TestGaussTransformations(unittest.TestCase):

    def test_euler(self):
        expected = float(mpmath.hyp2f1(0.5, 0.7, 1.9, 0.4))
        self.assertAlmostEqual(transforms.euler_a0(0.5, 0.7, 1.9, 0.4).value, expected, places=13)

    def test_pfaff(self):
        expected = float(mpmath.hyp2f1(0.5, 0.7, 1.9, 0.4))
        self.assertAlmostEqual(transforms.pfaff_a0(0.5, 0.7, 1.9, 0.4).value, expected, places=13)

    def test_connection(self):
        expected = float(mpmath.hyp2f1(0.5, 0.7, 1.9, 0.7))
        self.assertAlmostEqual(transforms.connection_a2(0.5, 0.7, 1.9, 0.7).value, expected, places=12)

    def test_connection_domain(self):
        with self.assertRaises(DomainError):
            transforms.connection_a2(0.5, 0.7, 1.9, 1.2)
        with self.assertRaises(DomainError):
            transforms.connection_a2(0.5, 0.5, 2.0, 0.7)
        with self.assertRaises(DomainError):
            transforms.euler_a0(0.5, 0.7, 1.9, 1.0)

    def _random_parameters(self, seed, count):
        rng = np.random.default_rng(seed)
        found = []
        while len(found) < count:
            a, b = map(float, rng.uniform(0.1, 1.5, 2))
            c = float(rng.uniform(0.5, 2.5))
            z = float(rng.uniform(0.05, 0.9))
            m = c - a - b
            if abs(m - round(m)) > 0.02 and abs(c - round(c)) > 0.02:
                found.append((a, b, c, z))
        return found

    def test_euler_and_pfaff_on_random_points(self):
        for a, b, c, z in self._random_parameters(1, 100):
            expected = float(mpmath.hyp2f1(a, b, c, z))
            with self.subTest(a=a, b=b, c=c, z=z):
                self.assertLessEqual(abs(transforms.euler_a0(a, b, c, z).value - expected), 1e-10 * abs(expected))
                self.assertLessEqual(abs(transforms.pfaff_a0(a, b, c, z).value - expected), 1e-10 * abs(expected))

    def test_connection_on_random_points(self):
        for a, b, c, z in self._random_parameters(2, 100):
            expected = float(mpmath.hyp2f1(a, b, c, z))
            with self.subTest(a=a, b=b, c=c, z=z):
                actual = transforms.connection_a2(a, b, c, z).value
                self.assertLessEqual(abs(actual - expected), 1e-8 * abs(expected))


class TestPairKernel(unittest.TestCase):

    def test_against_quadrature(self):
        d = 0.4
        expected = float(mpmath.quad(lambda z: (1 - 0.7 * z) ** -d * (1 - 0.3 * z) ** -d, [0, 1]))
        self.assertAlmostEqual(transforms.kernel_a1(0.7, 0.3, d).value, expected, delta=1e-11 * expected)

    def test_symmetric_in_p_and_q(self):
        self.assertEqual(transforms.kernel_a1(0.3, 0.7, 0.6).value, transforms.kernel_a1(0.7, 0.3, 0.6).value)

    def test_zero_exponent(self):
        self.assertAlmostEqual(transforms.kernel_a1(0.7, 0.3, 0.0).value, 1.0, places=14)

    def test_printed_form_is_wrong_at_zero(self):
        self.assertGreater(abs(transforms.kernel_a1_as_printed(0.7, 0.3, 0.0).value - 1.0), 0.5)
        with self.assertRaises(DomainError):
            transforms.kernel_a1_as_printed(0.3, 0.7, 0.4)

    def test_domain(self):
        with self.assertRaises(DomainError):
            transforms.kernel_a1(0.5, 0.5 + 1e-9, 0.4)
        with self.assertRaises(DomainError):
            transforms.kernel_a1(0.7, 0.3, 1.0)
        with self.assertRaises(DomainError):
            transforms.kernel_a1(1.5, 0.3, 0.4)

    def test_grid_against_quadrature(self):
        corners = (0.05, 0.275, 0.5, 0.725, 0.95)
        for p in corners:
            for q in corners:
                if abs(p - q) < 0.05:
                    continue
                for d in (0.1, 0.3, 0.5, 0.7, 0.9):
                    with self.subTest(p=p, q=q, d=d):
                        expected = float(mpmath.quad(lambda z: (1 - p * z) ** -d * (1 - q * z) ** -d, [0, 1]))
                        self.assertLessEqual(abs(transforms.kernel_a1(p, q, d).value - expected), 1e-8 * expected)


class TestProductIntegral(unittest.TestCase):

    def test_reduces_to_beta(self):
        alpha, c = 1.5, 2.2
        result = transforms.brychkov_a3(alpha, 0.0, 0.4, c, 0.0, 0.3, 1.7)
        expected = math.gamma(alpha) * math.gamma(c) / math.gamma(alpha + c)
        self.assertAlmostEqual(result.value, expected, places=13)

    def test_against_quadrature(self):
        alpha, a, b, c, a2, b2, c2 = 1.5, 0.3, 0.4, 1.2, 0.2, 0.5, 1.4

        def integrand(x):
            return (x ** (alpha - 1) * (1 - x) ** (c - 1)
                    * mpmath.hyp2f1(a, b, c, 1 - x) * mpmath.hyp2f1(a2, b2, c2, 1 - x))

        expected = float(mpmath.quad(integrand, [0, 1]))
        result = transforms.brychkov_a3(alpha, a, b, c, a2, b2, c2)
        self.assertAlmostEqual(result.value, expected, delta=1e-8 * expected)

    def test_random_sets_against_quadrature(self):
        rng = np.random.default_rng(3)
        sets = []
        while len(sets) < 25:
            alpha = float(rng.uniform(0.5, 2.0))
            a, b, a2, b2 = map(float, rng.uniform(0.1, 0.5, 4))
            c, c2 = map(float, rng.uniform(1.0, 2.0, 2))
            gap = c2 - a2 - b2
            if abs(gap - round(gap)) > 0.05 and 1 + c - c2 > 0.3:
                sets.append((alpha, a, b, c, a2, b2, c2))
        for alpha, a, b, c, a2, b2, c2 in sets:
            def integrand(x):
                return (x ** (alpha - 1) * (1 - x) ** (c - 1)
                        * mpmath.hyp2f1(a, b, c, 1 - x) * mpmath.hyp2f1(a2, b2, c2, 1 - x))

            with self.subTest(params=(alpha, a, b, c, a2, b2, c2)):
                expected = float(mpmath.quad(integrand, [0, 1]))
                actual = transforms.brychkov_a3(alpha, a, b, c, a2, b2, c2).value
                self.assertLessEqual(abs(actual - expected), 1e-7 * abs(expected))


if __name__ == "__main__":
    unittest.main()
