import k3fib
import unittest
from fractions import Fraction

import sympy

from k3fib.model import ZERO_POINT, SurfacePoint, WeierstrassModel, add_points
from k3fib.mordell import (
    HeightContext,
    find_two_torsion,
    height,
    height_pairing,
    intersect_with_zero,
    mwl_gram,
    ns_disc_check,
    torsion_order,
)

MODELS = {
    1: ("2(t^3 + 1)", "t^6", "0"),
    2: ("0", "-t^2 (t - 1)^2 (t + 1)^2", "0"),
    5: ("-t^3", "t^3", "0"),
    7: ("t^3 + t", "t^4", "0"),
    12: ("1", "t^4", "t^8"),
    19: ("t^4 + 1", "-t^2 (t^2 - 1)", "t^4"),
    29: ("(t^3 + 1)(t - 1)", "-t^6 (t - 1)^2", "-t^6 (t^6 - 1)"),
    38: ("0", "0", "t^3 (t + 1)^4"),
    40: ("t^4 + t", "t^8", "0"),
    41: ("0", "0", "t^10 + t^2"),
}


def _model(n):
    return WeierstrassModel.from_strings(*MODELS[n])


class TestTorsion(unittest.TestCase):

    def test_01_orders(self):
        """
        Catalog torsion sections have orders 5, 3, 4 and 2.
        """
        cases = [
            (19, "(0 ; t^2)", 5),
            (12, "(0 ; t^4)", 3),
            (1, "(-t^3 ; i t^3)", 4),
            (5, "(0 ; 0)", 2),
        ]
        for n, text, order in cases:
            with self.subTest(fibration=n):
                self.assertEqual(torsion_order(_model(n), SurfacePoint.parse(text)), order)

    def test_02_non_torsion(self):
        self.assertIsNone(torsion_order(_model(5), SurfacePoint.parse("(1 ; 1)")))
        self.assertEqual(torsion_order(_model(5), ZERO_POINT), 1)
        with self.assertRaises(k3fib.ModelError):
            torsion_order(_model(1), SurfacePoint.parse("(t^3 ; 0)"))

    def test_03_bound(self):
        """
        A bound below the order finds nothing.
        """
        self.assertIsNone(torsion_order(_model(19), SurfacePoint.parse("(0 ; t^2)"), bound=4))

    def test_04_full_two_torsion(self):
        """
        Fibrations with torsion Z/2 x Z/2 have three polynomial 2-torsion points.
        """
        expected = {
            2: {"0", "t^3 + 2*t", "2*t^3 + t"},
            7: {"0", "2*t", "2*t^3"},
        }
        for n, xs in expected.items():
            with self.subTest(fibration=n):
                points = find_two_torsion(_model(n))
                self.assertEqual({str(p.x) for p in points}, xs)
                self.assertTrue(all(not p.y for p in points))

    def test_05_no_two_torsion(self):
        self.assertEqual(find_two_torsion(_model(19)), [])


class TestHeights(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.ctx5 = HeightContext.from_model(_model(5))
        cls.p = SurfacePoint.parse("(1 ; 1)")
        cls.torsion = SurfacePoint.parse("(0 ; 0)")
        print(f"\nFibers of the height model: {' '.join(cls.ctx5.config.lattice_labels())}")

    def test_01_height_of_free_section(self):
        """
        (1, 1) meets the far leaf of D10, so h = 4 - 5/2 = 3/2.
        """
        self.assertEqual(intersect_with_zero(self.ctx5, self.p), 0)
        self.assertEqual(height(self.ctx5, self.p), Fraction(3, 2))

    def test_02_torsion_has_height_zero(self):
        self.assertEqual(height(self.ctx5, self.torsion), 0)
        self.assertEqual(height(self.ctx5, ZERO_POINT), 0)
        self.assertEqual(height_pairing(self.ctx5, self.p, self.torsion), 0)

    def test_03_height_is_quadratic(self):
        """
        h(2P) = 4 h(P).
        """
        doubled = add_points(self.ctx5.model, self.p, self.p)
        self.assertEqual(height(self.ctx5, doubled), 4 * Fraction(3, 2))

    def test_04_gram(self):
        g = mwl_gram(self.ctx5, [self.p])
        self.assertEqual(g, sympy.Matrix([[sympy.Rational(3, 2)]]))

    def test_05_off_curve(self):
        with self.assertRaises(k3fib.ModelError):
            height(self.ctx5, SurfacePoint.parse("(t ; 1)"))

    def test_06_section_with_degree_four_abscissa(self):
        """
        (t^4, t^6) on y^2 = x^3 - t x^2 + t^9: s^4 x(1/s) = 1 has no pole, so
        P.O = 0, and the section meets the far leaf of D10 at t = 0.
        """
        ctx = HeightContext.from_model(WeierstrassModel.from_strings("-t", "0", "t^9"))
        p = SurfacePoint.parse("(t^4 ; t^6)")
        self.assertEqual(sorted(ctx.config.lattice_labels()), ["D10", "E8"])
        self.assertEqual(intersect_with_zero(ctx, p), 0)
        self.assertEqual(height(ctx, p), Fraction(3, 2))
        self.assertIsNone(torsion_order(ctx, p))
        with self.assertRaises(k3fib.ModelError):
            intersect_with_zero(self.ctx5, ZERO_POINT)


class TestDiscriminantIdentity(unittest.TestCase):

    def test_01_rank_zero(self):
        """
        Extremal fibrations satisfy disc(NS) = -9 with their torsion orders.
        """
        for n, torsion in ((1, 4), (29, 4), (38, 1), (40, 2), (41, 81)):
            with self.subTest(fibration=n):
                check = ns_disc_check(HeightContext.from_model(_model(n)), torsion)
                self.assertEqual(check.value, -9)
                self.assertTrue(check.ok)

    def test_02_rank_one(self):
        """
        D10 + E7 + A2 with torsion 2 and the 3/2 generator.
        """
        ctx = HeightContext.from_model(_model(5))
        gram = mwl_gram(ctx, [SurfacePoint.parse("(1 ; 1)")])
        check = ns_disc_check(ctx, 2, gram)
        self.assertTrue(check.ok, str(check))

    def test_03_wrong_torsion(self):
        """
        A wrong torsion order either misses -9 or leaves a fraction.
        """
        ctx = HeightContext.from_model(_model(1))
        check = ns_disc_check(ctx, 3)
        self.assertEqual(check.value, -16)
        self.assertFalse(check.ok)
        self.assertIn("FAIL", str(check))
        with self.assertRaises(k3fib.LatticeError):
            ns_disc_check(ctx, 5)

    def test_04_rank_mismatch(self):
        ctx = HeightContext.from_model(_model(1))
        with self.assertRaises(k3fib.LatticeError):
            ns_disc_check(ctx, 4, sympy.Matrix([[2]]))
        with self.assertRaises(k3fib.LatticeError):
            ns_disc_check(ctx, 0)
        self.assertEqual(ctx.disc_target, -9)


if __name__ == "__main__":
    unittest.main()
