import k3fib
import unittest
from dataclasses import replace

from k3fib.algebra import I, INFINITY, T, Place, Polynomial
from k3fib.corpus import load_divisor
from k3fib.model import WeierstrassModel
from k3fib.neighbor import (
    Y_KIND,
    DivisorSpec,
    EllipticParameter,
    build_ansatz,
    component_arcs,
    curve_in_w,
    derive_new_model,
    identify_target,
    neighbor_step,
    pole_order_check,
    solve_pole_conditions,
)
from k3fib.neighbor.ansatz import frame
from k3fib.tate import classify_all, local_coefficients

FIBRATION_1 = WeierstrassModel.from_strings("2(t^3 + 1)", "t^6", "0")

#: (divisor file, source model, target model, expected (numerator ; denominator))
STEPS = {
    "1to5.div": (FIBRATION_1, ("-t^3", "t^3", "0"), "0 ; t^2"),
    "1to4.div": (
        FIBRATION_1,
        ("t^3 + t - 1", "-t (t - 1)(t + 1)^2", "t^2 (t - 1)^2 (t + 1)^4"),
        "-t^2 ; t^2 (t - 1)",
    ),
    "1to9.div": (FIBRATION_1, ("t^3 - t - 1", "t^5", "0"), "t^3 + t ; t (t - 1)"),
    "11to13.div": (
        WeierstrassModel.from_strings("t^4 + 1", "t^4 - 1", "t^4 - 1"),
        ("-(t^3 + t)", "t^6", "0"),
        "1 ; t^2",
    ),
    "21to22.div": (
        WeierstrassModel.from_strings("t^4 + 1", "-1", "-(t^4 + 1)"),
        ("1", "-t^6", "0"),
        "t^2 + 1 ; t (t^2 - 1)",
    ),
}


class TestDivisorSpec(unittest.TestCase):

    def test_01_packaged_divisor(self):
        """
        The D10 divisor on the first fibration has the D10 multiplicity pattern.
        """
        F = load_divisor("1to5.div")
        self.assertEqual(F.target, 5)
        self.assertEqual(F.arity, 2)
        self.assertEqual(F.zero_multiplicity, 2)
        self.assertEqual(F.fiber_shape(), "D10")
        self.assertEqual(F.places(), [Place.finite(0), INFINITY])
        self.assertEqual(F.multiplicity(INFINITY, "far1"), 1)
        self.assertEqual(F.multiplicity(Place.finite(0), "a5"), 0)

    def test_02_text_round_trip(self):
        F = load_divisor("1to9.div")
        self.assertEqual(F.fiber_shape(), "D6")
        again = DivisorSpec.from_text(F.to_text())
        self.assertEqual(again.terms, F.terms)

    def test_03_errors(self):
        """
        Bad lines report their line number.
        """
        with self.assertRaises(k3fib.ParseError) as ctx:
            DivisorSpec.from_text("arity = 2\n2 O\nx comp 0 id\n", source="bad.div")
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.source, "bad.div")
        with self.assertRaises(k3fib.ParseError) as ctx:
            DivisorSpec.from_text("arity = 4\n2 O\n")
        self.assertEqual(ctx.exception.line, 1)
        with self.assertRaises(k3fib.ParseError):
            DivisorSpec.from_text("# empty\n")
        with self.assertRaises(k3fib.ParseError):
            DivisorSpec.from_text("1 sect O\n")
        with self.assertRaises(k3fib.CorpusError):
            load_divisor("missing.div")

    def test_04_fiber_shapes(self):
        self.assertEqual(DivisorSpec.from_text("1 O\n1 comp 0 id\n1 comp 0 a1\n").fiber_shape(), "A2")
        self.assertIsNone(DivisorSpec.from_text("3 O\n").fiber_shape())


class TestEllipticParameter(unittest.TestCase):

    def test_01_parse(self):
        w = EllipticParameter.parse("t^3 + t ; t (t - 1)")
        self.assertEqual(w.numerator, T ** 3 + T)
        self.assertEqual(w.denominator, T ** 2 - T)
        self.assertEqual(str(EllipticParameter.parse("0 ; 1")), "x")
        self.assertEqual(str(EllipticParameter.parse("0 ; t^2")), "(x)/(t^2)")

    def test_02_parse_errors(self):
        with self.assertRaises(k3fib.ParseError):
            EllipticParameter.parse("t^2")
        with self.assertRaises(k3fib.ParseError):
            EllipticParameter.parse("1 ; 0")

    def test_03_x_in_w(self):
        """
        x = w d - a has degree max(deg a, deg d) in t.
        """
        w = EllipticParameter.parse("t^3 + t ; t (t - 1)")
        self.assertEqual(w.x_in_w().degree, 3)
        self.assertEqual(w.rescaled(2).scale, 2)

    def test_04_y_parameter(self):
        """
        A y-parameter prints its head and refuses to solve for x.
        """
        w = EllipticParameter(Polynomial(), T ** 2, kind=Y_KIND)
        self.assertEqual(str(w), "(y)/(t^2)")
        self.assertEqual(w.pole_at_zero, 3)
        self.assertEqual(str(replace(w, x_coefficient=T)), "(y + t*x)/(t^2)")
        with self.assertRaises(k3fib.NeighborError):
            w.x_in_w()


class TestNeighborSteps(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.results = {}
        for name, (source, target, _) in STEPS.items():
            cls.results[name] = neighbor_step(source, load_divisor(name), WeierstrassModel.from_strings(*target))
            print(f"\n{name}: " + "\n  ".join(cls.results[name].report_lines()))

    def test_01_parameters(self):
        """
        Solving the pole conditions recovers the catalog parameters.
        """
        for name, (_, _, expected) in STEPS.items():
            with self.subTest(divisor=name):
                w = self.results[name].parameter
                exp = EllipticParameter.parse(expected)
                self.assertEqual((w.numerator, w.denominator), (exp.numerator, exp.denominator))

    def test_02_targets_identified(self):
        """
        Every derived model is isomorphic to its catalog target.
        """
        for name, result in self.results.items():
            with self.subTest(divisor=name):
                self.assertIsNotNone(result.identification)
                self.assertTrue(result.ok)
                self.assertEqual(result.notes, ())

    def test_03_fiber_at_infinity(self):
        """
        The divisor's shape reappears as the new fiber at w = infinity.
        """
        for name, result in self.results.items():
            with self.subTest(divisor=name):
                self.assertEqual(result.predicted, result.at_infinity)
        self.assertEqual(self.results["1to5.div"].at_infinity, "D10")

    def test_04_fibers_of_d10_step(self):
        result = self.results["1to5.div"]
        self.assertEqual(sorted(result.config.lattice_labels()), ["A2", "D10", "E7"])
        self.assertEqual(result.mw_rank, 1)
        self.assertTrue(result.poles.ok)
        data = result.to_dict()
        self.assertTrue(data["ok"])
        self.assertEqual(data["at_infinity"], "D10")

    def test_05_printed_parameter_refuted(self):
        """
        The printed (x + t^3) / (t (t - 1)) has the wrong pole orders; the corrected one fits.
        """
        F = load_divisor("1to9.div")
        config = classify_all(FIBRATION_1)
        printed = pole_order_check(FIBRATION_1, F, EllipticParameter.parse("t^3 ; t (t - 1)"), config)
        self.assertFalse(printed.ok)
        self.assertTrue(printed.failures())
        fixed = pole_order_check(FIBRATION_1, F, EllipticParameter.parse("t^3 + t ; t (t - 1)"), config)
        self.assertTrue(fixed.ok)

    def test_06_unsupported_divisor(self):
        """
        A divisor naming a component the fiber does not have is rejected.
        """
        F = DivisorSpec.from_text("2 O\n2 comp 0 id\n1 comp 0 far1\n1 comp 0 a1\n")
        with self.assertRaises(k3fib.NeighborError):
            neighbor_step(FIBRATION_1, F)


class TestStepByStep(unittest.TestCase):
    """The D10 step from fibration 1 to fibration 5, one operation at a time."""

    @classmethod
    def setUpClass(cls):
        cls.F = load_divisor("1to5.div")
        cls.config = classify_all(FIBRATION_1)
        cls.target = WeierstrassModel.from_strings("-t^3", "t^3", "0")

    def test_01_ansatz(self):
        ansatz = build_ansatz(FIBRATION_1, self.F, self.config)
        self.assertEqual(ansatz.kind, "x")
        self.assertEqual(ansatz.denominator, T ** 2)
        self.assertEqual(ansatz.top_degree, 4)
        self.assertEqual(ansatz.unknowns, ("a0", "a1", "a3", "a4"))
        self.assertEqual(ansatz.describe(), "w = (a0 + a1*t + a3*t^3 + a4*t^4 + x)/(t^2)")

    def test_02_solve(self):
        """
        Every free coefficient is forced to zero: w = x / t^2.
        """
        ansatz = build_ansatz(FIBRATION_1, self.F, self.config)
        w = solve_pole_conditions(FIBRATION_1, ansatz, self.F, self.config)
        self.assertFalse(w.numerator)
        self.assertEqual(w.denominator, T ** 2)
        self.assertTrue(pole_order_check(FIBRATION_1, self.F, w, self.config).ok)

    def test_03_derive_and_identify(self):
        w = EllipticParameter.parse("0 ; t^2")
        result = derive_new_model(FIBRATION_1, w, self.F, self.config)
        self.assertEqual(sorted(result.config.lattice_labels()), ["A2", "D10", "E7"])
        same = identify_target(result.model, result.model)
        self.assertTrue(same.map.is_identity)
        self.assertEqual(same.base_change, "w")
        self.assertIsNotNone(identify_target(result.model, self.target))
        self.assertIsNone(identify_target(result.model, FIBRATION_1))

    def test_04_target_rank(self):
        """
        A target of a different Mordell-Weil rank makes the step inconsistent.
        """
        result = neighbor_step(FIBRATION_1, self.F, self.target)
        self.assertEqual(result.target_mw_rank, 1)
        self.assertTrue(result.rank_consistent)
        wrong = replace(result, target_config=classify_all(FIBRATION_1))
        self.assertEqual(wrong.target_mw_rank, 0)
        self.assertFalse(wrong.rank_consistent)
        self.assertFalse(wrong.ok)
        self.assertIn("target mw_rank: 0 (MISMATCH)", wrong.report_lines())
        untargeted = replace(result, target_config=None)
        self.assertIsNone(untargeted.target_mw_rank)
        self.assertTrue(untargeted.rank_consistent)

FIBRATION_21 = WeierstrassModel.from_strings("t^4 + 1", "-1", "-(t^4 + 1)")
FIBRATION_25 = WeierstrassModel.from_strings("t^4 + t^3 + 1", "-(t^4 + t^3 - t^2 + t + 1)", "0")

#: another model of fibration 38: E6 at 0, E8 at 1, E6 at infinity
CUSPIDAL_SOURCE = WeierstrassModel.from_strings("0", "0", "t^4 (t - 1)^5")


class TestSlopeStep(unittest.TestCase):
    """The A7 step through the 2-torsion section (-1, 0) from fibration 21 to fibration 25."""

    @classmethod
    def setUpClass(cls):
        cls.F = load_divisor("21to25.div")
        cls.config = classify_all(FIBRATION_21)
        cls.result = neighbor_step(FIBRATION_21, cls.F, FIBRATION_25)
        print("\n21to25.div: " + "\n  ".join(cls.result.report_lines()))

    def test_01_ansatz(self):
        ansatz = build_ansatz(FIBRATION_21, self.F, self.config)
        self.assertEqual(ansatz.kind, "slope")
        self.assertEqual(ansatz.denominator, T ** 2 - T)
        self.assertEqual(ansatz.unknowns, ("a0", "a1"))

    def test_02_solve(self):
        """
        The conditions along arcs through the A7 chain force w = ((y)/(x + 1) + 1 - t)/(t (t - 1)).
        """
        w = self.result.parameter
        self.assertEqual(w.kind, "slope")
        self.assertEqual(w.head, "(y)/(x - 2)")
        self.assertEqual(w.numerator, 1 - T)
        self.assertEqual(w.denominator, T ** 2 - T)
        self.assertFalse(w.x_coefficient)

    def test_03_derived_fibers(self):
        result = self.result
        self.assertEqual(sorted(result.config.lattice_labels()), ["A1", "A1", "A4", "A7", "D5"])
        self.assertEqual(result.at_infinity, "A7")
        self.assertEqual(result.predicted, "A7")
        self.assertTrue(result.poles.ok)

    def test_04_target_identified(self):
        self.assertIsNotNone(self.result.identification)
        self.assertTrue(self.result.ok)
        self.assertEqual(self.result.notes, ())

    def test_05_zero_section_rejected(self):
        """
        A slope parameter without a section of polynomial coordinates has no curve.
        """
        w = replace(self.result.parameter, section=None)
        with self.assertRaises(k3fib.NeighborError):
            curve_in_w(FIBRATION_21, w)


class TestCuspidalSteps(unittest.TestCase):
    """3O steps from y^2 = x^3 + t^4 (t - 1)^5 to the quasi-elliptic fibrations 48 and 49."""

    TARGETS = {
        "38to49.div": ("0", "0", "t^4 (t^2 + 1)^2"),
        "38to48.div": ("0", "0", "(t^2 + 1)^2 (t^3 + t^2 + 1)"),
    }

    @classmethod
    def setUpClass(cls):
        cls.config = classify_all(CUSPIDAL_SOURCE)
        cls.results = {}
        for name, target in cls.TARGETS.items():
            F = load_divisor(name)
            cls.results[name] = neighbor_step(CUSPIDAL_SOURCE, F, WeierstrassModel.from_strings(*target))
            print(f"\n{name}: " + "\n  ".join(cls.results[name].report_lines()))

    def test_01_ansatz(self):
        """
        Both divisors give a y-ansatz with a quadratic x-coefficient and b4 fixed by d.
        """
        for name in self.TARGETS:
            with self.subTest(divisor=name):
                ansatz = build_ansatz(CUSPIDAL_SOURCE, load_divisor(name), self.config)
                self.assertEqual(ansatz.kind, "y")
                self.assertEqual(ansatz.unknowns, ("c0", "c1", "c2", "b0", "b1", "b2", "b3", "b5", "b6"))

    def test_02_parameter_of_e6_step(self):
        w = self.results["38to49.div"].parameter
        self.assertFalse(w.numerator)
        self.assertFalse(w.x_coefficient)
        self.assertEqual(w.denominator, T ** 2 * (T - 1) ** 2)

    def test_03_parameter_of_e8_step(self):
        """
        The E8 divisor forces w = (y + i t^2 - i t^3) / t^4; the printed (y + i t^3) / t^4
        misses the conditions along the E6 fiber at 0.
        """
        w = self.results["38to48.div"].parameter
        self.assertEqual(w.numerator, I * T ** 2 - I * T ** 3)
        self.assertFalse(w.x_coefficient)
        self.assertEqual(w.denominator, T ** 4)
        printed = replace(w, numerator=I * T ** 3)
        report = pole_order_check(CUSPIDAL_SOURCE, load_divisor("38to48.div"), printed, self.config)
        self.assertFalse(report.ok)

    def test_04_derived_fibers(self):
        expected = {
            "38to49.div": ["A2", "A2", "A2", "A2", "E6", "E6"],
            "38to48.div": ["A2", "A2", "E8", "E8"],
        }
        for name, labels in expected.items():
            with self.subTest(divisor=name):
                result = self.results[name]
                self.assertEqual(result.conversion.kind, "cuspidal")
                self.assertTrue(result.model.is_quasi_elliptic())
                self.assertEqual(sorted(result.config.lattice_labels()), labels)
                self.assertEqual(result.at_infinity, result.predicted)
                self.assertTrue(result.poles.ok)

    def test_05_targets_identified(self):
        for name, result in self.results.items():
            with self.subTest(divisor=name):
                self.assertIsNotNone(result.identification)
                self.assertTrue(result.ok)
                self.assertIn("curve: Z^3 = ", "\n".join(result.report_lines()))

    def test_06_unsupported_parameters(self):
        """
        An x-coefficient or an elliptic source leaves no cuspidal curve.
        """
        w = self.results["38to49.div"].parameter
        with self.assertRaises(k3fib.NeighborError):
            curve_in_w(CUSPIDAL_SOURCE, replace(w, x_coefficient=T))
        with self.assertRaises(k3fib.NeighborError):
            curve_in_w(FIBRATION_21, w)


class TestArcs(unittest.TestCase):

    def test_01_arcs_through_smooth_fiber(self):
        """
        Arcs through the smooth fiber at t = -1 come in pairs y, -y and satisfy the equation.
        """
        place = Place.finite(-1)
        local = local_coefficients(CUSPIDAL_SOURCE, place)
        comp = frame(classify_all(CUSPIDAL_SOURCE), place)[0]
        arcs = component_arcs(local, place, comp)
        self.assertEqual(len(arcs), 6)
        for arc in arcs:
            with self.subTest(x=str(arc.x)):
                self.assertEqual(arc.cubic.valuation(), 0)
                square = arc.y(8) * arc.y(8)
                for k in range(8):
                    self.assertEqual(square.coeff(k), arc.cubic.coeff(k))
        self.assertEqual(sorted(arc.sign for arc in arcs[:2]), [-1, 1])



if __name__ == "__main__":
    unittest.main()
