import k3fib
import unittest

from k3fib.algebra import INFINITY, Place
from k3fib.algebra import T
from k3fib.model import ZERO_POINT, WeierstrassModel, apply_map
from k3fib.tate import (
    KodairaType,
    classify_all,
    classify_place,
    component_of_section,
    infinity_weight,
    minimize,
    quasi_places,
)


def _model(a2, a4, a6):
    return WeierstrassModel.from_strings(a2, a4, a6)


class TestKodairaType(unittest.TestCase):

    def test_01_parse(self):
        """
        Kodaira symbols map to their root lattices.
        """
        cases = {
            "I12": "A11",
            "I3*": "D7",
            "I0*": "D4",
            "IV": "A2",
            "IV*": "E6",
            "III*": "E7",
            "II*": "E8",
            "I1": None,
            "II": None,
        }
        for symbol, label in cases.items():
            with self.subTest(symbol=symbol):
                kt = KodairaType.parse(symbol)
                self.assertEqual(kt.lattice_label, label)
                self.assertEqual(kt.symbol, symbol)
        with self.assertRaises(k3fib.ParseError):
            KodairaType.parse("V")
        with self.assertRaises(k3fib.ClassificationError):
            KodairaType("IV", 2)

    def test_02_euler_numbers(self):
        self.assertEqual(KodairaType.parse("I3*").discriminant_order, 9)
        self.assertEqual(KodairaType.parse("IV*").discriminant_order, 8)
        self.assertEqual(KodairaType.parse("I7").component_count, 7)
        self.assertEqual(KodairaType.parse("II*").component_count, 9)

    def test_03_wild_candidates(self):
        """
        Only additive fibers of potentially good reduction can be wild.
        """
        self.assertTrue(KodairaType.parse("IV*").can_be_wild)
        self.assertTrue(KodairaType.parse("I0*").can_be_wild)
        self.assertFalse(KodairaType.parse("I2*").can_be_wild)
        self.assertFalse(KodairaType.parse("I5").can_be_wild)


class TestEllipticClassification(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.m1 = _model("2(t^3 + 1)", "t^6", "0")
        cls.config1 = classify_all(cls.m1)
        print("\n" + "\n".join(cls.config1.report_lines()))

    def test_01_three_fibers(self):
        """
        y^2 = x^3 - (t^3 + 1) x^2 + t^6 x has I12, I3 and I3* fibers.
        """
        self.assertEqual(self.config1.lattice_labels(), ["A11", "A2", "D7"])
        self.assertEqual([fd.kodaira.symbol for fd in self.config1], ["I12", "I3", "I3*"])
        self.assertEqual([fd.place for fd in self.config1], [Place.finite(0), Place.finite(1), INFINITY])
        self.assertEqual(self.config1.v_delta_sum, 24)
        self.assertEqual(self.config1.trivial_rank, 22)
        self.assertFalse(self.config1.is_quasi_elliptic)

    def test_02_to_dict(self):
        data = self.config1.to_dict()
        self.assertFalse(data["quasi_elliptic"])
        self.assertEqual(data["fibers"][0]["place"], "0")
        self.assertEqual(data["fibers"][2]["lattice"], "D7")
        self.assertNotIn("unsplit_i1", data)

    def test_03_single_place(self):
        """
        The D10 fiber of y^2 = x^3 - t^3 x^2 + t^3 x sits at infinity.
        """
        m = _model("-t^3", "t^3", "0")
        fd = classify_place(m, INFINITY)
        self.assertEqual(fd.kodaira.symbol, "I6*")
        self.assertEqual(fd.v_delta, 12)
        self.assertEqual(classify_place(m, Place.finite(0)).lattice_label, "E7")
        self.assertEqual(classify_place(m, Place.finite(1)).lattice_label, "A2")

    def test_04_wild_fiber(self):
        """
        A IV* fiber with v(Delta) = 9 carries a wild part of 1.
        """
        m = _model("t", "-t^3 (t + 1)^2", "t^5 (t + 1)^4")
        config = classify_all(m)
        fd = config.at(INFINITY)
        self.assertEqual(fd.kodaira.symbol, "IV*")
        self.assertEqual(fd.v_delta, 9)
        self.assertEqual(fd.wild, 1)
        self.assertEqual(config.at(Place.finite(0)).lattice_label, "D7")
        self.assertEqual(config.at(Place.finite(-1)).lattice_label, "A5")
        self.assertEqual(config.at(Place.finite(0)).wild, 0)

    def test_05_unsplit_i1(self):
        """
        A cubic factor of the discriminant without roots in F9 gives three I1 fibers.
        """
        m = _model("t^4 - t + 1", "t^2 (t - 1)(1 + t - t^2)", "t^4 (t - 1)^2")
        config = classify_all(m)
        self.assertEqual(config.lattice_labels(), ["A6", "A6", "A6"])
        self.assertEqual(config.unsplit.degree, 3)
        self.assertEqual(config.v_delta_sum, 24)
        self.assertIn("kodaira=I1", config.report_lines()[-1])
        self.assertIn("unsplit_i1", config.to_dict())

    def test_06_rejects_non_k3(self):
        with self.assertRaises(k3fib.ClassificationError):
            classify_all(_model("t", "0", "t^3 + 1"))

    def test_07_zero_section_component(self):
        fd = self.config1.at(Place.finite(0))
        self.assertEqual(component_of_section(self.m1, ZERO_POINT, fd), "id")
        self.assertEqual(fd.component("id").multiplicity, 1)
        with self.assertRaises(k3fib.ClassificationError):
            fd.component("nope")


class TestQuasiElliptic(unittest.TestCase):

    def test_01_two_e6_and_an_e8(self):
        """
        y^2 = x^3 + t^3 (t + 1)^4 has E6 at 0 and -1 and E8 at infinity.
        """
        m = _model("0", "0", "t^3 (t + 1)^4")
        self.assertEqual(quasi_places(m), [Place.finite(0), Place.finite(-1), INFINITY])
        config = classify_all(m)
        self.assertTrue(config.is_quasi_elliptic)
        self.assertEqual(config.lattice_labels(), ["E6", "E6", "E8"])
        self.assertEqual(config.trivial_rank, 22)
        self.assertTrue(all(fd.v_delta is None for fd in config))

    def test_02_ten_iv_fibers(self):
        """
        y^2 = x^3 + t^10 + t^2 has a IV fiber over every rational place.
        """
        config = classify_all(_model("0", "0", "t^10 + t^2"))
        self.assertEqual(len(config), 10)
        self.assertEqual({fd.kodaira.symbol for fd in config}, {"IV"})
        self.assertEqual(config.trivial_rank, 22)

    def test_03_e6_arms(self):
        """
        The middle component of each IV* arm carries the branch of y at its end.
        """
        fd = classify_place(_model("0", "0", "t^3 (t + 1)^4"), Place.finite(0))
        for arm, leaf in (("c3", "e1"), ("c4", "e2")):
            with self.subTest(arm=arm):
                self.assertEqual(fd.component(arm).branch, fd.component(leaf).branch)
                self.assertEqual(fd.component(arm).branch.power, 2)
        self.assertEqual(fd.component("e1").branch.value, 1)
        self.assertEqual(fd.component("e2").branch.value, -1)
        self.assertIsNone(fd.component("c2").branch)


class TestMinimalModels(unittest.TestCase):

    def test_01_scaled_model_is_reduced(self):
        """
        Scaling fibration 1 by u = t doubles v(Delta) at 0; minimize undoes it.
        """
        m1 = _model("2(t^3 + 1)", "t^6", "0")
        scaled = _model("2 t^2 (t^3 + 1)", "t^10", "0")
        self.assertEqual(infinity_weight(scaled), 3)
        model, phi = minimize(scaled)
        self.assertEqual(model, m1)
        self.assertEqual(phi.u, T)
        self.assertEqual(apply_map(scaled, phi), model)
        self.assertEqual(infinity_weight(model), 2)

    def test_02_minimal_models_unchanged(self):
        m1 = _model("2(t^3 + 1)", "t^6", "0")
        model, phi = minimize(m1)
        self.assertEqual(model, m1)
        self.assertTrue(phi.is_identity)
        quasi = _model("0", "0", "t^3 (t + 1)^4")
        self.assertEqual(minimize(quasi)[0], quasi)


if __name__ == "__main__":
    unittest.main()
