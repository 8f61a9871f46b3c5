import k3fib
import unittest

from k3fib.algebra import (
    ELEMENTS,
    F3,
    F9,
    I,
    INFINITY,
    ONE,
    T,
    ZERO,
    Field,
    FieldElement,
    LaurentSeries,
    Place,
    Polynomial,
    RationalFunction,
    field_roots,
    interpolate,
    is_squarefree,
    local_expand,
    parse_polynomial,
    parse_rational,
    parse_section,
    poly_gcd,
    polynomial_roots,
    reduce_at,
    roots_with_multiplicity,
    squarefree_split,
    valuation,
)


class TestField(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        print(f"\nF9 has {len(ELEMENTS)} interned elements")

    def test_01_i_squared(self):
        """
        i^2 = -1 = 2 and i has multiplicative order 4.
        """
        self.assertEqual(I * I, FieldElement(2, 0))
        self.assertEqual(I * I, -ONE)
        self.assertEqual(I ** 4, ONE)
        self.assertNotEqual(I ** 2, ONE)

    def test_02_interning(self):
        """
        Equal elements are the same object, also after reduction mod 3.
        """
        self.assertIs(FieldElement(4, -2), FieldElement(1, 1))
        self.assertIs(I + I + I, ZERO)

    def test_03_inverses(self):
        """
        Every nonzero element has an inverse; zero raises FieldError.
        """
        for x in ELEMENTS[1:]:
            self.assertEqual(x * x.inverse(), ONE)
        self.assertEqual(I.inverse(), FieldElement(0, 2))
        with self.assertRaises(k3fib.FieldError):
            ZERO.inverse()
        with self.assertRaises(ZeroDivisionError):
            ONE / ZERO

    def test_04_frobenius_and_cube_roots(self):
        """
        Cube roots invert Frobenius, which conjugates i to -i.
        """
        self.assertEqual(I.conj(), -I)
        for x in ELEMENTS:
            self.assertEqual(x.cube_root() ** 3, x)

    def test_05_squares(self):
        """
        Half of F9* are squares; every element of F3 is a square in F9.
        """
        squares = {x for x in ELEMENTS[1:] if x.is_square()}
        self.assertEqual(len(squares), 4)
        self.assertIn(FieldElement(2, 0), squares)
        self.assertFalse(FieldElement(1, 1).is_square())
        for x in squares:
            self.assertEqual(x.sqrt() ** 2, x)

    def test_06_field_objects(self):
        """
        F3 embeds in F9; other names are rejected.
        """
        self.assertEqual(F3.order, 3)
        self.assertEqual(len(list(F3.elements())), 3)
        self.assertEqual(len(list(F9.elements())), 9)
        self.assertFalse(F3.contains(I))
        with self.assertRaises(k3fib.FieldError):
            Field("F4")
        with self.assertRaises(k3fib.FieldError):
            int(I)

    def test_07_display(self):
        self.assertEqual(str(I), "i")
        self.assertEqual(str(FieldElement(1, 1)), "(1+i)")
        self.assertEqual(str(FieldElement(0, 2)), "2*i")


class TestPolynomial(unittest.TestCase):

    def test_01_parse_and_print(self):
        """
        Integers are read mod 3 and printed in descending degree.
        """
        p = parse_polynomial("t^2 + 2*t + 1")
        self.assertEqual(p, (T + 1) ** 2)
        self.assertEqual(str(p), "t^2 + 2*t + 1")
        self.assertEqual(parse_polynomial("4t"), T)
        self.assertEqual(parse_polynomial("it"), T * I)
        self.assertEqual(parse_polynomial("-t^3 + t^3"), Polynomial())

    def test_02_parse_errors(self):
        """
        Malformed or non-polynomial input raises ParseError.
        """
        for bad in ("t^2 +", "1/t", "x", "(t + 1", "", "t^t"):
            with self.subTest(text=bad):
                with self.assertRaises(k3fib.ParseError):
                    parse_polynomial(bad)
        with self.assertRaises(k3fib.ParseError):
            parse_polynomial("i", F3)
        with self.assertRaises(k3fib.ParseError):
            parse_rational("1/(t - t)")

    def test_03_division(self):
        """
        divmod and gcd follow the usual Euclidean rules.
        """
        q, r = divmod(T ** 3 - T, T - 1)
        self.assertEqual(q, T ** 2 + T)
        self.assertFalse(r)
        self.assertEqual(poly_gcd(T ** 2 - 1, T ** 2 + T), T + 1)
        with self.assertRaises(k3fib.FieldError):
            (T - 1).exact_div(T)

    def test_04_characteristic_three(self):
        """
        (a + b)^3 = a^3 + b^3 and d/dt t^3 = 0.
        """
        self.assertEqual((T + I) ** 3, T ** 3 + I ** 3)
        self.assertFalse((T ** 3).derivative())
        self.assertEqual((T ** 3).cube_root(), T)
        self.assertIsNone((T ** 3 + T).cube_root())
        self.assertEqual((T ** 2 + 1).frobenius(), (T ** 2 + 1) ** 3)

    def test_05_roots(self):
        """
        field_roots lists roots in table order; F3 sees none of t^2 + 1.
        """
        self.assertEqual(field_roots(T ** 2 + 1), [I, FieldElement(0, 2)])
        self.assertEqual(field_roots(T ** 2 + 1, F3), [])
        self.assertEqual(Polynomial.from_roots([0, 1, 2]), T ** 3 - T)
        roots, rest = roots_with_multiplicity(T ** 3 * (T - 1) ** 2)
        self.assertEqual(roots, [(ZERO, 3), (ONE, 2)])
        self.assertEqual(rest, Polynomial.constant(1))

    def test_06_squarefree_split(self):
        """
        p = h^2 q with q squarefree.
        """
        p = T ** 3 * (T - 1) ** 2
        h, q = squarefree_split(p)
        self.assertEqual(h * h * q, p)
        self.assertTrue(is_squarefree(q))
        self.assertEqual(q, T)
        self.assertTrue(is_squarefree(T ** 3 - T))
        self.assertTrue(is_squarefree(T ** 2 + 1))
        self.assertFalse(is_squarefree(T ** 3))

    def test_07_sqrt_and_shift(self):
        self.assertEqual(((T + 1) ** 2).sqrt(), T + 1)
        self.assertIsNone((T ** 2 + T).sqrt())
        self.assertEqual((T ** 2).shift(1), (T + 1) ** 2)
        self.assertEqual((T ** 2 + T).reverse(), T + 1)
        self.assertEqual(T.reverse(4), T ** 3)

    def test_08_interpolate(self):
        """
        Three values at 0, 1, 2 determine t^2 + 1.
        """
        self.assertEqual(interpolate([(0, 1), (1, 2), (2, 2)]), T ** 2 + 1)
        with self.assertRaises(k3fib.FieldError):
            interpolate([(0, 1), (0, 2)])

    def test_09_polynomial_roots(self):
        """
        X^2 - t^2 has exactly the roots t and -t in F9[t].
        """
        roots = polynomial_roots([-(T ** 2), Polynomial()], 2)
        self.assertEqual(set(roots), {T, -T})


class TestRationalAndPlaces(unittest.TestCase):

    def test_01_normalization(self):
        """
        Rational functions are reduced with a monic denominator.
        """
        r = parse_rational("t/(t^2)")
        self.assertEqual(r, RationalFunction(1, T))
        self.assertEqual(str(r), "1/t")
        s = RationalFunction(T, 2 * T ** 2)
        self.assertEqual(s.den, T)
        self.assertEqual(s * T, RationalFunction(2))

    def test_02_sections(self):
        """
        Sections accept ';' or ',' and O for the zero section.
        """
        self.assertIsNone(parse_section("O"))
        x, y = parse_section("(t^2 ; i t^3)")
        self.assertEqual(x, T ** 2)
        self.assertEqual(y, T ** 3 * I)
        self.assertEqual(parse_section("(t, (t + 1) t)")[1], T ** 2 + T)
        with self.assertRaises(k3fib.ParseError):
            parse_section("t ; t")

    def test_03_place_parse(self):
        self.assertIs(Place.parse("inf"), INFINITY)
        self.assertEqual(Place.parse("1").root, ONE)
        self.assertEqual(Place.parse("i").label, "i")
        self.assertLess(Place.finite(2), INFINITY)
        with self.assertRaises(k3fib.ParseError):
            Place.parse("t")

    def test_04_valuations(self):
        """
        Plain and weighted valuations at finite places and at infinity.
        """
        self.assertEqual(valuation(T ** 3, Place.finite(0)), 3)
        self.assertEqual(valuation(T ** 3 - T, Place.finite(2)), 1)
        self.assertEqual(valuation(RationalFunction(1, T ** 2), INFINITY), 2)
        self.assertEqual(valuation(T ** 3, INFINITY, weight=12), 9)
        with self.assertRaises(k3fib.FieldError):
            valuation(Polynomial(), INFINITY)

    def test_05_local_expansion(self):
        """
        1/(1 - t) expands to 1 + t + t^2 + ... at t = 0.
        """
        self.assertEqual(local_expand(RationalFunction(1, 1 - T), Place.finite(0), 4), [ONE] * 4)
        self.assertEqual(reduce_at(T ** 2 + 1, Place.finite(I)), ZERO)
        with self.assertRaises(k3fib.FieldError):
            local_expand(RationalFunction(1, T), Place.finite(0), 2)


class TestLaurentSeries(unittest.TestCase):

    def test_01_inverse(self):
        """
        1/(1 - s) = 1 + s + s^2 + s^3 + O(s^4); a monomial inverts exactly.
        """
        inv = LaurentSeries(0, (1, -1)).inverse(4)
        self.assertEqual(inv, LaurentSeries(0, (1, 1, 1, 1), 4))
        self.assertEqual(str(inv), "1 + s + s^2 + s^3 + O(s^4)")
        self.assertEqual(LaurentSeries.monomial(2, I).inverse(4), LaurentSeries.monomial(-2, -I))

    def test_02_precision(self):
        """
        Coefficients past the known precision raise instead of reading as zero.
        """
        a = LaurentSeries(1, (1, 1), 3)
        b = LaurentSeries.from_polynomial(T ** 2 + 1)
        self.assertEqual((a * b).precision, 3)
        self.assertEqual((a + b).precision, 3)
        self.assertEqual(a.coeff(2), ONE)
        with self.assertRaises(k3fib.FieldError):
            a.coeff(3)
        with self.assertRaises(k3fib.FieldError):
            LaurentSeries(0, (), 5).valuation()
        self.assertIsNone(LaurentSeries(0, ()).valuation())

    def test_03_sqrt(self):
        """
        A square root exists for an even start and a square leading coefficient.
        """
        s = LaurentSeries(2, (1, 1))
        root = s.sqrt(5)
        self.assertEqual(root.start, 1)
        square = root * root
        for k in range(2, 6):
            with self.subTest(k=k):
                self.assertEqual(square.coeff(k), s.coeff(k))
        self.assertIsNone(LaurentSeries(1, (1,)).sqrt(4))
        self.assertIsNone(LaurentSeries(0, (1 + I,)).sqrt(4))


if __name__ == "__main__":
    unittest.main()
