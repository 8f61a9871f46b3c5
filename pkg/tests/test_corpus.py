import k3fib
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from k3fib.algebra import INFINITY, Place
from k3fib.corpus import (
    FIBRATION_COUNT,
    load_corpus,
    parse_corpus,
    show_record,
    verify_all,
    verify_record,
)
from k3fib.model import ELLIPTIC, QUASI_ELLIPTIC
from k3fib.mordell import find_two_torsion, torsion_order
from k3fib.options import VerifyOptions

SMALL = """\
# two records
[fibration 1]
a2 = 2(t^3 + 1)
a4 = t^6
a6 = 0
fiber = 0 A11
fiber = 1 A2
fiber = inf D7
mw_rank = 0

[fibration 2]
a2 = 0
a4 = 0
a6 = t^10 + t^2
derived_from = 1
"""


class TestCatalogReader(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.catalog = load_corpus()
        print(f"\nLoaded {len(cls.catalog)} fibrations from {cls.catalog.source}")

    def test_01_packaged_catalog(self):
        """
        The packaged catalog holds fibrations 1 to 52 in order.
        """
        self.assertEqual(len(self.catalog), FIBRATION_COUNT)
        self.assertEqual(self.catalog.ids(), list(range(1, 53)))
        self.assertIn(41, self.catalog)
        self.assertNotIn(53, self.catalog)
        with self.assertRaises(k3fib.CorpusError):
            self.catalog[53]

    def test_02_record_fields(self):
        rec = self.catalog[5]
        self.assertEqual(rec.fiber_labels(), ["A2", "D10", "E7"])
        self.assertEqual(rec.mw_rank, 1)
        self.assertEqual(rec.torsion, 2)
        self.assertEqual(rec.heights, ((2, Fraction(5, 2)),))
        self.assertEqual(rec.corrected_heights, ((2, Fraction(3, 2)),))
        self.assertEqual(rec.derivation.source, 1)
        self.assertEqual(rec.derivation.divisor_spec().fiber_shape(), "D10")
        self.assertEqual(rec.fiber_correction(Place.finite(-1)).place, INFINITY)
        self.assertEqual([s.claims_torsion for s in rec.sections], [True, False])

    def test_03_quasi_elliptic_records(self):
        """
        Five fibrations are quasi-elliptic.
        """
        quasi = [rec.id for rec in self.catalog if rec.is_quasi_elliptic]
        self.assertEqual(quasi, [38, 41, 48, 49, 50])

    def test_04_small_catalog(self):
        catalog = parse_corpus(SMALL, source="small.cfg", expected=None)
        self.assertEqual(catalog.ids(), [1, 2])
        self.assertEqual(catalog[1].line, 2)
        self.assertEqual(catalog[2].derivation.divisor, None)
        with self.assertRaises(k3fib.CorpusError):
            parse_corpus(SMALL, source="small.cfg")

    def test_05_parse_errors(self):
        """
        Errors name the file and the offending line.
        """
        cases = [
            ("[fibration 1]\na2 = 0\nbogus = 1\n", 3),
            ("a2 = 0\n", 1),
            ("[fibration 1]\na2 = 0\na4 = t^\na6 = 1\n", 3),
            ("[fibration 1]\na2 = 0\na2 = 1\n", 3),
            ("[fibration x]\n", 1),
            ("[fibration 1]\na2 = 0\na4 = 0\na6 = t^2\nfiber = 0 F4\n", 5),
            ("[fibration 1]\na2 = 0\na4 = 0\na6 = t^2\nsection = torsion (0, 1)\n", 5),
            ("[fibration 1]\na2 = 0\na4 = 0\na6 = t^2\nheight = 3 1/2\n", 5),
        ]
        for text, line in cases:
            with self.subTest(text=text):
                with self.assertRaises(k3fib.ParseError) as ctx:
                    parse_corpus(text, source="broken.cfg", expected=None)
                self.assertEqual(ctx.exception.line, line)
                self.assertEqual(ctx.exception.source, "broken.cfg")
                self.assertTrue(str(ctx.exception).startswith(f"broken.cfg:{line}:"))

    def test_06_missing_coefficient(self):
        with self.assertRaises(k3fib.ParseError) as ctx:
            parse_corpus("\n[fibration 7]\na2 = 0\na4 = 0\n", expected=None)
        self.assertEqual(ctx.exception.line, 2)

    def test_07_catalog_errors(self):
        duplicate = "[fibration 1]\na2 = 0\na4 = 0\na6 = t^2\n" * 2
        with self.assertRaises(k3fib.CorpusError):
            parse_corpus(duplicate, expected=None)
        dangling = "[fibration 1]\na2 = 0\na4 = 0\na6 = t^2\nderived_from = 9\n"
        with self.assertRaises(k3fib.CorpusError):
            parse_corpus(dangling, expected=None)
        with self.assertRaises(k3fib.CorpusError):
            load_corpus("/nonexistent/fibrations.cfg")

    def test_08_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "small.cfg"
            path.write_text(SMALL, encoding="utf-8")
            catalog = load_corpus(path, expected=2)
            self.assertEqual(catalog.source, str(path))
            self.assertEqual(len(catalog), 2)


class TestVerifyRecord(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.catalog = load_corpus()
        cls.reports = {n: verify_record(cls.catalog[n], catalog=cls.catalog) for n in (1, 5, 41)}
        for report in cls.reports.values():
            print("\n" + "\n".join(report.report_lines()))

    def test_01_misprinted_section(self):
        """
        Fibration 1: the printed 4-torsion point is off the curve; its correction has order 4.
        """
        report = self.reports[1]
        self.assertEqual(report.kind, ELLIPTIC)
        self.assertTrue(report.fiber_match)
        self.assertTrue(report.place_match)
        self.assertEqual(report.v_delta_sum, 24)
        self.assertEqual(report.mw_rank, 0)
        self.assertEqual(report.sections[0].order, 4)
        self.assertEqual(report.sections[0].height, 0)
        self.assertEqual(report.disc_value, -9)
        self.assertEqual(len(report.errata), 1)
        entry = report.errata[0]
        self.assertEqual((entry.subject, entry.operation), ("section 1", "is_on_curve"))
        self.assertEqual(entry.resolution, "corrected_section 1")
        self.assertEqual(report.status, "errata")

    def test_02_corrected_fiber_and_height(self):
        """
        Fibration 5: D10 sits at infinity and the free section has height 3/2.
        """
        report = self.reports[5]
        self.assertTrue(report.fiber_match)
        self.assertFalse(report.place_match)
        self.assertEqual(report.mw_rank, 1)
        self.assertEqual(report.sections[1].height, Fraction(3, 2))
        self.assertIsNone(report.sections[1].order)
        self.assertEqual(report.disc_value, -9)
        subjects = {e.subject: e for e in report.errata}
        self.assertEqual(set(subjects), {f"fiber at {Place.finite(-1).label}", "height 2"})
        self.assertTrue(all(e.resolved for e in report.errata))
        self.assertEqual(subjects["height 2"].computed, "3/2")

    def test_03_derivation_rerun(self):
        derivation = self.reports[5].derivation
        self.assertEqual(derivation.divisor, "1to5.div")
        self.assertTrue(derivation.identified)
        self.assertTrue(derivation.poles_ok)
        self.assertEqual(derivation.parameter, "(x)/(t^2)")

    def test_04_quasi_elliptic(self):
        """
        Fibration 41: ten IV fibers and a torsion group of order 81.
        """
        report = self.reports[41]
        self.assertEqual(report.kind, QUASI_ELLIPTIC)
        self.assertTrue(report.fiber_match)
        self.assertIsNone(report.v_delta_sum)
        self.assertEqual([s.order for s in report.sections], [3] * 8)
        self.assertEqual(report.disc_value, -9)
        self.assertEqual({e.subject for e in report.errata}, {"section 7", "section 8"})
        self.assertTrue(all(e.resolved for e in report.errata))

    def test_05_without_catalog(self):
        """
        A derived record verified alone skips its neighbor step with a warning.
        """
        report = verify_record(self.catalog[5], VerifyOptions.fast())
        self.assertIsNone(report.derivation.identified)
        self.assertIsNone(report.disc)
        self.assertIsNone(report.sections[1].height)
        report = verify_record(self.catalog[5])
        self.assertTrue(any("not available" in w for w in report.warnings))

    def test_06_show_record(self):
        lines = show_record(self.catalog[5], self.catalog)
        self.assertTrue(lines[0].startswith("Fibration 5: y^2 ="))
        self.assertTrue(any("(corrected: D10 at inf)" in line for line in lines))
        self.assertTrue(any(line.strip().startswith("F = ") for line in lines))
        lines = show_record(self.catalog[15], self.catalog)
        self.assertIn("  mw_rank: 1  (corrected: 2)", lines)

    def test_07_corrected_rank(self):
        """
        A ledgered rank correction resolves the rank errata.
        """
        record = self.catalog[15]
        self.assertEqual((record.mw_rank, record.corrected_mw_rank), (1, 2))
        report = verify_record(record, catalog=self.catalog)
        self.assertEqual(report.mw_rank, 2)
        self.assertFalse(report.rank_match)
        self.assertTrue(report.resolved("mw_rank"))
        self.assertNotIn(15, verify_all(self.catalog, ids=[15]).rank_failures)


class TestVerifyAll(unittest.TestCase):

    def test_01_deterministic(self):
        """
        Two runs over the same records give identical reports.
        """
        first = verify_all(ids=[5, 1, 12])
        second = verify_all(ids=[1, 5, 12])
        self.assertEqual([r.record for r in first.reports], [1, 5, 12])
        self.assertEqual(first.to_dict(), second.to_dict())

    def test_02_summary(self):
        summary = verify_all(ids=[1, 5, 41], options=VerifyOptions.fast())
        counts = summary.counts()
        self.assertEqual(counts["records"], 3)
        self.assertEqual(counts["elliptic"], 2)
        self.assertEqual(counts["quasi_elliptic"], 1)
        self.assertEqual(counts["errors"], 0)
        self.assertEqual(summary.rank_failures, [])
        self.assertTrue(summary.ok)
        self.assertIn("PASS", summary.report_lines()[-1])

    def test_03_unknown_id(self):
        with self.assertRaises(k3fib.CorpusError):
            verify_all(ids=[99])


#: records whose printed fiber table must be reproduced
FIBER_TABLE_RECORDS = [1, 2] + list(range(4, 28)) + list(range(29, 41)) + [42, 43, 44, 51]
FULL_TWO_TORSION = [2, 6, 7, 21, 23, 27, 29]
QUASI_RECORDS = [38, 41, 48, 49, 50]


class TestFullCatalog(unittest.TestCase):
    """Every record of the packaged catalog, verified once."""

    @classmethod
    def setUpClass(cls):
        cls.catalog = load_corpus()
        cls.summary = verify_all(cls.catalog)
        cls.reports = {r.record: r for r in cls.summary.reports}
        print("\n" + cls.summary.report_lines()[-1])

    def test_01_catalog_passes(self):
        """
        Known misprints are ledgered, so the shipped catalog verifies.
        """
        self.assertEqual(self.summary.total, FIBRATION_COUNT)
        self.assertEqual(self.summary.counts()["errors"], 0)
        self.assertEqual(self.summary.rank_failures, [])
        self.assertTrue(self.summary.ok)
        self.assertTrue(self.summary.report_lines()[-1].endswith("PASS"))

    def test_02_fiber_tables(self):
        self.assertGreaterEqual(self.summary.fiber_matches, 45)
        for record in FIBER_TABLE_RECORDS:
            with self.subTest(record=record):
                self.assertTrue(self.reports[record].fiber_match)
        for report in self.summary.reports:
            if not report.fiber_match:
                with self.subTest(record=report.record):
                    self.assertIn("fibers", {e.subject for e in report.errata})

    def test_03_euler_numbers(self):
        """
        Sum of v(Delta) is 24 on every elliptic record.
        """
        self.assertEqual(self.summary.elliptic, FIBRATION_COUNT - len(QUASI_RECORDS))
        self.assertEqual(self.summary.v_delta_ok, self.summary.elliptic)
        quasi = sorted(r.record for r in self.summary.reports if r.kind == QUASI_ELLIPTIC)
        self.assertEqual(quasi, QUASI_RECORDS)

    def test_04_shioda_tate_ranks(self):
        """
        A matching fiber table forces the printed rank, or a ledgered correction.
        """
        for report in self.summary.reports:
            if not report.fiber_match or report.rank_match is not False:
                continue
            with self.subTest(record=report.record):
                self.assertEqual(self.catalog[report.record].corrected_mw_rank, report.mw_rank)
                self.assertTrue(report.resolved("mw_rank"))
        report = self.reports[15]
        self.assertEqual(report.mw_rank, 2)
        entry = next(e for e in report.errata if e.subject == "mw_rank")
        self.assertEqual((entry.claim, entry.computed, entry.resolution), ("1", "2", "corrected_mw_rank"))

    def test_05_torsion_sections_have_height_zero(self):
        checked = 0
        for report in self.summary.reports:
            for section in report.sections:
                if section.order is None or section.height is None:
                    continue
                with self.subTest(record=report.record, section=section.index):
                    self.assertEqual(section.height, 0)
                checked += 1
            self.assertFalse([w for w in report.warnings if w.startswith("torsion section")])
        self.assertGreater(checked, 0)

    def test_06_quasi_elliptic_sections_have_order_three(self):
        for record in QUASI_RECORDS:
            for section in self.reports[record].sections:
                if section.on_curve:
                    with self.subTest(record=record, section=section.index):
                        self.assertEqual(section.order, 3)

    def test_07_full_two_torsion(self):
        """
        The cubic splits into three polynomial roots on these records.
        """
        for record in FULL_TWO_TORSION:
            model = self.catalog[record].effective_model
            with self.subTest(record=record):
                points = find_two_torsion(model)
                self.assertEqual(len(points), 3)
                for p in points:
                    self.assertEqual(torsion_order(model, p), 2)


if __name__ == "__main__":
    unittest.main()
