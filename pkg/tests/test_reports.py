import json
import unittest

from src.models.reports import FrolicherReport, PageTable, XnVerification, ZigZagWitness
from src.storage import (
    JsonReportFormatter,
    ReportFormatterFactory,
    TableReportFormatter,
)
from src.storage.table_report import format_grid


def kodaira_like_report(**overrides):
    data = dict(
        m=1,
        pages=[PageTable(r=0, dims=[[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]])],
        betti=[1, 2, 1],
        hodge=[[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]],
        degeneration_page=1,
        euler=0,
        conjugate_hodge=[[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]],
    )
    data.update(overrides)
    return FrolicherReport(**data)


class TestFrolicherReport(unittest.TestCase):
    def test_hodge_lookup(self):
        report = kodaira_like_report()
        self.assertEqual(report.hodge_number(1, 0), 1)
        self.assertEqual(report.hodge_number(2, 0), 0)
        self.assertEqual(report.page_dims(0)[(1, 1)], 1)
        with self.assertRaises(KeyError):
            report.page_dims(5)

    def test_inequality(self):
        report = kodaira_like_report(betti=[1, 3, 1])
        self.assertEqual(report.frolicher_inequality(), [True, False, True])

    def test_conjugation_symmetry(self):
        conjugate = [[0, 0, 1], [0, 1, 2], [1, 0, 1], [1, 1, 1]]
        report = kodaira_like_report(conjugate_hodge=conjugate)
        self.assertFalse(report.conjugation_symmetric())
        self.assertTrue(kodaira_like_report().conjugation_symmetric())

    def test_internal_fields_are_not_serialised(self):
        dumped = kodaira_like_report(differential_ranks=[[1, 0, 0, 1]]).model_dump()
        self.assertNotIn("differential_ranks", dumped)
        self.assertNotIn("conjugate_hodge", dumped)


class TestXnVerification(unittest.TestCase):
    def test_ok_needs_every_part(self):
        result = XnVerification(
            n=2,
            chain_valid=True,
            relations={"a": True},
            start_class_nonzero=True,
            terminal_matches=True,
            image_class_nonzero=True,
            not_extendable=True,
        )
        self.assertTrue(result.ok)
        self.assertFalse(result.model_copy(update={"image_class_nonzero": False}).ok)
        self.assertFalse(result.model_copy(update={"relations": {"a": False}}).ok)


class TestFormatters(unittest.TestCase):
    def test_factory(self):
        create = ReportFormatterFactory.create_formatter
        self.assertIsInstance(create("JSON"), JsonReportFormatter)
        self.assertIsInstance(create("table"), TableReportFormatter)
        self.assertEqual(ReportFormatterFactory.formats(), ["json", "table"])
        with self.assertRaises(ValueError):
            ReportFormatterFactory.create_formatter("xml")

    def test_json_layout(self):
        text = JsonReportFormatter().format_pages(kodaira_like_report())
        self.assertTrue(text.endswith("\n"))
        data = json.loads(text)
        self.assertEqual(
            list(data), ["betti", "degeneration_page", "euler", "hodge", "m", "pages"]
        )
        self.assertIn('  "betti": [\n', text)

    def test_json_without_degeneration_page(self):
        report = kodaira_like_report(degeneration_page=None)
        data = json.loads(JsonReportFormatter().format_pages(report))
        self.assertNotIn("degeneration_page", data)

    def test_json_witness(self):
        witness = ZigZagWitness(start=[0, 1], length=1, chain=[["~f1"]], terminal=[])
        report = kodaira_like_report(witness=witness)
        data = json.loads(JsonReportFormatter().format_pages(report))
        self.assertEqual(data["witness"]["chain"], [["~f1"]])
        self.assertEqual(data["witness"]["terminal"], [])

    def test_grid(self):
        lines = format_grid(1, {(0, 0): 1, (0, 1): 2, (1, 0): 3})
        self.assertEqual(
            lines, ["   p\\q     0     1", "     0     1     2", "     1     3     0"]
        )

    def test_table_pages(self):
        text = TableReportFormatter().format_pages(kodaira_like_report())
        self.assertIn("E_0\n", text)
        self.assertIn("betti: 1 2 1\n", text)
        self.assertIn("degeneration page: 1\n", text)

    def test_table_witness(self):
        witness = ZigZagWitness(
            start=[0, 1],
            length=2,
            chain=[["~f3"], ["f4"]],
            terminal=["f1^f2", "-f1^~f1"],
        )
        text = TableReportFormatter().format_pages(kodaira_like_report(witness=witness))
        self.assertIn("witness from A^{0,1}, length 2", text)
        self.assertIn("  terminal = f1^f2 - f1^~f1", text)

    def test_table_hodge(self):
        text = TableReportFormatter().format_hodge(kodaira_like_report(betti=[1, 3, 1]))
        self.assertIn("k=1: b_k=3 <= sum h=2 VIOLATED", text)
        self.assertIn("conjugation symmetry: ok", text)


if __name__ == "__main__":
    unittest.main()
