import importlib
from pathlib import Path

from django.test import TestCase

from Core.exact_search import FEASIBLE_ONLY, OPTIMAL, SearchProblem, SearchResult, prescribe_unit_frame
from Core.models import EmbeddedMatrix, MatrixClaim, OracleEntry, SearchRun, TableEntry, VerificationItem
from Core.paper_tables import load_dataset, verify_paper
from Core.point_multisets import Multiset
from Core.projective_geometry import ProjectiveSpace
from Core.records import record_search, record_verification, search_proved_keys, sync_dataset


class SeededDataTests(TestCase):
    def test_tables_are_loaded(self):
        dataset = load_dataset()
        self.assertEqual(TableEntry.objects.count(), len(dataset.entries))
        self.assertEqual(EmbeddedMatrix.objects.count(), 23)
        self.assertEqual(MatrixClaim.objects.count(), 24)
        self.assertEqual(OracleEntry.objects.count(), len(dataset.oracle))

    def test_entries(self):
        entry = TableEntry.objects.get(q=2, K=6, r=4, w=21)
        self.assertEqual(str(entry), "m_2^(4)(6,21) = 75")
        self.assertEqual(entry.construction, "matrix:q2_K6_r4_w21")
        open_row = TableEntry.objects.get(q=3, K=4, r=2, w=17)
        self.assertEqual((open_row.value_kind, open_row.value_text), ("range", "143:146"))

    def test_matrix_digits(self):
        matrix = EmbeddedMatrix.objects.get(slug="q2_K5_r2_w3")
        self.assertEqual((matrix.q, matrix.k, matrix.n), (2, 6, 8))
        self.assertTrue(matrix.as_text().startswith("2 6 8\n10000011\n"))
        self.assertEqual(matrix.claims.get().w, 3)

    def test_known_discrepancies(self):
        flagged = MatrixClaim.objects.filter(status="known-discrepancy")
        self.assertEqual(
            sorted((c.matrix.slug, c.r, c.w) for c in flagged),
            [("q2_K5_r3_w11", 4, 20), ("q2_K6_r3_w11", 3, 11)],
        )

    def test_seed_reader_matches_the_loader(self):
        seed = importlib.import_module("Core.migrations.0002_seed_paper_data")
        self.assertNotIn("paper_tables", Path(seed.__file__).read_text(encoding="utf-8"))
        dataset = load_dataset(seed.DATA_DIR)
        tables = {(row["q"], row["K"], row["r"], row["w"]): row for row in seed.read_tables()}
        self.assertEqual(set(tables), set(dataset.entries))
        for key, e in dataset.entries.items():
            row = tables[key]
            self.assertEqual(
                (row["value_lo"], row["value_hi"], row["construction"], row["bound_source"], row["note"]),
                (e.lo, e.hi, e.construction, e.bound_source, e.note),
            )
        matrices = {row["slug"]: row for row in seed.read_matrices()}
        self.assertEqual(set(matrices), set(dataset.matrices))
        for slug, m in dataset.matrices.items():
            digits = "\n".join("".join(str(int(c)) for c in row) for row in m.digits)
            self.assertEqual((matrices[slug]["q"], matrices[slug]["digits"]), (m.q, digits))
        claims = sorted((c["matrix"], c["r"], c["w"], c["n"], c["status"]) for c in seed.read_claims())
        self.assertEqual(
            claims,
            sorted((c.matrix_id, c.r, c.w, c.n, c.status) for m in dataset.matrices.values() for c in m.claims),
        )
        oracle = sorted((o["q"], o["n"], o["k"], o["d"], o["exact"]) for o in seed.read_oracle())
        self.assertEqual(oracle, sorted((o.q, o.n, o.k, o.d, o.exact) for o in dataset.oracle))


class SyncTests(TestCase):
    def test_sync_keeps_search_flags(self):
        TableEntry.objects.filter(q=2, K=3, r=1, w=2).update(search_proved=True)
        TableEntry.objects.create(
            q=7, K=2, r=1, w=2, value_lo=1, value_hi=1, construction="cited", bound_source="remark"
        )
        counts = sync_dataset(load_dataset())
        self.assertEqual(counts["matrices"], 23)
        self.assertEqual(counts["claims"], 24)
        self.assertEqual(counts["entries"], TableEntry.objects.count())
        self.assertFalse(TableEntry.objects.filter(q=7).exists())
        self.assertTrue(TableEntry.objects.get(q=2, K=3, r=1, w=2).search_proved)


class SearchRecordTests(TestCase):
    def setUp(self):
        self.space = ProjectiveSpace(3, 2)

    def record(self, best_n, prescribe=False, status=OPTIMAL, point_cap=None):
        problem = SearchProblem(self.space, 1, 2, point_cap=point_cap)
        if prescribe:
            problem = prescribe_unit_frame(problem)
        result = SearchResult(
            best_n=best_n,
            witness=Multiset.empty(self.space),
            status=status,
            nodes=10,
            seconds=0.5,
            log=[(best_n, 10, 0.5)],
            relies_on_prescription=prescribe,
            proved_by="exhaustion" if status == OPTIMAL else None,
            root_bound=8,
            root_provenance="griesmer",
        )
        return record_search(problem, result, frame=prescribe, user_cap=point_cap)

    def entry(self):
        return TableEntry.objects.get(q=2, K=3, r=1, w=2)

    def test_stored_fields(self):
        run = self.record(8, prescribe=True)
        self.assertEqual(run.key, (2, 3, 1, 2))
        self.assertTrue(run.prescribed_frame)
        self.assertEqual(len(run.prescription.split()), 4)
        self.assertTrue(run.relies_on_prescription)
        self.assertEqual(run.log, "8 10 0.500\n")
        self.assertEqual(run.witness, "2 3 0\n")
        self.assertEqual(SearchRun.objects.count(), 1)

    def test_optimal_run_marks_the_entry(self):
        self.record(8, prescribe=True)
        entry = self.entry()
        self.assertTrue(entry.search_proved)
        self.assertTrue(entry.search_relies_on_prescription)
        self.assertEqual(search_proved_keys(), frozenset({(2, 3, 1, 2)}))

        self.record(8)
        self.assertFalse(self.entry().search_relies_on_prescription)
        self.record(8, prescribe=True)
        self.assertFalse(self.entry().search_relies_on_prescription)

    def test_feasible_runs_prove_nothing(self):
        self.record(8, status=FEASIBLE_ONLY)
        self.assertFalse(self.entry().search_proved)

    def test_capped_runs_prove_nothing(self):
        self.record(7, point_cap=1)
        self.assertFalse(self.entry().search_proved)

    def test_contradictions_are_logged(self):
        with self.assertLogs("Core.signals", "WARNING") as logs:
            self.record(9)
            self.record(7)
        self.assertIn("above the stored value", logs.output[0])
        self.assertIn("below the stored value", logs.output[1])
        self.assertFalse(self.entry().search_proved)

    def test_prescribed_runs_may_fall_short(self):
        with self.assertNoLogs("Core.signals", "WARNING"):
            self.record(7, prescribe=True)
        self.assertFalse(self.entry().search_proved)


class VerificationRecordTests(TestCase):
    def test_entries(self):
        run = record_verification(verify_paper(only="2,3,1", threads=1), "2,3,1")
        self.assertTrue(run.ok)
        self.assertEqual((run.entries_checked, run.matrices_checked), (3, 0))
        item = run.items.get(label="m_2^(1)(3,2)")
        self.assertEqual((item.kind, item.status), ("entry", "certified"))
        self.assertIn("griesmer 8", item.detail)

    def test_matrix(self):
        run = record_verification(verify_paper(only="q2_K5_r2_w3", threads=1), "q2_K5_r2_w3")
        item = VerificationItem.objects.get(run=run)
        self.assertEqual((item.kind, item.label, item.status), ("matrix", "q2_K5_r2_w3 r=2 w=3", "ok"))
