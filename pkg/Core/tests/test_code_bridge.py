import numpy as np
from django.test import SimpleTestCase, override_settings

from Core import conf
from Core.code_bridge import (
    LinearCode,
    WeightHierarchy,
    format_matrix,
    is_full_length,
    matrix_to_multiset,
    multiset_to_matrix,
    parse_matrix,
    weight_hierarchy,
    weight_hierarchy_direct,
    weight_hierarchy_geometric,
)
from Core.exceptions import ArcError, BudgetExceeded, DataFormatError, NotFullLength, RankDeficient
from Core.gf_linalg import rank
from Core.point_multisets import Multiset, arc_profile
from Core.projective_geometry import ProjectiveSpace


def random_code(rng, q, k, n):
    while True:
        gen = rng.integers(0, q, size=(k, n))
        if gen.any(axis=0).all() and rank(gen, q) == k:
            return LinearCode(gen, q)


SIMPLEX = [
    [0, 0, 0, 1, 1, 1, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1],
]


class LinearCodeTests(SimpleTestCase):
    def test_rank_is_checked(self):
        with self.assertRaises(RankDeficient):
            LinearCode([[1, 1, 0], [1, 1, 0]], 2)

    def test_zero_columns(self):
        code = LinearCode([[1, 0, 1], [0, 0, 1]], 2)
        self.assertFalse(is_full_length(code))
        self.assertEqual(code.zero_columns(), [1])
        with self.assertRaisesMessage(NotFullLength, "not full length: column 1 is zero"):
            matrix_to_multiset(code)

    def test_matrix_text(self):
        code = LinearCode(SIMPLEX, 2)
        text = code.to_matrix_text()
        self.assertTrue(text.startswith("2 3 7\n0001111\n"))
        q, rows = parse_matrix(text)
        self.assertEqual(q, 2)
        np.testing.assert_array_equal(rows, SIMPLEX)
        self.assertEqual(format_matrix(rows, 2), text)

    def test_bad_matrix_files(self):
        for text in ("", "2 2\n10\n01\n", "2 2 3\n101\n", "2 2 3\n101\n0121\n", "3 2 2\n13\n01\n"):
            with self.assertRaises(DataFormatError):
                parse_matrix(text)

    def test_stored_matrices_parse(self):
        for path in sorted((conf.data_dir() / "matrices").glob("*.txt")):
            q, rows = parse_matrix(path.read_text(encoding="ascii"), str(path))
            self.assertIn(q, (2, 3))
            self.assertEqual(rows.shape[0], int(path.stem.split("_")[1][1:]) + 1)


class BridgeTests(SimpleTestCase):
    def test_identity_columns(self):
        ms = matrix_to_multiset(LinearCode(np.eye(3, dtype=np.int64), 3))
        self.assertEqual(ms.n, 3)
        self.assertEqual(ms.max_point_multiplicity(), 1)

    def test_repeated_columns_add_up(self):
        ms = matrix_to_multiset(LinearCode([[1, 2, 1, 0], [0, 0, 0, 1]], 3))
        space = ProjectiveSpace(1, 3)
        self.assertEqual(int(ms.mult[space.point_index([1, 0])]), 3)

    def test_not_spanning(self):
        space = ProjectiveSpace(2, 2)
        ms = Multiset.of_points(space, [space.point_index([1, 0, 0]), space.point_index([0, 1, 0])])
        with self.assertRaisesMessage(RankDeficient, "1-dimensional subspace"):
            multiset_to_matrix(ms)

    def test_round_trip(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 200:
            q = int(rng.choice([2, 3]))
            space = ProjectiveSpace(int(rng.integers(1, 5)), q)
            ms = Multiset(space, rng.integers(0, 3, size=space.num_points))
            if not ms.spans():
                continue
            code = multiset_to_matrix(ms)
            self.assertEqual((code.k, code.n), (space.k, ms.n))
            self.assertEqual(matrix_to_multiset(code), ms)
            checked += 1


class WeightHierarchyTests(SimpleTestCase):
    def test_validation(self):
        self.assertEqual(WeightHierarchy((2, 3, 5))[2], 3)
        with self.assertRaises(IndexError):
            WeightHierarchy((2, 3))[3]
        with self.assertRaises(ArcError):
            WeightHierarchy((2, 2))
        with self.assertRaises(ArcError):
            WeightHierarchy((0, 1))

    def test_simplex(self):
        code = LinearCode(SIMPLEX, 2)
        self.assertEqual(weight_hierarchy(code).d, (4, 6, 7))
        self.assertEqual(weight_hierarchy(code, direct=True).d, (4, 6, 7))

    def test_binary_simplex_of_length_15(self):
        gen = ProjectiveSpace(3, 2).points_matrix.T
        code = LinearCode(gen, 2)
        self.assertEqual((code.n, code.k), (15, 4))
        self.assertEqual(weight_hierarchy(code).d, (8, 12, 14, 15))
        self.assertEqual(weight_hierarchy_geometric(code)[4], code.n)
        self.assertEqual(weight_hierarchy_direct(code, 2), 12)
        self.assertEqual(weight_hierarchy(code, direct=True).d, (8, 12, 14, 15))

    def test_last_weight_is_the_length(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            q = int(rng.choice([2, 3]))
            k = int(rng.integers(2, 5))
            code = random_code(rng, q, k, int(rng.integers(k, 12)))
            self.assertEqual(weight_hierarchy_geometric(code)[k], code.n)

    def test_one_dimensional(self):
        code = LinearCode([[1, 2, 1, 1]], 3)
        self.assertEqual(weight_hierarchy_geometric(code).d, (4,))
        self.assertEqual(weight_hierarchy_direct(code, 1), 4)

    def test_not_full_length(self):
        with self.assertRaises(NotFullLength):
            weight_hierarchy_geometric(LinearCode([[1, 0, 0], [0, 1, 0]], 2))

    @override_settings(PGARC_SUBSPACE_CAP=5)
    def test_direct_budget(self):
        with self.assertRaises(BudgetExceeded):
            weight_hierarchy_direct(LinearCode(SIMPLEX, 2), 1)

    def test_duality_with_the_profile(self):
        rng = np.random.default_rng(77)
        for _ in range(50):
            q = int(rng.choice([2, 3]))
            k = int(rng.integers(2, 5))
            code = random_code(rng, q, k, int(rng.integers(k, 13)))
            profile = arc_profile(matrix_to_multiset(code))
            hierarchy = weight_hierarchy(code)
            for r in range(code.k - 1):
                self.assertEqual(profile.w[r] + hierarchy[code.k - 1 - r], code.n)

    def test_geometric_agrees_with_direct(self):
        rng = np.random.default_rng(500)
        for _ in range(500):
            q = int(rng.choice([2, 3]))
            k = int(rng.integers(1, 6))
            code = random_code(rng, q, k, int(rng.integers(k, 21)))
            geometric = weight_hierarchy(code)
            direct = weight_hierarchy(code, direct=True)
            self.assertEqual(geometric.d, direct.d)
            self.assertTrue(all(a < b for a, b in zip(direct.d, direct.d[1:])))
            self.assertEqual(direct[code.k], code.n)

    def test_eight_column_matrix(self):
        code = LinearCode.read_matrix(conf.data_dir() / "matrices" / "q2_K5_r2_w3.txt")
        ms = matrix_to_multiset(code)
        self.assertEqual((ms.n, ms.w(2)), (8, 3))
        self.assertEqual(weight_hierarchy(code)[3], 5)
