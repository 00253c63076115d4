import numpy as np
from django.test import SimpleTestCase, override_settings

from Core.exceptions import DimensionMismatch, ProjectionUndefined, SubspaceCapExceeded
from Core.gf_linalg import rank
from Core.projective_geometry import (
    Projection,
    ProjectiveSpace,
    Subspace,
    clear_family_cache,
    enumerate_points,
    enumerate_subspaces,
    gaussian_binomial,
    gaussian_v,
    incident,
    iter_rref_bases,
    iter_subspace_equations,
    project_point,
)


class CountingTests(SimpleTestCase):
    def test_gaussian_v(self):
        self.assertEqual(gaussian_v(0, 2), 0)
        self.assertEqual(gaussian_v(1, 3), 1)
        self.assertEqual(gaussian_v(3, 2), 7)
        self.assertEqual(gaussian_v(4, 3), 40)
        self.assertEqual(gaussian_v(7, 2), 127)

    def test_gaussian_binomial(self):
        self.assertEqual(gaussian_binomial(4, 2, 2), 35)
        self.assertEqual(gaussian_binomial(3, 1, 3), 13)
        self.assertEqual(gaussian_binomial(5, 0, 2), 1)
        self.assertEqual(gaussian_binomial(5, 6, 2), 0)
        for n in range(1, 6):
            for m in range(n + 1):
                self.assertEqual(gaussian_binomial(n, m, 3), gaussian_binomial(n, n - m, 3))

    def test_rref_bases_count(self):
        for dim, k, q in [(0, 3, 2), (1, 3, 2), (2, 4, 2), (2, 4, 3), (3, 3, 5)]:
            total = sum(len(b) for b in iter_rref_bases(dim, k, q))
            self.assertEqual(total, gaussian_binomial(k, dim, q))


class PointTests(SimpleTestCase):
    def test_point_counts(self):
        self.assertEqual(ProjectiveSpace(2, 2).num_points, 7)
        self.assertEqual(ProjectiveSpace(3, 3).num_points, 40)
        self.assertEqual(ProjectiveSpace(2, 5).num_points, 31)

    def test_canonical_and_sorted(self):
        space = ProjectiveSpace(2, 3)
        pts = space.points_matrix
        self.assertEqual(len(enumerate_points(space)), 13)
        for row in pts:
            self.assertEqual(row[np.flatnonzero(row)[0]], 1)
        as_tuples = [tuple(r) for r in pts]
        self.assertEqual(as_tuples, sorted(as_tuples))

    def test_index_of_any_representative(self):
        space = ProjectiveSpace(3, 5)
        rng = np.random.default_rng(7)
        for index in rng.integers(0, space.num_points, size=25):
            scaled = space.points_matrix[index] * int(rng.integers(1, 5)) % 5
            self.assertEqual(space.point_index(scaled), index)

    def test_wrong_length(self):
        with self.assertRaises(DimensionMismatch):
            ProjectiveSpace(2, 2).point_index([1, 0])

    def test_bad_space(self):
        with self.assertRaises(DimensionMismatch):
            ProjectiveSpace(0, 2)


class SubspaceTests(SimpleTestCase):
    def test_fano_plane(self):
        space = ProjectiveSpace(2, 2)
        lines = space.subspaces(1)
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines.width, 3)
        self.assertEqual(lines.degree, 3)

    def test_incidence_both_ways(self):
        for K, q, r in [(3, 2, 1), (3, 2, 2), (2, 3, 1), (4, 2, 2)]:
            space = ProjectiveSpace(K, q)
            family = space.subspaces(r)
            self.assertEqual(len(family), space.subspace_count(r))
            self.assertEqual(family.width, gaussian_v(r + 1, q))
            for s in range(0, len(family), 5):
                for p in family.point_ids[s]:
                    self.assertIn(s, family.through[p])

    def test_every_point_lies_on_the_same_number(self):
        for K, q in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]:
            space = ProjectiveSpace(K, q)
            for r in range(K):
                family = space.subspaces(r)
                degree = gaussian_binomial(K, r, q)
                self.assertEqual(family.through.shape, (space.num_points, degree))
                counts = np.bincount(family.point_ids.ravel(), minlength=space.num_points)
                self.assertTrue((counts == degree).all(), (K, q, r))
                for p in range(space.num_points):
                    through = family.through[p]
                    self.assertEqual(len(set(through.tolist())), degree)
                    self.assertTrue((family.point_ids[through] == p).any(axis=1).all())

    def test_enumeration_is_deterministic(self):
        space = ProjectiveSpace(3, 3)
        points = [(p.index, p.coords) for p in enumerate_points(space)]
        lines = [s.key for s in enumerate_subspaces(space, 1)]
        clear_family_cache()
        again = ProjectiveSpace(3, 3)
        self.assertEqual([(p.index, p.coords) for p in enumerate_points(again)], points)
        self.assertEqual([s.key for s in enumerate_subspaces(again, 1)], lines)

    def test_members_are_incident(self):
        space = ProjectiveSpace(3, 3)
        plane = space.span([[1, 0, 0, 1], [0, 1, 2, 0]])
        for p in plane.point_indices():
            self.assertTrue(incident(space.point(int(p)), plane))
        outside = [p for p in range(space.num_points) if p not in set(plane.point_indices().tolist())]
        self.assertFalse(plane.contains(space.point(outside[0])))

    def test_span_ignores_the_basis(self):
        space = ProjectiveSpace(3, 2)
        a = space.span([[1, 1, 0, 0], [0, 1, 1, 0]])
        b = space.span([[1, 0, 1, 0], [1, 1, 0, 0]])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertEqual(a.dim, 1)
        self.assertEqual(str(a), "<1 0 1 0;0 1 1 0>")

    def test_family_index_round_trip(self):
        space = ProjectiveSpace(3, 2)
        for s in enumerate_subspaces(space, 1)[:10]:
            fresh = space.span(s.basis)
            self.assertEqual(fresh.family_index(), s.index)
            np.testing.assert_array_equal(fresh.point_indices(), s.point_indices())

    def test_normals(self):
        space = ProjectiveSpace(4, 3)
        s = space.span([[1, 2, 0, 0, 1], [0, 0, 1, 1, 0]])
        normals = s.normals()
        self.assertEqual(normals.shape[0], space.K - s.dim)
        self.assertFalse((s.basis @ normals.T % 3).any())

    def test_zero_span(self):
        with self.assertRaises(DimensionMismatch):
            ProjectiveSpace(2, 2).span([[0, 0, 0]])

    @override_settings(PGARC_SUBSPACE_CAP=10)
    def test_cap(self):
        space = ProjectiveSpace(3, 2)
        with self.assertRaises(SubspaceCapExceeded) as ctx:
            space.subspaces(1)
        self.assertEqual(ctx.exception.count, 35)
        with self.assertRaises(SubspaceCapExceeded):
            list(iter_subspace_equations(space, 1))

    def test_equations_cut_out_the_subspaces(self):
        space = ProjectiveSpace(3, 2)
        family = space.subspaces(1)
        found = set()
        for batch in iter_subspace_equations(space, 1):
            for equations in batch:
                values = equations @ space.points_matrix.T % 2
                on = np.flatnonzero(~values.any(axis=0))
                found.add(tuple(on.tolist()))
        expected = {tuple(row.tolist()) for row in family.point_ids}
        self.assertEqual(found, expected)


class ProjectionTests(SimpleTestCase):
    def setUp(self):
        self.space = ProjectiveSpace(3, 2)
        self.centre = self.space.span([[1, 0, 0, 0]])
        self.screen = self.space.span([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])

    def test_image(self):
        p = self.space.point(self.space.point_index([1, 1, 0, 0]))
        image = project_point(self.centre, self.screen, p)
        self.assertEqual(image.coords, (0, 1, 0, 0))

    def test_plane_onto_a_line(self):
        space = ProjectiveSpace(2, 2)
        centre = space.span([[0, 0, 1]])
        screen = space.span([[1, 0, 0], [0, 1, 0]])
        p = space.point(space.point_index([1, 1, 1]))
        self.assertEqual(project_point(centre, screen, p).coords, (1, 1, 0))
        fixed = space.point(space.point_index([1, 0, 0]))
        self.assertEqual(project_point(centre, screen, fixed), fixed)

    def test_images_lie_on_the_screen(self):
        projection = Projection(self.centre, self.screen)
        for p in self.space.points():
            if projection.on_centre[p.index]:
                continue
            self.assertTrue(self.screen.contains(projection.image(p)))
        self.assertEqual(int(projection.on_centre.sum()), 1)
        self.assertEqual(projection.screen_space, ProjectiveSpace(2, 2))

    def test_centre_has_no_image(self):
        e0 = self.space.point(self.space.point_index([1, 0, 0, 0]))
        with self.assertRaisesMessage(ProjectionUndefined, "projection undefined on center"):
            project_point(self.centre, self.screen, e0)

    def test_intersecting_screen(self):
        screen = self.space.span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        with self.assertRaises(ProjectionUndefined):
            Projection(self.centre, screen)

    def test_dimensions_must_add_up(self):
        line = self.space.span([[0, 1, 0, 0], [0, 0, 1, 0]])
        with self.assertRaises(DimensionMismatch):
            Projection(self.centre, line)

    def test_line_centre_in_pg4_3(self):
        space = ProjectiveSpace(4, 3)
        centre = space.span([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
        screen = space.span([[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [1, 1, 0, 0, 1]])
        self.assertEqual(rank(np.vstack([centre.basis, screen.basis]), 3), 5)
        projection = Projection(centre, screen)
        self.assertEqual(int(projection.on_centre.sum()), 4)
        off = ~projection.on_centre
        counts = np.bincount(projection.screen_index[off], minlength=13)
        # each screen point is hit by the plane spanned with the centre, minus the centre
        self.assertTrue((counts == 9).all())
