import math
import unittest
import warnings
#
from cosinepuzzle import render
from cosinepuzzle.coordinates import Viewport
from cosinepuzzle.cosine_map import CosineMap
from cosinepuzzle.errors import InvalidParameterError
#
import numpy as np
#
COSH = CosineMap(0.5, 0.5)
HALF = CosineMap.from_normal_form(0, 0.5)
#
class TestClassification(unittest.TestCase):
	def test_attracting_cycles(self):
		cycles = render.find_attracting_cycles(HALF)
		self.assertEqual(len(cycles), 1)
		self.assertEqual(render.find_attracting_cycles(COSH), [])
	#
	def test_basin_point(self):
		kind, iterations, basin = render.classify_points(HALF, [0.589, 0.6 + 0.01j, 1.5])
		np.testing.assert_array_equal(kind, [render.ATTRACTED]*3)
		np.testing.assert_array_equal(basin, [0, 0, 0])
	#
	def test_real_axis_escapes_for_cosh(self):
		kind, iterations, basin = render.classify_points(COSH, [0, 1, 2, 3, -2])
		np.testing.assert_array_equal(kind, [render.ESCAPING]*5)
		self.assertTrue(np.all(basin == -1))
		self.assertGreater(iterations[0], iterations[4])
	#
	def test_escape_threshold(self):
		with self.assertRaises(InvalidParameterError):
			render.classify_points(HALF, [0], escape_re=10)
	#
#
class TestRendering(unittest.TestCase):
	def test_symmetry(self):
		rendering = render.render_julia(HALF, Viewport(0, 6, (40, 30)), max_iter=100)
		np.testing.assert_array_equal(rendering.kind, rendering.kind[::-1, ::-1])
		np.testing.assert_array_equal(rendering.iterations, rendering.iterations[::-1, ::-1])
		np.testing.assert_array_equal(rendering.image(), rendering.image()[::-1, ::-1])
	#
	def test_deterministic_image(self):
		viewport = Viewport(0.5 + 0.5j, 4, (24, 16))
		first = render.render_julia(COSH, viewport, max_iter=50).image()
		second = render.render_julia(COSH, viewport, max_iter=50).image()
		self.assertEqual(first.dtype, np.uint8)
		self.assertEqual(first.shape, (16, 24, 3))
		np.testing.assert_array_equal(first, second)
	#
	def test_counts(self):
		rendering = render.render_julia(HALF, Viewport(0, 6, (20, 10)), max_iter=100)
		counts = rendering.counts()
		self.assertEqual(sum(counts.values()), 200)
		self.assertGreater(counts['attracted'], 0)
		self.assertGreater(counts['escaping'], 0)
	#
#
class TestDiameters(unittest.TestCase):
	def test_chordal_distance(self):
		self.assertAlmostEqual(float(render.chordal_distance(0, 1)), math.sqrt(2))
		self.assertAlmostEqual(float(render.chordal_distance(1j, 1j)), 0)
		self.assertAlmostEqual(render._spherical_diameter(np.array([0, 1, 1j])), math.sqrt(2))
	#
	def test_resolution_doubling(self):
		m = CosineMap.from_normal_form(1, 1)
		reports = []
		with warnings.catch_warnings():
			warnings.simplefilter('ignore')
			for pixels in [(160, 160), (320, 320)]:
				reports.append(render.component_diameters(m, Viewport(1, 6, pixels), N=4, max_iter=150, epsilons=(0.1, 0.05)))
		coarse, fine = [report.counts[0.05] for report in reports]
		self.assertGreater(coarse, 0)
		self.assertLessEqual(abs(fine - coarse), 0.1*max(coarse, fine))
		for report in reports:
			groups = report.by_preperiod()
			medians = report.medians()
			classes = sorted(k for k in medians if len(groups[k]) >= 3 or k == 0)
			self.assertEqual(classes[0], 0)
			self.assertGreater(len(classes), 1)
			for a, b in zip(classes, classes[1:]):
				self.assertLessEqual(medians[b], medians[a] + 1e-12)
	#
	def test_single_basin(self):
		report = render.component_diameters(HALF, Viewport(0, 8, (80, 60)), N=4, max_iter=100)
		largest = max(report.components, key=lambda c: c.diameter)
		self.assertEqual(largest.preperiod, 0)
		self.assertGreaterEqual(report.counts[0.2], 1)
		record = report.as_record()
		self.assertEqual(len(record['components']), len(report.components))
		self.assertIn(0, report.medians())
	#
#
if __name__ == '__main__':
	unittest.main()
