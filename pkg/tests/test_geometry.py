import math
import unittest
#
from cosinepuzzle import geometry
from cosinepuzzle.geometry import Curve
from cosinepuzzle.errors import InvalidParameterError
#
import numpy as np
#
SQUARE = np.array([0, 1, 1 + 1j, 1j])
#
class TestPointLocation(unittest.TestCase):
	def test_winding_square(self):
		np.testing.assert_array_equal(geometry.winding_number(SQUARE, [0.5 + 0.5j, 2, -0.5j]), [1, 0, 0])
		self.assertEqual(geometry.winding_number(SQUARE[::-1], 0.5 + 0.5j), -1)
	#
	def test_winding_circle_twice(self):
		t = np.linspace(0, 4*math.pi, 400, endpoint=False)
		self.assertEqual(geometry.winding_number(np.exp(1j*t), 0.1j), 2)
	#
	def test_contains_nonconvex(self):
		polygon = np.array([0, 3, 3 + 3j, 2 + 3j, 2 + 1j, 1 + 1j, 1 + 3j, 3j])
		np.testing.assert_array_equal(geometry.contains(polygon, [0.5 + 2j, 1.5 + 2j, 1.5 + 0.5j]), [True, False, True])
	#
	def test_distance(self):
		self.assertAlmostEqual(geometry.distance_to_polyline(SQUARE, 0.5 + 2j, closed=True), 1)
		self.assertAlmostEqual(geometry.distance_to_polyline([0, 1], 2 + 1j), math.sqrt(2))
	#
	def test_hausdorff(self):
		self.assertAlmostEqual(geometry.hausdorff_distance(SQUARE, SQUARE + 0.25), 0.25)
		self.assertAlmostEqual(geometry.hausdorff_distance(SQUARE, SQUARE), 0)
	#
#
class TestPolygons(unittest.TestCase):
	def test_area(self):
		self.assertAlmostEqual(geometry.signed_area(SQUARE), 1)
		self.assertAlmostEqual(geometry.signed_area(SQUARE[::-1]), -1)
	#
	def test_is_simple(self):
		self.assertTrue(geometry.is_simple(SQUARE))
		self.assertFalse(geometry.is_simple(np.array([0, 1 + 1j, 1, 1j])))
	#
	def test_resample(self):
		points = geometry.resample([0, 1], 0.1)
		self.assertEqual(len(points), 11)
		self.assertLessEqual(np.max(np.abs(np.diff(points))), 0.1 + 1e-12)
		closed = geometry.resample(SQUARE, 0.25, closed=True)
		self.assertEqual(len(closed), 16)
	#
	def test_clip_halfplane(self):
		clipped = geometry.clip_halfplane(SQUARE, 1, 0.5)
		self.assertAlmostEqual(geometry.signed_area(clipped), 0.5)
		self.assertEqual(len(geometry.clip_halfplane(SQUARE, 1, -1)), 0)
	#
	def test_clip_convex(self):
		box = geometry.box_polygon(0.5 + 0.5j, 0.25, 2)
		clipped = geometry.clip_convex(SQUARE, box)
		self.assertAlmostEqual(geometry.signed_area(clipped), 0.5)
	#
	def test_box(self):
		box = geometry.box_polygon(1j, 2, 1, n_per_side=3)
		self.assertEqual(len(box), 12)
		self.assertAlmostEqual(geometry.signed_area(box), 8)
	#
	def test_ellipse_axes(self):
		v = 2
		for M in [1, 2, 3]:
			points = geometry.ellipse_polygon(v, M, n=3600)
			np.testing.assert_allclose(np.abs(points - v) + np.abs(points + v), 2*v*math.cosh(M), rtol=1e-12)
			self.assertAlmostEqual(np.max(points.real) - np.min(points.real), 2*v*math.cosh(M), places=9)
			self.assertAlmostEqual(np.max(points.imag) - np.min(points.imag), 2*v*math.sinh(M), places=5)
		self.assertAlmostEqual(2*2*math.cosh(1), 6.1723, places=4)
		self.assertAlmostEqual(2*2*math.sinh(1), 4.7008, places=4)
	#
	def test_inside_ellipse(self):
		np.testing.assert_array_equal(geometry.inside_ellipse([0, 3, 10j], 1, 2), [True, True, False])
		self.assertGreater(geometry.ellipse_margin([0], 1, 1), 0)
	#
	def test_interior_sample(self):
		points = geometry.interior_sample(SQUARE, n=10)
		self.assertEqual(len(points), 100)
		self.assertTrue(np.all(geometry.contains(SQUARE, points)))
	#
#
class TestCurve(unittest.TestCase):
	def test_tags(self):
		with self.assertRaises(InvalidParameterError):
			Curve([0, 1], 'rainbow')
	#
	def test_curve(self):
		curve = Curve(SQUARE, 'window', closed=True)
		self.assertAlmostEqual(curve.length(), 4)
		self.assertEqual(curve.reversed().points[0], 1j)
		record = curve.as_record()
		self.assertEqual(record['tag'], 'window')
		self.assertEqual(record['points'][1], [1.0, 0.0])
		np.testing.assert_allclose(curve.mapped(lambda z: 2*z).points, 2*SQUARE)
	#
#
if __name__ == '__main__':
	unittest.main()
