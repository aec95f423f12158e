import unittest
#
import matplotlib
matplotlib.use('Agg')
#
from cosinepuzzle import geometry, render, visualization
from cosinepuzzle.coordinates import Viewport
from cosinepuzzle.cosine_map import CosineMap
from cosinepuzzle.geometry import Curve
from cosinepuzzle.rays import trace_ray, land_ray
from cosinepuzzle.symbolic import Address
#
import numpy as np
#
HALF = CosineMap.from_normal_form(0, 0.5)
#
class TestOverlay(unittest.TestCase):
	def setUp(self):
		self.viewport = Viewport(0, 4, (40, 20))
		self.image = np.zeros((20, 40, 3), dtype=np.uint8)
	#
	def test_empty_overlay_is_identity(self):
		result = visualization.overlay(self.image, self.viewport, [])
		np.testing.assert_array_equal(result, self.image)
		self.assertIsNot(result, self.image)
	#
	def test_outside_is_clipped(self):
		far = Curve([100 + 100j, 200 + 100j], 'dynamic-ray')
		result = visualization.overlay(self.image, self.viewport, far)
		np.testing.assert_array_equal(result, self.image)
	#
	def test_horizontal_line(self):
		line = Curve([-100 + 0.05j, 100 + 0.05j], 'slit')
		result = visualization.overlay(self.image, self.viewport, [line])
		colored = np.all(result == visualization.TAG_COLORS['slit'], axis=2)
		rows = np.nonzero(colored.any(axis=1))[0]
		self.assertEqual(len(rows), 1)
		self.assertTrue(colored[rows[0]].all())
	#
	def test_closed_curve(self):
		box = Curve(geometry.box_polygon(0, 1, 0.5), 'window', closed=True)
		result = visualization.overlay(self.image, self.viewport, box)
		colored = np.all(result == visualization.TAG_COLORS['window'], axis=2)
		self.assertTrue(colored.any())
		self.assertFalse(colored[10, 20])
		# the box interior stays untouched
	#
	def test_unknown_object(self):
		with self.assertRaises(TypeError):
			visualization.curves_of(3)
	#
	def test_ray_reaches_julia_boundary(self):
		address = Address.parse('[];[(0,0)]')
		x_star = land_ray(HALF, address).point.real
		viewport = Viewport(x_star, 0.21, (21, 5))
		rendering = render.render_julia(HALF, viewport, max_iter=300)
		ray = trace_ray(HALF, address, 1e-2, 5)
		image = visualization.overlay(rendering.image(), viewport, ray)
		colored = np.all(image == visualization.TAG_COLORS['dynamic-ray'], axis=2)
		self.assertTrue(colored[2, 10])
		self.assertFalse(colored[2, 8])
		self.assertEqual(rendering.kind[2, 8], render.ATTRACTED)
		self.assertEqual(rendering.kind[2, 12], render.ESCAPING)
	#
#
class TestPlot(unittest.TestCase):
	def test_plot_rendering(self):
		rendering = render.render_julia(HALF, Viewport(0, 6, (30, 20)), max_iter=50)
		figure = visualization.plt.figure()
		visualization.plot_rendering(rendering, [Curve([0, 1 + 1j], 'internal-ray')], figure=figure)
		axes = figure.gca()
		self.assertEqual(len(axes.lines), 1)
		self.assertEqual(axes.get_xlabel(), 'Re z')
		visualization.plt.close(figure)
	#
#
if __name__ == '__main__':
	unittest.main()
