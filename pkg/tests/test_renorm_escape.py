import math
import unittest
#
from cosinepuzzle import basins, geometry, render, renorm_escape, scan
from cosinepuzzle.cosine_map import CosineMap
from cosinepuzzle.errors import PreconditionError, IncreaseMError
from cosinepuzzle.symbolic import Address
#
import numpy as np
#
SUPER = CosineMap.from_normal_form(1, 1)
# cosh(z - 1): the ray through -1 is the real half line to the left of -1
HALF = CosineMap.from_normal_form(0, 0.5)
#
class TestCriticalRays(unittest.TestCase):
	@classmethod
	def setUpClass(cls):
		cls.ray = renorm_escape.escaping_ray(SUPER)
		cls.pair = renorm_escape.critical_ray_pair(SUPER, k=0, ray=cls.ray)
	#
	def test_escaping_ray(self):
		self.assertEqual(self.ray.address, Address([(1, 0)], [(0, 0)]))
		np.testing.assert_allclose(self.ray.z.imag, 0, atol=1e-9)
	#
	def test_horizontal(self):
		right, left = self.pair
		np.testing.assert_allclose(right.z.imag, math.pi, atol=1e-8)
		np.testing.assert_allclose(left.z.imag, math.pi, atol=1e-8)
		self.assertGreater(right.z[0].real, SUPER.u.real)
		self.assertLess(left.z[0].real, SUPER.u.real)
		self.assertEqual(right.z[-1], SUPER.critical_point(1))
		self.assertEqual(right.crash[1], SUPER.critical_point(1))
	#
	def test_symmetry(self):
		right, left = self.pair
		np.testing.assert_allclose(right.z - SUPER.u, -np.conj(left.z - SUPER.u), atol=1e-8)
	#
	def test_forward_image(self):
		for ray in self.pair:
			images, escaped = SUPER.eval_array(ray.z[:-1])
			self.assertFalse(np.any(escaped))
			np.testing.assert_allclose(images, self.ray.z[:-1], atol=1e-8)
			self.assertEqual(ray.address.shift(), self.ray.address)
			np.testing.assert_allclose(np.expm1(ray.t), self.ray.t, rtol=1e-12)
	#
	def test_translation(self):
		shifted = renorm_escape.critical_ray_pair(SUPER, k=1, ray=self.ray)
		for a, b in zip(self.pair, shifted):
			np.testing.assert_allclose(b.z, a.z + 2j*math.pi, atol=1e-8)
	#
	def test_address_check(self):
		with self.assertRaises(PreconditionError):
			renorm_escape.critical_ray_pair(SUPER, s=Address([(0, 0)], [(0, 0)]), ray=self.ray)
	#
	def test_not_escaping(self):
		with self.assertRaises(PreconditionError) as context:
			renorm_escape.escaping_ray(HALF)
		self.assertEqual(context.exception.status, 'not-escaping')
	#
#
class TestStrips(unittest.TestCase):
	@classmethod
	def setUpClass(cls):
		cls.ray = renorm_escape.escaping_ray(SUPER)
		cls.strips = [renorm_escape.build_strip(SUPER, k, X=2.5, ray=cls.ray) for k in (-1, 0)]
	#
	def test_containment(self):
		below, above = self.strips
		self.assertTrue(below.contains(SUPER.u))
		self.assertFalse(below.contains(SUPER.u + 2j*math.pi))
		self.assertTrue(above.contains(SUPER.u + 2j*math.pi))
		self.assertFalse(above.contains(SUPER.u))
		self.assertGreater(geometry.signed_area(below.polygon), 0)
	#
	def test_tiling(self):
		below, above = self.strips
		np.testing.assert_allclose(below.upper, above.lower, atol=1e-12)
		np.testing.assert_allclose(above.lower, below.lower + 2j*math.pi, atol=1e-8)
	#
	def test_truncation(self):
		below = self.strips[0]
		R = below.truncated(1.5)
		self.assertLessEqual(np.max(np.abs(R.real - SUPER.u.real)), 1.5 + 1e-12)
		self.assertAlmostEqual(geometry.signed_area(R), 3*2*math.pi, places=6)
		self.assertEqual([curve.tag for curve in below.curves()], ['strip-edge']*2)
	#
#
class TestDomain(unittest.TestCase):
	@classmethod
	def setUpClass(cls):
		cls.candidate = renorm_escape.renorm_domain(SUPER, -1, 3.0)
	#
	def test_candidate(self):
		candidate = self.candidate
		self.assertEqual(candidate.critical_point, SUPER.u)
		self.assertEqual(candidate.exit_time, 2)
		self.assertEqual(candidate.degree, 2)
		self.assertEqual(candidate.period, 1)
		self.assertGreater(candidate.margin, 0)
		self.assertEqual(candidate.returns, renorm_escape.RETURNS)
		self.assertEqual(len(candidate.slits), 2)
		self.assertEqual(candidate.slits[0].tag, 'slit')
	#
	def test_domain_inside_ellipse(self):
		candidate = self.candidate
		self.assertTrue(np.all(geometry.inside_ellipse(candidate.U, SUPER.v, 3.0)))
		self.assertTrue(np.all(geometry.contains(candidate.V, candidate.U)))
	#
	def test_record(self):
		record = self.candidate.as_record()
		self.assertEqual(record['N'], 2)
		self.assertEqual(record['degree'], 2)
		self.assertEqual(len(record['slits']), 2)
	#
	def test_targets(self):
		self.assertEqual(self.candidate.targets, 50)
		self.assertEqual(self.candidate.as_record()['targets'], 50)
	#
	def test_increase_m(self):
		with self.assertRaises(IncreaseMError) as context:
			renorm_escape.renorm_domain(SUPER, -1, 0.5)
		self.assertEqual(context.exception.details['minimal_m'], 2.25)
	#
	def test_minimal_m(self):
		box = lambda M: geometry.box_polygon(SUPER.u, M, math.pi, n_per_side=16)
		self.assertEqual(renorm_escape.minimal_m(SUPER, box), 2.25)
	#
#
class TestScannedDomain(unittest.TestCase):
	@classmethod
	def setUpClass(cls):
		cls.point = scan.find_parameter((0.8, 0.8), (1.5, 1.5), 8)
		cls.m = cls.point.map
		cls.candidate = renorm_escape.renorm_domain(cls.m, -1, 3.0)
	#
	def test_critical_behaviour(self):
		m = self.m
		self.assertEqual(basins.classify_critical_orbit(m, '+v').kind, 'attracted')
		self.assertEqual(basins.classify_critical_orbit(m, '-v').kind, 'escaping')
		kind, iterations, basin = render.classify_points(m, [m.v, -m.v])
		np.testing.assert_array_equal(kind, [render.ATTRACTED, render.ESCAPING])
	#
	def test_candidate(self):
		candidate = self.candidate
		self.assertEqual(candidate.targets, 50)
		self.assertEqual(candidate.degree, 2)
		self.assertGreater(candidate.margin, 0)
		self.assertEqual(candidate.returns, renorm_escape.RETURNS)
		self.assertAlmostEqual(candidate.critical_point, self.m.u)
		self.assertTrue(np.all(geometry.contains(candidate.V, candidate.U)))
	#
	def test_exit_time(self):
		N = self.candidate.exit_time
		self.assertGreaterEqual(N, 1)
		w = self.m.iterate(-self.m.v, N - 1)
		self.assertTrue(geometry.contains(self.candidate.U, w))
		self.assertFalse(geometry.contains(self.candidate.U, self.m.eval(w)))
	#
#
if __name__ == '__main__':
	unittest.main()
