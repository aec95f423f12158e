import cmath
import math
import unittest
#
from cosinepuzzle import rays
from cosinepuzzle.cosine_map import CosineMap, StripIndex
from cosinepuzzle.symbolic import Address, addr_compare
from cosinepuzzle.errors import PreconditionError, SlitBoundaryError, NearCriticalError
#
import numpy as np
#
COSH = CosineMap(0.5, 0.5)
HALF = CosineMap.from_normal_form(0, 0.5)
# f(x) = cosh(x)/2: attracting fixed point near 0.59, repelling one near 2.13
#
class RefusingMap(CosineMap):
	r'''
	cosh(z), with inverse branches that refuse every value of modulus below
	``limit``.
	'''
	#
	def __init__(self, limit, error):
		CosineMap.__init__(self, 0.5, 0.5)
		self.limit = limit
		self.error = error
		self.refused = None
	#
	def inverse_branch(self, w, s):
		if abs(w) < self.limit:
			self.refused = w
			raise self.error('refused', point=w)
		return CosineMap.inverse_branch(self, w, s)
	#
#
def real_fixed_point(v, x=2.0):
	for iteration in range(100):
		x -= (v*math.cosh(x) - x)/(v*math.sinh(x) - 1)
	return x
#
class TestSeed(unittest.TestCase):
	def test_right_half_plane(self):
		s = Address.periodic([(0, 0)])
		self.assertAlmostEqual(rays.asymptotic_seed(COSH, s, 20), 20 + math.log(2), places=12)
	#
	def test_left_half_plane(self):
		s = Address([(1, 0)], [(0, 0)])
		self.assertAlmostEqual(rays.asymptotic_seed(COSH, s, 20), -20 - math.log(2), places=12)
	#
	def test_vertical_index(self):
		m = CosineMap(1, 1)
		s = Address([(0, 3)], [(0, 0)])
		self.assertAlmostEqual(rays.asymptotic_seed(m, s, 15), 15 + 6*math.pi*1j, places=12)
	#
	def test_refuses_small_potential(self):
		with self.assertRaises(PreconditionError):
			rays.asymptotic_seed(COSH, Address.periodic([(0, 0)]), 2)
	#
	def test_depth_choice(self):
		n, T = rays.choose_depth(2.0, 0)
		self.assertGreaterEqual(T, rays.T_SEED)
		n, T = rays.choose_depth(30.0, 1)
		self.assertEqual(n, 1)
		n, T = rays.choose_depth(800.0, 3)
		self.assertEqual(n, 0)
	#
#
class TestTracing(unittest.TestCase):
	def test_positive_real_axis(self):
		ray = rays.trace_ray(COSH, Address.periodic([(0, 0)]), 1, 10, n_samples=50)
		self.assertEqual(len(ray.t), 50)
		self.assertTrue(np.all(np.diff(ray.t) < 0))
		self.assertLess(np.max(np.abs(ray.z.imag)), 1e-6)
		# forward iteration of a real point
		for t, z in zip(ray.t[::10], ray.z[::10]):
			self.assertAlmostEqual(math.cosh(z.real), rays.ray_point(COSH, ray.address, rays.escape_rate(t))[0].real, places=6)
	#
	def test_functional_equation(self):
		maps = [COSH, HALF, CosineMap.from_normal_form(0.3 + 0.2j, 1 - 0.5j)]
		addresses = ['[];[(0,0)]', '[];[(0,1)]', '[];[(0,0) (1,0)]', '[];[(1,-1)]', '[];[(0,1) (0,-1)]']
		for m in maps:
			for text in addresses:
				ray = rays.trace_ray(m, Address.parse(text), 2, 8, n_samples=20)
				self.assertIsNone(ray.crash)
				self.assertLess(rays.functional_equation_residual(m, ray), 1e-8)
	#
	def test_asymptotic_decay(self):
		s = Address.periodic([(0, 0)])
		errors = []
		for t in range(8, 15):
			z, n = rays.ray_point(COSH, s, float(t))
			errors.append(abs(z - rays.asymptotic_seed(COSH, s, float(t))))
		ratios = np.array(errors[1:])/np.array(errors[:-1])
		np.testing.assert_allclose(ratios, math.exp(-1), rtol=0.25)
	#
	def test_depths_agree(self):
		s = Address.parse('[];[(0,1) (1,0)]')
		for t in [2.0, 4.0, 7.0]:
			shallow, n = rays.ray_point(HALF, s, t, depth=1)
			deep, n = rays.ray_point(HALF, s, t, depth=4)
			self.assertLess(abs(shallow - deep), 1e-7)
	#
	def test_first_entry_translation(self):
		s = Address.parse('[];[(0,0) (1,0)]')
		ray = rays.trace_ray(HALF, s, 1, 6, n_samples=10)
		shifted = rays.trace_ray(HALF, s.shift_k(1, first_only=True), 1, 6, n_samples=10)
		np.testing.assert_allclose(shifted.z, ray.z + 2j*math.pi, atol=1e-9)
	#
	def test_order_matches_height(self):
		right = [Address.periodic([(0, k)]) for k in (-1, 0, 1)]
		heights = [rays.ray_point(COSH, s, 30.0)[0].imag for s in right]
		self.assertTrue(heights[0] < heights[1] < heights[2])
		self.assertEqual(addr_compare(right[0], right[1]), -1)
		# second entry decides; compare near Re = 8
		low = Address.periodic([(0, 0)])
		high = Address.parse('[];[(0,0) (0,1)]')
		self.assertEqual(addr_compare(low, high), -1)
		self.assertLess(rays.ray_point(COSH, low, 8.0)[0].imag, rays.ray_point(COSH, high, 8.0)[0].imag)
		# left half plane: the smaller address is above
		upper = Address.periodic([(1, 1)])
		lower = Address.periodic([(1, 0)])
		self.assertEqual(addr_compare(upper, lower), -1)
		self.assertGreater(rays.ray_point(COSH, upper, 30.0)[0].imag, rays.ray_point(COSH, lower, 30.0)[0].imag)
	#
	def test_crash_records_refused_value(self):
		for error in (SlitBoundaryError, NearCriticalError):
			m = RefusingMap(100, error)
			ray = rays.trace_ray(m, Address.periodic([(0, 0)]), 1, 10, n_samples=20)
			self.assertEqual(ray.status, 'crashed')
			self.assertGreater(len(ray.z), 0)
			self.assertLess(ray.crash[0], ray.t_min)
			self.assertEqual(ray.crash[1], m.refused)
			self.assertLess(abs(ray.crash[1]), 100)
			self.assertEqual(ray.as_record()['crash']['re'], m.refused.real)
	#
	def test_deep_seed_is_finite(self):
		# seeds close to the overflow level
		s = Address.parse('[];[(0,0)]')
		for t in [6.0, 6.2506, 6.5]:
			z, n = rays.ray_point(COSH, s, t)
			self.assertEqual(n, 1)
			self.assertTrue(cmath.isfinite(z))
			self.assertAlmostEqual(z.real, math.acosh(rays.ray_point(COSH, s, rays.escape_rate(t))[0].real), places=9)
		ray = rays.trace_ray(COSH, '[];[(0,1) (1,0)]', 5.9, 6.5, n_samples=10)
		self.assertIsNone(ray.crash)
		self.assertTrue(np.all(np.isfinite(ray.z)))
		self.assertLess(rays.functional_equation_residual(COSH, ray), 1e-8)
	#
	def test_record(self):
		ray = rays.trace_ray(COSH, '[];[(0,0)]', 2, 5, n_samples=5)
		record = ray.as_record()
		self.assertEqual(record['address'], '[];[(0,0)]')
		self.assertEqual(len(record['samples']), 5)
		self.assertIsNone(record['landing'])
		self.assertEqual(ray.curve().tag, 'dynamic-ray')
	#
#
class TestLanding(unittest.TestCase):
	def test_real_landing(self):
		landing = rays.land_ray(HALF, Address.periodic([(0, 0)]))
		x_star = real_fixed_point(0.5)
		self.assertEqual(landing.status, 'landed')
		self.assertEqual(landing.classification, 'repelling')
		self.assertLess(abs(landing.point - x_star), 1e-6)
		self.assertAlmostEqual(landing.multiplier.real, 0.5*math.sinh(x_star), places=6)
		self.assertGreater(abs(landing.multiplier), 1)
		self.assertLess(abs(HALF.eval(landing.point) - landing.point), 1e-10)
		self.assertLess(abs(landing.approach[-1] - landing.point), 1e-4)
	#
	def test_requires_periodic(self):
		with self.assertRaises(PreconditionError):
			rays.land_ray(HALF, Address([(1, 0)], [(0, 0)]))
	#
	def test_classify_multiplier(self):
		self.assertEqual(rays.classify_multiplier(2), 'repelling')
		self.assertEqual(rays.classify_multiplier(0.5j), 'attracting')
		self.assertEqual(rays.classify_multiplier(0), 'superattracting')
		self.assertEqual(rays.classify_multiplier(cmath.exp(2j*math.pi/3)), 'parabolic')
		self.assertEqual(rays.classify_multiplier(cmath.exp(2j*math.pi*(math.sqrt(5) - 1)/2)), 'indifferent')
	#
	def test_preimage_rays(self):
		result = rays.preimage_ray_addresses(HALF, Address.periodic([(0, 0)]), 0)
		self.assertEqual(result.status, 'landed')
		self.assertEqual(set(s.entry(0).j for s in result), {0, 1})
		self.assertEqual(result.first, Address.periodic([(0, 0)]))
		self.assertEqual(result.second, Address([(1, 0)], [(0, 0)]))
		x_star = real_fixed_point(0.5)
		self.assertLess(abs(result.points[0] - x_star), 1e-6)
		self.assertLess(abs(result.points[1] + x_star), 1e-6)
		# forward images of the preimage rays lie on the original ray
		for s in result:
			ray = rays.trace_ray(HALF, s, 1, 5, n_samples=10)
			self.assertLess(rays.functional_equation_residual(HALF, ray), 1e-8)
	#
	def test_preimages_translate(self):
		landing = rays.land_ray(HALF, Address.periodic([(0, 0)]))
		for j in (0, 1):
			lower = HALF.inverse_branch(landing.point, (j, 0))
			upper = HALF.inverse_branch(landing.point, (j, 1))
			self.assertAlmostEqual(upper - lower, 2j*math.pi, places=10)
	#
#
class TestEscapingPoints(unittest.TestCase):
	def test_itinerary(self):
		m = CosineMap.from_normal_form(1, 1)
		itinerary = rays.escaping_itinerary(m, -1, 3)
		self.assertEqual(itinerary, [StripIndex(1, 0), StripIndex(0, 0), StripIndex(0, 0)])
	#
	def test_orbit_ray(self):
		m = CosineMap.from_normal_form(1, 1)
		ray = rays.orbit_ray(m, -1, n_samples=40)
		self.assertEqual(ray.address, Address([(1, 0)], [(0, 0)]))
		self.assertAlmostEqual(ray.z[-1], -1, places=9)
		self.assertLess(np.max(np.abs(ray.z.imag)), 1e-8)
		self.assertTrue(np.all(np.diff(ray.z.real) > 0))
	#
	def test_potential_matches_trace(self):
		t = rays.potential(COSH, 3)
		z, n = rays.ray_point(COSH, Address.periodic([(0, 0)]), t)
		self.assertAlmostEqual(z, 3, places=8)
	#
	def test_non_escaping(self):
		with self.assertRaises(PreconditionError):
			rays.potential(HALF, 0.5)
	#
#
if __name__ == '__main__':
	unittest.main()
