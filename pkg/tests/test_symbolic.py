import unittest
from fractions import Fraction
#
from cosinepuzzle.symbolic import Address, entry_less, addr_compare, addr_distance, parse_address, format_address
from cosinepuzzle.errors import InvalidParameterError
#
import numpy as np
#
def random_address(rng, max_pre=3, max_period=3, k_range=2):
	def entries(n):
		return [(int(rng.integers(0, 2)), int(rng.integers(-k_range, k_range + 1))) for x in range(n)]
	return Address(entries(int(rng.integers(0, max_pre + 1))), entries(int(rng.integers(1, max_period + 1))))
#
class TestAddress(unittest.TestCase):
	def test_canonical_form(self):
		s = Address([(1, 2), (0, 0)], [(0, 0), (0, 0)])
		self.assertEqual(s.preperiod, ((1, 2),))
		self.assertEqual(s.period, ((0, 0),))
		t = Address([(0, 1), (1, 3)], [(0, 1), (1, 3)])
		self.assertTrue(t.is_periodic())
		self.assertEqual(t.period, ((0, 1), (1, 3)))
	#
	def test_rotated_period(self):
		s = Address([(0, 5)], [(1, 1), (0, 5)])
		self.assertEqual(s, Address.periodic([(0, 5), (1, 1)]))
	#
	def test_empty_period(self):
		with self.assertRaises(InvalidParameterError):
			Address([(0, 1)], [])
		with self.assertRaises(InvalidParameterError):
			Address([], [(2, 1)])
	#
	def test_text_format(self):
		s = parse_address('[(1,2)];[(0,0) (1,-3)]')
		self.assertEqual(s.preperiod, ((1, 2),))
		self.assertEqual(s.period, ((0, 0), (1, -3)))
		self.assertEqual(format_address(s), '[(1,2)];[(0,0) (1,-3)]')
		self.assertEqual(parse_address(' [ ] ; [ (0, 0) ] '), Address.periodic([(0, 0)]))
		with self.assertRaises(InvalidParameterError):
			parse_address('(0,0)')
		with self.assertRaises(InvalidParameterError):
			parse_address('[(0,0) x];[(0,0)]')
	#
	def test_entry_and_prefix(self):
		s = Address([(1, 2)], [(0, 0), (0, 1)])
		self.assertEqual(s.entry(0), (1, 2))
		self.assertEqual(s.entry(1), (0, 0))
		self.assertEqual(s.entry(4), (0, 1))
		self.assertEqual(s.prefix(3), [(1, 2), (0, 0), (0, 1)])
	#
	def test_shift(self):
		fixed = Address.periodic([(0, 0)])
		self.assertEqual(fixed.shift(), fixed)
		self.assertEqual(Address([(1, 2)], [(0, 0)]).shift(), fixed)
		rng = np.random.default_rng(10)
		for x in range(50):
			s = random_address(rng, max_pre=0)
			self.assertEqual(s.shift(s.period_length), s)
	#
	def test_prepend(self):
		rng = np.random.default_rng(11)
		for x in range(50):
			s = random_address(rng)
			self.assertEqual(s.prepend((1, 4)).shift(), s)
		s = Address.periodic([(0, 0)])
		self.assertEqual(s.prepend((0, 0)), s)
		self.assertEqual(s.prepend((1, 0)).preperiod, ((1, 0),))
	#
	def test_shift_k(self):
		s = Address([(1, 2)], [(0, 0)])
		self.assertEqual(s.shift_k(1), Address([(1, 3)], [(0, 1)]))
		self.assertEqual(s.shift_k(-1, first_only=True), Address([(1, 1)], [(0, 0)]))
		self.assertEqual(Address.periodic([(0, 0)]).shift_k(1, first_only=True), Address([(0, 1)], [(0, 0)]))
	#
#
class TestOrder(unittest.TestCase):
	def test_entry_order(self):
		self.assertTrue(entry_less((1, 3), (0, -7)))
		self.assertTrue(entry_less((0, 1), (0, 2)))
		self.assertTrue(entry_less((1, 1), (1, 0)))
		self.assertFalse(entry_less((0, 2), (0, 2)))
		self.assertFalse(entry_less((0, -7), (1, 3)))
	#
	def test_compare_examples(self):
		s = Address.periodic([(0, 0)])
		self.assertEqual(addr_compare(s, s), 0)
		self.assertEqual(addr_compare(Address.periodic([(1, 0)]), s), -1)
		self.assertEqual(addr_compare(s, Address.periodic([(1, 0)])), 1)
		self.assertLess(Address.periodic([(1, 0)]), s)
	#
	def test_order_axioms(self):
		rng = np.random.default_rng(12)
		for x in range(2000):
			s, t, w = [random_address(rng, k_range=1) for y in range(3)]
			self.assertEqual(addr_compare(s, t), -addr_compare(t, s))
			self.assertEqual(addr_compare(s, t) == 0, s == t)
			if addr_compare(s, t) <= 0 and addr_compare(t, w) <= 0:
				self.assertLessEqual(addr_compare(s, w), 0)
	#
	def test_sorting_is_consistent(self):
		rng = np.random.default_rng(13)
		addresses = [random_address(rng) for x in range(100)]
		ordered = sorted(addresses)
		for first, second in zip(ordered[:-1], ordered[1:]):
			self.assertLessEqual(addr_compare(first, second), 0)
	#
#
class TestDistance(unittest.TestCase):
	def test_examples(self):
		s = Address([(0, 1), (1, 1), (0, 2)], [(0, 0)])
		self.assertEqual(addr_distance(s, s), 0)
		self.assertEqual(addr_distance(s, Address([(1, 1)], [(0, 0)])), 1)
		t = Address([(0, 1), (1, 1), (0, 2), (1, 5)], [(0, 0)])
		self.assertEqual(addr_distance(s, t), Fraction(1, 8))
	#
	def test_ultrametric(self):
		rng = np.random.default_rng(14)
		for x in range(1000):
			s, t, w = [random_address(rng, k_range=1) for y in range(3)]
			self.assertLessEqual(addr_distance(s, w), max(addr_distance(s, t), addr_distance(t, w)))
	#
	def test_shift_expands(self):
		rng = np.random.default_rng(15)
		for x in range(200):
			s = random_address(rng, k_range=1)
			t = random_address(rng, k_range=1)
			if s == t:
				continue
			t = t.shift().prepend(s.entry(0))
			if s == t:
				continue
			self.assertEqual(addr_distance(s.shift(), t.shift()), 2*addr_distance(s, t))
	#
	def test_monotone_sequence_converges(self):
		limit = Address.periodic([(0, 1), (1, 0)])
		previous = None
		for n in range(1, 12):
			s = Address(limit.prefix(n), [(1, 5)])
			if previous is not None:
				self.assertLess(addr_distance(s, limit), addr_distance(previous, limit))
			previous = s
		self.assertLessEqual(addr_distance(previous, limit), Fraction(1, 2**11))
	#
#
if __name__ == '__main__':
	unittest.main()
