import argparse
import unittest
#
from cosinepuzzle import config
from cosinepuzzle.errors import InvalidParameterError
#
class TestParse(unittest.TestCase):
	def test_values(self):
		text = '\n'.join([
			'# rendering',
			'max-iter = 300',
			'viewport = 0,0,6   # centred',
			'',
			'out = julia.ppm',
			'max_iter = 400',
		])
		values = config.parse_config(text)
		self.assertEqual(values, {'max_iter': '400', 'viewport': '0,0,6', 'out': 'julia.ppm'})
	#
	def test_malformed(self):
		with self.assertRaises(InvalidParameterError):
			config.parse_config('max_iter 300')
		with self.assertRaises(InvalidParameterError):
			config.parse_config('= 3')
	#
#
class TestApply(unittest.TestCase):
	def setUp(self):
		self.parser = argparse.ArgumentParser()
		self.parser.add_argument('--max-iter', type=int, default=200)
		self.parser.add_argument('--separate-basins', action='store_true')
		self.parser.add_argument('--config')
	#
	def test_file_beats_default(self):
		config.apply_config(self.parser, {'max_iter': '50', 'separate_basins': 'yes'})
		args = self.parser.parse_args([])
		self.assertEqual(args.max_iter, 50)
		self.assertTrue(args.separate_basins)
	#
	def test_flag_beats_file(self):
		config.apply_config(self.parser, {'max_iter': '50'})
		args = self.parser.parse_args(['--max-iter', '70'])
		self.assertEqual(args.max_iter, 70)
	#
	def test_upper_case_option(self):
		self.parser.add_argument('--M', type=float, default=4.0)
		config.apply_config(self.parser, config.parse_config('M = 2.5'))
		self.assertEqual(self.parser.parse_args([]).M, 2.5)
	#
	def test_unknown_key(self):
		with self.assertRaises(InvalidParameterError):
			config.apply_config(self.parser, {'colour': 'red'})
		with self.assertRaises(InvalidParameterError):
			config.apply_config(self.parser, {'separate_basins': 'maybe'})
	#
#
if __name__ == '__main__':
	unittest.main()
