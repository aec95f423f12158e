import os
import json
import shutil
import tempfile
import unittest
#
from cosinepuzzle import export, geometry
from cosinepuzzle.errors import InvalidParameterError
from cosinepuzzle.puzzle import PuzzlePiece, Tableau
#
import numpy as np
#
class TestImages(unittest.TestCase):
	def setUp(self):
		self.directory = tempfile.mkdtemp()
		self.image = np.arange(4*6*3, dtype=np.uint8).reshape(4, 6, 3)
	#
	def tearDown(self):
		shutil.rmtree(self.directory)
	#
	def test_ppm(self):
		filename = os.path.join(self.directory, 'image.ppm')
		export.export_image_to_ppm(self.image, filename)
		with open(filename, 'rb') as f:
			data = f.read()
		self.assertTrue(data.startswith(b'P6\n6 4\n255\n'))
		self.assertEqual(len(data), len(b'P6\n6 4\n255\n') + 72)
		np.testing.assert_array_equal(export.read_ppm(filename), self.image)
	#
	def test_ppm_whitespace_pixels(self):
		filename = os.path.join(self.directory, 'blank.ppm')
		image = np.full((2, 3, 3), 10, dtype=np.uint8)
		image[1] = 32
		export.export_image_to_ppm(image, filename)
		np.testing.assert_array_equal(export.read_ppm(filename), image)
	#
	def test_png(self):
		filename = os.path.join(self.directory, 'image.png')
		export.export_image(self.image, filename)
		self.assertGreater(os.path.getsize(filename), 0)
	#
	def test_bad_input(self):
		with self.assertRaises(InvalidParameterError):
			export.export_image(self.image, os.path.join(self.directory, 'image.gif'))
		with self.assertRaises(InvalidParameterError):
			export.export_image_to_ppm(self.image.astype(float), os.path.join(self.directory, 'image.ppm'))
	#
	def test_stack(self):
		filenames = export.export_stack([self.image, self.image[::-1]], self.directory, 'depth')
		self.assertEqual([os.path.basename(f) for f in filenames], ['depth_0.ppm', 'depth_1.ppm'])
		np.testing.assert_array_equal(export.read_ppm(filenames[1]), self.image[::-1])
	#
#
class TestRecords(unittest.TestCase):
	def setUp(self):
		self.directory = tempfile.mkdtemp()
	#
	def tearDown(self):
		shutil.rmtree(self.directory)
	#
	def test_json(self):
		filename = os.path.join(self.directory, 'record.json')
		export.export_record_to_json({'z': 1 + 2j, 'values': np.arange(3), 'n': np.int64(4)}, filename)
		with open(filename) as f:
			record = json.load(f)
		self.assertEqual(record, {'z': [1.0, 2.0], 'values': [0, 1, 2], 'n': 4})
	#
	def test_pieces_csv(self):
		piece = PuzzlePiece(1, geometry.box_polygon(0, 1, 1), [('window', None)]*4, [0j], parent_id='0:0', degree=2)
		piece.index = 3
		filename = os.path.join(self.directory, 'pieces.csv')
		export.export_pieces_to_csv([piece], filename)
		with open(filename) as f:
			lines = f.read().splitlines()
		self.assertEqual(lines[0], ','.join(export.PIECE_COLUMNS))
		self.assertEqual(lines[1].split(',')[:5], ['1', '1:3', '0:0', '2', '1'])
		self.assertEqual(float(lines[1].split(',')[5]), 4.0)
	#
	def test_tableau_csv(self):
		tab = Tableau(0j, [0j, 1], [['0:0', '0:0'], ['1:0', None]], [[True, False], [True, False]])
		filename = os.path.join(self.directory, 'tableau.csv')
		export.export_tableau_to_csv(tab, filename)
		with open(filename) as f:
			lines = f.read().splitlines()
		self.assertEqual(lines, ['depth,l=0,l=1', '0,0:0*,0:0', '1,1:0*,'])
	#
#
if __name__ == '__main__':
	unittest.main()
