import unittest
#
import cosinepuzzle
from cosinepuzzle.coordinates import Viewport
from cosinepuzzle.errors import InvalidParameterError
#
import numpy as np
#
class TestCoordinates(unittest.TestCase):
	def test_pixel_to_plane_matrix(self):
		viewport = Viewport(0, 4, (4, 2))
		#
		result = cosinepuzzle.coordinates.build_pixel_to_plane_matrix(viewport)
		#
		correct_result = [[1, 0 , -1.5],
						  [0, -1, 0.5 ],
						  [0, 0 , 1   ]]
		#
		np.testing.assert_allclose(result, correct_result)
	#
	def test_pixel_to_plane_matrix_off_center(self):
		viewport = Viewport(1 + 2j, 2, (8, 4))
		#
		result = cosinepuzzle.coordinates.build_pixel_to_plane_matrix(viewport)
		#
		correct_result = [[0.25, 0    , 0.125],
						  [0   , -0.25, 2.375],
						  [0   , 0    , 1    ]]
		#
		np.testing.assert_allclose(result, correct_result)
	#
	def test_matrices_are_inverse(self):
		viewport = Viewport(-0.3 + 0.7j, 3.5, (17, 11))
		product = np.dot(cosinepuzzle.coordinates.build_plane_to_pixel_matrix(viewport), cosinepuzzle.coordinates.build_pixel_to_plane_matrix(viewport))
		np.testing.assert_allclose(product, np.eye(3), atol=1e-12)
	#
	def test_transform_vectors_single(self):
		transformation_matrix = [[2, 0, 1 ],
								 [0, 3, -1],
								 [0, 0, 1 ]]
		#
		result = cosinepuzzle.coordinates.transform_vectors(transformation_matrix, [1, 1])
		#
		np.testing.assert_allclose(result, [3, 2])
	#
	def test_transform_vectors_multiple(self):
		transformation_matrix = [[2, 0, 1 ],
								 [0, 3, -1],
								 [0, 0, 1 ]]
		vectors = [[1, 1],
				   [0, 2]]
		#
		result = cosinepuzzle.coordinates.transform_vectors(transformation_matrix, vectors)
		#
		np.testing.assert_allclose(result, [[3, 2], [1, 5]])
	#
	def test_transform_vectors_zero_fill(self):
		transformation_matrix = [[2, 0, 1 ],
								 [0, 3, -1],
								 [0, 0, 1 ]]
		#
		result = cosinepuzzle.coordinates.transform_vectors(transformation_matrix, [1])
		#
		np.testing.assert_allclose(result, [3, -1])
	#
	def test_transform_vectors_too_long(self):
		with self.assertRaises(InvalidParameterError):
			cosinepuzzle.coordinates.transform_vectors(np.eye(3), [1, 2, 3])
	#
	def test_pixel_grid(self):
		viewport = Viewport(0, 4, (4, 2))
		grid = cosinepuzzle.coordinates.pixel_grid(viewport)
		self.assertEqual(grid.shape, (2, 4))
		self.assertAlmostEqual(grid[0, 0], -1.5 + 0.5j)
		self.assertAlmostEqual(grid[1, 3], 1.5 - 0.5j)
	#
	def test_plane_to_pixel(self):
		viewport = Viewport(0, 4, (4, 2))
		result = cosinepuzzle.coordinates.plane_to_pixel(viewport, [-1.5 + 0.5j, 1.5 - 0.5j])
		np.testing.assert_allclose(result, [[0, 0], [3, 1]], atol=1e-12)
	#
	def test_invalid_viewport(self):
		with self.assertRaises(InvalidParameterError):
			Viewport(0, 0, (10, 10))
		with self.assertRaises(InvalidParameterError):
			Viewport(0, 1, (0, 10))
	#
#
if __name__ == '__main__':
	unittest.main()
