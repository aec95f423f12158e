import numpy as np
#
from .errors import InvalidParameterError
#
class Viewport(object):
	r'''
	A rectangular view of the complex plane: ``center`` (complex), ``width``
	(real part extent) and ``pixels = (columns, rows)``. Pixels are square,
	so the imaginary extent is ``width*rows/columns``.
	'''
	#
	def __init__(self, center, width, pixels):
		columns, rows = pixels
		if not width > 0:
			raise InvalidParameterError('Viewport width must be positive (got {}).'.format(width))
		if columns <= 0 or rows <= 0:
			raise InvalidParameterError('Viewport pixel counts must be positive (got {}x{}).'.format(columns, rows))
		self.center = complex(center)
		self.width = float(width)
		self.pixels = (int(columns), int(rows))
	#
	@property
	def height(self):
		return self.width*self.pixels[1]/self.pixels[0]
	#
	@property
	def pixel_size(self):
		return self.width/self.pixels[0]
	#
	def corners(self):
		r'''
		Lower-left and upper-right corners.
		'''
		#
		half = complex(self.width, self.height)/2
		return self.center - half, self.center + half
	#
	def contains(self, z):
		low, high = self.corners()
		z = np.asarray(z, dtype=complex)
		return (z.real >= low.real) & (z.real <= high.real) & (z.imag >= low.imag) & (z.imag <= high.imag)
	#
	def reflected(self, u):
		r'''
		The viewport mirrored through ``u`` (``z -> 2u - z``).
		'''
		#
		return Viewport(2*complex(u) - self.center, self.width, self.pixels)
	#
	def as_record(self):
		return {
			'center': [self.center.real, self.center.imag],
			'width': self.width,
			'pixels': list(self.pixels),
		}
	#
	def __repr__(self):
		return 'Viewport(center={!r}, width={!r}, pixels={!r})'.format(self.center, self.width, self.pixels)
	#
#
def build_pixel_to_plane_matrix(viewport):
	r'''
	Get a matrix to transform a pixel coordinate ``(column, row)`` to a point
	``(x, y)`` of the plane. The pixel coordinate corresponds to the center of
	that pixel; row 0 is the top of the image, so ``y`` decreases with the
	row index.
	'''
	#
	step = viewport.pixel_size
	low, high = viewport.corners()
	#
	transformation = np.array([
			[step, 0, low.real + 0.5*step],
			[0, -step, high.imag - 0.5*step],
			[0, 0, 1]
		])
	#
	# this matrix should be applied to the LHS of the position
	return transformation
#
def build_plane_to_pixel_matrix(viewport):
	return np.linalg.inv(build_pixel_to_plane_matrix(viewport))
#
def transform_vectors(transformation_matrix, vectors):
	r'''
	Apply the homogeneous :math:`n \times n` matrix on the left of each of
	``vectors`` (one per row) and drop the homogeneous coordinate.

	Shorter vectors are padded with zeros up to length :math:`n-1`. A single
	one-dimensional vector gives a one-dimensional result.
	'''
	#
	transformation_matrix = np.asarray(transformation_matrix)
	vectors = np.array(vectors, dtype=float)
	input1D = False
	if vectors.ndim == 1:
		vectors = vectors[np.newaxis, :]
		input1D = True
	#
	vector_length = transformation_matrix.shape[1]-1
	#
	if vectors.shape[1] < vector_length:
		to_add = np.zeros((vectors.shape[0], vector_length-vectors.shape[1]))
		vectors = np.concatenate((vectors, to_add), axis=1)
	elif vectors.shape[1] > vector_length:
		raise InvalidParameterError('Cannot transform a position in a dimension higher than {}.'.format(vector_length))
	#
	vectors = np.concatenate((vectors, np.ones((vectors.shape[0], 1))), axis=1)
	ans = np.transpose(np.dot(transformation_matrix, np.transpose(vectors))[0:vector_length])
	if input1D:
		return ans[0]
	return ans
#
def pixel_grid(viewport):
	r'''
	Complex array of shape ``(rows, columns)`` holding the pixel centers.
	'''
	#
	columns, rows = viewport.pixels
	cc, rr = np.meshgrid(np.arange(columns), np.arange(rows))
	xy = transform_vectors(build_pixel_to_plane_matrix(viewport), np.column_stack([cc.ravel(), rr.ravel()]))
	return (xy[:, 0] + 1j*xy[:, 1]).reshape(rows, columns)
#
def plane_to_pixel(viewport, z):
	r'''
	Fractional ``(column, row)`` coordinates of the points ``z``; one row per
	point.
	'''
	#
	z = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
	return transform_vectors(build_plane_to_pixel_matrix(viewport), np.column_stack([z.real, z.imag]))
#
def pixel_offsets(viewport):
	r'''
	Pixel centers relative to ``viewport.center``, shape ``(rows, columns)``.
	The offsets of pixels mirrored through the center are exact negatives of
	each other.
	'''
	#
	columns, rows = viewport.pixels
	step = viewport.pixel_size
	x = step*(np.arange(columns) + 0.5 - 0.5*columns)
	y = -step*(np.arange(rows) + 0.5 - 0.5*rows)
	return x[np.newaxis, :] + 1j*y[:, np.newaxis]
#
