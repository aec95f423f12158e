r'''
Writers for rendered images and for the JSON/CSV records of constructed
objects.
'''
import os
import re
import csv
import json
import logging
#
import numpy as np
import matplotlib
import matplotlib.image
#
from .errors import InvalidParameterError
#
logger = logging.getLogger(__name__)
#
PPM_HEADER = re.compile(br'P6\s+(\d+)\s+(\d+)\s+(\d+)\s')
#
def _check_image(image):
	image = np.asarray(image)
	if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
		raise InvalidParameterError('Expected an 8-bit RGB image of shape (rows, columns, 3), got {} {}.'.format(image.dtype, image.shape))
	return image
#
def export_image_to_ppm(image, filename):
	r'''
	Save an 8-bit RGB image as binary PPM (P6). The bytes depend only on the
	pixel values.
	'''
	#
	image = _check_image(image)
	rows, columns = image.shape[:2]
	with open(filename, 'wb') as f:
		f.write('P6\n{} {}\n255\n'.format(columns, rows).encode('ascii'))
		f.write(np.ascontiguousarray(image).tobytes())
	logger.info('Wrote %s (%dx%d)', filename, columns, rows)
#
def read_ppm(filename):
	r'''
	Read back a binary PPM written by :func:`export_image_to_ppm`.
	'''
	#
	with open(filename, 'rb') as f:
		data = f.read()
	header = PPM_HEADER.match(data)
	if header is None or header.group(3) != b'255':
		raise InvalidParameterError('{} is not an 8-bit binary PPM file.'.format(filename))
	columns, rows = int(header.group(1)), int(header.group(2))
	pixels = np.frombuffer(data[header.end():], dtype=np.uint8)
	# exactly one whitespace byte separates the header from the pixels
	if len(pixels) != rows*columns*3:
		raise InvalidParameterError('{} holds {} bytes of pixel data instead of {}.'.format(filename, len(pixels), rows*columns*3))
	return pixels.reshape(rows, columns, 3)
#
def export_image_to_png(image, filename):
	r'''
	Given an RGB image, save it to a file.
	'''
	#
	matplotlib.image.imsave(filename, _check_image(image))
	# let matplotlib deal with saving the image since it probably already has a supported backend
#
def export_image(image, filename):
	r'''
	Save ``image`` as PNG or PPM according to the file extension.
	'''
	#
	extension = os.path.splitext(filename)[1].lower()
	if extension == '.ppm':
		export_image_to_ppm(image, filename)
	elif extension == '.png':
		export_image_to_png(image, filename)
	else:
		raise InvalidParameterError('Unsupported image format {!r}; use .ppm or .png.'.format(extension))
#
def export_stack(images, directory, filename_prefix, extension='.ppm'):
	r'''
	Save every image of a sequence (for example one overlay per puzzle
	depth) to ``<prefix>_<index><extension>`` and return the file names.
	'''
	#
	filenames = []
	for x, image in enumerate(images):
		filename = os.path.join(directory, filename_prefix)
		filename += '_{}{}'.format(x, extension)
		#
		export_image(image, filename)
		filenames.append(filename)
	return filenames
#
def _builtin(value):
	if isinstance(value, complex):
		return [value.real, value.imag]
	if isinstance(value, np.ndarray):
		return value.tolist()
	if isinstance(value, np.generic):
		return value.item()
	raise TypeError('Cannot serialise {!r}.'.format(value))
#
def to_json(record):
	return json.dumps(record, default=_builtin, sort_keys=True, indent=1)
#
def export_record_to_json(record, filename):
	r'''
	Write an ``as_record()`` dictionary as JSON; complex numbers become
	``[re, im]`` pairs.
	'''
	#
	with open(filename, 'w') as f:
		f.write(to_json(record))
		f.write('\n')
	logger.info('Wrote %s', filename)
#
PIECE_COLUMNS = ['depth', 'id', 'parent_id', 'degree', 'critical', 'area', 'diameter', 'vertices']
#
def export_pieces_to_csv(pieces, filename):
	r'''
	One row per puzzle piece: its id, parent, degree, number of critical
	points, area, diameter and number of boundary vertices.
	'''
	#
	with open(filename, 'w', newline='') as f:
		writer = csv.writer(f)
		writer.writerow(PIECE_COLUMNS)
		for piece in pieces:
			writer.writerow([piece.depth, piece.id, piece.parent_id or '', piece.degree, len(piece.critical),
				'{:.12g}'.format(piece.area()), '{:.12g}'.format(piece.diameter()), len(piece.polygon)])
	logger.info('Wrote %d pieces to %s', len(pieces), filename)
#
def export_tableau_to_csv(tab, filename):
	r'''
	The tableau grid: one row per depth, one column per iterate; critical
	pieces are starred.
	'''
	#
	with open(filename, 'w', newline='') as f:
		writer = csv.writer(f)
		writer.writerow(['depth'] + ['l={}'.format(l) for l in range(tab.length + 1)])
		for n, row in enumerate(tab.grid()):
			writer.writerow([n] + row)
#
