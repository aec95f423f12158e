r'''
Sampled planar curves and the point-location helpers used for puzzle pieces
and renormalization domains. Points are complex numbers throughout.
'''
import math
import logging
#
import numpy as np
from scipy.spatial.distance import cdist
#
from .errors import InvalidParameterError
#
logger = logging.getLogger(__name__)
#
TAGS = ('internal-ray', 'dynamic-ray', 'equipotential', 'ellipse-arc', 'window', 'slit', 'strip-edge')
#
_CHUNK = 2000000
# largest number of (point, edge) pairs evaluated in one numpy block
#
class Curve(object):
	r'''
	A sampled polyline.

	``points`` is a complex array; ``tag`` says what the curve is (one of
	``TAGS``) and ``source`` identifies the object it was built from (an
	address, an angle, a level, ...). A closed curve does not repeat its first
	point.
	'''
	#
	def __init__(self, points, tag, source=None, closed=False):
		if tag not in TAGS:
			raise InvalidParameterError('Unknown curve tag {!r}.'.format(tag))
		self.points = np.asarray(points, dtype=complex)
		self.tag = tag
		self.source = source
		self.closed = closed
	#
	def __len__(self):
		return len(self.points)
	#
	def __repr__(self):
		return 'Curve(tag={!r}, source={!r}, n={}, closed={})'.format(self.tag, self.source, len(self.points), self.closed)
	#
	def reversed(self):
		return Curve(self.points[::-1], self.tag, self.source, self.closed)
	#
	def mapped(self, function):
		return Curve(function(self.points), self.tag, self.source, self.closed)
	#
	def length(self):
		points = closed_points(self.points) if self.closed else self.points
		return float(np.sum(np.abs(np.diff(points))))
	#
	def as_record(self):
		return {
			'tag': self.tag,
			'source': None if self.source is None else str(self.source),
			'closed': self.closed,
			'points': [[float(z.real), float(z.imag)] for z in self.points],
		}
	#
#
def closed_points(polygon):
	r'''
	The vertices of ``polygon`` with the first one appended at the end (unless
	it is already there).
	'''
	#
	polygon = np.asarray(polygon, dtype=complex)
	if len(polygon) > 1 and polygon[0] == polygon[-1]:
		return polygon
	return np.concatenate([polygon, polygon[:1]])
#
def _edges(polygon):
	ring = closed_points(polygon)
	return ring[:-1], ring[1:]
#
def winding_number(polygon, points):
	r'''
	Winding number of the closed polygon around each of ``points``, by the
	signed crossing rule (upward crossings with the point on the left count
	+1, downward crossings with the point on the right count -1).
	'''
	#
	points = np.asarray(points, dtype=complex)
	scalar = points.ndim == 0
	points = np.atleast_1d(points).ravel()
	a, b = _edges(polygon)
	result = np.zeros(len(points), dtype=int)
	if len(a) == 0:
		return 0 if scalar else result
	block = max(1, _CHUNK//len(a))
	for start in range(0, len(points), block):
		p = points[start:start + block, None]
		is_left = (b.real - a.real)*(p.imag - a.imag) - (p.real - a.real)*(b.imag - a.imag)
		upward = (a.imag <= p.imag) & (b.imag > p.imag) & (is_left > 0)
		downward = (a.imag > p.imag) & (b.imag <= p.imag) & (is_left < 0)
		result[start:start + block] = np.sum(upward, axis=1) - np.sum(downward, axis=1)
	if scalar:
		return int(result[0])
	return result
#
def contains(polygon, points):
	result = winding_number(polygon, points)
	return result != 0
#
def distance_to_polyline(polyline, points, closed=False):
	r'''
	Euclidean distance from each point to the nearest segment of the polyline.
	'''
	#
	points = np.asarray(points, dtype=complex)
	scalar = points.ndim == 0
	points = np.atleast_1d(points).ravel()
	polyline = np.asarray(polyline, dtype=complex)
	if closed:
		a, b = _edges(polyline)
	elif len(polyline) == 1:
		a, b = polyline, polyline
	else:
		a, b = polyline[:-1], polyline[1:]
	d = b - a
	dd = np.abs(d)**2
	result = np.empty(len(points))
	block = max(1, _CHUNK//len(a))
	for start in range(0, len(points), block):
		p = points[start:start + block, None]
		with np.errstate(divide='ignore', invalid='ignore'):
			t = np.where(dd > 0, ((p - a)*d.conjugate()).real/np.where(dd > 0, dd, 1), 0)
		t = np.clip(t, 0, 1)
		result[start:start + block] = np.min(np.abs(p - (a + t*d)), axis=1)
	if scalar:
		return float(result[0])
	return result
#
def _as_xy(points):
	points = np.asarray(points, dtype=complex).ravel()
	return np.column_stack([points.real, points.imag])
#
def hausdorff_distance(first, second):
	r'''
	Symmetric Hausdorff distance between two point samples.
	'''
	#
	distances = cdist(_as_xy(first), _as_xy(second))
	return float(max(np.max(np.min(distances, axis=1)), np.max(np.min(distances, axis=0))))
#
def directed_distance(first, second):
	r'''
	Largest distance from a point of ``first`` to the sample ``second``.
	'''
	#
	distances = cdist(_as_xy(first), _as_xy(second))
	return float(np.max(np.min(distances, axis=1)))
#
def diameter(points):
	points = np.asarray(points, dtype=complex).ravel()
	if len(points) > 4000:
		points = points[::int(math.ceil(len(points)/4000))]
	return float(np.max(cdist(_as_xy(points), _as_xy(points))))
#
def resample(points, max_step, closed=False):
	r'''
	Insert equally spaced points on every segment longer than ``max_step``.
	'''
	#
	points = np.asarray(points, dtype=complex)
	if closed:
		points = closed_points(points)
	if len(points) < 2:
		return points
	pieces = []
	for a, b in zip(points[:-1], points[1:]):
		n = max(1, int(math.ceil(abs(b - a)/max_step)))
		pieces.append(a + (b - a)*np.arange(n)/n)
	if not closed:
		pieces.append(points[-1:])
	return np.concatenate(pieces)
#
def signed_area(polygon):
	a, b = _edges(polygon)
	return 0.5*float(np.sum(a.real*b.imag - b.real*a.imag))
#
def _orientation(p, q, r):
	return np.sign((q.real - p.real)*(r.imag - p.imag) - (q.imag - p.imag)*(r.real - p.real))
#
def segments_cross(a1, b1, a2, b2):
	r'''
	Boolean matrix: does segment ``i`` of the first family properly cross
	segment ``j`` of the second? Touching at endpoints does not count.
	'''
	#
	a1 = np.asarray(a1, dtype=complex)[:, None]
	b1 = np.asarray(b1, dtype=complex)[:, None]
	a2 = np.asarray(a2, dtype=complex)[None, :]
	b2 = np.asarray(b2, dtype=complex)[None, :]
	o1 = _orientation(a1, b1, a2)
	o2 = _orientation(a1, b1, b2)
	o3 = _orientation(a2, b2, a1)
	o4 = _orientation(a2, b2, b1)
	return (o1*o2 < 0) & (o3*o4 < 0)
#
def is_simple(polygon, closed=True):
	r'''
	True if no two non-adjacent edges of the polygon cross.
	'''
	#
	polygon = np.asarray(polygon, dtype=complex)
	if closed:
		a, b = _edges(polygon)
	else:
		a, b = polygon[:-1], polygon[1:]
	n = len(a)
	block = max(1, _CHUNK//max(n, 1))
	for start in range(0, n, block):
		cross = segments_cross(a[start:start + block], b[start:start + block], a, b)
		rows = np.arange(start, min(start + block, n))[:, None]
		columns = np.arange(n)[None, :]
		gap = np.abs(rows - columns)
		adjacent = (gap <= 1) | (closed & (gap == n - 1))
		if np.any(cross & ~adjacent):
			return False
	return True
#
def clip_halfplane(polygon, normal, offset):
	r'''
	Sutherland-Hodgman clipping of ``polygon`` to the half plane
	:math:`\mathrm{Re}(z\bar{n}) \le c`.
	'''
	#
	polygon = np.asarray(polygon, dtype=complex)
	if len(polygon) == 0:
		return polygon
	normal = complex(normal)
	values = (polygon*normal.conjugate()).real - offset
	following = np.roll(polygon, -1)
	next_values = np.roll(values, -1)
	inside = values <= 0
	crossing = inside != (next_values <= 0)
	with np.errstate(divide='ignore', invalid='ignore'):
		cut = polygon + (following - polygon)*(values/(values - next_values))
	# each vertex contributes itself when kept, then the crossing point of its edge
	candidates = np.column_stack([polygon, cut]).ravel()
	keep = np.column_stack([inside, crossing]).ravel()
	return candidates[keep]
#
def clip_convex(polygon, convex):
	r'''
	Clip ``polygon`` against every edge of the counter-clockwise convex
	polygon ``convex``.
	'''
	#
	a, b = _edges(convex)
	result = np.asarray(polygon, dtype=complex)
	for start, end in zip(a, b):
		normal = -1j*(end - start)
		# outward normal of a counter-clockwise edge
		result = clip_halfplane(result, normal, (start*normal.conjugate()).real)
		if len(result) == 0:
			break
	return result
#
def box_polygon(center, half_width, half_height, n_per_side=1):
	r'''
	Counter-clockwise axis-parallel rectangle, ``n_per_side`` segments per side.
	'''
	#
	corners = [complex(half_width, -half_height), complex(half_width, half_height),
			   complex(-half_width, half_height), complex(-half_width, -half_height)]
	t = np.arange(n_per_side)/n_per_side
	sides = [corners[i] + (corners[(i + 1) % 4] - corners[i])*t for i in range(4)]
	return center + np.concatenate(sides)
#
def ellipse_polygon(v, M, n=720, center=0):
	r'''
	The ellipse :math:`\{v\cosh(M + iy)\}` with foci :math:`\pm v`, sampled
	counter-clockwise. Its semi-axes are :math:`|v|\cosh M` and
	:math:`|v|\sinh M`.
	'''
	#
	y = 2*math.pi*np.arange(n)/n
	return center + v*np.cosh(M + 1j*y)
#
def inside_ellipse(points, v, M, center=0):
	r'''
	Strictly inside :math:`\{|w - v| + |w + v| < 2|v|\cosh M\}`.
	'''
	#
	w = np.asarray(points, dtype=complex) - center
	return np.abs(w - v) + np.abs(w + v) < 2*abs(v)*math.cosh(M)
#
def ellipse_margin(points, v, M, center=0):
	r'''
	Smallest value of :math:`2|v|\cosh M - |w - v| - |w + v|` over the
	points; positive when all of them lie inside the ellipse.
	'''
	#
	w = np.asarray(points, dtype=complex) - center
	return float(np.min(2*abs(v)*math.cosh(M) - np.abs(w - v) - np.abs(w + v)))
#
def interior_sample(polygon, n=40):
	r'''
	Grid points of the bounding box of ``polygon`` that lie inside it.
	'''
	#
	polygon = np.asarray(polygon, dtype=complex)
	x = np.linspace(polygon.real.min(), polygon.real.max(), n + 2)[1:-1]
	y = np.linspace(polygon.imag.min(), polygon.imag.max(), n + 2)[1:-1]
	grid = (x[None, :] + 1j*y[:, None]).ravel()
	return grid[contains(polygon, grid)]
#
