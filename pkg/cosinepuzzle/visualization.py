r'''
Overlays of rays, puzzle pieces, graphs and renormalization domains on
rendered images, and matplotlib plots of the same.
'''
import math
import logging
#
import numpy as np
import matplotlib.pylab as plt
#
from .coordinates import plane_to_pixel
from .geometry import Curve
#
logger = logging.getLogger(__name__)
#
TAG_COLORS = {
	'internal-ray': (255, 255, 255),
	'dynamic-ray': (230, 30, 30),
	'equipotential': (250, 210, 0),
	'ellipse-arc': (0, 200, 220),
	'window': (120, 120, 120),
	'slit': (255, 0, 255),
	'strip-edge': (40, 220, 60),
}
#
def curves_of(obj):
	r'''
	The curves making up ``obj``: a :class:`Curve`, a ray, a puzzle piece,
	anything with a ``curves()`` method, a renormalization candidate, or a
	list of those.
	'''
	#
	if obj is None:
		return []
	if isinstance(obj, Curve):
		return [obj]
	if isinstance(obj, (list, tuple)):
		return [curve for item in obj for curve in curves_of(item)]
	if hasattr(obj, 'arcs'):
		return obj.arcs()
	if hasattr(obj, 'curves'):
		return obj.curves()
	if hasattr(obj, 'address') and hasattr(obj, 'z'):
		return [obj.curve()]
	if hasattr(obj, 'U') and hasattr(obj, 'V'):
		return [Curve(obj.V, 'ellipse-arc', closed=True), Curve(obj.U, 'strip-edge', closed=True)] + list(obj.slits)
	raise TypeError('Cannot draw {!r}.'.format(obj))
#
def _clip_segment(p, q, columns, rows):
	r'''
	Liang-Barsky clipping of the segment ``p``-``q`` (pixel coordinates) to
	the image; ``None`` when it misses.
	'''
	#
	lo, hi = 0.0, 1.0
	d = q - p
	for delta, start, low, high in ((d[0], p[0], -0.5, columns - 0.5), (d[1], p[1], -0.5, rows - 0.5)):
		if delta == 0:
			if start < low or start > high:
				return None
			continue
		t0, t1 = (low - start)/delta, (high - start)/delta
		if t0 > t1:
			t0, t1 = t1, t0
		lo, hi = max(lo, t0), min(hi, t1)
		if lo > hi:
			return None
	return p + lo*d, p + hi*d
#
def _rasterise(pixels, closed, columns, rows):
	if closed and len(pixels) > 1:
		pixels = np.vstack([pixels, pixels[:1]])
	if len(pixels) == 1:
		pixels = np.vstack([pixels, pixels])
	cells = []
	for p, q in zip(pixels[:-1], pixels[1:]):
		if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
			continue
		clipped = _clip_segment(p, q, columns, rows)
		if clipped is None:
			continue
		a, b = clipped
		n = int(math.ceil(2*np.max(np.abs(b - a)))) + 1
		t = np.linspace(0, 1, n)[:, np.newaxis]
		cells.append(np.round(a + t*(b - a)).astype(int))
	if not cells:
		return np.zeros((0, 2), dtype=int)
	cells = np.vstack(cells)
	inside = (cells[:, 0] >= 0) & (cells[:, 0] < columns) & (cells[:, 1] >= 0) & (cells[:, 1] < rows)
	return cells[inside]
#
def overlay(image, viewport, objects, colors=None):
	r'''
	A copy of ``image`` with the curves of ``objects`` drawn one pixel wide
	in the color of their tag. Whatever lies outside the viewport is
	dropped.
	'''
	#
	result = np.array(image, copy=True)
	colors = dict(TAG_COLORS, **(colors or {}))
	columns, rows = viewport.pixels
	for curve in curves_of(objects):
		if len(curve.points) == 0:
			continue
		cells = _rasterise(plane_to_pixel(viewport, curve.points), curve.closed, columns, rows)
		result[cells[:, 1], cells[:, 0]] = colors[curve.tag]
	return result
#
def plot_rendering(rendering, objects=(), figure=None):
	r'''
	Plot a :class:`cosinepuzzle.render.Rendering` with the curves of
	``objects`` drawn on top using matplotlib.
	'''
	#
	low, high = rendering.viewport.corners()
	#
	if figure is None:
		plt.figure()
	#
	plt.imshow(rendering.image(), interpolation='none', aspect=1, extent=[low.real, high.real, low.imag, high.imag])
	for curve in curves_of(objects):
		points = np.concatenate([curve.points, curve.points[:1]]) if curve.closed else curve.points
		color = np.array(TAG_COLORS[curve.tag])/255.0
		plt.plot(points.real, points.imag, color=color, linewidth=0.8)
	plt.xlim(low.real, high.real)
	plt.ylim(low.imag, high.imag)
	plt.xlabel('Re z')
	plt.ylabel('Im z')
	plt.title('{} - {} x {} pixels'.format(rendering.m, *rendering.viewport.pixels))
	#
	if figure is None:
		plt.show()
	#
#
