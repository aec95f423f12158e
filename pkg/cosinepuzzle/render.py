r'''
Escape-time rendering of the Fatou and Julia sets, and spherical diameters of
Fatou components.
'''
import logging
import warnings
#
import numpy as np
import scipy.ndimage
import scipy.spatial.distance
#
from .coordinates import pixel_offsets, plane_to_pixel
from .basins import classify_critical_orbit, build_chart
from .cosine_map import SATURATION_RE
from .errors import InvalidParameterError, PreconditionError
#
logger = logging.getLogger(__name__)
#
UNRESOLVED = 0
ESCAPING = 1
ATTRACTED = 2
#
PALETTE_VERSION = 1
ESCAPE_COLORS = np.array([[255, 244, 214], [214, 96, 28]], dtype=float)
BASIN_COLORS = np.array([
	[34, 84, 160],
	[46, 139, 87],
	[128, 64, 160],
	[200, 160, 40],
	[40, 160, 170],
	[160, 50, 80],
], dtype=np.uint8)
UNRESOLVED_COLOR = np.array([16, 16, 16], dtype=np.uint8)
ESCAPE_BANDS = 32
# escaping pixels cycle through ESCAPE_BANDS shades of the escape gradient
#
def find_attracting_cycles(m, max_iter=500):
	r'''
	The attracting cycles of ``m``. Each one attracts a critical value, so
	classifying both critical orbits finds them all.
	'''
	#
	cycles = []
	for which in ('+v', '-v'):
		result = classify_critical_orbit(m, which, max_iter)
		if result.kind != 'attracted':
			continue
		if not any(c.contains_point(result.cycle.points[0]) for c in cycles):
			cycles.append(result.cycle)
	return cycles
#
def _capture_radius(m, cycle):
	try:
		return 0.5*build_chart(m, cycle).radius
	except PreconditionError:
		return 1e-6
	#
#
class Rendering(object):
	r'''
	Per-pixel orbit classification over a :class:`Viewport`.

	``kind`` holds ``UNRESOLVED``, ``ESCAPING`` or ``ATTRACTED``;
	``iterations`` the step at which the pixel was classified; ``basin`` the
	index into ``cycles`` for attracted pixels (-1 elsewhere).
	'''
	#
	def __init__(self, m, viewport, kind, iterations, basin, cycles, max_iter):
		self.m = m
		self.viewport = viewport
		self.kind = kind
		self.iterations = iterations
		self.basin = basin
		self.cycles = cycles
		self.max_iter = max_iter
	#
	def image(self):
		r'''
		8-bit RGB image, row 0 at the top.
		'''
		#
		rows, cols = self.kind.shape
		image = np.empty((rows, cols, 3), dtype=np.uint8)
		image[:] = UNRESOLVED_COLOR
		#
		escaping = self.kind == ESCAPING
		shade = ((self.iterations % ESCAPE_BANDS)/float(ESCAPE_BANDS - 1))[..., np.newaxis]
		gradient = (1 - shade)*ESCAPE_COLORS[0] + shade*ESCAPE_COLORS[1]
		image[escaping] = np.round(gradient[escaping]).astype(np.uint8)
		#
		attracted = self.kind == ATTRACTED
		image[attracted] = BASIN_COLORS[self.basin[attracted] % len(BASIN_COLORS)]
		return image
	#
	def counts(self):
		return {
			'escaping': int(np.count_nonzero(self.kind == ESCAPING)),
			'attracted': int(np.count_nonzero(self.kind == ATTRACTED)),
			'unresolved': int(np.count_nonzero(self.kind == UNRESOLVED)),
		}
	#
#
def classify_points(m, z, max_iter=200, escape_re=50.0, cycles=None, relative=False):
	r'''
	Vectorised orbit classification of the points ``z``.

	Orbits are iterated in the coordinate :math:`\zeta = z - u`, where
	:math:`f` is even; the escape test uses :math:`|\mathrm{Re}\,\zeta_n|` and
	no test is applied to the starting point, so points symmetric about
	``u`` receive identical classifications.

	With ``relative`` the input already holds :math:`\zeta` values.

	Returns ``(kind, iterations, basin)`` arrays shaped like ``z``.
	'''
	#
	if not escape_re >= 50:
		raise InvalidParameterError('escape_re must be at least 50 (got {}).'.format(escape_re))
	if max_iter < 1:
		raise InvalidParameterError('max_iter must be at least 1.')
	if cycles is None:
		cycles = find_attracting_cycles(m)
	targets = []
	for index, cycle in enumerate(cycles):
		radius = _capture_radius(m, cycle)
		for point in cycle.points:
			targets.append((index, point - m.u, radius))
	#
	zeta = np.array(z, dtype=complex)
	if not relative:
		zeta = zeta - m.u
	shape = zeta.shape
	zeta = zeta.ravel()
	kind = np.zeros(zeta.shape, dtype=np.int8)
	iterations = np.zeros(zeta.shape, dtype=np.int32)
	basin = np.full(zeta.shape, -1, dtype=np.int32)
	growth = np.zeros(zeta.shape, dtype=np.int8)
	previous = np.abs(zeta.real)
	active = np.arange(zeta.size)
	half_v = 0.5*m.v
	#
	for n in range(1, max_iter + 1):
		if active.size == 0:
			break
		current = zeta[active]
		saturated = np.abs(current.real) > SATURATION_RE
		safe = np.where(saturated, 0, current)
		# exp(-zeta) is evaluated directly so that f(zeta) and f(-zeta) agree bit for bit
		following = half_v*(np.exp(safe) + np.exp(-safe)) - m.u
		zeta[active] = following
		#
		modulus = np.abs(following.real)
		growing = (modulus > escape_re) & (modulus > previous[active])
		growth[active] = np.where(growing, growth[active] + 1, 0)
		previous[active] = modulus
		escaped = saturated | (growth[active] >= 3) | ~np.isfinite(following)
		kind[active[escaped]] = ESCAPING
		iterations[active[escaped]] = n
		#
		captured = np.zeros(active.shape, dtype=bool)
		for index, point, radius in targets:
			hit = ~escaped & ~captured & (np.abs(following - point) < radius)
			basin[active[hit]] = index
			captured |= hit
		kind[active[captured]] = ATTRACTED
		iterations[active[captured]] = n
		active = active[~(escaped | captured)]
	#
	logger.debug('Classified %d points, %d unresolved', zeta.size, active.size)
	return kind.reshape(shape), iterations.reshape(shape), basin.reshape(shape)
#
def render_julia(m, viewport, max_iter=200, escape_re=50.0, cycles=None):
	r'''
	Escape-time rendering of ``m`` over ``viewport``.
	'''
	#
	if cycles is None:
		cycles = find_attracting_cycles(m)
	zeta = (viewport.center - m.u) + pixel_offsets(viewport)
	kind, iterations, basin = classify_points(m, zeta, max_iter, escape_re, cycles, relative=True)
	rendering = Rendering(m, viewport, kind, iterations, basin, cycles, max_iter)
	logger.info('Rendered %dx%d pixels: %s', viewport.pixels[0], viewport.pixels[1], rendering.counts())
	return rendering
#
def chordal_distance(z, w):
	r'''
	Distance on the Riemann sphere,
	:math:`2|z-w|/\sqrt{(1+|z|^2)(1+|w|^2)}`.
	'''
	#
	z = np.asarray(z, dtype=complex)
	w = np.asarray(w, dtype=complex)
	return 2*np.abs(z - w)/np.sqrt((1 + np.abs(z)**2)*(1 + np.abs(w)**2))
#
def _spherical_diameter(points, max_points=1500):
	if len(points) < 2:
		return 0.0
	if len(points) > max_points:
		points = points[::int(np.ceil(len(points)/float(max_points)))]
	# stereographic projection onto the unit sphere turns chordal distance into euclidean distance
	sphere = np.column_stack([points.real, points.imag, 0.5*(np.abs(points)**2 - 1)])/(0.5*(1 + np.abs(points)**2))[:, np.newaxis]
	return float(np.max(scipy.spatial.distance.pdist(sphere)))
#
class Component(object):
	def __init__(self, id, basin, pixels, diameter, preperiod, flag):
		self.id = id
		self.basin = basin
		self.pixels = pixels
		self.diameter = diameter
		self.preperiod = preperiod
		self.flag = flag
	#
	def as_record(self):
		return {
			'id': self.id,
			'basin': self.basin,
			'pixels': self.pixels,
			'diameter': self.diameter,
			'preperiod': self.preperiod,
			'flag': self.flag,
		}
	#
#
class DiameterReport(object):
	r'''
	Fatou components of a rendering with their spherical diameters.
	``counts`` maps each :math:`\varepsilon` to the number of components of
	diameter larger than it.
	'''
	#
	def __init__(self, components, epsilons, viewport):
		self.components = components
		self.viewport = viewport
		self.counts = dict((eps, sum(1 for c in components if c.diameter > eps)) for eps in epsilons)
	#
	def by_preperiod(self):
		groups = {}
		for component in self.components:
			groups.setdefault(component.preperiod, []).append(component.diameter)
		return groups
	#
	def medians(self):
		return dict((k, float(np.median(v))) for k, v in self.by_preperiod().items() if k is not None)
	#
	def as_record(self):
		return {
			'viewport': self.viewport.as_record(),
			'components': [c.as_record() for c in self.components],
			'counts': [[eps, n] for eps, n in sorted(self.counts.items())],
			'medians': [[k, v] for k, v in sorted(self.medians().items())],
		}
	#
#
def component_diameters(m, viewport, N=8, max_iter=200, epsilons=(0.2, 0.1, 0.05, 0.02), rendering=None):
	r'''
	Label the attracted pixels into connected components (one labelling per
	basin), measure each component's spherical diameter and estimate its
	preperiod: the number of steps a representative point needs to enter a
	component containing a point of the cycle. Preperiods above ``N`` are
	reported as ``None``. Components of fewer than four pixels are flagged
	``resolution-limited``.
	'''
	#
	if rendering is None:
		rendering = render_julia(m, viewport, max_iter)
	grid = m.u + ((viewport.center - m.u) + pixel_offsets(viewport))
	labels = np.zeros(rendering.kind.shape, dtype=np.int32)
	count = 0
	for index in range(len(rendering.cycles)):
		mask = (rendering.kind == ATTRACTED) & (rendering.basin == index)
		basin_labels, n = scipy.ndimage.label(mask)
		labels[mask] = basin_labels[mask] + count
		count += n
	#
	periodic = set()
	for cycle in rendering.cycles:
		for point in cycle.points:
			col, row = plane_to_pixel(viewport, [point])[0]
			row, col = int(round(row)), int(round(col))
			if 0 <= row < labels.shape[0] and 0 <= col < labels.shape[1] and labels[row, col] > 0:
				periodic.add(labels[row, col])
	#
	components = []
	for label in range(1, count + 1):
		where = labels == label
		boundary = where & ~scipy.ndimage.binary_erosion(where)
		points = grid[boundary]
		diameter = _spherical_diameter(points)
		pixels = int(np.count_nonzero(where))
		flag = 'resolution-limited' if pixels < 4 else None
		rows, cols = np.nonzero(where)
		middle = len(rows)//2
		representative = grid[rows[middle], cols[middle]]
		preperiod = _preperiod(m, representative, labels, periodic, viewport, N)
		components.append(Component(label, int(rendering.basin[rows[0], cols[0]]), pixels, diameter, preperiod, flag))
	report = DiameterReport(components, epsilons, viewport)
	logger.info('%d Fatou components, counts above epsilon: %s', len(components), report.counts)
	if any(c.flag for c in components):
		warnings.warn('{} components are at the resolution limit.'.format(sum(1 for c in components if c.flag)))
	return report
#
def _preperiod(m, z, labels, periodic, viewport, N):
	for n in range(N + 1):
		col, row = plane_to_pixel(viewport, [z])[0]
		row, col = int(round(row)), int(round(col))
		if 0 <= row < labels.shape[0] and 0 <= col < labels.shape[1] and labels[row, col] in periodic:
			return n
		z = m.eval(z)
		if not isinstance(z, complex):
			return None
	return None
#
