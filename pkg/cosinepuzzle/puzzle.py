r'''
Yoccoz puzzles of cosine maps with an attracting cycle.

The depth-0 graph joins a periodic internal ray of the basin to the dynamic
ray landing at the same repelling point, together with an equipotential of
the basin, inside a square window. Deeper pieces are components of the
preimages of shallower ones; from depth 1 on they are cut down by the
ellipse :math:`E = f(R)` (the bounded modification) so that every piece is
bounded.
'''
import cmath
import math
import logging
import warnings
#
import numpy as np
from scipy.spatial import cKDTree
#
from . import geometry
from .basins import internal_ray, equipotential, land_internal_ray, basin_level, build_chart, classify_critical_orbit
from .cosine_map import TWO_PI, is_escaped
from .errors import (PreconditionError, InvalidParameterError, GraphConstructionError, GraphCollisionError,
	IncreaseMError, RefinementError, SubdivisionError, InconclusiveError, SlitBoundaryError, NearCriticalError)
from .geometry import Curve
from .rays import land_ray, trace_ray
from .render import classify_points, ESCAPING, ATTRACTED, UNRESOLVED
from .renorm_escape import RenormCandidate, minimal_m
from .symbolic import Address
#
logger = logging.getLogger(__name__)
#
LANDING_MATCH = 1e-5
NODE_TOL = 1e-7
COLLISION_TOL = 1e-9
CLOSURE_GAP = 1e-4
LIFT_STEP = 0.05
AREA_TOL = 1e-6
DEFAULT_ADDRESS = '[];[(0,0)]'
#
def _spoke_angles(chart, theta, p):
	r'''
	Angles of the internal rays :math:`R_B(\theta), f(R_B(\theta)), \ldots`;
	the ray must come back to itself after ``p`` steps.
	'''
	#
	angles = [theta % 1]
	for j in range(p):
		if chart.mode == 'boettcher':
			angles.append((2*angles[-1]) % 1)
		else:
			angles.append((angles[-1] + cmath.phase(chart.multiplier)/TWO_PI) % 1)
	gap = abs(angles[p] - angles[0])
	if min(gap, 1 - gap) > 1e-9:
		raise PreconditionError('Internal angle {} does not return after {} steps.'.format(theta, p), status='angle-period')
	return angles[:p]
#
def _truncate_at_window(points, half):
	r'''
	The initial part of ``points`` inside the square :math:`|x|, |y| \le`
	``half``, ending exactly on its edge. ``None`` if the polyline never
	leaves the square.
	'''
	#
	outside = (np.abs(points.real) > half) | (np.abs(points.imag) > half)
	if not outside.any():
		return None
	i = int(np.argmax(outside))
	if i == 0:
		return None
	a, b = points[i - 1], points[i]
	s = 1.0
	for xa, xb in ((a.real, b.real), (a.imag, b.imag)):
		if abs(xb) > half:
			bound = half if xb > 0 else -half
			s = min(s, (bound - xa)/(xb - xa))
	return np.concatenate([points[:i], [a + s*(b - a)]])
#
def _insert_points(polygon, points):
	r'''
	Insert points lying on the edges of the closed ``polygon``; returns the
	new polygon and the index of every inserted point.
	'''
	#
	polygon = np.asarray(polygon, dtype=complex)
	a, b = polygon, np.roll(polygon, -1)
	d = b - a
	placed = []
	for order, point in enumerate(points):
		t = np.clip(((point - a)*d.conjugate()).real/(np.abs(d)**2), 0, 1)
		edge = int(np.argmin(np.abs(a + t*d - point)))
		placed.append((edge, float(t[edge]), order, complex(point)))
	placed.sort()
	result, indices = [], [None]*len(points)
	cursor = 0
	for edge in range(len(polygon)):
		result.append(polygon[edge])
		while cursor < len(placed) and placed[cursor][0] == edge:
			x, t, order, point = placed[cursor]
			indices[order] = len(result)
			result.append(point)
			cursor += 1
	return np.array(result), indices
#
class PuzzleGraph(object):
	r'''
	The graph :math:`\Gamma_0 \cup E_0` inside a square window centred at 0.

	``spokes`` holds, for every :math:`j < p`, the pair of curves
	(internal ray piece from the equipotential to the landing point, dynamic
	ray from the landing point to the window edge); ``internal`` the full
	internal rays from the cycle point.
	'''
	#
	def __init__(self, m, chart, theta, address, level, landing, spokes, internal, equipotential, vertices, window_half):
		self.m = m
		self.chart = chart
		self.theta = theta
		self.address = address
		self.level = level
		self.landing = landing
		self.spokes = spokes
		self.internal = internal
		self.equipotential = equipotential
		self.vertices = vertices
		self.window_half = window_half
		self.window = geometry.box_polygon(0, window_half, window_half)
	#
	@property
	def period(self):
		return len(self.spokes)
	#
	def curves(self):
		result = [self.equipotential, Curve(self.window, 'window', closed=True)]
		for inner, outer in self.spokes:
			result.extend([inner, outer])
		return result
	#
	def forward_invariance(self, radius=None):
		r'''
		Largest distance from :math:`f` of a spoke sample to the rays of the
		graph, over samples whose image stays within ``radius`` of 0 (a
		quarter of the window by default). Internal ray images below the
		equipotential are measured against the full internal rays.
		'''
		#
		if radius is None:
			radius = 0.25*self.window_half
		samples = np.concatenate([curve.points for spoke in self.spokes for curve in spoke])
		images, escaped = self.m.eval_array(samples)
		images = images[~escaped & (np.abs(images) < radius)]
		if len(images) == 0:
			return 0.0
		targets = [curve.points for curve in self.internal] + [outer.points for inner, outer in self.spokes]
		distance = np.min([geometry.distance_to_polyline(points, images) for points in targets], axis=0)
		return float(np.max(distance))
	#
	def as_record(self):
		return {
			'theta': self.theta,
			'address': self.address.format(),
			'level': self.level,
			'landing': [self.landing.real, self.landing.imag],
			'window_half': self.window_half,
			'curves': [curve.as_record() for curve in self.curves()],
		}
	#
#
def build_graph(m, chart, theta, s, level, window_half=50.0, n_samples=200):
	r'''
	Build :math:`\Gamma_0 \cup E_0` from the internal ray of angle ``theta``
	(turns), the periodic dynamic ray ``s`` landing at the same point and the
	equipotential of ``level``.

	Raises :class:`GraphConstructionError` when the two rays do not land
	together.
	'''
	#
	if isinstance(s, str):
		s = Address.parse(s)
	if not s.is_periodic():
		raise PreconditionError('The dynamic ray of a puzzle must be periodic (got {}).'.format(s), status='not-periodic')
	if chart.period != 1:
		raise PreconditionError('Puzzles are built around attracting fixed points (cycle of period {}).'.format(chart.period), status='unsupported-period')
	if not window_half > 0:
		raise InvalidParameterError('Window half-size must be positive (got {}).'.format(window_half))
	p = s.period_length
	angles = _spoke_angles(chart, theta, p)
	#
	internal_point, internal_multiplier, internal_status = land_internal_ray(chart, angles[0], period=p)
	landing = land_ray(m, s)
	if internal_status != 'landed' or landing.status != 'landed' or abs(internal_point - landing.point) > LANDING_MATCH:
		raise GraphConstructionError(
			'Internal ray {} lands at {} but dynamic ray {} lands at {}.'.format(theta, internal_point, s.format(), landing.point),
			internal=internal_point, dynamic=landing.point)
	#
	E = equipotential(chart, level, n_samples=2*n_samples, start=angles[0])
	if E.status != 'complete':
		raise GraphConstructionError('Equipotential {} could not be closed.'.format(level))
	spokes, internal, vertices = [], [], []
	z0 = landing.point
	for j, angle in enumerate(angles):
		full = internal_ray(chart, angle, n_samples=n_samples)
		inner = internal_ray(chart, angle, n_samples=n_samples, inner=level)
		if inner.status != 'complete' or full.status != 'complete':
			raise GraphConstructionError('Internal ray {} is truncated.'.format(angle))
		ray = trace_ray(m, s.shift(j), 1e-2, window_half + abs(m.u) + 10, n_samples=n_samples)
		if ray.crash is not None:
			raise GraphConstructionError('Dynamic ray {} crashes at t = {:.4g}.'.format(s.shift(j).format(), ray.crash[0]))
		outer = _truncate_at_window(np.concatenate([[z0], ray.z[::-1]]), window_half)
		if outer is None:
			raise GraphConstructionError('Dynamic ray {} does not reach the window edge.'.format(s.shift(j).format()))
		inner_points = np.concatenate([inner.points[1:], [z0]])
		spokes.append((Curve(inner_points, 'internal-ray', angle), Curve(outer, 'dynamic-ray', s.shift(j).format())))
		internal.append(Curve(np.concatenate([full.points, [z0]]), 'internal-ray', angle))
		vertices.append(inner_points[0])
		z0 = m.eval(z0)
	#
	# the spoke vertices become samples of the equipotential
	points = np.array(E.points)
	points[0] = vertices[0]
	offsets = [((angle - angles[0]) % 1)*len(points) for angle in angles[1:]]
	insert = sorted(((int(math.ceil(x)), x, vertex) for x, vertex in zip(offsets, vertices[1:])), key=lambda item: -item[1])
	for index, x, vertex in insert:
		if abs(index - x) < 1e-9:
			points[index % len(points)] = vertex
		else:
			points = np.insert(points, index, vertex)
	E = Curve(points, 'equipotential', level, closed=True)
	#
	graph = PuzzleGraph(m, chart, theta, s, level, landing.point, spokes, internal, E, vertices, window_half)
	logger.info('Puzzle graph: %d spokes landing at %s, level %.4g, window %.4g', p, landing.point, level, window_half)
	return graph
#
class _HalfEdgeGraph(object):
	r'''
	Planar graph of polyline edges; faces are traced with the rule "leave
	each node along the edge just clockwise of the one we came in on", which
	walks bounded faces counter-clockwise.
	'''
	#
	def __init__(self, tol=NODE_TOL):
		self.tol = tol
		self.nodes = []
		self.edges = []
	#
	def node(self, z):
		for index, w in enumerate(self.nodes):
			if abs(w - z) < self.tol:
				return index
		self.nodes.append(complex(z))
		return len(self.nodes) - 1
	#
	def add_edge(self, points, tag, source):
		points = np.array(points, dtype=complex)
		start, end = self.node(points[0]), self.node(points[-1])
		points[0], points[-1] = self.nodes[start], self.nodes[end]
		self.edges.append((start, end, points, tag, source))
	#
	def add_closed(self, points, vertices, tag, source):
		points = np.asarray(points, dtype=complex)
		n = len(points)
		vertices = sorted(set(vertices)) or [0]
		doubled = np.concatenate([points, points, points[:1]])
		for i, a in enumerate(vertices):
			b = vertices[(i + 1) % len(vertices)]
			if b <= a:
				b += n
			self.add_edge(doubled[a:b + 1], tag, source)
	#
	def _half_edge(self, h):
		start, end, points, tag, source = self.edges[h//2]
		if h % 2 == 0:
			return start, end, points, tag, source
		return end, start, points[::-1], tag, source
	#
	@staticmethod
	def _angle(points):
		for point in points[1:]:
			if abs(point - points[0]) > 1e-12:
				return cmath.phase(point - points[0])
		raise SubdivisionError('Degenerate edge of zero length.')
	#
	def faces(self):
		r'''
		All faces as ``(polygon, tags)`` pairs; ``tags[i]`` is the
		``(tag, source)`` of the edge leaving vertex ``i``.
		'''
		#
		outgoing = {}
		for h in range(2*len(self.edges)):
			start, end, points, tag, source = self._half_edge(h)
			outgoing.setdefault(start, []).append((self._angle(points), h))
		ring, position = {}, {}
		for node, items in outgoing.items():
			items.sort()
			ring[node] = [h for angle, h in items]
			for i, h in enumerate(ring[node]):
				position[h] = i
		#
		visited = set()
		faces = []
		for first in range(2*len(self.edges)):
			if first in visited:
				continue
			cycle = []
			h = first
			while h not in visited:
				visited.add(h)
				cycle.append(h)
				end = self._half_edge(h)[1]
				around = ring[end]
				h = around[(position[h ^ 1] - 1) % len(around)]
			points, tags = [], []
			for h in cycle:
				start, end, edge_points, tag, source = self._half_edge(h)
				points.append(edge_points[:-1])
				tags.extend([(tag, source)]*(len(edge_points) - 1))
			faces.append((np.concatenate(points), tags))
		return faces
	#
#
def _critical_inside(m, polygon):
	r'''
	Critical points :math:`u + k\pi i` inside ``polygon``.
	'''
	#
	lo = int(math.floor((polygon.imag.min() - m.u.imag)/math.pi))
	hi = int(math.ceil((polygon.imag.max() - m.u.imag)/math.pi))
	candidates = np.array([m.critical_point(k) for k in range(lo, hi + 1)])
	inside = geometry.contains(polygon, candidates)
	return [complex(c) for c in candidates[np.atleast_1d(inside)]]
#
class PuzzlePiece(object):
	r'''
	A puzzle piece: a closed polygon with a ``(tag, source)`` label on every
	edge. ``critical`` lists the critical points inside, ``degree`` is the
	degree of :math:`f` from the piece onto its parent.
	'''
	#
	def __init__(self, depth, polygon, tags, critical, parent_id=None, degree=1):
		self.depth = depth
		self.index = None
		self.polygon = np.asarray(polygon, dtype=complex)
		self.tags = list(tags)
		self.critical = critical
		self.parent_id = parent_id
		self.degree = degree
		self.lo = complex(self.polygon.real.min(), self.polygon.imag.min())
		self.hi = complex(self.polygon.real.max(), self.polygon.imag.max())
	#
	@property
	def id(self):
		return '{}:{}'.format(self.depth, self.index)
	#
	@property
	def contains_critical(self):
		return len(self.critical) > 0
	#
	def __repr__(self):
		return 'PuzzlePiece({}, n={}, degree={}, critical={})'.format(self.id, len(self.polygon), self.degree, self.critical)
	#
	def _in_box(self, z, margin=0.0):
		return (self.lo.real - margin <= z.real <= self.hi.real + margin) and (self.lo.imag - margin <= z.imag <= self.hi.imag + margin)
	#
	def contains(self, z):
		z = complex(z)
		if not self._in_box(z):
			return False
		return bool(geometry.contains(self.polygon, z))
	#
	def boundary_distance(self, z):
		z = complex(z)
		if not self._in_box(z, COLLISION_TOL):
			return float('inf')
		return geometry.distance_to_polyline(self.polygon, z, closed=True)
	#
	def area(self):
		return abs(geometry.signed_area(self.polygon))
	#
	def diameter(self):
		return geometry.diameter(self.polygon)
	#
	def arcs(self):
		r'''
		Maximal runs of equally tagged edges as :class:`Curve` objects.
		'''
		#
		n = len(self.polygon)
		starts = [i for i in range(n) if self.tags[i] != self.tags[i - 1]]
		if not starts:
			tag, source = self.tags[0]
			return [Curve(self.polygon, tag, source, closed=True)]
		arcs = []
		for a, b in zip(starts, starts[1:] + [starts[0] + n]):
			indices = np.arange(a, b + 1) % n
			tag, source = self.tags[a]
			arcs.append(Curve(self.polygon[indices], tag, source))
		return arcs
	#
	def as_record(self):
		return {
			'depth': self.depth,
			'id': self.id,
			'parent_id': self.parent_id,
			'degree': self.degree,
			'critical': [[c.real, c.imag] for c in self.critical],
			'boundary': [arc.as_record() for arc in self.arcs()],
		}
	#
#
def _focus_box(graph):
	core = np.concatenate([graph.equipotential.points, [graph.landing, graph.m.v, -graph.m.v, graph.m.u]])
	center = complex(0.5*(core.real.min() + core.real.max()), 0.5*(core.imag.min() + core.imag.max()))
	half = 0.5*max(np.ptp(core.real), np.ptp(core.imag)) + 2
	return center, min(half, graph.window_half)
#
def _face_samples(polygon, focus, n):
	center, half = focus
	lo = (max(polygon.real.min(), center.real - half), max(polygon.imag.min(), center.imag - half))
	hi = (min(polygon.real.max(), center.real + half), min(polygon.imag.max(), center.imag + half))
	samples = [geometry.interior_sample(polygon, n=8)]
	if lo[0] < hi[0] and lo[1] < hi[1]:
		x = np.linspace(lo[0], hi[0], n + 2)[1:-1]
		y = np.linspace(lo[1], hi[1], n + 2)[1:-1]
		grid = (x[None, :] + 1j*y[:, None]).ravel()
		samples.append(grid[geometry.contains(polygon, grid)])
	return np.concatenate(samples)
#
def pieces_at_depth0(graph, focus=None, n_samples=30):
	r'''
	Subdivide the window by the graph and keep the faces that meet the Julia
	set. A face counts as meeting it when its samples contain both escaping
	and attracted points, or any point that stays unresolved; samples are
	taken in ``focus`` (a ``(center, half_size)`` box around the interesting
	part of the graph) and on a coarse grid over the whole face.
	'''
	#
	m = graph.m
	planar = _HalfEdgeGraph()
	exits = [outer.points[-1] for inner, outer in graph.spokes]
	window, window_vertices = _insert_points(graph.window, exits)
	planar.add_closed(window, window_vertices, 'window', None)
	E = graph.equipotential.points
	E_vertices = [int(np.argmin(np.abs(E - vertex))) for vertex in graph.vertices]
	planar.add_closed(E, E_vertices, 'equipotential', graph.level)
	for inner, outer in graph.spokes:
		planar.add_edge(inner.points, inner.tag, inner.source)
		planar.add_edge(outer.points, outer.tag, outer.source)
	#
	faces = [(polygon, tags, geometry.signed_area(polygon)) for polygon, tags in planar.faces()]
	total = sum(area for polygon, tags, area in faces if area > 0)
	window_area = (2*graph.window_half)**2
	if abs(total - window_area) > AREA_TOL*window_area:
		raise SubdivisionError('Faces cover {:.6g} of a window of area {:.6g}; a curve crosses itself at this resolution.'.format(total, window_area),
			covered=total, window=window_area)
	if focus is None:
		focus = _focus_box(graph)
	#
	pieces = []
	for polygon, tags, area in faces:
		if area <= 0:
			continue
		samples = _face_samples(polygon, focus, n_samples)
		if len(samples) == 0:
			continue
		kind, iterations, basin = classify_points(m, samples, cycles=[graph.chart.cycle])
		julia = (np.any(kind == ESCAPING) and np.any(kind == ATTRACTED)) or np.any(kind == UNRESOLVED)
		if julia:
			pieces.append(PuzzlePiece(0, polygon, tags, _critical_inside(m, polygon)))
	logger.info('Depth 0: %d faces, %d puzzle pieces', sum(1 for f in faces if f[2] > 0), len(pieces))
	return pieces
#
def _lift_loop(m, path, tags, z_start, step):
	r'''
	Lift the closed path once from ``z_start``. Returns the lifted points
	(first and last included) and the tag of every lifted edge.
	'''
	#
	closed = np.concatenate([path, path[:1]])
	zs, ws = m.lift_path(closed, z_start, max_step=step)
	lifted_tags = []
	segment = 0
	for k in range(1, len(ws)):
		lifted_tags.append(tags[segment])
		if ws[k] == closed[segment + 1]:
			segment += 1
	return zs, lifted_tags
#
def _k_range(m, region):
	lo, hi = region
	return range(int(math.floor((lo.imag - m.u.imag)/TWO_PI)) - 1, int(math.ceil((hi.imag - m.u.imag)/TWO_PI)) + 1)
#
def refine(m, piece, region, step=LIFT_STEP):
	r'''
	The components of :math:`f^{-1}(\text{piece})` meeting the box
	``region = (lo, hi)``, as pieces one level deeper.

	The boundary is lifted edge by edge from every preimage of one of its
	vertices; a lift that does not close after one lap goes round again
	(the child then maps 2-to-1 onto the piece).
	'''
	#
	values = [w for w in (m.v, -m.v) if piece.contains(w)]
	if len(values) == 2:
		raise RefinementError('Piece {} contains both critical values.'.format(piece.id), piece=piece.id)
	keep = np.abs(np.diff(np.concatenate([piece.polygon, piece.polygon[:1]]))) > 0
	path = piece.polygon[keep]
	tags = [tag for tag, kept in zip(piece.tags, keep) if kept]
	#
	start = None
	for i, w in enumerate(path):
		try:
			preimages = m.preimages(w, _k_range(m, region))
		except (SlitBoundaryError, NearCriticalError):
			continue
		start = i
		break
	if start is None:
		raise RefinementError('No boundary vertex of piece {} can be pulled back.'.format(piece.id), piece=piece.id)
	path = np.roll(path, -start)
	tags = tags[start:] + tags[:start]
	lo, hi = region
	#
	children = []
	starts = []
	# lifts of path[0], one per lap; neighbouring children share other boundary points
	for index, z_start in preimages:
		if any(abs(z - z_start) < NODE_TOL for z in starts):
			continue
		zs, lifted_tags = _lift_loop(m, path, tags, z_start, step)
		gap = abs(zs[-1] - z_start)
		degree = 1
		starts.append(z_start)
		if gap > CLOSURE_GAP:
			if not values:
				raise RefinementError('Lift of piece {} does not close: gap {:.3g} at {}.'.format(piece.id, gap, zs[-1]), gap=gap, location=zs[-1])
			second, more = _lift_loop(m, path, tags, zs[-1], step)
			gap = abs(second[-1] - z_start)
			if gap > CLOSURE_GAP:
				raise RefinementError('Two laps around piece {} do not close: gap {:.3g} at {}.'.format(piece.id, gap, second[-1]), gap=gap, location=second[-1])
			starts.append(zs[-1])
			zs = np.concatenate([zs[:-1], second])
			lifted_tags = lifted_tags + more
			degree = 2
		polygon = zs[:-1]
		child = PuzzlePiece(piece.depth + 1, polygon, lifted_tags, _critical_inside(m, polygon), parent_id=piece.id, degree=degree)
		children.append(child)
	#
	result = [child for child in children
		if child.lo.real <= hi.real and child.hi.real >= lo.real and child.lo.imag <= hi.imag and child.hi.imag >= lo.imag]
	logger.debug('Refined %s into %d children (%d in region)', piece.id, len(children), len(result))
	return result
#
class Modification(object):
	r'''
	The rectangle :math:`R = \{|\mathrm{Re}(z - u)| \le M\}` over a strip of
	imaginary parts and the ellipse :math:`E = f(\{\mathrm{Re}(z-u) = M\})`
	with foci :math:`\pm v`; ``margin`` is the sampled clearance of
	:math:`\partial R` inside :math:`E`.
	'''
	#
	def __init__(self, m, M, strip, rectangle, ellipse, margin):
		self.m = m
		self.M = M
		self.strip = strip
		self.rectangle = rectangle
		self.ellipse = ellipse
		self.margin = margin
	#
	@property
	def axes(self):
		r'''
		Full major and minor axes, :math:`|v|(e^M \pm e^{-M})`.
		'''
		#
		v = abs(self.m.v)
		return v*(math.exp(self.M) + math.exp(-self.M)), v*(math.exp(self.M) - math.exp(-self.M))
	#
	@property
	def region(self):
		return complex(self.ellipse.real.min(), self.ellipse.imag.min()), complex(self.ellipse.real.max(), self.ellipse.imag.max())
	#
	def clip(self, piece):
		r'''
		``piece`` intersected with the ellipse, or ``None`` when nothing is
		left. Pieces inside the ellipse are returned unchanged.
		'''
		#
		if np.all(geometry.contains(self.ellipse, piece.polygon)):
			return piece
		polygon = geometry.clip_convex(piece.polygon, self.ellipse)
		if len(polygon) < 3 or abs(geometry.signed_area(polygon)) < 1e-12:
			return None
		tol = 1e-9*max(1, self.axes[0])
		on_ellipse = geometry.distance_to_polyline(self.ellipse, polygon, closed=True) < tol
		midpoints = 0.5*(polygon + np.roll(polygon, -1))
		on_ellipse_edge = geometry.distance_to_polyline(self.ellipse, midpoints, closed=True) < tol
		tree = cKDTree(np.column_stack([piece.polygon.real, piece.polygon.imag]))
		x, nearest = tree.query(np.column_stack([polygon.real, polygon.imag]))
		tags = []
		for i in range(len(polygon)):
			if on_ellipse[i] and on_ellipse[(i + 1) % len(polygon)] and on_ellipse_edge[i]:
				# a chord of the piece between two crossings is not an ellipse edge
				tags.append(('ellipse-arc', self.M))
			else:
				tags.append(piece.tags[nearest[i]])
		clipped = PuzzlePiece(piece.depth, polygon, tags, _critical_inside(self.m, polygon), piece.parent_id, piece.degree)
		return clipped
	#
	def as_record(self):
		major, minor = self.axes
		return {
			'M': self.M,
			'strip': list(self.strip),
			'margin': self.margin,
			'major_axis': major,
			'minor_axis': minor,
			'ellipse': Curve(self.ellipse, 'ellipse-arc', self.M, closed=True).as_record(),
		}
	#
#
def _rectangle(m, M, strip):
	lo, hi = strip
	return geometry.box_polygon(m.u + 0.5j*(lo + hi), M, 0.5*(hi - lo), n_per_side=64)
#
def check_modification(m, M, strip=(-TWO_PI, TWO_PI), n_ellipse=720):
	r'''
	Verify :math:`R \Subset E` by sampling :math:`\partial R`; raises
	:class:`IncreaseMError` (with the smallest sufficient ``M`` on a
	quarter-unit grid) otherwise.
	'''
	#
	if not M > 0:
		raise InvalidParameterError('M must be positive (got {}).'.format(M))
	rectangle = _rectangle(m, M, strip)
	margin = geometry.ellipse_margin(rectangle, m.v, M)
	if margin <= 0:
		suggestion = minimal_m(m, lambda x: _rectangle(m, x, strip))
		raise IncreaseMError('The rectangle |Re(z - u)| <= {} is not inside the ellipse f(R); try M = {}.'.format(M, suggestion),
			minimal_m=suggestion)
	ellipse = geometry.ellipse_polygon(m.v, M, n_ellipse)
	logger.debug('Modification M=%g: margin %.4g', M, margin)
	return Modification(m, M, strip, rectangle, ellipse, margin)
#
def bounded_modification(m, pieces, M, strip=(-TWO_PI, TWO_PI)):
	r'''
	Cut ``pieces`` down to the ellipse :math:`E = f(R)`.
	'''
	#
	modification = check_modification(m, M, strip)
	result = []
	for piece in pieces:
		clipped = modification.clip(piece)
		if clipped is not None:
			result.append(clipped)
	return result
#
def modification_window(m, M):
	r'''
	Half-size of a square around 0 that contains :math:`f(E)`, so that the
	depth-0 pieces cover every point whose image lies in a modified piece.
	'''
	#
	semi_major = abs(m.v)*math.cosh(M)
	return 1.2*max(abs(m.v)*math.cosh(semi_major + abs(m.u.real)), semi_major + abs(m.u))
#
class Puzzle(object):
	r'''
	Store of puzzle pieces by depth. Depth-0 pieces are built eagerly;
	deeper ones are built on demand from their parents and cached, so
	:meth:`locate` only refines along the orbit it follows.
	'''
	#
	def __init__(self, graph, M=4.0, strip=(-TWO_PI, TWO_PI), focus=None):
		self.m = graph.m
		self.graph = graph
		self.modification = check_modification(self.m, M, strip)
		if graph.window_half < modification_window(self.m, M):
			warnings.warn('Window half-size {:.4g} does not contain f(E); deep pieces near the ellipse may be missing.'.format(graph.window_half))
		self.depths = []
		self._pieces = {}
		self._children = {}
		for piece in pieces_at_depth0(graph, focus):
			self._register(piece)
	#
	def _register(self, piece):
		while len(self.depths) <= piece.depth:
			self.depths.append([])
		piece.index = len(self.depths[piece.depth])
		self.depths[piece.depth].append(piece)
		self._pieces[piece.id] = piece
		return piece
	#
	def piece(self, id):
		return self._pieces[id]
	#
	def _built(self, depth):
		if depth < len(self.depths):
			return list(self.depths[depth])
		return []
	#
	def pieces(self, depth):
		r'''
		Every piece of ``depth``, refining the shallower ones first.
		'''
		#
		return self.build(depth)
	#
	def parent(self, piece):
		if piece.parent_id is None:
			return None
		return self._pieces[piece.parent_id]
	#
	def children(self, piece):
		if piece.id not in self._children:
			children = []
			for child in refine(self.m, piece, self.modification.region):
				clipped = self.modification.clip(child)
				if clipped is not None:
					children.append(self._register(clipped))
			self._children[piece.id] = children
		return self._children[piece.id]
	#
	def build(self, depth):
		r'''
		Materialise every piece down to ``depth``.
		'''
		#
		for n in range(depth):
			for piece in self._built(n):
				self.children(piece)
		return self._built(depth)
	#
	def locate(self, z, depth):
		r'''
		The depth-``depth`` piece containing ``z`` or ``None``. Raises
		:class:`GraphCollisionError` when ``z`` or one of its images lies on
		a piece boundary.
		'''
		#
		z = complex(z)
		if depth == 0:
			candidates = self.depths[0] if self.depths else []
		else:
			image = self.m.eval(z)
			if is_escaped(image):
				return None
			parent = self.locate(image, depth - 1)
			if parent is None:
				return None
			candidates = self.children(parent)
		for piece in candidates:
			if piece.boundary_distance(z) < COLLISION_TOL:
				raise GraphCollisionError('Point {} lies on the boundary of piece {}.'.format(z, piece.id), point=z, piece=piece.id)
			if piece.contains(z):
				return piece
		return None
	#
	def markov_defect(self, piece):
		r'''
		Largest distance from :math:`f` of a boundary vertex of ``piece`` to
		the boundary of its parent, ignoring edges on the ellipse.
		'''
		#
		parent = self.parent(piece)
		if parent is None:
			return 0.0
		mask = np.array([tag != 'ellipse-arc' for tag, source in piece.tags])
		images, escaped = self.m.eval_array(piece.polygon[mask])
		images = images[~escaped]
		if len(images) == 0:
			return 0.0
		return float(np.max(geometry.distance_to_polyline(parent.polygon, images, closed=True)))
	#
	def nesting_violations(self, points, depth):
		r'''
		Number of (point, depth) pairs where the piece containing a point at
		depth ``n + 1`` is not inside the piece at depth ``n``, judged on a
		grid of interior samples.
		'''
		#
		violations = 0
		for z in points:
			previous = self.locate(z, 0)
			for n in range(1, depth + 1):
				current = self.locate(z, n)
				if current is None or previous is None:
					break
				samples = geometry.interior_sample(current.polygon, 12)
				if not np.all(geometry.contains(previous.polygon, samples)):
					violations += 1
				previous = current
		return violations
	#
	def as_record(self):
		return {
			'graph': self.graph.as_record(),
			'modification': self.modification.as_record(),
			'pieces': [piece.as_record() for depth in self.depths for piece in depth],
		}
	#
#
def default_level(chart, critical_point):
	r'''
	An equipotential level below the first critical point of the basin:
	70% of :math:`|\phi|` at ``critical_point``.
	'''
	#
	level = basin_level(chart, critical_point)
	if level is None or level < 1e-12:
		return 0.5 if chart.mode == 'boettcher' else chart.chart_level
	if chart.mode == 'boettcher':
		return min(0.7*level, 0.9)
	return 0.7*level
#
def build_puzzle(m, theta=0.0, address=DEFAULT_ADDRESS, level=None, M=4.0, n_samples=200):
	r'''
	Find the attracting fixed point, build its chart and the graph, and
	return the :class:`Puzzle`.
	'''
	#
	for which, critical_point in (('+v', m.u), ('-v', m.critical_point(1))):
		result = classify_critical_orbit(m, which)
		if result.kind == 'attracted':
			break
	else:
		raise PreconditionError('No critical value is attracted; a puzzle needs a basin.', status='no-basin')
	chart = build_chart(m, result.cycle)
	if level is None:
		level = default_level(chart, critical_point)
	graph = build_graph(m, chart, theta, address, level, window_half=modification_window(m, M), n_samples=n_samples)
	return Puzzle(graph, M)
#
class Tableau(object):
	r'''
	Pieces along the orbit of ``z``: ``entries[n][l]`` is the id of the
	depth-``n`` piece containing :math:`f^l(z)` (``None`` outside the
	puzzle) and ``critical[n][l]`` whether it contains a critical point.
	'''
	#
	def __init__(self, z, orbit, entries, critical):
		self.z = z
		self.orbit = orbit
		self.entries = entries
		self.critical = np.asarray(critical, dtype=bool)
	#
	@property
	def depth(self):
		return len(self.entries) - 1
	#
	@property
	def length(self):
		return len(self.entries[0]) - 1
	#
	def column(self, l):
		return [row[l] for row in self.entries]
	#
	def critical_depth(self, l):
		r'''
		:math:`d_l` and whether it is saturated (critical at every computed
		depth, i.e. only known to be at least the tableau depth).
		'''
		#
		flags = self.critical[1:, l]
		if not flags.any():
			return 0, False
		d = int(np.max(np.nonzero(flags)[0])) + 1
		return d, bool(flags.all())
	#
	def closure_violations(self):
		r'''
		Positions ``(n, l)`` where a piece is critical but the piece one level
		shallower is not.
		'''
		#
		return [(n, l) for n in range(1, self.depth + 1) for l in range(self.length + 1)
			if self.critical[n, l] and not self.critical[n - 1, l]]
	#
	def grid(self):
		r'''
		Rows by depth, columns by time; a critical piece id is starred.
		'''
		#
		rows = []
		for n, row in enumerate(self.entries):
			cells = []
			for l, entry in enumerate(row):
				if entry is None:
					cells.append('')
				else:
					cells.append(entry + ('*' if self.critical[n, l] else ''))
			rows.append(cells)
		return rows
	#
	def as_record(self):
		depths = []
		for l in range(self.length + 1):
			d, saturated = self.critical_depth(l)
			depths.append({'l': l, 'd': d, 'saturated': saturated})
		return {
			'z': [self.z.real, self.z.imag],
			'depth': self.depth,
			'length': self.length,
			'entries': self.entries,
			'critical': self.critical.tolist(),
			'critical_depths': depths,
		}
	#
#
def tableau(puzzle, z, N, L):
	r'''
	The tableau of ``z`` to depth ``N`` over ``L`` iterates.
	'''
	#
	if N < 1 or L < 0:
		raise InvalidParameterError('Tableau needs N >= 1 and L >= 0 (got {}, {}).'.format(N, L))
	m = puzzle.m
	orbit = [complex(z)]
	for l in range(L):
		w = m.eval(orbit[-1])
		if is_escaped(w):
			break
		orbit.append(w)
	entries = [[None]*(L + 1) for n in range(N + 1)]
	critical = np.zeros((N + 1, L + 1), dtype=bool)
	for l, w in enumerate(orbit):
		for n in range(N + 1):
			piece = puzzle.locate(w, n)
			if piece is None:
				break
			entries[n][l] = piece.id
			critical[n, l] = piece.contains_critical
	logger.info('Tableau of %s: %d x %d', z, N, L)
	return Tableau(complex(z), orbit, entries, critical)
#
def _degree_on(m, U, V, p, n_targets=50):
	r'''
	Winding numbers of :math:`f^p(\partial U)` around sampled points of
	``V``: the number of preimages each target has in ``U``.
	'''
	#
	boundary = geometry.resample(U.polygon, U.diameter()/2000, closed=True)
	image = boundary
	for x in range(p):
		image, escaped = m.eval_array(image)
		if np.any(escaped):
			return None
	targets = geometry.interior_sample(V.polygon, n=20)
	targets = targets[geometry.distance_to_polyline(image, targets, closed=True) > 1e-6]
	if len(targets) > n_targets:
		targets = targets[np.linspace(0, len(targets) - 1, n_targets).astype(int)]
	return np.atleast_1d(geometry.winding_number(image, targets))
#
def detect_renormalization(puzzle, tab, returns=100):
	r'''
	Look for a quadratic-like restriction :math:`f^p: U \to V` along a
	critical tableau: the smallest ``p`` whose column repeats the first,
	a depth :math:`n_0` with critical-free intermediate pieces, and
	:math:`U = P_{n_0+p}(c)`, :math:`V = P_{n_0}(c)`.

	Returns ``None`` when no column repeats; raises
	:class:`InconclusiveError` when the tableau is too shallow or a
	certificate fails.
	'''
	#
	m = puzzle.m
	c = tab.z
	N, L = tab.depth, tab.length
	first = tab.column(0)
	p = None
	for l in range(1, L + 1):
		if all(first[n] is not None for n in range(1, N + 1)) and tab.column(l)[1:] == first[1:]:
			p = l
			break
	if p is None:
		logger.info('No periodic critical column in %d steps', L)
		return None
	n0 = None
	for candidate in range(1, N - p + 1):
		if all(not tab.critical[candidate + p - l, l] for l in range(1, p)):
			n0 = candidate
			break
	if n0 is None:
		raise InconclusiveError('Tableau of depth {} is too shallow for period {}.'.format(N, p), required_depth=N + p)
	U = puzzle.piece(first[n0 + p])
	V = puzzle.piece(first[n0])
	#
	if np.all(geometry.contains(V.polygon, U.polygon)):
		margin = float(np.min(geometry.distance_to_polyline(V.polygon, U.polygon, closed=True)))
	else:
		margin = -1.0
	degrees = _degree_on(m, U, V, p)
	z = c
	stays = 0
	for stays in range(returns):
		z = m.iterate(z, p)
		if is_escaped(z) or not U.contains(z):
			break
	else:
		stays = returns
	if margin <= 0 or degrees is None or len(degrees) == 0 or np.any(degrees != 2) or stays < returns:
		raise InconclusiveError('No certified renormalization at period {} (margin {:.3g}, {} returns).'.format(p, margin, stays),
			required_depth=N + p, margin=margin, degrees=None if degrees is None else degrees.tolist(), returns=stays)
	logger.info('Renormalization of period %d between depths %d and %d, margin %.3g', p, n0 + p, n0, margin)
	return RenormCandidate(U.polygon, V.polygon, c, p, 2, margin, n0=n0, returns=stays, targets=len(degrees))
#
class Impression(object):
	def __init__(self, z, pieces):
		self.z = z
		self.pieces = pieces
		self.diameters = [piece.diameter() for piece in pieces]
	#
	@property
	def piece(self):
		return self.pieces[-1] if self.pieces else None
	#
	def as_record(self):
		return {
			'z': [self.z.real, self.z.imag],
			'pieces': [piece.id for piece in self.pieces],
			'diameters': self.diameters,
		}
	#
#
def approx_impression(puzzle, z, N):
	r'''
	The pieces containing ``z`` at depths ``0..N`` and their diameters; the
	last one bounds the impression of ``z`` from above.
	'''
	#
	pieces = []
	for n in range(N + 1):
		piece = puzzle.locate(z, n)
		if piece is None:
			break
		pieces.append(piece)
	return Impression(complex(z), pieces)
#
